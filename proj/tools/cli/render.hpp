#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ruin::cli {

enum class OutputFormat { PlainTable, CSV, JSON };

/// Accepts "table", "csv" or "json".
OutputFormat parse_format(std::string_view name);

/// Empty cells render as "n/a" in text formats and null in JSON.
using Cell = std::variant<std::monostate, std::string, std::uint64_t, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// A single-result table renders as one JSON object instead of an array.
  bool single = false;
};

void render(const Table& table, OutputFormat format, std::ostream& out);

/// RFC 4180 field quoting, applied only when the field needs it.
std::string csv_field(std::string_view text);

}  // namespace ruin::cli
