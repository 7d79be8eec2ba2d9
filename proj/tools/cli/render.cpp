#include "cli/render.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace ruin::cli {
namespace {

std::string text_of(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return "n/a"; }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
  };
  return std::visit(Visitor{}, cell);
}

nlohmann::ordered_json json_of(const Cell& cell) {
  struct Visitor {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
    nlohmann::ordered_json operator()(std::uint64_t v) const { return v; }
    nlohmann::ordered_json operator()(bool b) const { return b; }
  };
  return std::visit(Visitor{}, cell);
}

void render_plain(const Table& table, std::ostream& out) {
  std::vector<std::size_t> width(table.columns.size());
  for (std::size_t c = 0; c < table.columns.size(); ++c) width[c] = table.columns[c].size();
  std::vector<std::vector<std::string>> text;
  text.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    auto& line = text.emplace_back();
    for (std::size_t c = 0; c < row.size(); ++c) {
      line.push_back(text_of(row[c]));
      width[c] = std::max(width[c], line.back().size());
    }
  }
  const auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c > 0) out << "  ";
      out << cells[c];
      if (c + 1 < cells.size()) out << std::string(width[c] - cells[c].size(), ' ');
    }
    out << '\n';
  };
  emit(table.columns);
  for (const auto& line : text) emit(line);
}

void render_csv(const Table& table, std::ostream& out) {
  const auto emit = [&](const auto& cells, auto to_text) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c > 0) out << ',';
      out << csv_field(to_text(cells[c]));
    }
    out << '\n';
  };
  emit(table.columns, [](const std::string& s) { return s; });
  for (const auto& row : table.rows) emit(row, [](const Cell& cell) { return text_of(cell); });
}

void render_json(const Table& table, std::ostream& out) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = json_of(row[c]);
    rows.push_back(std::move(obj));
  }
  if (table.single && rows.size() == 1) {
    out << rows.front().dump(2) << '\n';
  } else {
    out << rows.dump(2) << '\n';
  }
}

}  // namespace

OutputFormat parse_format(std::string_view name) {
  if (name == "table") return OutputFormat::PlainTable;
  if (name == "csv") return OutputFormat::CSV;
  if (name == "json") return OutputFormat::JSON;
  throw std::invalid_argument("unknown format '" + std::string(name) + "' (table|csv|json)");
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void render(const Table& table, OutputFormat format, std::ostream& out) {
  switch (format) {
    case OutputFormat::PlainTable:
      render_plain(table, out);
      break;
    case OutputFormat::CSV:
      render_csv(table, out);
      break;
    case OutputFormat::JSON:
      render_json(table, out);
      break;
  }
}

}  // namespace ruin::cli
