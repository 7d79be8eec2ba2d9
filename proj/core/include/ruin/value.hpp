#pragma once

#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace ruin {

/// A real number carried either as an exact rational or as a double. Exact
/// values stay exact through every operation in this library; nothing
/// converts them to floating point unless asked through to_double().
class Value {
 public:
  Value() : repr_(mpq_class(0)) {}
  Value(mpq_class exact) : repr_(std::move(exact)) { std::get<mpq_class>(repr_).canonicalize(); }
  Value(double approx) : repr_(approx) {}

  bool is_exact() const noexcept { return std::holds_alternative<mpq_class>(repr_); }
  /// Throws std::logic_error when the value is floating.
  const mpq_class& exact() const;
  double to_double() const;

  /// "num/den" (or a bare integer) for exact values, shortest round-trip
  /// decimal for doubles ("inf" for infinity).
  std::string str() const;

 private:
  std::variant<mpq_class, double> repr_;
};

/// Probability p of a right step. Holds a Value constrained to [0, 1].
class StepProbability {
 public:
  explicit StepProbability(Value value);
  explicit StepProbability(double p) : StepProbability(Value(p)) {}
  explicit StepProbability(mpq_class p) : StepProbability(Value(std::move(p))) {}

  /// "num/den" selects exact arithmetic; anything else is read as a decimal
  /// double. Throws std::invalid_argument on malformed or out-of-range input.
  static StepProbability parse(std::string_view text);

  const Value& value() const noexcept { return value_; }
  bool is_exact() const noexcept { return value_.is_exact(); }
  double to_double() const { return value_.to_double(); }
  std::string str() const { return value_.str(); }

 private:
  Value value_;
};

/// Shortest decimal string that reads back to the same double.
std::string format_double(double x);

}  // namespace ruin
