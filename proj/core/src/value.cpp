#include "ruin/value.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <system_error>

namespace ruin {

const mpq_class& Value::exact() const {
  if (!is_exact()) throw std::logic_error("Value::exact called on a floating value");
  return std::get<mpq_class>(repr_);
}

double Value::to_double() const {
  if (is_exact()) return std::get<mpq_class>(repr_).get_d();
  return std::get<double>(repr_);
}

std::string Value::str() const {
  if (is_exact()) return std::get<mpq_class>(repr_).get_str();
  return format_double(std::get<double>(repr_));
}

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw std::runtime_error("format_double: to_chars failed");
  return std::string(buf, ptr);
}

StepProbability::StepProbability(Value value) : value_(std::move(value)) {
  if (value_.is_exact()) {
    const auto& q = value_.exact();
    if (q < 0 || q > 1) throw std::invalid_argument("probability outside [0, 1]: " + q.get_str());
  } else {
    const double p = value_.to_double();
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("probability outside [0, 1]: " + format_double(p));
    }
  }
}

StepProbability StepProbability::parse(std::string_view text) {
  const std::string s(text);
  if (s.find('/') != std::string::npos) {
    mpq_class q;
    const auto slash = s.find('/');
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    const auto is_digits = [](const std::string& part) {
      return !part.empty() && part.find_first_not_of("0123456789") == std::string::npos;
    };
    if (!is_digits(num) || !is_digits(den)) {
      throw std::invalid_argument("malformed rational probability: " + s);
    }
    mpz_class n(num, 10);
    mpz_class d(den, 10);
    if (d == 0) throw std::invalid_argument("zero denominator in probability: " + s);
    return StepProbability(mpq_class(n, d));
  }
  double p = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(first, last, p, std::chars_format::general);
  if (s.empty() || ec != std::errc{} || ptr != last || !std::isfinite(p)) {
    throw std::invalid_argument("malformed probability: " + s);
  }
  return StepProbability(p);
}

}  // namespace ruin
