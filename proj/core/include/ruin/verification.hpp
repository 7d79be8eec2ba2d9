#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ruin/paths.hpp"

namespace ruin {

/// Outcome of one identity checked over a finite range.
struct IdentityCheck {
  std::string name;
  std::string range;
  bool passed = true;
  std::string counterexample;  // first failure, empty when passed
};

struct VerifyBounds {
  std::uint64_t max_k = 50;         // recurrences
  std::uint64_t max_n = 200;        // recurrences
  std::uint64_t oracle_max_k = 6;   // enumeration oracle
  std::uint64_t max_length = 22;    // longest enumerated path, 2n + k
  std::uint64_t bijection_max_n = 8;
  std::uint64_t cap = kDefaultEnumerationCap;

  /// Throws std::invalid_argument when a bound is zero or exceeds the cap.
  void validate() const;
};

enum class Suite { All, Recurrences, Bijections, Oracle, Probability };

std::vector<IdentityCheck> verify_recurrences(const VerifyBounds& bounds);
std::vector<IdentityCheck> verify_oracle(const VerifyBounds& bounds);
std::vector<IdentityCheck> verify_bijections(const VerifyBounds& bounds);
std::vector<IdentityCheck> verify_probability();

std::vector<IdentityCheck> run_suite(Suite suite, const VerifyBounds& bounds);

}  // namespace ruin
