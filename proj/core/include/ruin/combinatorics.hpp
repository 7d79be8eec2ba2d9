#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ruin {

/// Exact count of first-passage lattice paths. Always an integer >= 1 for
/// the inputs accepted by this module.
class BallotCount {
 public:
  BallotCount() = default;
  explicit BallotCount(mpz_class value) : value_(std::move(value)) {}
  explicit BallotCount(unsigned long value) : value_(value) {}

  const mpz_class& value() const noexcept { return value_; }
  std::string str() const { return value_.get_str(); }

  friend bool operator==(const BallotCount& a, const BallotCount& b) {
    return a.value_ == b.value_;
  }
  friend bool operator<(const BallotCount& a, const BallotCount& b) {
    return a.value_ < b.value_;
  }
  friend bool operator>(const BallotCount& a, const BallotCount& b) {
    return b < a;
  }

 private:
  mpz_class value_{1};
};

/// n-th Catalan number (2n)!/(n!(n+1)!). Values are memoized in a
/// process-wide grow-only table that is safe for concurrent use.
BallotCount catalan(std::uint64_t n);

/// Number of first-passage paths from start k with n right steps,
/// k/(2n+k) * binomial(2n+k, n). Throws std::invalid_argument for k == 0.
BallotCount ballot_count(std::uint64_t k, std::uint64_t n);

/// Catalan number rebuilt from the first-return convolution
/// sum_{a=1..n} C(a-1) C(n-a). Throws std::invalid_argument for n == 0,
/// where the sum is empty.
BallotCount catalan_via_convolution(std::uint64_t n);

/// C_k(n) computed only from C_1(n) = C(n), C_2(n) = C(n+1) and
/// C_k(n) = C_{k-1}(n+1) - C_{k-2}(n+1).
BallotCount ballot_via_recurrence(std::uint64_t k, std::uint64_t n);

/// Full table T[k-1][n] = C_k(n) for k in 1..max_k, n in 0..max_n, filled by
/// the same recurrence in O(max_k * (max_n + max_k)) big-integer steps.
std::vector<std::vector<BallotCount>> ballot_table_via_recurrence(
    std::uint64_t max_k, std::uint64_t max_n);

/// binomial(n, r) as an exact integer.
mpz_class binomial(std::uint64_t n, std::uint64_t r);

}  // namespace ruin
