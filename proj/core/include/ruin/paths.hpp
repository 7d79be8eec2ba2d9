#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ruin {

/// One unit move of the walk. A right step is a horizontal lattice bond, a
/// left step a vertical one.
enum class Step : std::uint8_t { Left, Right };

/// Default upper bound on the total path length 2n+k the enumerator accepts.
inline constexpr std::uint64_t kDefaultEnumerationCap = 26;

/// Raised when an enumeration request exceeds the configured length cap.
class EnumerationCapExceeded : public std::length_error {
 public:
  EnumerationCapExceeded(std::uint64_t requested, std::uint64_t cap);

  std::uint64_t requested() const noexcept { return requested_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t requested_;
  std::uint64_t cap_;
};

/// Whether `steps` walked from `start` stays strictly positive on every
/// proper prefix and ends exactly at 0.
bool is_first_passage(std::int64_t start, std::span<const Step> steps);

/// A trajectory from position `start` that is absorbed at 0 on its last
/// step. Lattice coordinates are derived on demand from the step sequence.
class LatticePath {
 public:
  /// Validates the first-passage invariants; throws std::invalid_argument.
  LatticePath(std::uint64_t start, std::vector<Step> steps);

  /// Parses the canonical "k:RLLL" form.
  static LatticePath parse(std::string_view text);

  std::uint64_t start() const noexcept { return start_; }
  const std::vector<Step>& steps() const noexcept { return steps_; }
  std::size_t length() const noexcept { return steps_.size(); }
  std::uint64_t right_steps() const noexcept { return (steps_.size() - start_) / 2; }
  std::uint64_t left_steps() const noexcept { return right_steps() + start_; }

  /// Positions pos_0 = start, ..., pos_length = 0.
  std::vector<std::int64_t> positions() const;

  /// Canonical serialization "k:" followed by one 'R'/'L' per step.
  std::string str() const;

  friend bool operator==(const LatticePath&, const LatticePath&) = default;
  friend auto operator<=>(const LatticePath&, const LatticePath&) = default;

 private:
  std::uint64_t start_;
  std::vector<Step> steps_;
};

/// All first-passage paths from k with n right steps, in lexicographic order
/// of their canonical strings ('L' < 'R', matching LatticePath ordering). Backtracking prunes prefixes that
/// touch 0 early or can no longer reach 0 with the remaining steps.
std::vector<LatticePath> enumerate_first_passage(std::uint64_t k, std::uint64_t n,
                                                 std::uint64_t cap = kDefaultEnumerationCap);

struct FirstReturnParts {
  std::uint64_t alpha;  // 1..n
  LatticePath left;     // start 1, alpha - 1 right steps
  LatticePath right;    // start 1, n - alpha right steps
};

/// Splits a start-1 path with n >= 1 right steps at its first return to
/// position 1. The segment before the return, shifted down one level, is
/// `left`; the remaining suffix is `right`.
FirstReturnParts first_return_decompose(const LatticePath& path);

/// Inverse of first_return_decompose: R, then `left` lifted one level, then
/// `right`. `alpha` must equal left.right_steps() + 1.
LatticePath first_return_compose(std::uint64_t alpha, const LatticePath& left,
                                 const LatticePath& right);

/// Start-1 path with n+1 right steps -> start-2 path with n right steps, by
/// dropping the leading right step.
LatticePath shift_bijection_k2(const LatticePath& path);

/// Inverse of shift_bijection_k2: prepend a right step and restart at 1.
LatticePath shift_bijection_k2_inverse(const LatticePath& path);

struct FirstStepPartition {
  std::vector<LatticePath> to_k;          // images of paths opening with Right
  std::vector<LatticePath> to_k_minus_2;  // images of paths opening with Left
};

/// Splits the first-passage paths from k-1 with n+1 right steps by their
/// first step and strips it. Right-openers land on paths from k with n right
/// steps; left-openers on paths from k-2 with n+1 right steps. Requires k >= 3.
FirstStepPartition partition_by_first_step(std::uint64_t k, std::uint64_t n,
                                           std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace ruin
