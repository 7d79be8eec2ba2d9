#include "ruin/combinatorics.hpp"

#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>

namespace ruin {
namespace {

// Grow-only memo of Catalan numbers. Readers take a shared lock; growth
// extends the table under the exclusive lock using
// C(n) = C(n-1) * 2(2n-1) / (n+1).
class CatalanTable {
 public:
  BallotCount get(std::uint64_t n) {
    {
      std::shared_lock lock(mutex_);
      if (n < values_.size()) return BallotCount(values_[n]);
    }
    std::unique_lock lock(mutex_);
    values_.reserve(n + 1);
    while (values_.size() <= n) {
      const std::uint64_t m = values_.size();
      mpz_class next = values_.back() * (2 * (2 * m - 1));
      mpz_divexact_ui(next.get_mpz_t(), next.get_mpz_t(), m + 1);
      values_.push_back(std::move(next));
    }
    return BallotCount(values_[n]);
  }

 private:
  std::shared_mutex mutex_;
  std::vector<mpz_class> values_{mpz_class(1)};
};

CatalanTable& catalan_table() {
  static CatalanTable table;
  return table;
}

}  // namespace

mpz_class binomial(std::uint64_t n, std::uint64_t r) {
  mpz_class out;
  if (r > n) return out;
  mpz_bin_uiui(out.get_mpz_t(), n, r);
  return out;
}

BallotCount catalan(std::uint64_t n) { return catalan_table().get(n); }

BallotCount ballot_count(std::uint64_t k, std::uint64_t n) {
  if (k == 0) {
    throw std::invalid_argument("ballot_count: k must be >= 1 (k = 0 is already absorbed)");
  }
  const std::uint64_t length = 2 * n + k;
  mpz_class count = binomial(length, n) * k;
  // k * binomial(2n+k, n) is always divisible by 2n+k.
  mpz_divexact_ui(count.get_mpz_t(), count.get_mpz_t(), length);
  return BallotCount(std::move(count));
}

BallotCount catalan_via_convolution(std::uint64_t n) {
  if (n == 0) {
    throw std::invalid_argument("catalan_via_convolution: n must be >= 1 (empty convolution)");
  }
  mpz_class sum = 0;
  for (std::uint64_t alpha = 1; alpha <= n; ++alpha) {
    sum += catalan(alpha - 1).value() * catalan(n - alpha).value();
  }
  return BallotCount(std::move(sum));
}

std::vector<std::vector<BallotCount>> ballot_table_via_recurrence(
    std::uint64_t max_k, std::uint64_t max_n) {
  if (max_k == 0) {
    throw std::invalid_argument("ballot_table_via_recurrence: max_k must be >= 1");
  }
  // Row j (1-based) is needed for n in 0..max_n + (max_k - j).
  const std::uint64_t width = max_n + max_k;
  std::vector<std::vector<mpz_class>> rows;
  rows.reserve(max_k);
  {
    std::vector<mpz_class> c1(width + 1);
    for (std::uint64_t n = 0; n <= width; ++n) c1[n] = catalan(n).value();
    rows.push_back(std::move(c1));
  }
  if (max_k >= 2) {
    std::vector<mpz_class> c2(width);
    for (std::uint64_t n = 0; n < width; ++n) c2[n] = catalan(n + 1).value();
    rows.push_back(std::move(c2));
  }
  for (std::uint64_t j = 3; j <= max_k; ++j) {
    const auto& prev = rows[j - 2];
    const auto& prev2 = rows[j - 3];
    std::vector<mpz_class> row(prev.size() - 1);
    for (std::uint64_t n = 0; n < row.size(); ++n) row[n] = prev[n + 1] - prev2[n + 1];
    rows.push_back(std::move(row));
  }

  std::vector<std::vector<BallotCount>> table(max_k);
  for (std::uint64_t j = 0; j < max_k; ++j) {
    table[j].reserve(max_n + 1);
    for (std::uint64_t n = 0; n <= max_n; ++n) table[j].emplace_back(rows[j][n]);
  }
  return table;
}

BallotCount ballot_via_recurrence(std::uint64_t k, std::uint64_t n) {
  if (k == 0) {
    throw std::invalid_argument("ballot_via_recurrence: k must be >= 1");
  }
  if (k == 1) return catalan(n);
  if (k == 2) return catalan(n + 1);
  // Two rolling rows: C_{j-2}(m) and C_{j-1}(m) for m in 0..n + (k - j) + 1.
  const std::uint64_t width = n + k;
  std::vector<mpz_class> older(width + 1);
  std::vector<mpz_class> newer(width);
  for (std::uint64_t m = 0; m <= width; ++m) older[m] = catalan(m).value();
  for (std::uint64_t m = 0; m < width; ++m) newer[m] = catalan(m + 1).value();
  for (std::uint64_t j = 3; j <= k; ++j) {
    std::vector<mpz_class> next(newer.size() - 1);
    for (std::uint64_t m = 0; m < next.size(); ++m) next[m] = newer[m + 1] - older[m + 1];
    older = std::move(newer);
    newer = std::move(next);
  }
  return BallotCount(std::move(newer[n]));
}

}  // namespace ruin
