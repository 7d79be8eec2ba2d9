#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stop_token>

#include "ruin/value.hpp"

namespace ruin {

/// Probability of eventual absorption at 0 from position k: 1 when p <= 1/2,
/// ((1-p)/p)^k otherwise. Exact for rational p.
Value absorption_exact(std::uint64_t k, const StepProbability& p);

/// Minus root (1 - sqrt(1 - 4z)) / 2 of F^2 - F + z = 0, the generating
/// function of the shifted Catalan numbers. Throws std::domain_error unless
/// 0 <= z <= 1/4.
double generating_function(double z);

/// P(x=1) recovered as F(p - p^2) / p. Throws std::invalid_argument at p = 0.
double absorption_via_gf(const StepProbability& p);

struct SeriesOptions {
  /// Half-width of the band around p = 1/2 where no geometric tail bound is
  /// attempted.
  double near_critical_band = 0.005;
  /// Hard limit on summed terms when no certificate is reached.
  std::uint64_t max_terms = 100000;
  /// Checked between terms; a stop request ends the sum uncertified.
  std::stop_token stop;
};

/// Truncated sum of C_k(n) p^n (1-p)^(n+k).
struct SeriesEvaluation {
  Value partial_sum;
  std::uint64_t terms_used = 0;
  /// Certified bound on the omitted tail, or +inf when none could be given.
  Value tail_bound{std::numeric_limits<double>::infinity()};
  bool converged = false;
  bool cancelled = false;
};

/// First index from which the term ratio of the series is bounded by
/// 4p(1-p): max(0, (k^2 - k - 2) / 2).
std::uint64_t tail_certification_start(std::uint64_t k);

/// Sums terms n = 0..N for the smallest N >= tail_certification_start(k) whose
/// geometric tail bound t_N r / (1 - r), r = 4p(1-p), is <= target_tail.
/// Inside the near-critical band, or when max_terms runs out, the result is
/// reported with converged = false and partial_sum is a lower bound.
SeriesEvaluation absorption_series(std::uint64_t k, const StepProbability& p, double target_tail,
                                   const SeriesOptions& options = {});

struct SeriesRow {
  std::uint64_t n;
  Value term;
  Value partial_sum;
  std::optional<Value> tail_bound;  // empty before certification can start
};

/// Emits one row per term for n = 0..last_n.
void absorption_series_trace(std::uint64_t k, const StepProbability& p, std::uint64_t last_n,
                             const std::function<void(const SeriesRow&)>& sink,
                             double near_critical_band = 0.005);

/// P(k+2) - [P(k+1)/p - (1-p)/p * P(k)] using absorption_exact throughout.
/// Throws std::invalid_argument for p in {0, 1}.
Value three_term_residual(std::uint64_t k, const StepProbability& p);

/// Whether the three-term recurrence holds: exactly for rational p, to
/// within 1e-12 for floating p.
bool verify_three_term(std::uint64_t k, const StepProbability& p);

}  // namespace ruin
