#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>

#include "ruin/value.hpp"

namespace ruin {

/// xoshiro256** (Blackman & Vigna), period 2^256 - 1. Satisfies
/// UniformRandomBitGenerator.
class Xoshiro256StarStar {
 public:
  using result_type = std::uint64_t;

  /// State filled from four consecutive SplitMix64 outputs starting at `seed`.
  explicit Xoshiro256StarStar(std::uint64_t seed);
  /// Raw state; must not be all zero.
  explicit Xoshiro256StarStar(const std::array<std::uint64_t, 4>& state) : s_(state) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::array<std::uint64_t, 4> s_;
};

/// Independent generator for trial `trial` of a run seeded with `seed`. Each
/// trial owns a disjoint window of the SplitMix64 counter sequence, so the
/// stream depends only on (seed, trial).
Xoshiro256StarStar trial_stream(std::uint64_t seed, std::uint64_t trial);

struct WalkConfig {
  std::uint64_t k = 1;
  StepProbability p{0.5};
  std::uint64_t max_steps = 100000;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on k == 0, trials == 0 or max_steps < k.
  void validate() const;
};

/// Step at which the walk first hit 0, or empty when the horizon ran out.
struct WalkOutcome {
  std::optional<std::uint64_t> absorbed_at;
  bool absorbed() const noexcept { return absorbed_at.has_value(); }
};

/// Simulates one walk from k. Far from the origin the walk advances in
/// blocks of pos - 1 steps, drawing the number of right steps from a
/// binomial, since no block that short can reach 0. The random stream
/// consumed is independent of max_steps, so a longer horizon only extends
/// the same trajectory.
WalkOutcome run_walk(std::uint64_t k, double p, std::uint64_t max_steps, Xoshiro256StarStar& rng);

struct AbsorptionEstimate {
  std::uint64_t absorbed = 0;
  std::uint64_t censored = 0;
  double point = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  /// Set when some walks were censored; the point estimate is then biased low.
  bool is_lower_bound = false;

  std::uint64_t trials() const noexcept { return absorbed + censored; }
  friend bool operator==(const AbsorptionEstimate&, const AbsorptionEstimate&) = default;
};

struct Interval {
  double low;
  double high;
};

/// Wilson score interval for `successes` out of `trials` at normal quantile z.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                         double z = 1.959963984540054);

/// Runs config.trials walks. `workers` == 0 picks the hardware concurrency;
/// the result is the same for any worker count.
AbsorptionEstimate estimate_absorption(const WalkConfig& config, unsigned workers = 0);

}  // namespace ruin
