#include "ruin/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

namespace ruin {
namespace {

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

// Below this position the walk is stepped one unit at a time.
constexpr std::uint64_t kBlockThreshold = 16;

std::uint64_t draw_right_steps(std::uint64_t block, double p, Xoshiro256StarStar& rng) {
  if (p <= 0.0) return 0;
  if (p >= 1.0) return block;
  std::binomial_distribution<std::uint64_t> dist(block, p);
  return dist(rng);
}

}  // namespace

Xoshiro256StarStar::Xoshiro256StarStar(std::uint64_t seed) {
  std::uint64_t state = seed;
  for (auto& word : s_) {
    state += kGoldenGamma;
    word = splitmix64_mix(state);
  }
}

Xoshiro256StarStar::result_type Xoshiro256StarStar::operator()() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

Xoshiro256StarStar trial_stream(std::uint64_t seed, std::uint64_t trial) {
  return Xoshiro256StarStar(splitmix64_mix(seed) + 4 * trial * kGoldenGamma);
}

void WalkConfig::validate() const {
  if (k == 0) throw std::invalid_argument("walk config: k must be >= 1");
  if (trials == 0) throw std::invalid_argument("walk config: trials must be >= 1");
  if (max_steps < k) throw std::invalid_argument("walk config: max_steps must be >= k");
}

WalkOutcome run_walk(std::uint64_t k, double p, std::uint64_t max_steps, Xoshiro256StarStar& rng) {
  std::uint64_t pos = k;
  std::uint64_t t = 0;
  while (t < max_steps) {
    if (pos > kBlockThreshold) {
      const std::uint64_t block = pos - 1;
      if (t + block >= max_steps) break;  // 0 is out of reach inside the block
      const std::uint64_t right = draw_right_steps(block, p, rng);
      pos = pos + 2 * right - block;
      t += block;
      continue;
    }
    pos = rng.uniform01() < p ? pos + 1 : pos - 1;
    ++t;
    if (pos == 0) return WalkOutcome{t};
  }
  return WalkOutcome{};
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) throw std::invalid_argument("wilson_interval: trials must be >= 1");
  const double n = static_cast<double>(trials);
  const double x = static_cast<double>(successes);
  const double phat = x / n;
  const double z2 = z * z;
  const double center = (x + z2 / 2.0) / (n + z2);
  const double half = z / (n + z2) * std::sqrt(x * (n - x) / n + z2 / 4.0);
  return Interval{std::clamp(std::min(center - half, phat), 0.0, 1.0),
                  std::clamp(std::max(center + half, phat), 0.0, 1.0)};
}

AbsorptionEstimate estimate_absorption(const WalkConfig& config, unsigned workers) {
  config.validate();
  const double p = config.p.to_double();
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, config.trials));

  std::vector<std::uint64_t> absorbed(workers, 0);
  const auto run_range = [&](unsigned worker) {
    const std::uint64_t begin = config.trials * worker / workers;
    const std::uint64_t end = config.trials * (worker + 1) / workers;
    std::uint64_t count = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      auto rng = trial_stream(config.seed, i);
      if (run_walk(config.k, p, config.max_steps, rng).absorbed()) ++count;
    }
    absorbed[worker] = count;
  };

  if (workers == 1) {
    run_range(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run_range, w);
  }

  AbsorptionEstimate out;
  for (auto c : absorbed) out.absorbed += c;
  out.censored = config.trials - out.absorbed;
  out.point = static_cast<double>(out.absorbed) / static_cast<double>(config.trials);
  const Interval ci = wilson_interval(out.absorbed, config.trials);
  out.ci_low = ci.low;
  out.ci_high = ci.high;
  out.is_lower_bound = out.censored > 0;
  return out;
}

}  // namespace ruin
