#include "ruin/probability.hpp"

#include <cmath>
#include <stdexcept>

namespace ruin {
namespace {

// Terms t_n = C_k(n) a^n b^(n+k) / d^(2n+k) with p = a/d, 1-p = b/d, kept as
// integers over the common denominator d^(2n+k) so the running sum never
// needs a gcd until it is read out.
class ExactSeries {
 public:
  ExactSeries(std::uint64_t k, const mpq_class& p)
      : k_(k), a_(p.get_num()), d_(p.get_den()), b_(d_ - a_) {
    mpz_pow_ui(bpow_.get_mpz_t(), b_.get_mpz_t(), k);
    mpz_pow_ui(denom_.get_mpz_t(), d_.get_mpz_t(), k);
    d2_ = d_ * d_;
    ratio_num_ = 4 * a_ * b_;
    ratio_gap_ = (a_ - b_) * (a_ - b_);
    term_ = bpow_;
    sum_ = term_;
  }

  void advance() {
    const std::uint64_t len = 2 * n_ + k_;
    count_ *= len;
    count_ *= len + 1;
    mpz_divexact_ui(count_.get_mpz_t(), count_.get_mpz_t(), n_ + 1);
    mpz_divexact_ui(count_.get_mpz_t(), count_.get_mpz_t(), n_ + k_ + 1);
    apow_ *= a_;
    bpow_ *= b_;
    denom_ *= d2_;
    term_ = count_ * apow_ * bpow_;
    sum_ = sum_ * d2_ + term_;
    ++n_;
  }

  std::uint64_t n() const { return n_; }
  Value term() const { return Value(mpq_class(term_, denom_)); }
  Value sum() const { return Value(mpq_class(sum_, denom_)); }
  // t_n * r / (1 - r) = term * 4ab / ((a - b)^2 * denom); needs a != b.
  Value tail() const { return Value(mpq_class(term_ * ratio_num_, ratio_gap_ * denom_)); }
  bool tail_within(const mpq_class& target) const {
    return term_ * ratio_num_ * target.get_den() <= target.get_num() * ratio_gap_ * denom_;
  }

 private:
  std::uint64_t k_;
  std::uint64_t n_ = 0;
  mpz_class a_, d_, b_, d2_;
  mpz_class count_{1}, apow_{1}, bpow_, denom_;
  mpz_class ratio_num_, ratio_gap_;
  mpz_class term_, sum_;
};

class FloatSeries {
 public:
  FloatSeries(std::uint64_t k, double p)
      : k_(k), pq_(p * (1.0 - p)), r_(4.0 * pq_), term_(std::pow(1.0 - p, static_cast<double>(k))),
        sum_(term_) {}

  void advance() {
    const double len = static_cast<double>(2 * n_ + k_);
    term_ *= pq_ * len * (len + 1.0) /
             (static_cast<double>(n_ + 1) * static_cast<double>(n_ + k_ + 1));
    sum_ += term_;
    ++n_;
  }

  std::uint64_t n() const { return n_; }
  Value term() const { return Value(term_); }
  Value sum() const { return Value(sum_); }
  Value tail() const { return Value(tail_double()); }
  bool tail_within(double target) const { return tail_double() <= target; }

 private:
  double tail_double() const { return term_ * r_ / (1.0 - r_); }

  std::uint64_t k_;
  std::uint64_t n_ = 0;
  double pq_, r_, term_, sum_;
};

// r = 4p(1-p) reaches 1 only at p = 1/2; a zero-width band still has to
// exclude that point.
bool in_critical_band(const StepProbability& p, double band) {
  if (p.is_exact() && p.value().exact() == mpq_class(1, 2)) return true;
  const double gap = std::fabs(p.to_double() - 0.5);
  return gap < band || gap == 0.0;
}

template <typename Series, typename Target>
SeriesEvaluation run_series(Series series, std::uint64_t k, bool critical, const Target& target,
                            const SeriesOptions& options) {
  const std::uint64_t n0 = tail_certification_start(k);
  SeriesEvaluation out;
  for (;;) {
    if (!critical && series.n() >= n0 && series.tail_within(target)) {
      out.converged = true;
      break;
    }
    if (series.n() + 1 >= options.max_terms) break;
    if (options.stop.stop_requested()) {
      out.cancelled = true;
      break;
    }
    series.advance();
  }
  out.partial_sum = series.sum();
  out.terms_used = series.n() + 1;
  if (!critical && series.n() >= n0) out.tail_bound = series.tail();
  return out;
}

template <typename Series>
void run_trace(Series series, std::uint64_t k, bool critical, std::uint64_t last_n,
               const std::function<void(const SeriesRow&)>& sink) {
  const std::uint64_t n0 = tail_certification_start(k);
  for (;;) {
    SeriesRow row{series.n(), series.term(), series.sum(), std::nullopt};
    if (!critical && series.n() >= n0) row.tail_bound = series.tail();
    sink(row);
    if (series.n() >= last_n) break;
    series.advance();
  }
}

}  // namespace

Value absorption_exact(std::uint64_t k, const StepProbability& p) {
  if (k == 0) throw std::invalid_argument("absorption_exact: k must be >= 1");
  if (p.is_exact()) {
    const mpq_class& q = p.value().exact();
    if (q <= mpq_class(1, 2)) return Value(mpq_class(1));
    // (1-p)/p = (d-a)/a, already in lowest terms.
    mpz_class num = q.get_den() - q.get_num();
    mpz_class den = q.get_num();
    mpz_pow_ui(num.get_mpz_t(), num.get_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), den.get_mpz_t(), k);
    return Value(mpq_class(num, den));
  }
  const double x = p.to_double();
  if (x <= 0.5) return Value(1.0);
  return Value(std::pow((1.0 - x) / x, static_cast<double>(k)));
}

double generating_function(double z) {
  if (!(z >= 0.0 && z <= 0.25)) {
    throw std::domain_error("generating_function: z must lie in [0, 1/4]");
  }
  return (1.0 - std::sqrt(1.0 - 4.0 * z)) / 2.0;
}

double absorption_via_gf(const StepProbability& p) {
  if (p.is_exact() ? p.value().exact() == 0 : p.to_double() == 0.0) {
    throw std::invalid_argument("absorption_via_gf: p must be > 0");
  }
  double z = 0.0;
  if (p.is_exact()) {
    const mpq_class& q = p.value().exact();
    z = mpq_class(q * (1 - q)).get_d();
  } else {
    const double x = p.to_double();
    z = x * (1.0 - x);
  }
  return generating_function(z) / p.to_double();
}

std::uint64_t tail_certification_start(std::uint64_t k) {
  // (k - 2)(k + 1) is always even.
  if (k <= 2) return 0;
  return (k - 2) * (k + 1) / 2;
}

SeriesEvaluation absorption_series(std::uint64_t k, const StepProbability& p, double target_tail,
                                   const SeriesOptions& options) {
  if (k == 0) throw std::invalid_argument("absorption_series: k must be >= 1");
  if (!(target_tail > 0.0)) throw std::invalid_argument("absorption_series: target_tail must be > 0");
  if (options.max_terms == 0) throw std::invalid_argument("absorption_series: max_terms must be >= 1");
  const bool critical = in_critical_band(p, options.near_critical_band);
  if (p.is_exact()) {
    return run_series(ExactSeries(k, p.value().exact()), k, critical, mpq_class(target_tail),
                      options);
  }
  return run_series(FloatSeries(k, p.to_double()), k, critical, target_tail, options);
}

void absorption_series_trace(std::uint64_t k, const StepProbability& p, std::uint64_t last_n,
                             const std::function<void(const SeriesRow&)>& sink,
                             double near_critical_band) {
  if (k == 0) throw std::invalid_argument("absorption_series_trace: k must be >= 1");
  const bool critical = in_critical_band(p, near_critical_band);
  if (p.is_exact()) {
    run_trace(ExactSeries(k, p.value().exact()), k, critical, last_n, sink);
  } else {
    run_trace(FloatSeries(k, p.to_double()), k, critical, last_n, sink);
  }
}

Value three_term_residual(std::uint64_t k, const StepProbability& p) {
  if (k == 0) throw std::invalid_argument("three_term_residual: k must be >= 1");
  const double x = p.to_double();
  if (p.is_exact() ? (p.value().exact() == 0 || p.value().exact() == 1) : (x == 0.0 || x == 1.0)) {
    throw std::invalid_argument("three_term_residual: p must lie strictly between 0 and 1");
  }
  const Value pk = absorption_exact(k, p);
  const Value pk1 = absorption_exact(k + 1, p);
  const Value pk2 = absorption_exact(k + 2, p);
  if (p.is_exact()) {
    const mpq_class& q = p.value().exact();
    mpq_class rhs = pk1.exact() / q - (1 - q) / q * pk.exact();
    return Value(mpq_class(pk2.exact() - rhs));
  }
  return Value(pk2.to_double() - (pk1.to_double() / x - (1.0 - x) / x * pk.to_double()));
}

bool verify_three_term(std::uint64_t k, const StepProbability& p) {
  const Value residual = three_term_residual(k, p);
  if (residual.is_exact()) return residual.exact() == 0;
  return std::fabs(residual.to_double()) <= 1e-12;
}

}  // namespace ruin
