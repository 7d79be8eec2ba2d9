#include "ruin/verification.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "ruin/combinatorics.hpp"
#include "ruin/probability.hpp"

namespace ruin {
namespace {

std::string kn(std::uint64_t k, std::uint64_t n) {
  return "k=" + std::to_string(k) + ", n=" + std::to_string(n);
}

IdentityCheck start(std::string name, std::string range) {
  IdentityCheck check;
  check.name = std::move(name);
  check.range = std::move(range);
  return check;
}

void fail(IdentityCheck& check, std::string what) {
  if (check.passed) {
    check.passed = false;
    check.counterexample = std::move(what);
  }
}

std::vector<std::string> canonical(const std::vector<LatticePath>& paths) {
  std::vector<std::string> out;
  out.reserve(paths.size());
  for (const auto& p : paths) out.push_back(p.str());
  std::sort(out.begin(), out.end());
  return out;
}

// Rational probability grid covering both branches and the endpoints.
std::vector<mpq_class> rational_grid() {
  std::vector<mpq_class> grid;
  for (int num = 0; num <= 20; ++num) grid.emplace_back(num, 20);
  grid.emplace_back(1, 3);
  grid.emplace_back(2, 3);
  grid.emplace_back(3, 7);
  grid.emplace_back(5, 7);
  grid.emplace_back(51, 100);
  for (auto& q : grid) q.canonicalize();
  return grid;
}

}  // namespace

void VerifyBounds::validate() const {
  if (max_k == 0 || oracle_max_k == 0) throw std::invalid_argument("verify: k bounds must be >= 1");
  if (max_length == 0) throw std::invalid_argument("verify: length bound must be >= 1");
  if (max_length > cap) {
    throw std::invalid_argument("verify: length bound " + std::to_string(max_length) +
                                " exceeds enumeration cap " + std::to_string(cap));
  }
  if (2 * bijection_max_n + 3 > cap) {
    throw std::invalid_argument("verify: bijection bound needs paths longer than the cap");
  }
}

std::vector<IdentityCheck> verify_recurrences(const VerifyBounds& b) {
  std::vector<IdentityCheck> out;
  const std::string kn_range = "k=1.." + std::to_string(b.max_k) + ", n=0.." + std::to_string(b.max_n);

  IdentityCheck rec = start("ballot_via_recurrence == ballot_count", kn_range);
  const auto table = ballot_table_via_recurrence(b.max_k, b.max_n);
  for (std::uint64_t k = 1; k <= b.max_k && rec.passed; ++k) {
    for (std::uint64_t n = 0; n <= b.max_n; ++n) {
      if (!(table[k - 1][n] == ballot_count(k, n))) {
        fail(rec, kn(k, n));
        break;
      }
    }
  }
  out.push_back(rec);

  IdentityCheck conv = start("catalan_via_convolution == catalan", "n=1.." + std::to_string(b.max_n));
  for (std::uint64_t n = 1; n <= b.max_n; ++n) {
    if (!(catalan_via_convolution(n) == catalan(n))) {
      fail(conv, "n=" + std::to_string(n));
      break;
    }
  }
  out.push_back(conv);

  const std::uint64_t shift_n = std::max<std::uint64_t>(b.max_n, 500);
  IdentityCheck shift = start("C_2(n) == C(n+1)", "n=0.." + std::to_string(shift_n));
  for (std::uint64_t n = 0; n <= shift_n; ++n) {
    if (!(ballot_count(2, n) == catalan(n + 1))) {
      fail(shift, "n=" + std::to_string(n));
      break;
    }
  }
  out.push_back(shift);

  IdentityCheck three = start("C_k(n) == C_{k-1}(n+1) - C_{k-2}(n+1)",
                      "k=3.." + std::to_string(b.max_k) + ", n=0.." + std::to_string(b.max_n));
  for (std::uint64_t k = 3; k <= b.max_k && three.passed; ++k) {
    for (std::uint64_t n = 0; n <= b.max_n; ++n) {
      const mpz_class rhs = ballot_count(k - 1, n + 1).value() - ballot_count(k - 2, n + 1).value();
      if (ballot_count(k, n).value() != rhs) {
        fail(three, kn(k, n));
        break;
      }
    }
  }
  out.push_back(three);

  IdentityCheck exact = start("C_k(n) * (2n+k) == k * binomial(2n+k, n)", kn_range);
  for (std::uint64_t k = 1; k <= b.max_k && exact.passed; ++k) {
    for (std::uint64_t n = 0; n <= b.max_n; ++n) {
      if (ballot_count(k, n).value() * (2 * n + k) != binomial(2 * n + k, n) * k) {
        fail(exact, kn(k, n));
        break;
      }
    }
  }
  out.push_back(exact);

  IdentityCheck mono = start("C_k(n+1) > C_k(n) for n >= 1", kn_range);
  for (std::uint64_t k = 1; k <= b.max_k && mono.passed; ++k) {
    for (std::uint64_t n = 1; n < b.max_n; ++n) {
      if (!(ballot_count(k, n + 1) > ballot_count(k, n))) {
        fail(mono, kn(k, n));
        break;
      }
    }
  }
  out.push_back(mono);
  return out;
}

std::vector<IdentityCheck> verify_oracle(const VerifyBounds& b) {
  const std::string range =
      "k=1.." + std::to_string(b.oracle_max_k) + ", 2n+k<=" + std::to_string(b.max_length);
  IdentityCheck count = start("|enumerate_first_passage(k, n)| == C_k(n)", range);
  IdentityCheck valid = start("every enumerated path is first-passage", range);
  for (std::uint64_t k = 1; k <= b.oracle_max_k && k <= b.max_length; ++k) {
    for (std::uint64_t n = 0; 2 * n + k <= b.max_length; ++n) {
      const auto paths = enumerate_first_passage(k, n, b.cap);
      if (ballot_count(k, n).value() != paths.size()) {
        fail(count, kn(k, n) + ": enumerated " + std::to_string(paths.size()) + ", formula " +
                        ballot_count(k, n).str());
      }
      for (const auto& path : paths) {
        if (!is_first_passage(static_cast<std::int64_t>(path.start()), path.steps()) ||
            path.right_steps() != n) {
          fail(valid, path.str());
          break;
        }
      }
    }
  }
  return {count, valid};
}

std::vector<IdentityCheck> verify_bijections(const VerifyBounds& b) {
  std::vector<IdentityCheck> out;
  const std::string nrange = "n<=" + std::to_string(b.bijection_max_n);

  IdentityCheck shift = start("shift bijection onto enumerate_first_passage(2, n)", nrange);
  for (std::uint64_t n = 0; n <= b.bijection_max_n && 2 * n + 3 <= b.cap; ++n) {
    const auto source = enumerate_first_passage(1, n + 1, b.cap);
    std::vector<LatticePath> image;
    for (const auto& path : source) {
      image.push_back(shift_bijection_k2(path));
      if (!(shift_bijection_k2_inverse(image.back()) == path)) fail(shift, "round trip " + path.str());
    }
    if (canonical(image) != canonical(enumerate_first_passage(2, n, b.cap))) {
      fail(shift, "image mismatch at n=" + std::to_string(n));
    }
  }
  out.push_back(shift);

  IdentityCheck ret = start("first-return decomposition reassembles C(n)", "1<=" + nrange);
  for (std::uint64_t n = 1; n <= b.bijection_max_n && 2 * n + 1 <= b.cap; ++n) {
    const auto paths = enumerate_first_passage(1, n, b.cap);
    for (const auto& path : paths) {
      const auto parts = first_return_decompose(path);
      if (parts.alpha < 1 || parts.alpha > n ||
          !(first_return_compose(parts.alpha, parts.left, parts.right) == path)) {
        fail(ret, "round trip " + path.str());
      }
    }
    std::vector<LatticePath> rebuilt;
    for (std::uint64_t alpha = 1; alpha <= n; ++alpha) {
      for (const auto& left : enumerate_first_passage(1, alpha - 1, b.cap)) {
        for (const auto& right : enumerate_first_passage(1, n - alpha, b.cap)) {
          rebuilt.push_back(first_return_compose(alpha, left, right));
        }
      }
    }
    if (canonical(rebuilt) != canonical(paths)) fail(ret, "image mismatch at n=" + std::to_string(n));
  }
  out.push_back(ret);

  IdentityCheck part = start("first-step partition splits C_{k-1}(n+1) into C_k(n) + C_{k-2}(n+1)",
                     "k=3..5, 2(n+1)+(k-1)<=" + std::to_string(b.max_length));
  for (std::uint64_t k = 3; k <= 5; ++k) {
    for (std::uint64_t n = 0; 2 * (n + 1) + (k - 1) <= b.max_length; ++n) {
      const auto split = partition_by_first_step(k, n, b.cap);
      if (canonical(split.to_k) != canonical(enumerate_first_passage(k, n, b.cap)) ||
          canonical(split.to_k_minus_2) != canonical(enumerate_first_passage(k - 2, n + 1, b.cap))) {
        fail(part, kn(k, n));
      }
    }
  }
  out.push_back(part);
  return out;
}

std::vector<IdentityCheck> verify_probability() {
  std::vector<IdentityCheck> out;
  const auto grid = rational_grid();

  IdentityCheck branch = start("absorption_exact branches: 1 for p<=1/2, ((1-p)/p)^k otherwise",
                       "rational grid, k=1..64");
  IdentityCheck power = start("absorption_exact(k,p) == absorption_exact(1,p)^k", "rational grid, k=1..64");
  for (const auto& q : grid) {
    const StepProbability p(q);
    const mpq_class one = absorption_exact(1, p).exact();
    mpq_class acc = 1;
    for (std::uint64_t k = 1; k <= 64; ++k) {
      acc *= one;
      const mpq_class got = absorption_exact(k, p).exact();
      if (got != acc) fail(power, "p=" + q.get_str() + ", k=" + std::to_string(k));
      mpq_class expected = 1;
      if (q > mpq_class(1, 2)) {
        const mpq_class ratio = (1 - q) / q;
        for (std::uint64_t i = 0; i < k; ++i) expected *= ratio;
      }
      if (got != expected) fail(branch, "p=" + q.get_str() + ", k=" + std::to_string(k));
    }
  }
  out.push_back(branch);
  out.push_back(power);

  IdentityCheck gf = start("|absorption_via_gf(p) - absorption_exact(1,p)| <= 1e-12",
                   "p in {0.1, 0.3, 0.5, 0.6, 0.9}");
  for (double x : {0.1, 0.3, 0.5, 0.6, 0.9}) {
    const StepProbability p(x);
    if (std::fabs(absorption_via_gf(p) - absorption_exact(1, p).to_double()) > 1e-12) {
      fail(gf, "p=" + format_double(x));
    }
  }
  out.push_back(gf);

  IdentityCheck quad = start("|F(z)^2 - F(z) + z| <= 1e-14", "z in [0, 1/4], 1001 points");
  for (int i = 0; i <= 1000; ++i) {
    const double z = 0.25 * i / 1000.0;
    const double f = generating_function(z);
    if (std::fabs(f * f - f + z) > 1e-14) fail(quad, "z=" + format_double(z));
  }
  out.push_back(quad);

  IdentityCheck series = start("series brackets the closed form with tail <= 1e-12",
                       "k=1..10, rational grid with |p-1/2|>=0.05");
  for (const auto& q : grid) {
    if (abs(q - mpq_class(1, 2)) < mpq_class(1, 20)) continue;
    const StepProbability p(q);
    for (std::uint64_t k = 1; k <= 10; ++k) {
      const auto eval = absorption_series(k, p, 1e-12);
      const mpq_class exact = absorption_exact(k, p).exact();
      const std::string where = "p=" + q.get_str() + ", k=" + std::to_string(k);
      if (!eval.converged || !eval.tail_bound.is_exact()) {
        fail(series, where + ": not converged");
        continue;
      }
      const mpq_class& lo = eval.partial_sum.exact();
      const mpq_class& tail = eval.tail_bound.exact();
      if (!(lo <= exact && exact <= lo + tail) || tail > mpq_class(1e-12) ||
          eval.terms_used < tail_certification_start(k) + 1) {
        fail(series, where);
      }
    }
  }
  out.push_back(series);

  IdentityCheck three = start("P(k+2) == P(k+1)/p - (1-p)/p P(k)", "k=1..32, rational grid without 0, 1");
  for (const auto& q : grid) {
    if (q == 0 || q == 1) continue;
    for (std::uint64_t k = 1; k <= 32; ++k) {
      if (!verify_three_term(k, StepProbability(q))) {
        fail(three, "p=" + q.get_str() + ", k=" + std::to_string(k));
      }
    }
  }
  out.push_back(three);

  IdentityCheck bounds = start("absorption_exact(k,0) == 1 and absorption_exact(k,1) == 0", "k=1..64");
  for (std::uint64_t k = 1; k <= 64; ++k) {
    if (absorption_exact(k, StepProbability(mpq_class(0))).exact() != 1 ||
        absorption_exact(k, StepProbability(mpq_class(1))).exact() != 0) {
      fail(bounds, "k=" + std::to_string(k));
    }
  }
  out.push_back(bounds);
  return out;
}

std::vector<IdentityCheck> run_suite(Suite suite, const VerifyBounds& bounds) {
  bounds.validate();
  std::vector<IdentityCheck> out;
  const auto append = [&out](std::vector<IdentityCheck> more) {
    out.insert(out.end(), more.begin(), more.end());
  };
  if (suite == Suite::All || suite == Suite::Recurrences) append(verify_recurrences(bounds));
  if (suite == Suite::All || suite == Suite::Oracle) append(verify_oracle(bounds));
  if (suite == Suite::All || suite == Suite::Bijections) append(verify_bijections(bounds));
  if (suite == Suite::All || suite == Suite::Probability) append(verify_probability());
  return out;
}

}  // namespace ruin
