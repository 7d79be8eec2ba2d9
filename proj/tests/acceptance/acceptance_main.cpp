// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli/commands.hpp"
#include "ruin/combinatorics.hpp"
#include "ruin/paths.hpp"
#include "ruin/probability.hpp"
#include "ruin/simulator.hpp"

namespace {

using namespace ruin;

// Keeps the first few failures so one broken sub-check cannot hide another.
struct Outcome {
  bool passed = true;
  std::string detail;
  std::string note;
  int failures = 0;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    passed = false;
    if (++failures <= 3) detail += (detail.empty() ? "" : "; ") + what;
  }
};

std::vector<std::string> strings(const std::vector<LatticePath>& paths) {
  std::vector<std::string> out;
  for (const auto& p : paths) out.push_back(p.str());
  std::sort(out.begin(), out.end());
  return out;
}

std::string kn(std::uint64_t k, std::uint64_t n) {
  return "k=" + std::to_string(k) + " n=" + std::to_string(n);
}

std::vector<mpq_class> rational_grid() {
  std::vector<mpq_class> grid;
  for (int i = 0; i <= 20; ++i) grid.emplace_back(i, 20);
  for (auto [a, b] : {std::pair{1, 3}, {2, 3}, {1, 7}, {5, 7}, {3, 4}, {9, 10}}) grid.emplace_back(a, b);
  for (auto& q : grid) q.canonicalize();
  return grid;
}

Outcome oracle_equivalence() {
  Outcome o;
  for (std::uint64_t k = 1; k <= 6; ++k) {
    for (std::uint64_t n = 0; 2 * n + k <= 22; ++n) {
      const auto paths = enumerate_first_passage(k, n);
      o.require(ballot_count(k, n).value() == paths.size(), kn(k, n));
    }
  }
  return o;
}

Outcome catalan_identity() {
  Outcome o;
  for (std::uint64_t n = 1; n <= 200; ++n) {
    o.require(catalan_via_convolution(n) == catalan(n), "n=" + std::to_string(n));
  }
  return o;
}

Outcome theorem_two() {
  Outcome o;
  for (std::uint64_t n = 0; n <= 500; ++n) {
    o.require(ballot_count(2, n) == catalan(n + 1), "C_2 n=" + std::to_string(n));
  }
  for (std::uint64_t n = 0; n <= 8; ++n) {
    std::vector<LatticePath> image;
    for (const auto& path : enumerate_first_passage(1, n + 1)) {
      image.push_back(shift_bijection_k2(path));
      o.require(shift_bijection_k2_inverse(image.back()) == path, "inverse " + path.str());
    }
    const auto got = strings(image);
    o.require(std::set<std::string>(got.begin(), got.end()).size() == got.size(),
              "shift not injective n=" + std::to_string(n));
    o.require(got == strings(enumerate_first_passage(2, n)), "shift image n=" + std::to_string(n));
  }
  return o;
}

Outcome theorem_three() {
  Outcome o;
  for (std::uint64_t k = 3; k <= 50; ++k) {
    for (std::uint64_t n = 0; n <= 200; ++n) {
      const mpz_class rhs = ballot_count(k - 1, n + 1).value() - ballot_count(k - 2, n + 1).value();
      o.require(ballot_count(k, n).value() == rhs, "recurrence " + kn(k, n));
    }
  }
  for (std::uint64_t k = 3; k <= 5; ++k) {
    for (std::uint64_t n = 0; 2 * (n + 1) + (k - 1) <= 20; ++n) {
      const auto split = partition_by_first_step(k, n);
      o.require(strings(split.to_k) == strings(enumerate_first_passage(k, n)), "to_k " + kn(k, n));
      o.require(strings(split.to_k_minus_2) == strings(enumerate_first_passage(k - 2, n + 1)),
                "to_k_minus_2 " + kn(k, n));
    }
  }
  return o;
}

Outcome first_return() {
  Outcome o;
  for (std::uint64_t n = 1; n <= 8; ++n) {
    const auto paths = enumerate_first_passage(1, n);
    for (const auto& path : paths) {
      const auto parts = first_return_decompose(path);
      o.require(parts.alpha >= 1 && parts.alpha <= n, "alpha range " + path.str());
      o.require(first_return_compose(parts.alpha, parts.left, parts.right) == path,
                "round trip " + path.str());
    }
    std::multiset<std::string> rebuilt;
    for (std::uint64_t alpha = 1; alpha <= n; ++alpha) {
      for (const auto& left : enumerate_first_passage(1, alpha - 1)) {
        for (const auto& right : enumerate_first_passage(1, n - alpha)) {
          rebuilt.insert(first_return_compose(alpha, left, right).str());
        }
      }
    }
    o.require(std::vector<std::string>(rebuilt.begin(), rebuilt.end()) == strings(paths),
              "image multiset n=" + std::to_string(n));
    if (n == 4) o.require(rebuilt.size() == 14, "n=4 does not give 14 paths");
  }
  return o;
}

Outcome closed_form() {
  Outcome o;
  for (const auto& q : rational_grid()) {
    const StepProbability p(q);
    const mpq_class one = absorption_exact(1, p).exact();
    mpq_class power = 1;
    for (std::uint64_t k = 1; k <= 64; ++k) {
      power *= one;
      const mpq_class got = absorption_exact(k, p).exact();
      mpq_class expected = 1;
      if (q > mpq_class(1, 2)) {
        for (std::uint64_t i = 0; i < k; ++i) expected *= (1 - q) / q;
      }
      o.require(got == expected, "branch p=" + q.get_str() + " k=" + std::to_string(k));
      o.require(got == power, "power law p=" + q.get_str() + " k=" + std::to_string(k));
    }
  }
  return o;
}

Outcome route_agreement() {
  Outcome o;
  for (double x : {0.1, 0.3, 0.5, 0.6, 0.9}) {
    const StepProbability p(x);
    const double diff = std::fabs(absorption_via_gf(p) - absorption_exact(1, p).to_double());
    o.require(diff <= 1e-12, "gf route p=" + format_double(x));
  }
  for (int i = 0; i <= 1000; ++i) {
    const double z = 0.25 * i / 1000.0;
    const double f = generating_function(z);
    o.require(std::fabs(f * f - f + z) <= 1e-14, "quadratic z=" + format_double(z));
  }
  for (double z : {0.01, 0.1, 0.2, 0.25}) {
    const double f = generating_function(z);
    o.require(std::fabs(f * f - f + z) <= 1e-14, "quadratic z=" + format_double(z));
  }
  return o;
}

Outcome series_certification() {
  Outcome o;
  for (const auto& q : rational_grid()) {
    if (abs(q - mpq_class(1, 2)) < mpq_class(1, 20)) continue;
    const StepProbability p(q);
    for (std::uint64_t k = 1; k <= 10; ++k) {
      const std::string where = "p=" + q.get_str() + " k=" + std::to_string(k);
      const auto eval = absorption_series(k, p, 1e-12);
      o.require(eval.converged, "not converged " + where);
      if (!eval.converged) continue;
      const mpq_class closed = absorption_exact(k, p).exact();
      const mpq_class& lo = eval.partial_sum.exact();
      const mpq_class& tail = eval.tail_bound.exact();
      o.require(lo <= closed && closed <= lo + tail, "bracket " + where);
      o.require(tail <= mpq_class(1e-12), "tail " + where);
      const std::uint64_t v = k * k - k - 2;
      const std::uint64_t n0 = k <= 2 ? 0 : (v + 1) / 2;
      o.require(eval.terms_used >= n0 + 1, "certified before n0 " + where);
    }
  }
  return o;
}

Outcome three_term() {
  Outcome o;
  for (const auto& q : rational_grid()) {
    if (q == 0 || q == 1) continue;
    for (std::uint64_t k = 1; k <= 32; ++k) {
      o.require(verify_three_term(k, StepProbability(q)), "p=" + q.get_str() + " k=" + std::to_string(k));
      o.require(three_term_residual(k, StepProbability(q)).exact() == 0, "residual p=" + q.get_str());
    }
  }
  return o;
}

Outcome monte_carlo() {
  Outcome o;
  const std::uint64_t seed = 20240101;
  for (auto [k, truth] : {std::pair<std::uint64_t, double>{1, 2.0 / 3.0}, {2, 4.0 / 9.0}}) {
    WalkConfig config{k, StepProbability(0.6), 100000, 1000000, seed};
    const auto serial = estimate_absorption(config, 1);
    const auto parallel = estimate_absorption(config, 4);
    std::ostringstream where;
    where << "k=" << k << " point=" << std::setprecision(8) << serial.point;
    o.require(std::fabs(serial.point - truth) <= 0.002, "estimate " + where.str());
    o.require(serial == parallel, "worker-count dependence " + where.str());
    const auto again = estimate_absorption(config, 1);
    o.require(serial == again, "not reproducible " + where.str());
    o.note += (o.note.empty() ? "" : ", ") + where.str();
  }
  return o;
}

struct Captured {
  int code;
  std::string out;
};

Captured run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ruin");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str()};
}

std::string last_field(const std::string& csv) {
  std::string line = csv.substr(0, csv.size() - 1);
  line = line.substr(line.rfind('\n') + 1);
  return line.substr(line.rfind(',') + 1);
}

Outcome cli_contract() {
  Outcome o;
  const auto count = run_cli({"count", "--k", "1", "--n", "0..4", "--format", "csv"});
  o.require(count.code == 0 && count.out == "k,n,count\n1,0,1\n1,1,1\n1,2,2\n1,3,5\n1,4,14\n",
            "count k=1 n=0..4 did not emit 1,1,2,5,14");

  const auto exact = run_cli({"prob", "--k", "3", "--p", "2/3", "--method", "exact", "--format", "csv"});
  o.require(exact.code == 0 && last_field(exact.out) == "1/27",
            "prob k=3 p=2/3 exact emitted \"" + last_field(exact.out) + "\", expected \"1/27\"");

  o.require(run_cli({"count", "--k", "2..1", "--n", "0"}).code == cli::kExitUsage, "bad range exit code");
  o.require(run_cli({"prob", "--k", "1", "--p", "x/y"}).code == cli::kExitUsage, "parse error exit code");
  o.require(run_cli({"prob", "--k", "2", "--p", "1/2", "--method", "series", "--max-terms", "200"}).code ==
                cli::kExitNotConverged,
            "non-converged series exit code");
  o.require(run_cli({"prob", "--k", "1", "--p", "3/5", "--method", "series"}).code == cli::kExitOk,
            "converged series exit code");
  o.require(run_cli({"verify", "oracle", "--length", "12"}).code == cli::kExitOk, "verify pass exit code");
  o.require(run_cli({"verify", "oracle", "--length", "40"}).code == cli::kExitUsage, "verify bad bounds exit code");
  return o;
}

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;  // 0 = no runtime bound stated
  std::function<Outcome()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "oracle equivalence, k<=6, 2n+k<=22", 60, oracle_equivalence},
      {2, "Catalan convolution, n=1..200", 5, catalan_identity},
      {3, "C_2(n)=C(n+1) n<=500, shift bijection n<=8", 10, theorem_two},
      {4, "three-term ballot recurrence k=3..50 n<=200, partition bijection", 30, theorem_three},
      {5, "first-return bijection n<=8 (n=4 gives 14)", 0, first_return},
      {6, "closed form branches and power law k<=64", 0, closed_form},
      {7, "gf route <=1e-12, F^2-F+z <=1e-14", 0, route_agreement},
      {8, "series certification k<=10, |p-1/2|>=0.05, tail<=1e-12", 30, series_certification},
      {9, "three-term probability recurrence k<=32", 0, three_term},
      {10, "Monte Carlo within 0.002, reproducible, worker independent", 120, monte_carlo},
      {11, "CLI contract", 0, cli_contract},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome.passed = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0 && seconds > c.budget_seconds) {
      outcome.require(false, "runtime over budget of " + format_double(c.budget_seconds) + " s");
    }
    if (!outcome.passed) ++failures;
    std::cout << (outcome.passed ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << c.id << ": "
              << c.name << " (" << std::fixed << std::setprecision(2) << seconds << " s)";
    if (!outcome.note.empty()) std::cout << " [" << outcome.note << "]";
    if (!outcome.passed) std::cout << " -- " << outcome.detail;
    std::cout << '\n';
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
