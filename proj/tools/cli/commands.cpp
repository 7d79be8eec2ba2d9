#include "cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cli/render.hpp"
#include "ruin/combinatorics.hpp"
#include "ruin/probability.hpp"
#include "ruin/simulator.hpp"
#include "ruin/verification.hpp"

namespace ruin::cli {
namespace {

// Raised for any invalid user input; maps to kExitUsage.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("invalid " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return v;
}

struct Common {
  std::string format = "table";
};

struct CountArgs : Common {
  std::string k = "1";
  std::string n = "0..10";
};

struct ProbArgs : Common {
  std::uint64_t k = 1;
  std::string p;
  std::string method = "exact";
  double tail = 1e-12;
  std::uint64_t max_terms = 100000;
  std::uint64_t trials = 100000;
  std::uint64_t max_steps = 100000;
  std::optional<std::uint64_t> seed;
  unsigned workers = 0;
};

struct ConvergeArgs : Common {
  std::uint64_t k = 1;
  std::string p;
  std::uint64_t max_terms = 50;
};

struct VerifyArgs : Common {
  std::string suite = "all";
  std::uint64_t k = 50;
  std::uint64_t n = 200;
  std::uint64_t length = 22;
  std::uint64_t cap = kDefaultEnumerationCap;
};

StepProbability parse_p(const std::string& text) {
  if (text.empty()) throw UsageError("--p is required");
  try {
    return StepProbability::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv(kSeedEnv); env != nullptr && *env != '\0') {
    try {
      return parse_u64(env, kSeedEnv);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  return kDefaultSeed;
}

int cmd_count(const CountArgs& args, std::ostream& out) {
  const OutputFormat format = parse_format(args.format);
  Range ks{}, ns{};
  try {
    ks = parse_range(args.k);
    ns = parse_range(args.n);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (ks.first == 0) throw UsageError("k must be >= 1");
  Table table{{"k", "n", "count"}, {}, false};
  for (std::uint64_t k = ks.first; k <= ks.last; ++k) {
    for (std::uint64_t n = ns.first; n <= ns.last; ++n) {
      table.rows.push_back({k, n, ballot_count(k, n).str()});
      if (n == ns.last) break;
    }
    if (k == ks.last) break;
  }
  render(table, format, out);
  return kExitOk;
}

int cmd_prob(const ProbArgs& args, std::ostream& out) {
  const OutputFormat format = parse_format(args.format);
  if (args.k == 0) throw UsageError("k must be >= 1");
  const StepProbability p = parse_p(args.p);
  Table table;
  table.single = true;
  int code = kExitOk;

  if (args.method == "exact") {
    table.columns = {"k", "p", "method", "probability"};
    table.rows.push_back({args.k, p.str(), args.method, absorption_exact(args.k, p).str()});
  } else if (args.method == "gf") {
    double value = 0.0;
    try {
      value = absorption_via_gf(p);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    // P(x=k) = P(x=1)^k
    value = std::pow(value, static_cast<double>(args.k));
    table.columns = {"k", "p", "method", "probability"};
    table.rows.push_back({args.k, p.str(), args.method, format_double(value)});
  } else if (args.method == "series") {
    if (!(args.tail > 0.0)) throw UsageError("--tail must be > 0");
    if (args.max_terms == 0) throw UsageError("--max-terms must be >= 1");
    SeriesOptions options;
    options.max_terms = args.max_terms;
    const SeriesEvaluation eval = absorption_series(args.k, p, args.tail, options);
    table.columns = {"k", "p", "method", "probability", "terms_used", "tail_bound", "converged"};
    table.rows.push_back({args.k, p.str(), args.method, eval.partial_sum.str(), eval.terms_used,
                          eval.tail_bound.str(), eval.converged});
    if (!eval.converged) code = kExitNotConverged;
  } else if (args.method == "simulate") {
    WalkConfig config{args.k, p, args.max_steps, args.trials, resolve_seed(args.seed)};
    try {
      config.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const AbsorptionEstimate est = estimate_absorption(config, args.workers);
    table.columns = {"k",        "p",      "method",   "probability",   "ci_low",
                     "ci_high",  "absorbed", "censored", "trials",      "max_steps",
                     "seed",     "is_lower_bound"};
    table.rows.push_back({args.k, p.str(), std::string("simulate"), format_double(est.point),
                          format_double(est.ci_low), format_double(est.ci_high), est.absorbed,
                          est.censored, est.trials(), config.max_steps, config.seed,
                          est.is_lower_bound});
  } else {
    throw UsageError("unknown method '" + args.method + "' (exact|series|gf|simulate)");
  }
  render(table, format, out);
  return code;
}

int cmd_converge(const ConvergeArgs& args, std::ostream& out) {
  const OutputFormat format = parse_format(args.format);
  if (args.k == 0) throw UsageError("k must be >= 1");
  const StepProbability p = parse_p(args.p);
  Table table{{"n", "term", "partial_sum", "tail_bound"}, {}, false};
  absorption_series_trace(args.k, p, args.max_terms, [&](const SeriesRow& row) {
    Cell tail = std::monostate{};
    if (row.tail_bound) tail = row.tail_bound->str();
    table.rows.push_back({row.n, row.term.str(), row.partial_sum.str(), tail});
  });
  render(table, format, out);
  return kExitOk;
}

Suite parse_suite(const std::string& name) {
  if (name == "all") return Suite::All;
  if (name == "recurrences") return Suite::Recurrences;
  if (name == "bijections") return Suite::Bijections;
  if (name == "oracle") return Suite::Oracle;
  if (name == "probability") return Suite::Probability;
  throw UsageError("unknown suite '" + name + "' (all|recurrences|bijections|oracle|probability)");
}

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
  const OutputFormat format = parse_format(args.format);
  const Suite suite = parse_suite(args.suite);
  VerifyBounds bounds;
  bounds.max_k = args.k;
  bounds.max_n = args.n;
  bounds.max_length = args.length;
  bounds.cap = args.cap;
  bounds.oracle_max_k = std::min<std::uint64_t>(bounds.oracle_max_k, args.length);
  bounds.bijection_max_n =
      std::min<std::uint64_t>(bounds.bijection_max_n, args.length >= 3 ? (args.length - 3) / 2 : 0);
  try {
    bounds.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto checks = run_suite(suite, bounds);
  Table table{{"identity", "range", "status", "counterexample"}, {}, false};
  bool all_passed = true;
  for (const auto& check : checks) {
    all_passed = all_passed && check.passed;
    Cell counter = std::monostate{};
    if (!check.passed) counter = check.counterexample;
    table.rows.push_back({check.name, check.range, std::string(check.passed ? "pass" : "FAIL"), counter});
  }
  render(table, format, out);
  return all_passed ? kExitOk : kExitVerifyFailed;
}

void add_format(CLI::App* cmd, Common& common) {
  cmd->add_option("--format", common.format, "Output format: table, csv or json");
}

void add_prob_options(CLI::App* cmd, ProbArgs& args, bool with_method) {
  cmd->add_option("--k", args.k, "Starting position k >= 1");
  cmd->add_option("--p", args.p, "Right-step probability: decimal or num/den (exact)")->required();
  if (with_method) cmd->add_option("--method", args.method, "exact, series, gf or simulate");
  cmd->add_option("--tail", args.tail, "Target tail bound for the series");
  cmd->add_option("--max-terms", args.max_terms, "Series term limit");
  cmd->add_option("--trials", args.trials, "Simulated walks");
  cmd->add_option("--max-steps", args.max_steps, "Censoring horizon in steps");
  cmd->add_option("--seed", args.seed, std::string("Simulation seed (default from ") + kSeedEnv + ")");
  cmd->add_option("--workers", args.workers, "Simulation threads (0 = hardware)");
  add_format(cmd, args);
}

}  // namespace

Range parse_range(std::string_view text) {
  const auto dots = text.find("..");
  Range r{};
  if (dots == std::string_view::npos) {
    r.first = r.last = parse_u64(text, "range");
  } else {
    r.first = parse_u64(text.substr(0, dots), "range start");
    r.last = parse_u64(text.substr(dots + 2), "range end");
  }
  if (r.first > r.last) throw std::invalid_argument("empty range '" + std::string(text) + "'");
  return r;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gambler's ruin absorption probabilities from lattice-path counts"};
  app.require_subcommand(1);

  CountArgs count;
  auto* count_cmd = app.add_subcommand("count", "Ballot counts C_k(n) over ranges of k and n");
  count_cmd->add_option("--k", count.k, "k or k1..k2 (k >= 1)");
  count_cmd->add_option("--n", count.n, "n or n1..n2");
  add_format(count_cmd, count);

  ProbArgs prob;
  auto* prob_cmd = app.add_subcommand("prob", "Absorption probability P(x=k)");
  add_prob_options(prob_cmd, prob, true);

  ProbArgs sim;
  sim.method = "simulate";
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo estimate (prob --method simulate)");
  add_prob_options(sim_cmd, sim, false);

  ConvergeArgs conv;
  auto* conv_cmd = app.add_subcommand("converge", "Per-term trace of the absorption series");
  conv_cmd->add_option("--k", conv.k, "Starting position k >= 1");
  conv_cmd->add_option("--p", conv.p, "Right-step probability")->required();
  conv_cmd->add_option("--max-terms", conv.max_terms, "Last term index n");
  add_format(conv_cmd, conv);

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check the counting and probability identities");
  verify_cmd->add_option("suite", verify.suite, "all, recurrences, bijections, oracle or probability");
  verify_cmd->add_option("--k", verify.k, "Largest k for recurrence checks");
  verify_cmd->add_option("--n", verify.n, "Largest n for recurrence checks");
  verify_cmd->add_option("--length", verify.length, "Longest enumerated path 2n+k");
  verify_cmd->add_option("--cap", verify.cap, "Enumeration cap on path length");
  add_format(verify_cmd, verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (count_cmd->parsed()) return cmd_count(count, out);
    if (prob_cmd->parsed()) return cmd_prob(prob, out);
    if (sim_cmd->parsed()) return cmd_prob(sim, out);
    if (conv_cmd->parsed()) return cmd_converge(conv, out);
    if (verify_cmd->parsed()) return cmd_verify(verify, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace ruin::cli
