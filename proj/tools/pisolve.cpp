// pisolve: command-line front end for perfect-information semi-Markov games.
//
// Exit codes:
//   0  success
//   1  instance failed validation
//   2  unreadable or malformed input, or bad command-line usage
//   3  LP solver failure
//   4  enumeration oracle and LP disagree beyond --tol
//   5  policy count exceeds --cap
//   6  strategy file does not match the instance
//   7  verify --strict found an improving deviation

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pisg/io.hpp"
#include "pisg/pisg.hpp"

namespace {

using pisg::Json;

enum Exit : int {
  kOk = 0,
  kInvalid = 1,
  kParse = 2,
  kSolver = 3,
  kDisagree = 4,
  kCap = 5,
  kMismatch = 6,
  kImproving = 7,
};

struct Common {
  std::string path;
  std::string format = "text";
  bool exact = false;
  std::string eps = "1/1000000000";
  std::string max = "1000000000";
};

class Stopwatch {
 public:
  double lap_ms() {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string show(const pisg::Rational& r, bool exact) {
  return exact ? pisg::to_string(r) : pisg::format_fixed(r, 4);
}

std::string show_vector(const std::vector<pisg::Rational>& v, bool exact) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + show(v[i], exact);
  return out + ")";
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

void print_validation(const pisg::ValidationReport& report, const Common& c) {
  if (c.format == "json") {
    Json v = Json::array();
    for (const auto& x : report.violations)
      v.push_back({{"location", x.location}, {"rule", x.rule}, {"message", x.message}});
    print_json({{"ok", report.ok()}, {"violations", v}});
    return;
  }
  if (report.ok()) {
    std::cout << "ok\n";
    return;
  }
  for (const auto& x : report.violations)
    std::cout << x.location << ": [" << x.rule << "] " << x.message << "\n";
}

// Loads and validates; on failure prints the report and returns the exit code.
std::optional<int> load_valid(const Common& c, pisg::GameInstance& game) {
  game = pisg::load_game(c.path);
  const pisg::SojournBounds bounds{pisg::parse_rational(c.eps), pisg::parse_rational(c.max)};
  const auto report = pisg::validate(game, bounds);
  if (!report.ok()) {
    print_validation(report, c);
    return kInvalid;
  }
  return std::nullopt;
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("instance", c.path, "Instance JSON file")->required();
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  cmd->add_flag("--exact", c.exact, "Print exact rationals instead of 4 decimals");
  cmd->add_option("--eps", c.eps, "Lower sojourn bound");
  cmd->add_option("--max", c.max, "Upper sojourn bound");
}

pisg::VerifyMode parse_mode(const std::string& m) {
  return m == "lemma" ? pisg::VerifyMode::kLemma : pisg::VerifyMode::kDefinition3;
}

int cmd_validate(const Common& c) {
  const auto game = pisg::load_game(c.path);
  const auto report =
      pisg::validate(game, {pisg::parse_rational(c.eps), pisg::parse_rational(c.max)});
  print_validation(report, c);
  return report.ok() ? kOk : kInvalid;
}

int cmd_reduce(const Common& c, const std::string& out) {
  pisg::GameInstance game;
  if (auto rc = load_valid(c, game)) return *rc;
  const Json doc = pisg::smdp_to_json(pisg::reduce(game));
  if (out.empty()) {
    print_json(doc);
  } else {
    std::ofstream(out) << doc.dump(2) << "\n";
  }
  return kOk;
}

struct SolveFlags {
  std::string initial = "all";
  bool oracle = false;
  std::string verify;
  std::string tol = "1/1000000";
  std::uint64_t cap = pisg::kDefaultPolicyCap;
  bool no_timings = false;
  std::string strategy_out;
  std::string dump_lp;
};

int cmd_solve(const Common& c, const SolveFlags& f) {
  Stopwatch clock;
  Json timings = Json::object();
  pisg::GameInstance game;
  if (auto rc = load_valid(c, game)) return *rc;
  timings["load_ms"] = clock.lap_ms();

  const std::size_t z = game.size();
  std::vector<std::size_t> starts;
  if (f.initial == "all") {
    for (std::size_t s = 0; s < z; ++s) starts.push_back(s);
  } else {
    const int s = std::stoi(f.initial);
    if (s < 1 || static_cast<std::size_t>(s) > z) {
      std::cerr << "initial state " << f.initial << " out of range\n";
      return kParse;
    }
    starts.push_back(static_cast<std::size_t>(s - 1));
  }

  const pisg::Smdp smdp = pisg::reduce(game);
  const pisg::Rational tol = pisg::parse_rational(f.tol);
  const unsigned threads = pisg::default_threads();

  // Rows for initial states not requested stay unassigned.
  pisg::SemiStationaryStrategy strategy = pisg::SemiStationaryStrategy::unassigned(z);
  std::vector<pisg::LpSolution> sols(z);
  try {
    pisg::parallel_for(starts.size(), threads, [&](std::size_t k) {
      const std::size_t s1 = starts[k];
      sols[s1] = pisg::simplex_solve(pisg::build_dlp(smdp, s1));
      if (sols[s1].status != pisg::LpStatus::kOptimal)
        throw pisg::SolverFailure("dual LP for initial state " + std::to_string(s1 + 1) + " is " +
                                  pisg::to_string(sols[s1].status));
      strategy.rows[s1] = pisg::extract_strategy(sols[s1], smdp).actions;
    });
  } catch (const pisg::Error& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolver;
  }
  if (!f.dump_lp.empty()) {
    std::ofstream out(f.dump_lp);
    for (auto s1 : starts) {
      out << "# initial state " << s1 + 1 << "\n";
      pisg::write_lp(out, pisg::build_dlp(smdp, s1));
    }
  }
  timings["lp_ms"] = clock.lap_ms();

  // Exact payoff of each extracted policy at its own initial state.
  std::vector<pisg::Rational> exact_values(z);
  for (auto s1 : starts) exact_values[s1] = pisg::eval_policy(smdp, strategy.row(s1))[s1];

  Json report = Json::object();
  std::size_t pairs = smdp.total_actions();
  report["instance"] = {{"players", game.num_players},
                        {"states", z},
                        {"state_action_pairs", pairs},
                        {"policies", pisg::count_policies(smdp).str()}};
  Json lp_rows = Json::array();
  for (auto s1 : starts)
    lp_rows.push_back({{"initial_state", s1 + 1},
                       {"objective", fixed4(sols[s1].objective)},
                       {"value", pisg::number_json(exact_values[s1], c.exact)},
                       {"policy", pisg::policy_to_json(strategy.row(s1))},
                       {"pivots", sols[s1].pivots}});
  report["lp"] = lp_rows;
  report["strategy"] = pisg::strategy_to_json(strategy, std::nullopt);

  const bool complete = starts.size() == z;
  std::optional<pisg::StrategyProfile> profile;
  if (complete) {
    profile = pisg::lift_strategy(strategy, game);
    report["profile"] = pisg::profile_to_json(*profile, game);
    if (!f.strategy_out.empty())
      std::ofstream(f.strategy_out) << pisg::profile_to_json(*profile, game).dump(2) << "\n";
  }

  int rc = kOk;
  std::optional<pisg::EnumerationResult> oracle;
  if (f.oracle) {
    try {
      oracle = pisg::oracle_solve(smdp, f.cap, threads);
    } catch (const pisg::CapExceeded& e) {
      std::cerr << e.what() << "\n";
      return kCap;
    }
    Json rows = Json::array();
    bool agree = true;
    for (auto s1 : starts) {
      const double diff = std::abs(pisg::to_double(oracle->best[s1]) - sols[s1].objective);
      const bool ok = pisg::Rational(diff) <= tol;
      agree = agree && ok;
      rows.push_back({{"initial_state", s1 + 1},
                      {"oracle", pisg::number_json(oracle->best[s1], c.exact)},
                      {"lp", fixed4(sols[s1].objective)},
                      {"abs_diff", diff},
                      {"agree", ok}});
    }
    report["oracle"] = {{"agree", agree}, {"rows", rows}};
    if (!agree) rc = kDisagree;
    timings["oracle_ms"] = clock.lap_ms();
  }

  std::optional<pisg::DeviationReport> deviations;
  if (!f.verify.empty()) {
    if (!profile) {
      std::cerr << "--verify needs --initial-state all\n";
      return kParse;
    }
    try {
      deviations = pisg::verify_nash(game, *profile, parse_mode(f.verify), tol, f.cap, threads);
    } catch (const pisg::CapExceeded& e) {
      std::cerr << e.what() << "\n";
      return kCap;
    }
    report["verify"] = pisg::deviation_report_to_json(*deviations, c.exact);
    timings["verify_ms"] = clock.lap_ms();
  }
  if (!f.no_timings) report["timings"] = timings;

  if (c.format == "json") {
    print_json(report);
    return rc;
  }

  std::cout << "instance: " << game.num_players << " players, " << z << " states, " << pairs
            << " state-action pairs\n";
  for (auto s1 : starts)
    std::cout << "initial state " << s1 + 1 << ": objective " << fixed4(sols[s1].objective)
              << "  value " << show(exact_values[s1], c.exact) << "  policy "
              << pisg::format_policy(strategy.row(s1)) << "\n";
  if (complete) {
    std::cout << "value vector: " << show_vector(exact_values, c.exact) << "\n";
    for (int i = 0; i < game.num_players; ++i) {
      std::cout << "player " << i + 1 << ":";
      bool any = false;
      for (std::size_t s = 0; s < z; ++s)
        if (game.owner(s) == i) any = true;
      if (!any) std::cout << " (dummy everywhere)";
      std::cout << "\n";
      if (!any) continue;
      for (std::size_t s1 = 0; s1 < z; ++s1) {
        std::cout << "  from " << s1 + 1 << ":";
        for (std::size_t s = 0; s < z; ++s)
          if (game.owner(s) == i)
            std::cout << " s" << s + 1 << "=" << profile->players[static_cast<std::size_t>(i)].rows[s1][s] + 1;
        std::cout << "\n";
      }
    }
  }
  if (oracle) {
    std::cout << "oracle: " << (rc == kDisagree ? "DISAGREES" : "agrees") << " with LP; best "
              << show_vector(oracle->best, c.exact) << "\n";
  }
  if (deviations) {
    std::cout << "verify (" << pisg::to_string(deviations->mode) << "): "
              << deviations->improving_count() << " improving deviation(s)\n";
    for (const auto& r : deviations->rows)
      std::cout << "  player " << r.player + 1 << " from " << r.initial_state + 1 << ": payoff "
                << show(r.equilibrium, c.exact) << ", best response "
                << show(r.best_response, c.exact) << (r.improving ? "  IMPROVING" : "") << "\n";
  }
  if (!f.no_timings) {
    std::cout << "timings (ms):";
    for (const auto& [k, v] : timings.items()) std::cout << " " << k << "=" << fixed4(v.get<double>());
    std::cout << "\n";
  }
  return rc;
}

int cmd_enumerate(const Common& c, std::uint64_t cap) {
  pisg::GameInstance game;
  if (auto rc = load_valid(c, game)) return *rc;
  const pisg::Smdp smdp = pisg::reduce(game);
  pisg::EnumerationResult res;
  try {
    res = pisg::oracle_solve(smdp, cap, pisg::default_threads());
  } catch (const pisg::CapExceeded& e) {
    std::cerr << e.what() << "\n";
    return kCap;
  }
  if (c.format == "json") {
    print_json(pisg::enumeration_to_json(res, c.exact));
    return kOk;
  }
  for (std::size_t k = 0; k < res.policies.size(); ++k)
    std::cout << "f" << k + 1 << " = " << pisg::format_policy(res.policies[k]) << "  phi = "
              << show_vector(res.table[k], c.exact) << "\n";
  std::cout << "value vector: " << show_vector(res.best, c.exact) << "\n";
  for (std::size_t s1 = 0; s1 < res.best.size(); ++s1) {
    std::cout << "argmax from " << s1 + 1 << ":";
    for (auto k : res.argmax[s1]) std::cout << " f" << k + 1;
    std::cout << "\n";
  }
  return kOk;
}

pisg::StrategyProfile load_profile(const std::string& path, const pisg::GameInstance& game) {
  pisg::StrategyProfile profile;
  try {
    profile = pisg::profile_from_json(pisg::read_json_file(path), game);
  } catch (const pisg::Json::exception& e) {
    throw pisg::ParseError(path + ": " + e.what());
  }
  pisg::require_complete(profile, game);
  return profile;
}

int cmd_verify(const Common& c, const std::string& strategy_path, const std::string& mode,
               const std::string& tol, std::uint64_t cap, bool strict) {
  pisg::GameInstance game;
  if (auto rc = load_valid(c, game)) return *rc;
  pisg::StrategyProfile profile;
  if (strategy_path.empty()) {
    try {
      profile = pisg::lift_strategy(pisg::solve_semi_stationary(pisg::reduce(game)).strategy, game);
    } catch (const pisg::SolverFailure& e) {
      std::cerr << "solver failure: " << e.what() << "\n";
      return kSolver;
    }
  } else {
    profile = load_profile(strategy_path, game);
  }
  pisg::DeviationReport report;
  try {
    report = pisg::verify_nash(game, profile, parse_mode(mode), pisg::parse_rational(tol), cap,
                               pisg::default_threads());
  } catch (const pisg::CapExceeded& e) {
    std::cerr << e.what() << "\n";
    return kCap;
  }
  if (c.format == "json") {
    print_json(pisg::deviation_report_to_json(report, c.exact));
  } else {
    std::cout << "mode " << pisg::to_string(report.mode) << ": " << report.improving_count()
              << " improving deviation(s)\n";
    for (const auto& r : report.rows) {
      std::cout << "player " << r.player + 1 << " from " << r.initial_state + 1 << ": payoff "
                << show(r.equilibrium, c.exact) << ", best response " << show(r.best_response, c.exact);
      if (r.improving) std::cout << "  IMPROVING via " << pisg::format_policy(*r.witness);
      std::cout << "\n";
    }
  }
  return strict && report.improving_count() > 0 ? kImproving : kOk;
}

int cmd_simulate(const Common& c, const std::string& strategy_path, std::uint64_t steps,
                 std::uint64_t seed, int initial, std::size_t replications) {
  pisg::GameInstance game;
  if (auto rc = load_valid(c, game)) return *rc;
  if (initial < 1 || static_cast<std::size_t>(initial) > game.size()) {
    std::cerr << "initial state " << initial << " out of range\n";
    return kParse;
  }
  const auto s1 = static_cast<std::size_t>(initial - 1);
  const pisg::StrategyProfile profile = load_profile(strategy_path, game);
  const auto chain = pisg::build_chain(game, pisg::joint_policy(game, profile, s1));
  const auto analytic = pisg::ratio_payoffs(chain);
  const pisg::SimConfig cfg{steps, seed, s1};
  const auto summary =
      pisg::simulate_replications(chain, cfg, replications, pisg::default_threads());

  const auto n = static_cast<std::size_t>(game.num_players);
  auto label = [&](std::size_t k) {
    return k < n ? "player " + std::to_string(k + 1) : std::string("reduced");
  };
  if (c.format == "json") {
    Json rows = Json::array();
    for (std::size_t k = 0; k <= n; ++k) {
      Json row = {{"criterion", label(k)},
                  {"estimate", summary.mean[k]},
                  {"analytic", pisg::number_json(analytic[k][s1], c.exact)}};
      if (replications > 1) row["std_error"] = summary.std_error[k];
      rows.push_back(row);
    }
    print_json({{"initial_state", initial}, {"steps", steps}, {"seed", seed},
                {"replications", replications}, {"policy", pisg::policy_to_json(pisg::joint_policy(game, profile, s1))},
                {"estimates", rows}});
    return kOk;
  }
  std::cout << "policy " << pisg::format_policy(pisg::joint_policy(game, profile, s1)) << " from "
            << initial << ", " << steps << " steps, seed " << seed << "\n";
  for (std::size_t k = 0; k <= n; ++k) {
    std::cout << label(k) << ": estimate " << fixed4(summary.mean[k]);
    if (replications > 1) std::cout << " (se " << fixed4(summary.std_error[k]) << ")";
    std::cout << "  analytic " << show(analytic[k][s1], c.exact) << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver and verifier for perfect-information semi-Markov games"};
  app.require_subcommand(1);

  Common common;

  auto* validate = app.add_subcommand("validate", "Check an instance file");
  add_common(validate, common);

  std::string reduce_out;
  auto* reduce = app.add_subcommand("reduce", "Print the reduced decision process");
  add_common(reduce, common);
  reduce->add_option("-o,--output", reduce_out, "Write to a file instead of stdout");

  SolveFlags sf;
  auto* solve = app.add_subcommand("solve", "Solve per-initial-state LPs and lift the strategy");
  add_common(solve, common);
  solve->add_option("--initial-state", sf.initial, "Initial state id or 'all'");
  solve->add_flag("--oracle", sf.oracle, "Cross-check against complete enumeration");
  solve->add_option("--verify", sf.verify, "Nash check mode")
      ->check(CLI::IsMember({"lemma", "definition3"}));
  solve->add_option("--tol", sf.tol, "Agreement / deviation tolerance (rational)");
  solve->add_option("--cap", sf.cap, "Maximum number of enumerated policies");
  solve->add_flag("--no-timings", sf.no_timings, "Omit timings from the report");
  solve->add_option("--strategy-out", sf.strategy_out, "Write the lifted profile as a strategy file");
  solve->add_option("--dump-lp", sf.dump_lp, "Write the dual LPs as an equation listing");

  std::uint64_t enum_cap = pisg::kDefaultPolicyCap;
  auto* enumerate = app.add_subcommand("enumerate", "Evaluate every pure stationary policy");
  add_common(enumerate, common);
  enumerate->add_option("--cap", enum_cap, "Maximum number of enumerated policies");

  std::string verify_strategy, verify_mode = "lemma", verify_tol = "1/1000000";
  std::uint64_t verify_cap = pisg::kDefaultPolicyCap;
  bool strict = false;
  auto* verify = app.add_subcommand("verify", "Check a profile for improving unilateral deviations");
  add_common(verify, common);
  verify->add_option("--strategy", verify_strategy, "Strategy file (default: solve first)");
  verify->add_option("--mode", verify_mode, "lemma or definition3")
      ->check(CLI::IsMember({"lemma", "definition3"}));
  verify->add_option("--tol", verify_tol, "Deviation tolerance (rational)");
  verify->add_option("--cap", verify_cap, "Maximum number of enumerated policies");
  verify->add_flag("--strict", strict, "Exit 7 if any deviation improves");

  std::string sim_strategy;
  std::uint64_t steps = 100000, seed = 1;
  int sim_initial = 1;
  std::size_t replications = 1;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of the ratio payoff");
  add_common(simulate, common);
  simulate->add_option("--strategy", sim_strategy, "Strategy file")->required();
  simulate->add_option("--steps", steps, "Transitions per trajectory")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed, "RNG seed");
  simulate->add_option("--initial-state", sim_initial, "Initial state id");
  simulate->add_option("--replications", replications, "Independent trajectories (seed + k)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    if (*validate) return cmd_validate(common);
    if (*reduce) return cmd_reduce(common, reduce_out);
    if (*solve) return cmd_solve(common, sf);
    if (*enumerate) return cmd_enumerate(common, enum_cap);
    if (*verify) return cmd_verify(common, verify_strategy, verify_mode, verify_tol, verify_cap, strict);
    if (*simulate)
      return cmd_simulate(common, sim_strategy, steps, seed, sim_initial, replications);
  } catch (const pisg::StrategyMismatch& e) {
    std::cerr << "strategy mismatch: " << e.what() << "\n";
    return kMismatch;
  } catch (const pisg::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const pisg::MissingAssignment& e) {
    std::cerr << "strategy mismatch: " << e.what() << "\n";
    return kMismatch;
  } catch (const pisg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSolver;
  }
  return kOk;
}
