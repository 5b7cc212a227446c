#pragma once

// Per-initial-state linear programs for the ratio-average criterion of a
// multichain process, and the optimal pure semi-stationary strategy read off
// their basic optimal solutions.
//
// Primal, for initial state s1 (g, h, v free):
//   min v
//   g_s >= sum_s' q(s'|s,a) g_s'                                 all (s,a)
//   g_s + h_s >= r(s,a) - v tau(s,a) + sum_s' q(s'|s,a) h_s'     all (s,a)
//   g_s1 <= 0
// Dual (x, y, t >= 0):
//   max sum r(s,a) x_sa
//   sum_{s,a} (delta_ss' - q(s'|s,a)) x_sa = 0                     all s'
//   sum_a x_s'a + sum_{s,a} (delta_ss' - q(s'|s,a)) y_sa = 0       s' != s1
//   sum_a x_s1a + sum_{s,a} (delta_ss1 - q(s1|s,a)) y_sa - t = 0
//   sum tau(s,a) x_sa = 1

#include <cstddef>
#include <string>
#include <vector>

#include "pisg/parallel.hpp"
#include "pisg/rational.hpp"
#include "pisg/simplex.hpp"
#include "pisg/smdp.hpp"

namespace pisg {

// Column positions of the dual: x block, y block, then t.
struct DlpLayout {
  std::vector<std::size_t> offset;  // first (s, 0) pair index of each state
  std::size_t pairs = 0;

  explicit DlpLayout(const Smdp& smdp) {
    for (std::size_t s = 0; s < smdp.size(); ++s) {
      offset.push_back(pairs);
      pairs += smdp.num_actions(s);
    }
  }
  std::size_t x(std::size_t s, std::size_t a) const { return offset[s] + a; }
  std::size_t y(std::size_t s, std::size_t a) const { return pairs + offset[s] + a; }
  std::size_t t() const { return 2 * pairs; }
};

inline LpProblem build_dlp(const Smdp& smdp, std::size_t s1) {
  const std::size_t z = smdp.size();
  const DlpLayout at(smdp);
  LpProblem lp;
  lp.sense = Sense::kMaximize;
  for (std::size_t s = 0; s < z; ++s)
    for (std::size_t a = 0; a < smdp.num_actions(s); ++a)
      lp.add_var({VarKind::kX, static_cast<int>(s), static_cast<int>(a)},
                 to_double(smdp.action(s, static_cast<int>(a)).reward));
  for (std::size_t s = 0; s < z; ++s)
    for (std::size_t a = 0; a < smdp.num_actions(s); ++a)
      lp.add_var({VarKind::kY, static_cast<int>(s), static_cast<int>(a)});
  lp.add_var({VarKind::kT});

  // Coefficient of pair (s, a) in the row for s': delta_ss' - q(s'|s,a).
  auto flow = [&](std::size_t s, std::size_t a, std::size_t sp) {
    const Rational& q = smdp.action(s, static_cast<int>(a)).transitions[sp];
    return to_double((s == sp ? Rational(1) : Rational(0)) - q);
  };

  for (std::size_t sp = 0; sp < z; ++sp) {
    LpRow& row = lp.add_row("balance_" + std::to_string(sp + 1), 0.0);
    for (std::size_t s = 0; s < z; ++s)
      for (std::size_t a = 0; a < smdp.num_actions(s); ++a) row.coeffs[at.x(s, a)] = flow(s, a, sp);
  }
  for (std::size_t sp = 0; sp < z; ++sp) {
    LpRow& row = lp.add_row("transient_" + std::to_string(sp + 1), 0.0);
    for (std::size_t a = 0; a < smdp.num_actions(sp); ++a) row.coeffs[at.x(sp, a)] = 1.0;
    for (std::size_t s = 0; s < z; ++s)
      for (std::size_t a = 0; a < smdp.num_actions(s); ++a) row.coeffs[at.y(s, a)] = flow(s, a, sp);
    if (sp == s1) row.coeffs[at.t()] = -1.0;
  }
  LpRow& norm = lp.add_row("normalize", 1.0);
  for (std::size_t s = 0; s < z; ++s)
    for (std::size_t a = 0; a < smdp.num_actions(s); ++a)
      norm.coeffs[at.x(s, a)] = to_double(smdp.action(s, static_cast<int>(a)).sojourn);
  return lp;
}

// Primal in equality form: free variables split into +/- halves and every
// inequality given a nonnegative slack. Column 0 is v+, column 1 is v-.
inline LpProblem build_primal(const Smdp& smdp, std::size_t s1) {
  const std::size_t z = smdp.size();
  LpProblem lp;
  lp.sense = Sense::kMinimize;

  auto split = [&](VarKind kind, int state, double cost) {
    const std::size_t plus = lp.add_var({kind, state, -1, '+'}, cost);
    lp.add_var({kind, state, -1, '-'}, -cost);
    return plus;
  };
  const std::size_t v = split(VarKind::kV, -1, 1.0);
  std::vector<std::size_t> g(z), h(z);
  for (std::size_t s = 0; s < z; ++s) g[s] = split(VarKind::kG, static_cast<int>(s), 0.0);
  for (std::size_t s = 0; s < z; ++s) h[s] = split(VarKind::kH, static_cast<int>(s), 0.0);

  auto set_free = [](LpRow& row, std::size_t col, double c) {
    row.coeffs[col] += c;
    row.coeffs[col + 1] -= c;
  };

  for (std::size_t s = 0; s < z; ++s)
    for (std::size_t a = 0; a < smdp.num_actions(s); ++a) {
      const SmdpAction& act = smdp.action(s, static_cast<int>(a));
      const std::string tag = std::to_string(s + 1) + "_" + std::to_string(a + 1);
      const std::size_t slack =
          lp.add_var({VarKind::kSlack, static_cast<int>(s), static_cast<int>(a), 0, 1});
      LpRow& row = lp.add_row("gain_" + tag, 0.0);
      for (std::size_t sp = 0; sp < z; ++sp)
        set_free(row, g[sp], (s == sp ? 1.0 : 0.0) - to_double(act.transitions[sp]));
      row.coeffs[slack] = -1.0;
    }
  for (std::size_t s = 0; s < z; ++s)
    for (std::size_t a = 0; a < smdp.num_actions(s); ++a) {
      const SmdpAction& act = smdp.action(s, static_cast<int>(a));
      const std::string tag = std::to_string(s + 1) + "_" + std::to_string(a + 1);
      const std::size_t slack =
          lp.add_var({VarKind::kSlack, static_cast<int>(s), static_cast<int>(a), 0, 2});
      LpRow& row = lp.add_row("bias_" + tag, to_double(act.reward));
      set_free(row, g[s], 1.0);
      for (std::size_t sp = 0; sp < z; ++sp)
        set_free(row, h[sp], (s == sp ? 1.0 : 0.0) - to_double(act.transitions[sp]));
      set_free(row, v, to_double(act.sojourn));
      row.coeffs[slack] = -1.0;
    }
  const std::size_t slack = lp.add_var({VarKind::kSlack, static_cast<int>(s1), -1, 0, 3});
  LpRow& row = lp.add_row("start_" + std::to_string(s1 + 1), 0.0);
  set_free(row, g[s1], 1.0);
  row.coeffs[slack] = 1.0;
  return lp;
}

// Positive-support threshold used to classify states from a dual solution.
inline constexpr double kSupportTol = 1e-8;

// States with x-mass take their positive-x action; states with only y-mass
// their positive-y action; the rest take action 0. Ties go to the lowest id.
inline PureStationaryPolicy extract_strategy(const LpSolution& sol, const Smdp& smdp,
                                             double tol = kSupportTol) {
  const DlpLayout at(smdp);
  PureStationaryPolicy f;
  f.actions.assign(smdp.size(), 0);
  for (std::size_t s = 0; s < smdp.size(); ++s) {
    int x_pick = -1, y_pick = -1;
    for (std::size_t a = 0; a < smdp.num_actions(s); ++a) {
      if (x_pick < 0 && sol.values[at.x(s, a)] > tol) x_pick = static_cast<int>(a);
      if (y_pick < 0 && sol.values[at.y(s, a)] > tol) y_pick = static_cast<int>(a);
    }
    f.actions[s] = x_pick >= 0 ? x_pick : (y_pick >= 0 ? y_pick : 0);
  }
  return f;
}

struct SemiStationarySolution {
  SemiStationaryStrategy strategy;
  std::vector<double> values;           // DLP optimum per initial state
  std::vector<LpSolution> solutions;    // DLP solution per initial state
};

struct SolveOptions {
  SimplexOptions simplex;
  double support_tol = kSupportTol;
  unsigned threads = 1;
};

class SolverFailure : public Error {
 public:
  using Error::Error;
};

inline SemiStationarySolution solve_semi_stationary(const Smdp& smdp, const SolveOptions& opt = {}) {
  const std::size_t z = smdp.size();
  SemiStationarySolution out{SemiStationaryStrategy::unassigned(z), std::vector<double>(z),
                             std::vector<LpSolution>(z)};
  parallel_for(z, opt.threads, [&](std::size_t s1) {
    LpSolution sol = simplex_solve(build_dlp(smdp, s1), opt.simplex);
    if (sol.status != LpStatus::kOptimal)
      throw SolverFailure("dual LP for initial state " + std::to_string(s1 + 1) + " is " +
                          to_string(sol.status));
    out.strategy.rows[s1] = extract_strategy(sol, smdp, opt.support_tol).actions;
    out.values[s1] = sol.objective;
    out.solutions[s1] = std::move(sol);
  });
  return out;
}

}  // namespace pisg
