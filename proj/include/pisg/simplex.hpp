#pragma once

// Linear programs in equality form and a dense two-phase tableau simplex
// with Bland's anti-cycling rule.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pisg/errors.hpp"

namespace pisg {

enum class VarKind { kX, kY, kT, kV, kG, kH, kSlack };

// Identifies an LP column by role. state/action are zero-based, -1 if unused.
struct VarLabel {
  VarKind kind = VarKind::kX;
  int state = -1;
  int action = -1;
  char sign = 0;   // '+' / '-' for halves of a split free variable
  int group = 0;   // distinguishes slack families

  bool operator==(const VarLabel&) const = default;
};

inline std::string to_string(const VarLabel& v) {
  std::string out;
  switch (v.kind) {
    case VarKind::kX: out = "x"; break;
    case VarKind::kY: out = "y"; break;
    case VarKind::kT: out = "t"; break;
    case VarKind::kV: out = "v"; break;
    case VarKind::kG: out = "g"; break;
    case VarKind::kH: out = "h"; break;
    case VarKind::kSlack: out = "s" + std::to_string(v.group); break;
  }
  if (v.state >= 0) {
    const bool wide = v.state >= 9 || v.action >= 9;
    out += "_" + std::to_string(v.state + 1);
    if (v.action >= 0) out += (wide ? "_" : "") + std::to_string(v.action + 1);
  }
  if (v.sign) out += v.sign;
  return out;
}

enum class LowerBound { kZero, kUnbounded };

struct LpVariable {
  VarLabel label;
  LowerBound lower = LowerBound::kZero;
};

struct LpRow {
  std::string name;
  std::vector<double> coeffs;
  double rhs = 0.0;
};

enum class Sense { kMaximize, kMinimize };

struct LpProblem {
  Sense sense = Sense::kMaximize;
  std::vector<LpVariable> vars;
  std::vector<double> objective;
  std::vector<LpRow> rows;  // every row is an equality

  std::size_t num_vars() const { return vars.size(); }

  std::size_t add_var(VarLabel label, double cost = 0.0, LowerBound lower = LowerBound::kZero) {
    vars.push_back({label, lower});
    objective.push_back(cost);
    for (auto& r : rows) r.coeffs.push_back(0.0);
    return vars.size() - 1;
  }
  LpRow& add_row(std::string name, double rhs) {
    rows.push_back({std::move(name), std::vector<double>(vars.size(), 0.0), rhs});
    return rows.back();
  }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "?";
}

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> values;
  std::vector<std::size_t> basic_vars;  // variables in the final basis
  std::size_t pivots = 0;
  double residual = 0.0;                // max |Ax - b|
};

struct SimplexOptions {
  double pivot_tol = 1e-9;
  double feasibility_tol = 1e-8;
  std::size_t max_pivots = 100000;
};

namespace detail {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), t_(rows * (cols + 1), 0.0) {}

  double& at(std::size_t i, std::size_t j) { return t_[i * (n_ + 1) + j]; }
  double at(std::size_t i, std::size_t j) const { return t_[i * (n_ + 1) + j]; }
  double& rhs(std::size_t i) { return at(i, n_); }
  double rhs(std::size_t i) const { return at(i, n_); }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }

  void pivot(std::size_t r, std::size_t c) {
    const double p = at(r, c);
    for (std::size_t j = 0; j <= n_; ++j) at(r, j) /= p;
    at(r, c) = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= n_; ++j) at(i, j) -= f * at(r, j);
      at(i, c) = 0.0;
    }
  }

  void erase_row(std::size_t r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r * (n_ + 1)),
             t_.begin() + static_cast<std::ptrdiff_t>((r + 1) * (n_ + 1)));
    --m_;
  }

 private:
  std::size_t m_, n_;
  std::vector<double> t_;
};

enum class PhaseResult { kOptimal, kUnbounded };

// Minimizes cost over the tableau's basis; columns >= allowed_cols never enter.
inline PhaseResult run_phase(Tableau& tab, std::vector<std::size_t>& basis,
                             const std::vector<double>& cost, std::size_t allowed_cols,
                             const SimplexOptions& opt, std::size_t& pivots) {
  const std::size_t m = tab.rows();
  for (;;) {
    std::size_t enter = allowed_cols;
    for (std::size_t j = 0; j < allowed_cols; ++j) {
      double rc = cost[j];
      for (std::size_t i = 0; i < m; ++i) rc -= cost[basis[i]] * tab.at(i, j);
      if (rc < -opt.pivot_tol) {
        enter = j;
        break;
      }
    }
    if (enter == allowed_cols) return PhaseResult::kOptimal;

    std::size_t leave = m;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double a = tab.at(i, enter);
      if (a <= opt.pivot_tol) continue;
      const double ratio = std::max(tab.rhs(i), 0.0) / a;
      if (leave == m) {
        best = ratio;
        leave = i;
        continue;
      }
      const double slack = 1e-12 * std::max(1.0, best);
      if (ratio < best - slack) {
        best = ratio;
        leave = i;
      } else if (ratio <= best + slack && basis[i] < basis[leave]) {
        best = std::min(best, ratio);
        leave = i;
      }
    }
    if (leave == m) return PhaseResult::kUnbounded;

    if (++pivots > opt.max_pivots)
      throw IterationLimit("simplex exceeded " + std::to_string(opt.max_pivots) + " pivots");
    tab.pivot(leave, enter);
    basis[leave] = enter;
  }
}

}  // namespace detail

inline LpSolution simplex_solve(const LpProblem& lp, const SimplexOptions& opt = {}) {
  const std::size_t n = lp.num_vars();

  // Columns of the standard form: each free variable becomes a +/- pair.
  std::vector<std::size_t> col_var;
  std::vector<double> col_sign;
  for (std::size_t j = 0; j < n; ++j) {
    col_var.push_back(j);
    col_sign.push_back(1.0);
    if (lp.vars[j].lower == LowerBound::kUnbounded) {
      col_var.push_back(j);
      col_sign.push_back(-1.0);
    }
  }
  const std::size_t nc = col_var.size();
  const std::size_t m = lp.rows.size();

  detail::Tableau tab(m, nc + m);
  for (std::size_t i = 0; i < m; ++i) {
    const double flip = lp.rows[i].rhs < 0 ? -1.0 : 1.0;
    for (std::size_t c = 0; c < nc; ++c)
      tab.at(i, c) = flip * col_sign[c] * lp.rows[i].coeffs[col_var[c]];
    tab.at(i, nc + i) = 1.0;
    tab.rhs(i) = flip * lp.rows[i].rhs;
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = nc + i;

  LpSolution sol;

  // Phase 1: minimize the sum of artificials.
  std::vector<double> cost1(nc + m, 0.0);
  for (std::size_t i = 0; i < m; ++i) cost1[nc + i] = 1.0;
  detail::run_phase(tab, basis, cost1, nc + m, opt, sol.pivots);
  double infeasibility = 0.0;
  for (std::size_t i = 0; i < tab.rows(); ++i)
    if (basis[i] >= nc) infeasibility += std::abs(tab.rhs(i));
  if (infeasibility > opt.feasibility_tol) {
    sol.status = LpStatus::kInfeasible;
    return sol;
  }

  // Drive remaining (zero-level) artificials out; drop redundant rows.
  for (std::size_t i = 0; i < tab.rows();) {
    if (basis[i] < nc) {
      ++i;
      continue;
    }
    std::size_t c = nc;
    for (std::size_t j = 0; j < nc; ++j)
      if (std::abs(tab.at(i, j)) > opt.pivot_tol) {
        c = j;
        break;
      }
    if (c == nc) {
      tab.erase_row(i);
      basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
      continue;
    }
    if (++sol.pivots > opt.max_pivots)
      throw IterationLimit("simplex exceeded " + std::to_string(opt.max_pivots) + " pivots");
    tab.pivot(i, c);
    basis[i] = c;
    ++i;
  }

  // Phase 2 on the original objective, as a minimization.
  const double dir = lp.sense == Sense::kMaximize ? -1.0 : 1.0;
  std::vector<double> cost2(nc + m, 0.0);
  for (std::size_t c = 0; c < nc; ++c) cost2[c] = dir * col_sign[c] * lp.objective[col_var[c]];
  if (detail::run_phase(tab, basis, cost2, nc, opt, sol.pivots) == detail::PhaseResult::kUnbounded) {
    sol.status = LpStatus::kUnbounded;
    return sol;
  }

  sol.status = LpStatus::kOptimal;
  sol.values.assign(n, 0.0);
  for (std::size_t i = 0; i < tab.rows(); ++i) {
    const std::size_t c = basis[i];
    sol.values[col_var[c]] += col_sign[c] * tab.rhs(i);
    sol.basic_vars.push_back(col_var[c]);
  }
  std::sort(sol.basic_vars.begin(), sol.basic_vars.end());
  sol.basic_vars.erase(std::unique(sol.basic_vars.begin(), sol.basic_vars.end()), sol.basic_vars.end());

  for (std::size_t j = 0; j < n; ++j) sol.objective += lp.objective[j] * sol.values[j];
  for (const auto& row : lp.rows) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < n; ++j) lhs += row.coeffs[j] * sol.values[j];
    sol.residual = std::max(sol.residual, std::abs(lhs - row.rhs));
  }
  return sol;
}

// Plain-text equation listing, one constraint per line.
inline void write_lp(std::ostream& out, const LpProblem& lp) {
  auto term_list = [&](const std::vector<double>& coeffs) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      const double c = coeffs[j];
      if (c == 0.0) continue;
      const double mag = std::abs(c);
      if (first)
        os << (c < 0 ? "-" : "");
      else
        os << (c < 0 ? " - " : " + ");
      if (mag != 1.0) os << mag << " ";
      os << to_string(lp.vars[j].label);
      first = false;
    }
    if (first) os << "0";
    return os.str();
  };
  out << (lp.sense == Sense::kMaximize ? "max: " : "min: ") << term_list(lp.objective) << "\n";
  out << "subject to\n";
  for (const auto& row : lp.rows) out << "  " << row.name << ": " << term_list(row.coeffs) << " = " << row.rhs << "\n";
  std::string nonneg, free;
  for (const auto& v : lp.vars) {
    std::string& dst = v.lower == LowerBound::kZero ? nonneg : free;
    dst += (dst.empty() ? "" : ", ") + to_string(v.label);
  }
  if (!nonneg.empty()) out << "  " << nonneg << " >= 0\n";
  if (!free.empty()) out << "  " << free << " free\n";
}

}  // namespace pisg
