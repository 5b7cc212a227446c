#pragma once

// Single-controller semi-Markov decision process and the pure strategy
// objects defined on it. States and actions are addressed by zero-based
// position; files and reports use one-based labels.

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "pisg/errors.hpp"
#include "pisg/rational.hpp"

namespace pisg {

inline constexpr int kUnassigned = -1;

struct SmdpAction {
  Rational reward;
  std::vector<Rational> transitions;  // dense row over all states
  Rational sojourn;                   // expected holding time

  bool operator==(const SmdpAction&) const = default;
};

struct SmdpState {
  std::vector<SmdpAction> actions;

  bool operator==(const SmdpState&) const = default;
};

struct Smdp {
  std::vector<SmdpState> states;

  std::size_t size() const { return states.size(); }
  std::size_t num_actions(std::size_t s) const { return states[s].actions.size(); }
  const SmdpAction& action(std::size_t s, int a) const {
    return states[s].actions[static_cast<std::size_t>(a)];
  }
  std::size_t total_actions() const {
    std::size_t k = 0;
    for (const auto& st : states) k += st.actions.size();
    return k;
  }

  bool operator==(const Smdp&) const = default;
};

// One action per state.
struct PureStationaryPolicy {
  std::vector<int> actions;

  std::size_t size() const { return actions.size(); }
  int operator[](std::size_t s) const { return actions[s]; }

  auto operator<=>(const PureStationaryPolicy&) const = default;
};

// rows[s1][s]: action taken at state s when play started in s1.
struct SemiStationaryStrategy {
  std::vector<std::vector<int>> rows;

  static SemiStationaryStrategy unassigned(std::size_t z) {
    return {std::vector<std::vector<int>>(z, std::vector<int>(z, kUnassigned))};
  }
  std::size_t size() const { return rows.size(); }
  PureStationaryPolicy row(std::size_t s1) const { return {rows.at(s1)}; }

  bool operator==(const SemiStationaryStrategy&) const = default;
};

// "(2, 2, 1, 1, 1)" with one-based action labels.
inline std::string format_policy(const PureStationaryPolicy& f) {
  std::string out = "(";
  for (std::size_t s = 0; s < f.size(); ++s) {
    if (s) out += ", ";
    out += f[s] == kUnassigned ? std::string("-") : std::to_string(f[s] + 1);
  }
  return out + ")";
}

// Builds a policy from one-based action labels.
inline PureStationaryPolicy policy_from_labels(std::initializer_list<int> labels) {
  PureStationaryPolicy f;
  for (int a : labels) f.actions.push_back(a - 1);
  return f;
}

inline void check_policy(const Smdp& smdp, const PureStationaryPolicy& f) {
  if (f.size() != smdp.size())
    throw MissingAssignment("policy covers " + std::to_string(f.size()) +
                            " states, process has " + std::to_string(smdp.size()));
  for (std::size_t s = 0; s < f.size(); ++s) {
    if (f[s] < 0 || static_cast<std::size_t>(f[s]) >= smdp.num_actions(s))
      throw MissingAssignment("no valid action at state " + std::to_string(s + 1));
  }
}

}  // namespace pisg
