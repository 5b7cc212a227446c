#pragma once

// N-player perfect-information semi-Markov games.
//
// Every state is owned by exactly one player; the other players are dummies
// there and hold no action set. Rewards are stored per (state, owner action)
// for every player. Positions, owners, and transition targets are zero-based;
// the `id` fields keep the one-based labels read from instance files.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "pisg/errors.hpp"
#include "pisg/rational.hpp"
#include "pisg/smdp.hpp"

namespace pisg {

struct ActionSpec {
  int id = 0;
  std::vector<Rational> rewards;         // one entry per player
  std::map<int, Rational> transitions;   // target state position -> probability
  Rational sojourn;

  bool operator==(const ActionSpec&) const = default;
};

struct StateSpec {
  int id = 0;
  int owner = 0;
  std::vector<ActionSpec> actions;

  bool operator==(const StateSpec&) const = default;
};

struct GameInstance {
  int num_players = 1;
  std::vector<StateSpec> states;

  std::size_t size() const { return states.size(); }
  int owner(std::size_t s) const { return states[s].owner; }
  const ActionSpec& action(std::size_t s, int a) const {
    return states[s].actions[static_cast<std::size_t>(a)];
  }

  bool operator==(const GameInstance&) const = default;
};

struct Violation {
  std::string location;
  std::string rule;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

// Bounds on expected sojourn times: eps <= tau(s, a) <= max.
struct SojournBounds {
  Rational eps{1, 1000000000};
  Rational max{1000000000};
};

inline ValidationReport validate(const GameInstance& game, const SojournBounds& bounds = {}) {
  ValidationReport report;
  auto flag = [&](std::string loc, std::string rule, std::string msg) {
    report.violations.push_back({std::move(loc), std::move(rule), std::move(msg)});
  };

  if (game.num_players < 1)
    flag("game", "players", "number of players must be at least 1");
  if (game.states.empty()) flag("game", "states", "state space is empty");

  const int z = static_cast<int>(game.states.size());
  for (int s = 0; s < z; ++s) {
    const StateSpec& st = game.states[static_cast<std::size_t>(s)];
    const std::string sloc = "state " + std::to_string(s + 1);
    if (st.id != s + 1)
      flag(sloc, "state-id",
           "state id " + std::to_string(st.id) + " at position " + std::to_string(s + 1));
    if (st.owner < 0 || st.owner >= game.num_players)
      flag(sloc, "owner", "owner " + std::to_string(st.owner + 1) + " is not a player");
    if (st.actions.empty()) flag(sloc, "actions", "state has no actions");

    for (std::size_t a = 0; a < st.actions.size(); ++a) {
      const ActionSpec& act = st.actions[a];
      const std::string aloc = sloc + " action " + std::to_string(a + 1);
      if (act.id != static_cast<int>(a) + 1)
        flag(aloc, "action-id",
             "action id " + std::to_string(act.id) + " at position " + std::to_string(a + 1));
      if (game.num_players >= 1 &&
          act.rewards.size() != static_cast<std::size_t>(game.num_players))
        flag(aloc, "rewards",
             std::to_string(act.rewards.size()) + " rewards for " +
                 std::to_string(game.num_players) + " players");

      Rational total = 0;
      for (const auto& [target, p] : act.transitions) {
        if (target < 0 || target >= z)
          flag(aloc, "transition-target",
               "transition to unknown state " + std::to_string(target + 1));
        if (p < 0)
          flag(aloc, "probability",
               "negative probability " + to_string(p) + " to state " + std::to_string(target + 1));
        total += p;
      }
      if (total != 1)
        flag(aloc, "stochastic", "transition probabilities sum to " + to_string(total));
      if (act.sojourn < bounds.eps || act.sojourn > bounds.max)
        flag(aloc, "sojourn",
             "expected sojourn " + to_string(act.sojourn) + " outside [" +
                 to_string(bounds.eps) + ", " + to_string(bounds.max) + "]");
    }
  }
  return report;
}

// Per player, a semi-stationary strategy over the whole state space. Entries
// at states the player does not own are ignored (the dummy action).
struct StrategyProfile {
  std::vector<SemiStationaryStrategy> players;

  bool operator==(const StrategyProfile&) const = default;
};

inline StrategyProfile empty_profile(const GameInstance& game) {
  return {std::vector<SemiStationaryStrategy>(static_cast<std::size_t>(game.num_players),
                                              SemiStationaryStrategy::unassigned(game.size()))};
}

// Action chosen by the owner of `s` when play started in `s1`.
inline int assigned_action(const GameInstance& game, const StrategyProfile& profile,
                           std::size_t s1, std::size_t s) {
  const auto owner = static_cast<std::size_t>(game.owner(s));
  if (owner >= profile.players.size())
    throw MissingAssignment("profile has no strategy for player " + std::to_string(owner + 1));
  const auto& rows = profile.players[owner].rows;
  if (s1 >= rows.size() || s >= rows[s1].size())
    throw MissingAssignment("player " + std::to_string(owner + 1) + " has no row for initial state " +
                            std::to_string(s1 + 1));
  const int a = rows[s1][s];
  if (a < 0 || static_cast<std::size_t>(a) >= game.states[s].actions.size())
    throw MissingAssignment("player " + std::to_string(owner + 1) + " assigns no valid action at state " +
                            std::to_string(s + 1) + " for initial state " + std::to_string(s1 + 1));
  return a;
}

// The pure stationary action profile played from initial state s1.
inline PureStationaryPolicy joint_policy(const GameInstance& game, const StrategyProfile& profile,
                                         std::size_t s1) {
  PureStationaryPolicy f;
  f.actions.reserve(game.size());
  for (std::size_t s = 0; s < game.size(); ++s)
    f.actions.push_back(assigned_action(game, profile, s1, s));
  return f;
}

enum class RewardMode {
  kOwn,      // the deviating player's own reward everywhere
  kSpliced,  // the owner's reward at each state
};

inline const char* to_string(RewardMode m) { return m == RewardMode::kOwn ? "own" : "spliced"; }

inline SmdpAction to_smdp_action(const ActionSpec& act, const Rational& reward, std::size_t z) {
  SmdpAction out{reward, std::vector<Rational>(z), act.sojourn};
  for (const auto& [target, p] : act.transitions) out.transitions[static_cast<std::size_t>(target)] = p;
  return out;
}

// Process faced by `player` when every other player follows `profile` from
// initial state s1. Non-owned states keep a single action: the one assigned
// by their owner.
inline Smdp induced_smdp(const GameInstance& game, int player, const StrategyProfile& profile,
                         std::size_t s1, RewardMode mode) {
  const std::size_t z = game.size();
  Smdp out;
  out.states.resize(z);
  for (std::size_t s = 0; s < z; ++s) {
    const StateSpec& st = game.states[s];
    const auto reward_of = [&](const ActionSpec& act) -> const Rational& {
      const int who = mode == RewardMode::kOwn ? player : st.owner;
      return act.rewards[static_cast<std::size_t>(who)];
    };
    if (st.owner == player) {
      for (const auto& act : st.actions)
        out.states[s].actions.push_back(to_smdp_action(act, reward_of(act), z));
    } else {
      const ActionSpec& act = game.action(s, assigned_action(game, profile, s1, s));
      out.states[s].actions.push_back(to_smdp_action(act, reward_of(act), z));
    }
  }
  return out;
}

}  // namespace pisg
