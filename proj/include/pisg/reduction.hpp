#pragma once

// Game -> single-controller process, and back.
//
// The reduced process keeps states, kernel, and sojourn times; its action set
// at s is the owner's, rewarded with the owner's reward. An optimal strategy
// of the reduced process, split by ownership, is a pure semi-stationary Nash
// equilibrium of the game.

#include <cstddef>

#include "pisg/game.hpp"
#include "pisg/smdp.hpp"

namespace pisg {

inline Smdp reduce(const GameInstance& game) {
  const std::size_t z = game.size();
  Smdp out;
  out.states.resize(z);
  for (std::size_t s = 0; s < z; ++s) {
    const auto owner = static_cast<std::size_t>(game.owner(s));
    for (const auto& act : game.states[s].actions)
      out.states[s].actions.push_back(to_smdp_action(act, act.rewards[owner], z));
  }
  return out;
}

// Player i copies the strategy on the states it owns and plays the dummy
// action (position 0) elsewhere.
inline StrategyProfile lift_strategy(const SemiStationaryStrategy& fhat, const GameInstance& game) {
  const std::size_t z = game.size();
  StrategyProfile profile;
  profile.players.resize(static_cast<std::size_t>(game.num_players));
  for (int i = 0; i < game.num_players; ++i) {
    auto& rows = profile.players[static_cast<std::size_t>(i)].rows;
    rows.assign(z, std::vector<int>(z, 0));
    for (std::size_t s1 = 0; s1 < z; ++s1)
      for (std::size_t s = 0; s < z; ++s)
        if (game.owner(s) == i) rows[s1][s] = fhat.rows.at(s1).at(s);
  }
  return profile;
}

// Inverse of lift_strategy: reads each state's action from its owner.
inline SemiStationaryStrategy splice_profile(const StrategyProfile& profile, const GameInstance& game) {
  SemiStationaryStrategy out = SemiStationaryStrategy::unassigned(game.size());
  for (std::size_t s1 = 0; s1 < game.size(); ++s1)
    out.rows[s1] = joint_policy(game, profile, s1).actions;
  return out;
}

}  // namespace pisg
