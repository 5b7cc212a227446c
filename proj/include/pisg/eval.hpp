#pragma once

// Exact long-run ratio payoffs of pure stationary play:
//   phi(s) = [Q* r](s) / [Q* tau](s).

#include <cstddef>
#include <string>
#include <vector>

#include "pisg/errors.hpp"
#include "pisg/game.hpp"
#include "pisg/ratmat.hpp"
#include "pisg/smdp.hpp"

namespace pisg {

// Markov chain induced by a pure stationary policy. `rewards` holds one
// vector per payoff criterion.
struct ChainData {
  RationalMatrix q;
  std::vector<std::vector<Rational>> rewards;
  std::vector<Rational> sojourns;
};

inline ChainData build_chain(const Smdp& smdp, const PureStationaryPolicy& f) {
  check_policy(smdp, f);
  const std::size_t z = smdp.size();
  ChainData chain{RationalMatrix(z), {std::vector<Rational>(z)}, std::vector<Rational>(z)};
  for (std::size_t s = 0; s < z; ++s) {
    const SmdpAction& act = smdp.action(s, f[s]);
    for (std::size_t t = 0; t < z; ++t) chain.q(s, t) = act.transitions[t];
    chain.rewards[0][s] = act.reward;
    chain.sojourns[s] = act.sojourn;
  }
  return chain;
}

// Game chain under joint action profile f: criteria 0..N-1 are the players'
// rewards, criterion N is the owner-spliced reward.
inline ChainData build_chain(const GameInstance& game, const PureStationaryPolicy& f) {
  const std::size_t z = game.size();
  const auto n = static_cast<std::size_t>(game.num_players);
  if (f.size() != z)
    throw MissingAssignment("profile covers " + std::to_string(f.size()) + " states, game has " +
                            std::to_string(z));
  ChainData chain{RationalMatrix(z), std::vector<std::vector<Rational>>(n + 1, std::vector<Rational>(z)),
                  std::vector<Rational>(z)};
  for (std::size_t s = 0; s < z; ++s) {
    if (f[s] < 0 || static_cast<std::size_t>(f[s]) >= game.states[s].actions.size())
      throw MissingAssignment("no valid action at state " + std::to_string(s + 1));
    const ActionSpec& act = game.action(s, f[s]);
    for (const auto& [t, p] : act.transitions) chain.q(s, static_cast<std::size_t>(t)) = p;
    for (std::size_t i = 0; i < n; ++i) chain.rewards[i][s] = act.rewards[i];
    chain.rewards[n][s] = act.rewards[static_cast<std::size_t>(game.owner(s))];
    chain.sojourns[s] = act.sojourn;
  }
  return chain;
}

// Ratio payoffs for every criterion of the chain: result[c][s].
inline std::vector<std::vector<Rational>> ratio_payoffs(const ChainData& chain) {
  const RationalMatrix qstar = cesaro_limit(chain.q);
  const std::vector<Rational> time = qstar * chain.sojourns;
  for (std::size_t s = 0; s < time.size(); ++s)
    if (time[s] <= 0)
      throw ZeroDenominator("long-run sojourn rate vanishes from state " + std::to_string(s + 1));

  std::vector<std::vector<Rational>> out;
  out.reserve(chain.rewards.size());
  for (const auto& r : chain.rewards) {
    std::vector<Rational> gain = qstar * r;
    for (std::size_t s = 0; s < gain.size(); ++s) gain[s] /= time[s];
    out.push_back(std::move(gain));
  }
  return out;
}

inline std::vector<Rational> eval_policy(const Smdp& smdp, const PureStationaryPolicy& f) {
  return ratio_payoffs(build_chain(smdp, f)).front();
}

// Per-player payoffs phi_i(s1) when play starts in s1 and follows the
// profile's row for s1.
inline std::vector<Rational> eval_profile(const GameInstance& game, const StrategyProfile& profile,
                                          std::size_t s1) {
  const auto all = ratio_payoffs(build_chain(game, joint_policy(game, profile, s1)));
  std::vector<Rational> out;
  for (int i = 0; i < game.num_players; ++i) out.push_back(all[static_cast<std::size_t>(i)][s1]);
  return out;
}

// Owner-spliced payoff at s1; this is the reduced-process value of the
// profile's row for s1.
inline Rational eval_profile_spliced(const GameInstance& game, const StrategyProfile& profile,
                                     std::size_t s1) {
  return ratio_payoffs(build_chain(game, joint_policy(game, profile, s1))).back()[s1];
}

}  // namespace pisg
