#pragma once

// Complete-enumeration solver over pure stationary policies, best responses,
// and Nash verification of pure semi-stationary profiles.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pisg/eval.hpp"
#include "pisg/game.hpp"
#include "pisg/parallel.hpp"
#include "pisg/reduction.hpp"
#include "pisg/smdp.hpp"

namespace pisg {

inline constexpr std::uint64_t kDefaultPolicyCap = std::uint64_t{1} << 20;

inline Integer count_policies(const Smdp& smdp) {
  Integer count = 1;
  for (std::size_t s = 0; s < smdp.size(); ++s) count *= smdp.num_actions(s);
  return count;
}

// All policies in lexicographic order, state 1 most significant.
inline std::vector<PureStationaryPolicy> enumerate_policies(const Smdp& smdp,
                                                            std::uint64_t cap = kDefaultPolicyCap) {
  const Integer count = count_policies(smdp);
  if (count > cap) throw CapExceeded(count.str(), std::to_string(cap));

  const std::size_t z = smdp.size();
  std::vector<PureStationaryPolicy> out;
  out.reserve(count.convert_to<std::size_t>());
  if (count == 0) return out;
  PureStationaryPolicy f{std::vector<int>(z, 0)};
  for (;;) {
    out.push_back(f);
    std::size_t s = z;
    for (;;) {
      if (s == 0) return out;
      --s;
      if (static_cast<std::size_t>(++f.actions[s]) < smdp.num_actions(s)) break;
      f.actions[s] = 0;
    }
  }
}

struct EnumerationResult {
  std::vector<PureStationaryPolicy> policies;
  std::vector<std::vector<Rational>> table;          // table[k][s] = phi(s, policies[k])
  std::vector<Rational> best;                        // per initial state
  std::vector<std::vector<std::size_t>> argmax;      // policy indices attaining best
  SemiStationaryStrategy strategy;                   // first argmax per initial state
};

inline EnumerationResult oracle_solve(const Smdp& smdp, std::uint64_t cap = kDefaultPolicyCap,
                                      unsigned threads = 1) {
  EnumerationResult res;
  res.policies = enumerate_policies(smdp, cap);
  res.table.resize(res.policies.size());
  parallel_for(res.policies.size(), threads,
               [&](std::size_t k) { res.table[k] = eval_policy(smdp, res.policies[k]); });

  const std::size_t z = smdp.size();
  res.best.resize(z);
  res.argmax.resize(z);
  res.strategy = SemiStationaryStrategy::unassigned(z);
  for (std::size_t s1 = 0; s1 < z; ++s1) {
    for (std::size_t k = 0; k < res.table.size(); ++k) {
      const Rational& v = res.table[k][s1];
      if (res.argmax[s1].empty() || v > res.best[s1]) {
        res.best[s1] = v;
        res.argmax[s1].assign(1, k);
      } else if (v == res.best[s1]) {
        res.argmax[s1].push_back(k);
      }
    }
    res.strategy.rows[s1] = res.policies[res.argmax[s1].front()].actions;
  }
  return res;
}

struct BestResponse {
  Rational value;
  PureStationaryPolicy witness;  // joint action profile of the game
};

// Best pure stationary deviation of `player` at initial state s1 with the
// other players fixed to the profile's row for s1.
inline BestResponse best_response_value(const GameInstance& game, int player,
                                        const StrategyProfile& profile, std::size_t s1,
                                        RewardMode mode, std::uint64_t cap = kDefaultPolicyCap) {
  const Smdp induced = induced_smdp(game, player, profile, s1, mode);
  BestResponse best;
  bool have = false;
  for (const auto& f : enumerate_policies(induced, cap)) {
    Rational v = eval_policy(induced, f)[s1];
    if (!have || v > best.value) {
      best.value = std::move(v);
      best.witness = f;
      have = true;
    }
  }
  // Singleton states of the induced process stand for the owner's assignment.
  for (std::size_t s = 0; s < game.size(); ++s)
    if (game.owner(s) != player) best.witness.actions[s] = assigned_action(game, profile, s1, s);
  return best;
}

enum class VerifyMode {
  kLemma,        // spliced rewards: each player optimizes the reduced payoff
  kDefinition3,  // each player's own reward along the whole trajectory
};

inline const char* to_string(VerifyMode m) {
  return m == VerifyMode::kLemma ? "lemma" : "definition3";
}

struct DeviationRow {
  int player = 0;
  std::size_t initial_state = 0;
  Rational equilibrium;
  Rational best_response;
  bool improving = false;
  std::optional<PureStationaryPolicy> witness;
};

struct DeviationReport {
  VerifyMode mode = VerifyMode::kLemma;
  std::vector<DeviationRow> rows;  // player-major, then initial state

  std::size_t improving_count() const {
    std::size_t n = 0;
    for (const auto& r : rows) n += r.improving ? 1 : 0;
    return n;
  }
};

inline DeviationReport verify_nash(const GameInstance& game, const StrategyProfile& profile,
                                   VerifyMode mode, const Rational& tol,
                                   std::uint64_t cap = kDefaultPolicyCap, unsigned threads = 1) {
  const std::size_t z = game.size();
  const auto n = static_cast<std::size_t>(game.num_players);
  const RewardMode rmode = mode == VerifyMode::kLemma ? RewardMode::kSpliced : RewardMode::kOwn;

  DeviationReport report;
  report.mode = mode;
  report.rows.resize(n * z);
  parallel_for(z, threads, [&](std::size_t s1) {
    const auto payoffs = ratio_payoffs(build_chain(game, joint_policy(game, profile, s1)));
    for (std::size_t i = 0; i < n; ++i) {
      DeviationRow& row = report.rows[i * z + s1];
      row.player = static_cast<int>(i);
      row.initial_state = s1;
      row.equilibrium = mode == VerifyMode::kLemma ? payoffs[n][s1] : payoffs[i][s1];
      BestResponse br = best_response_value(game, static_cast<int>(i), profile, s1, rmode, cap);
      row.best_response = br.value;
      row.improving = br.value > row.equilibrium + tol;
      if (row.improving) row.witness = std::move(br.witness);
    }
  });
  return report;
}

}  // namespace pisg
