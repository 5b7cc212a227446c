#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace pisg;
using pisg::testing::example1;
using pisg::testing::labels;

namespace {

// Player 2 plays action 1 at states 3 and 4 for every initial state.
StrategyProfile player2_fixed(const GameInstance& g) {
  StrategyProfile p = empty_profile(g);
  for (std::size_t s1 = 0; s1 < g.size(); ++s1) {
    p.players[1].rows[s1][2] = 0;
    p.players[1].rows[s1][3] = 0;
  }
  return p;
}

StrategyProfile solver_profile(const GameInstance& g) {
  return lift_strategy(solve_semi_stationary(reduce(g)).strategy, g);
}

GameInstance binary_states(int z) {
  GameInstance g;
  for (int s = 0; s < z; ++s) {
    StateSpec st{s + 1, 0, {}};
    for (int a = 0; a < 2; ++a) st.actions.push_back({a + 1, {Rational(a)}, {{s, Rational(1)}}, Rational(1)});
    g.states.push_back(st);
  }
  return g;
}

}  // namespace

TEST(Enumerate, ExampleOrder) {
  const auto all = enumerate_policies(reduce(example1()));
  ASSERT_EQ(all.size(), 16u);
  EXPECT_EQ(all.front(), labels({1, 1, 1, 1, 1}));
  EXPECT_EQ(all[1], labels({1, 1, 1, 2, 1}));
  EXPECT_EQ(all[8], labels({2, 1, 1, 1, 1}));
  EXPECT_EQ(all[12], labels({2, 2, 1, 1, 1}));
  EXPECT_EQ(all.back(), labels({2, 2, 2, 2, 1}));
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
}

TEST(Enumerate, SingleAction) {
  std::mt19937_64 rng(2);
  const auto p = pisg::testing::random_smdp(rng, 6, 1);
  EXPECT_EQ(enumerate_policies(p).size(), 1u);
  EXPECT_EQ(oracle_solve(p).table.size(), 1u);
}

TEST(Enumerate, CapExceeded) {
  try {
    enumerate_policies(reduce(binary_states(3)), 4);
    FAIL() << "expected CapExceeded";
  } catch (const CapExceeded& e) {
    EXPECT_EQ(e.count(), "8");
  }
  try {
    oracle_solve(reduce(example1()), 4);
    FAIL() << "expected CapExceeded";
  } catch (const CapExceeded& e) {
    EXPECT_EQ(e.count(), "16");
    EXPECT_NE(std::string(e.what()).find("16 policies"), std::string::npos);
  }
  EXPECT_EQ(enumerate_policies(reduce(binary_states(3)), 8).size(), 8u);
}

TEST(Enumerate, CountIsExactBeyondMachineWords) {
  EXPECT_EQ(count_policies(reduce(binary_states(64))).str(), "18446744073709551616");
  EXPECT_THROW(enumerate_policies(reduce(binary_states(64))), CapExceeded);
}

TEST(OracleSolve, ExampleValues) {
  const auto res = oracle_solve(reduce(example1()));
  EXPECT_EQ(res.best[0], Rational(24, 7));
  EXPECT_EQ(res.best[1], 2);
  EXPECT_EQ(res.best[2], Rational(180, 67));
  EXPECT_EQ(res.best[3], Rational(24, 7));
  EXPECT_EQ(res.best[4], Rational(180, 67));
  EXPECT_NEAR(to_double(res.best[2]), 2.687, 5e-4);
}

TEST(OracleSolve, ExampleArgmax) {
  const auto res = oracle_solve(reduce(example1()));
  auto contains = [&](std::size_t s, std::size_t k) {
    return std::find(res.argmax[s].begin(), res.argmax[s].end(), k) != res.argmax[s].end();
  };
  for (std::size_t s : {0u, 2u, 3u, 4u}) EXPECT_TRUE(contains(s, 12)) << s;
  EXPECT_TRUE(contains(1, 0));
  for (std::size_t s = 0; s < 5; ++s) {
    Rational mx = res.table[0][s];
    for (const auto& row : res.table) mx = std::max(mx, row[s]);
    EXPECT_EQ(res.best[s], mx);
    EXPECT_EQ(res.strategy.row(s), res.policies[res.argmax[s].front()]);
  }
}

TEST(OracleSolve, ThreadsGiveSameResult) {
  const auto a = oracle_solve(reduce(example1()), kDefaultPolicyCap, 1);
  const auto b = oracle_solve(reduce(example1()), kDefaultPolicyCap, 3);
  EXPECT_EQ(a.table, b.table);
  EXPECT_EQ(a.argmax, b.argmax);
  EXPECT_EQ(a.strategy, b.strategy);
}

TEST(OracleSolve, AgreesWithLinearProgram) {
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 100; ++trial) {
    const Smdp p = pisg::testing::random_smdp(rng, 5, 3);
    const auto lp = solve_semi_stationary(p);
    const auto res = oracle_solve(p);
    for (std::size_t s1 = 0; s1 < p.size(); ++s1)
      EXPECT_NEAR(lp.values[s1], to_double(res.best[s1]), 1e-6) << "trial " << trial;
  }
}

TEST(BestResponse, SplicedMatchesLpValue) {
  const auto g = example1();
  const auto br = best_response_value(g, 0, player2_fixed(g), 0, RewardMode::kSpliced);
  EXPECT_EQ(br.value, Rational(24, 7));
  EXPECT_EQ(br.witness[2], 0);
  EXPECT_EQ(br.witness[3], 0);
}

TEST(BestResponse, OwnRewardByEnumeration) {
  const auto g = example1();
  const Smdp induced = induced_smdp(g, 0, player2_fixed(g), 0, RewardMode::kOwn);
  const auto policies = enumerate_policies(induced);
  ASSERT_EQ(policies.size(), 4u);
  Rational best = eval_policy(induced, policies[0])[0];
  for (const auto& f : policies) best = std::max(best, eval_policy(induced, f)[0]);
  const auto br = best_response_value(g, 0, player2_fixed(g), 0, RewardMode::kOwn);
  EXPECT_EQ(br.value, best);
  EXPECT_EQ(br.value, Rational(13, 4));
}

TEST(BestResponse, SinglePlayerEqualsOracle) {
  std::mt19937_64 rng(109);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = pisg::testing::random_game(rng, 1, 5, 3);
    const auto res = oracle_solve(reduce(g));
    for (std::size_t s1 = 0; s1 < g.size(); ++s1) {
      EXPECT_EQ(best_response_value(g, 0, empty_profile(g), s1, RewardMode::kOwn).value, res.best[s1]);
      EXPECT_EQ(best_response_value(g, 0, empty_profile(g), s1, RewardMode::kSpliced).value, res.best[s1]);
    }
  }
}

TEST(VerifyNash, LemmaModeHasNoImprovement) {
  const auto g = example1();
  const auto report = verify_nash(g, solver_profile(g), VerifyMode::kLemma, Rational(1, 1000000));
  EXPECT_EQ(report.rows.size(), 10u);
  EXPECT_EQ(report.improving_count(), 0u);
  for (const auto& row : report.rows) {
    EXPECT_FALSE(row.witness.has_value());
    EXPECT_EQ(row.best_response, row.equilibrium);
  }
}

TEST(VerifyNash, DefinitionModeIsDeterministicAndConsistent) {
  const auto g = example1();
  const auto profile = solver_profile(g);
  const Rational tol(1, 1000000);
  const auto a = verify_nash(g, profile, VerifyMode::kDefinition3, tol);
  const auto b = verify_nash(g, profile, VerifyMode::kDefinition3, tol, kDefaultPolicyCap, 4);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t k = 0; k < a.rows.size(); ++k) {
    const auto& r = a.rows[k];
    EXPECT_EQ(r.equilibrium, b.rows[k].equilibrium);
    EXPECT_EQ(r.best_response, b.rows[k].best_response);
    EXPECT_EQ(r.witness, b.rows[k].witness);
    EXPECT_EQ(r.equilibrium, eval_profile(g, profile, r.initial_state)[static_cast<std::size_t>(r.player)]);
    EXPECT_GE(r.best_response, r.equilibrium);
    EXPECT_EQ(r.improving, r.best_response > r.equilibrium + tol);
    EXPECT_EQ(r.witness.has_value(), r.improving);
    if (r.witness) {
      StrategyProfile dev = profile;
      dev.players[static_cast<std::size_t>(r.player)].rows[r.initial_state] = r.witness->actions;
      EXPECT_EQ(eval_profile(g, dev, r.initial_state)[static_cast<std::size_t>(r.player)], r.best_response);
    }
  }
}

TEST(VerifyNash, ModesCoincideForOnePlayer) {
  std::mt19937_64 rng(113);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = pisg::testing::random_game(rng, 1, 5, 3);
    const auto profile = lift_strategy(solve_semi_stationary(reduce(g)).strategy, g);
    const auto lemma = verify_nash(g, profile, VerifyMode::kLemma, Rational(1, 1000000));
    const auto def3 = verify_nash(g, profile, VerifyMode::kDefinition3, Rational(1, 1000000));
    ASSERT_EQ(lemma.rows.size(), def3.rows.size());
    for (std::size_t k = 0; k < lemma.rows.size(); ++k) {
      EXPECT_EQ(lemma.rows[k].equilibrium, def3.rows[k].equilibrium);
      EXPECT_EQ(lemma.rows[k].best_response, def3.rows[k].best_response);
      EXPECT_EQ(lemma.rows[k].improving, def3.rows[k].improving);
    }
    EXPECT_EQ(lemma.improving_count(), 0u);
  }
}

TEST(VerifyNash, SingleActionGamePassesBothModes) {
  std::mt19937_64 rng(127);
  const auto g = pisg::testing::random_game(rng, 3, 6, 1);
  const SemiStationaryStrategy zero{std::vector<std::vector<int>>(g.size(), std::vector<int>(g.size(), 0))};
  const auto profile = lift_strategy(zero, g);
  EXPECT_EQ(verify_nash(g, profile, VerifyMode::kLemma, 0).improving_count(), 0u);
  EXPECT_EQ(verify_nash(g, profile, VerifyMode::kDefinition3, 0).improving_count(), 0u);
}

TEST(VerifyNash, DetectsBadProfile) {
  const auto g = example1();
  const SemiStationaryStrategy ones{std::vector<std::vector<int>>(5, std::vector<int>(5, 1))};
  auto fhat = ones;
  for (auto& row : fhat.rows) row[4] = 0;
  const auto report = verify_nash(g, lift_strategy(fhat, g), VerifyMode::kLemma, Rational(1, 1000000));
  EXPECT_GT(report.improving_count(), 0u);
}
