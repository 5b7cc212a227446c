#pragma once

// Monte Carlo estimate of the limiting ratio-average payoff along one
// trajectory: accumulated reward divided by accumulated expected sojourn.
//
// Sojourn times enter as their expectations tau(s, a) rather than being
// sampled; the ratio of expectations is unchanged by this.
//
// Randomness: std::mt19937_64 seeded with SimConfig::seed; a uniform draw is
// the top 53 bits of one output scaled by 2^-53, and the next state is the
// first whose cumulative transition probability exceeds the draw.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pisg/eval.hpp"
#include "pisg/game.hpp"
#include "pisg/parallel.hpp"
#include "pisg/smdp.hpp"

namespace pisg {

struct SimConfig {
  std::uint64_t steps = 100000;
  std::uint64_t seed = 0;
  std::size_t initial_state = 0;
};

struct SimEstimate {
  std::vector<double> ratios;  // one per criterion of the chain
  double total_time = 0.0;
};

inline SimEstimate simulate_payoff(const ChainData& chain, const SimConfig& cfg) {
  if (cfg.steps < 1) throw std::invalid_argument("simulation needs at least one step");
  const std::size_t z = chain.q.size();
  if (cfg.initial_state >= z) throw std::invalid_argument("initial state out of range");

  // Positive entries of each row with their cumulative probabilities.
  std::vector<std::vector<std::pair<std::size_t, double>>> cumulative(z);
  for (std::size_t s = 0; s < z; ++s) {
    double acc = 0.0;
    for (std::size_t t = 0; t < z; ++t)
      if (chain.q(s, t) > 0) cumulative[s].emplace_back(t, acc += to_double(chain.q(s, t)));
    if (cumulative[s].empty()) throw std::invalid_argument("transition row without mass");
  }
  const std::size_t criteria = chain.rewards.size();
  std::vector<std::vector<double>> reward(criteria, std::vector<double>(z));
  for (std::size_t c = 0; c < criteria; ++c)
    for (std::size_t s = 0; s < z; ++s) reward[c][s] = to_double(chain.rewards[c][s]);
  std::vector<double> sojourn(z);
  for (std::size_t s = 0; s < z; ++s) sojourn[s] = to_double(chain.sojourns[s]);

  std::mt19937_64 rng(cfg.seed);
  std::vector<double> total(criteria, 0.0);
  double time = 0.0;
  std::size_t s = cfg.initial_state;
  for (std::uint64_t step = 0; step < cfg.steps; ++step) {
    for (std::size_t c = 0; c < criteria; ++c) total[c] += reward[c][s];
    time += sojourn[s];
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const auto& row = cumulative[s];
    std::size_t k = 0;
    while (k + 1 < row.size() && u >= row[k].second) ++k;
    s = row[k].first;
  }

  SimEstimate est;
  est.total_time = time;
  for (double t : total) est.ratios.push_back(t / time);
  return est;
}

inline SimEstimate simulate_payoff(const Smdp& smdp, const PureStationaryPolicy& f, const SimConfig& cfg) {
  return simulate_payoff(build_chain(smdp, f), cfg);
}

// Criteria 0..N-1 are the players, criterion N the owner-spliced reward.
inline SimEstimate simulate_payoff(const GameInstance& game, const PureStationaryPolicy& joint,
                                   const SimConfig& cfg) {
  return simulate_payoff(build_chain(game, joint), cfg);
}

struct ReplicationSummary {
  std::vector<double> mean;
  std::vector<double> std_error;  // sample standard error over replications
};

// Replication k uses seed cfg.seed + k.
inline ReplicationSummary simulate_replications(const ChainData& chain, const SimConfig& cfg,
                                                std::size_t replications, unsigned threads = 1) {
  if (replications < 1) throw std::invalid_argument("need at least one replication");
  std::vector<SimEstimate> runs(replications);
  parallel_for(replications, threads, [&](std::size_t k) {
    SimConfig c = cfg;
    c.seed = cfg.seed + k;
    runs[k] = simulate_payoff(chain, c);
  });
  const std::size_t criteria = chain.rewards.size();
  ReplicationSummary out{std::vector<double>(criteria, 0.0), std::vector<double>(criteria, 0.0)};
  for (std::size_t c = 0; c < criteria; ++c) {
    for (const auto& r : runs) out.mean[c] += r.ratios[c];
    out.mean[c] /= static_cast<double>(replications);
    if (replications > 1) {
      double ss = 0.0;
      for (const auto& r : runs) ss += (r.ratios[c] - out.mean[c]) * (r.ratios[c] - out.mean[c]);
      out.std_error[c] =
          std::sqrt(ss / static_cast<double>(replications - 1) / static_cast<double>(replications));
    }
  }
  return out;
}

}  // namespace pisg
