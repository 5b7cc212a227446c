#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "pisg/io.hpp"
#include "pisg/pisg.hpp"

namespace pisg::testing {

inline std::string data_path(const std::string& name) { return std::string(PISG_DATA_DIR) + "/" + name; }

inline GameInstance example1() { return load_game(data_path("example1.json")); }

inline PureStationaryPolicy labels(std::initializer_list<int> ids) { return policy_from_labels(ids); }

inline int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Random distribution over 1..3 targets with small denominators.
inline std::map<int, Rational> random_row(std::mt19937_64& rng, int z) {
  const int support = uniform(rng, 1, std::min(3, z));
  std::vector<int> weights(static_cast<std::size_t>(support));
  int total = 0;
  for (auto& w : weights) total += (w = uniform(rng, 1, 4));
  std::map<int, Rational> row;
  for (int w : weights) row[uniform(rng, 0, z - 1)] += Rational(w, total);
  return row;
}

inline GameInstance random_game(std::mt19937_64& rng, int players, int max_states = 6, int max_actions = 3) {
  GameInstance g;
  g.num_players = players;
  const int z = uniform(rng, 1, max_states);
  for (int s = 0; s < z; ++s) {
    StateSpec st;
    st.id = s + 1;
    st.owner = uniform(rng, 0, players - 1);
    const int m = uniform(rng, 1, max_actions);
    for (int a = 0; a < m; ++a) {
      ActionSpec act;
      act.id = a + 1;
      for (int i = 0; i < players; ++i) act.rewards.emplace_back(uniform(rng, -5, 20));
      act.transitions = random_row(rng, z);
      act.sojourn = Rational(uniform(rng, 1, 12), uniform(rng, 1, 4));
      st.actions.push_back(std::move(act));
    }
    g.states.push_back(std::move(st));
  }
  return g;
}

inline Smdp random_smdp(std::mt19937_64& rng, int max_states = 6, int max_actions = 3) {
  return reduce(random_game(rng, 1, max_states, max_actions));
}

inline RationalMatrix random_stochastic(std::mt19937_64& rng, int n) {
  RationalMatrix q(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (const auto& [t, p] : random_row(rng, n)) q(static_cast<std::size_t>(i), static_cast<std::size_t>(t)) = p;
  return q;
}

// Every entry positive; weights 1..9.
inline RationalMatrix random_dense(std::mt19937_64& rng, int n) {
  RationalMatrix q(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < q.size(); ++i) {
    std::vector<int> w(q.size());
    int total = 0;
    for (auto& x : w) total += (x = uniform(rng, 1, 9));
    for (std::size_t j = 0; j < q.size(); ++j) q(i, j) = Rational(w[j], total);
  }
  return q;
}

// Closed dense blocks plus transient states whose rows are dense over all
// states.
inline RationalMatrix random_multichain(std::mt19937_64& rng, int n) {
  RationalMatrix q(static_cast<std::size_t>(n));
  const int transient = uniform(rng, 0, n / 2);
  const int blocks = uniform(rng, 1, std::max(1, (n - transient) / 2));
  const int recurrent = n - transient;
  auto block = [&](int i) { return i * blocks / recurrent; };
  for (int i = 0; i < n; ++i) {
    std::vector<int> w(static_cast<std::size_t>(n), 0);
    int total = 0;
    for (int j = 0; j < n; ++j)
      if (i >= recurrent || (j < recurrent && block(j) == block(i))) total += (w[static_cast<std::size_t>(j)] = uniform(rng, 1, 9));
    for (int j = 0; j < n; ++j)
      q(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = Rational(w[static_cast<std::size_t>(j)], total);
  }
  return q;
}

// Chain that cycles through `period` groups of states; inside the next group
// the target is random.
inline RationalMatrix random_periodic(std::mt19937_64& rng, int n, int period) {
  RationalMatrix q(static_cast<std::size_t>(n));
  auto group = [&](int i) { return i % period; };
  for (int i = 0; i < n; ++i) {
    std::vector<int> next;
    for (int j = 0; j < n; ++j)
      if (group(j) == (group(i) + 1) % period) next.push_back(j);
    const int k = uniform(rng, 1, static_cast<int>(next.size()));
    for (int c = 0; c < k; ++c)
      q(static_cast<std::size_t>(i), static_cast<std::size_t>(next[static_cast<std::size_t>(c)])) += Rational(1, k);
  }
  return q;
}

// (1/n) sum_{m=0}^{n-1} Q^m in doubles.
inline std::vector<std::vector<double>> averaged_powers(const RationalMatrix& q, int n) {
  const std::size_t d = q.size();
  std::vector<std::vector<double>> qd(d, std::vector<double>(d)), p(d, std::vector<double>(d, 0.0)), acc = p;
  for (std::size_t i = 0; i < d; ++i) {
    p[i][i] = 1.0;
    for (std::size_t j = 0; j < d; ++j) qd[i][j] = to_double(q(i, j));
  }
  for (int m = 0; m < n; ++m) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) acc[i][j] += p[i][j];
    std::vector<std::vector<double>> next(d, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k)
        if (p[i][k] != 0.0)
          for (std::size_t j = 0; j < d; ++j) next[i][j] += p[i][k] * qd[k][j];
    p = std::move(next);
  }
  for (auto& row : acc)
    for (auto& v : row) v /= n;
  return acc;
}

// Ratio payoff of a stationary chain by brute force on doubles: long-run
// reward over long-run time, averaged over the first n steps.
inline double averaged_ratio(const ChainData& chain, std::size_t s1, int n) {
  const auto avg = averaged_powers(chain.q, n);
  double r = 0.0, t = 0.0;
  for (std::size_t j = 0; j < chain.q.size(); ++j) {
    r += avg[s1][j] * to_double(chain.rewards[0][j]);
    t += avg[s1][j] * to_double(chain.sojourns[j]);
  }
  return r / t;
}

inline double d(const Rational& r) { return to_double(r); }

}  // namespace pisg::testing
