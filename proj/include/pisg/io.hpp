#pragma once

// JSON forms of instances, processes, strategies, and reports.
//
// Instance:  {"players": N, "states": [{"id", "owner", "actions": [{"id",
//             "rewards": [..N..], "transitions": {"<state>": "<rational>"},
//             "sojourn": "<rational>"}]}]}
// Process:   same layout without "players"/"owner"; "reward" is a scalar.
// Strategy:  {"player": i, "rows": {"<initial state>": {"<state>": action}}};
//            without "player" the rows cover every state (reduced process).
//            A profile is an array of per-player strategy objects.
// Rationals are written as strings ("8/5"); ids are one-based.

#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pisg/errors.hpp"
#include "pisg/game.hpp"
#include "pisg/oracle.hpp"
#include "pisg/rational.hpp"
#include "pisg/smdp.hpp"

namespace pisg {

using Json = nlohmann::json;

namespace detail {

inline const Json& require(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key))
    throw ParseError(where + ": missing field '" + key + "'");
  return obj.at(key);
}

inline Rational rational_field(const Json& v, const std::string& where) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (v.is_number_integer()) return Rational(v.get<long long>());
  throw ParseError(where + ": expected a rational string such as \"8/5\"");
}

inline int int_field(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
  return v.get<int>();
}

inline int int_key(const std::string& key, const std::string& where) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(key, &used);
  } catch (const std::exception&) {
    throw ParseError(where + ": key '" + key + "' is not an integer");
  }
  if (used != key.size()) throw ParseError(where + ": key '" + key + "' is not an integer");
  return v;
}

inline Json transitions_to_json(const std::map<int, Rational>& row) {
  Json out = Json::object();
  for (const auto& [t, p] : row) out[std::to_string(t + 1)] = to_string(p);
  return out;
}

}  // namespace detail

// Structural problems throw ParseError; rule violations (ids, owners,
// probabilities, sojourn bounds) are left for validate().
inline GameInstance game_from_json(const Json& doc) {
  GameInstance game;
  game.num_players = detail::int_field(detail::require(doc, "players", "instance"), "players");
  const Json& states = detail::require(doc, "states", "instance");
  if (!states.is_array()) throw ParseError("states: expected an array");
  for (std::size_t s = 0; s < states.size(); ++s) {
    const std::string sw = "states[" + std::to_string(s) + "]";
    const Json& js = states[s];
    StateSpec st;
    st.id = detail::int_field(detail::require(js, "id", sw), sw + ".id");
    st.owner = detail::int_field(detail::require(js, "owner", sw), sw + ".owner") - 1;
    const Json& actions = detail::require(js, "actions", sw);
    if (!actions.is_array()) throw ParseError(sw + ".actions: expected an array");
    for (std::size_t a = 0; a < actions.size(); ++a) {
      const std::string aw = sw + ".actions[" + std::to_string(a) + "]";
      const Json& ja = actions[a];
      ActionSpec act;
      act.id = detail::int_field(detail::require(ja, "id", aw), aw + ".id");
      const Json& rewards = detail::require(ja, "rewards", aw);
      if (!rewards.is_array()) throw ParseError(aw + ".rewards: expected an array");
      for (std::size_t i = 0; i < rewards.size(); ++i)
        act.rewards.push_back(detail::rational_field(rewards[i], aw + ".rewards[" + std::to_string(i) + "]"));
      const Json& tr = detail::require(ja, "transitions", aw);
      if (!tr.is_object()) throw ParseError(aw + ".transitions: expected an object");
      for (const auto& [key, p] : tr.items()) {
        const int target = detail::int_key(key, aw + ".transitions");
        act.transitions[target - 1] = detail::rational_field(p, aw + ".transitions." + key);
      }
      act.sojourn = detail::rational_field(detail::require(ja, "sojourn", aw), aw + ".sojourn");
      st.actions.push_back(std::move(act));
    }
    game.states.push_back(std::move(st));
  }
  return game;
}

inline Json game_to_json(const GameInstance& game) {
  Json states = Json::array();
  for (const auto& st : game.states) {
    Json actions = Json::array();
    for (const auto& act : st.actions) {
      Json rewards = Json::array();
      for (const auto& r : act.rewards) rewards.push_back(to_string(r));
      actions.push_back({{"id", act.id},
                         {"rewards", rewards},
                         {"transitions", detail::transitions_to_json(act.transitions)},
                         {"sojourn", to_string(act.sojourn)}});
    }
    states.push_back({{"id", st.id}, {"owner", st.owner + 1}, {"actions", actions}});
  }
  return {{"players", game.num_players}, {"states", states}};
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline GameInstance load_game(const std::string& path) {
  const Json doc = read_json_file(path);
  try {
    return game_from_json(doc);
  } catch (const Json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline Json smdp_to_json(const Smdp& smdp) {
  Json states = Json::array();
  for (std::size_t s = 0; s < smdp.size(); ++s) {
    Json actions = Json::array();
    for (std::size_t a = 0; a < smdp.num_actions(s); ++a) {
      const SmdpAction& act = smdp.action(s, static_cast<int>(a));
      Json tr = Json::object();
      for (std::size_t t = 0; t < act.transitions.size(); ++t)
        if (act.transitions[t] != 0) tr[std::to_string(t + 1)] = to_string(act.transitions[t]);
      actions.push_back({{"id", a + 1},
                         {"reward", to_string(act.reward)},
                         {"transitions", tr},
                         {"sojourn", to_string(act.sojourn)}});
    }
    states.push_back({{"id", s + 1}, {"actions", actions}});
  }
  return {{"states", states}};
}

// Rows over the states selected by `keep` (all states when empty).
inline Json strategy_to_json(const SemiStationaryStrategy& f, std::optional<int> player,
                             const std::vector<bool>& keep = {}) {
  Json rows = Json::object();
  for (std::size_t s1 = 0; s1 < f.size(); ++s1) {
    Json row = Json::object();
    for (std::size_t s = 0; s < f.rows[s1].size(); ++s)
      if ((keep.empty() || keep[s]) && f.rows[s1][s] != kUnassigned)
        row[std::to_string(s + 1)] = f.rows[s1][s] + 1;
    rows[std::to_string(s1 + 1)] = row;
  }
  Json out = Json::object();
  if (player) out["player"] = *player + 1;
  out["rows"] = rows;
  return out;
}

inline Json profile_to_json(const StrategyProfile& profile, const GameInstance& game) {
  Json out = Json::array();
  for (std::size_t i = 0; i < profile.players.size(); ++i) {
    std::vector<bool> owned(game.size());
    for (std::size_t s = 0; s < game.size(); ++s) owned[s] = game.owner(s) == static_cast<int>(i);
    out.push_back(strategy_to_json(profile.players[i], static_cast<int>(i), owned));
  }
  return out;
}

namespace detail {

inline void read_rows(const Json& obj, const GameInstance& game, std::optional<int> player,
                      StrategyProfile& profile) {
  const Json& rows = require(obj, "rows", "strategy");
  if (!rows.is_object()) throw ParseError("strategy.rows: expected an object");
  const int z = static_cast<int>(game.size());
  for (const auto& [k1, row] : rows.items()) {
    const int s1 = int_key(k1, "strategy.rows") - 1;
    if (s1 < 0 || s1 >= z) throw StrategyMismatch("strategy names unknown initial state " + k1);
    if (!row.is_object()) throw ParseError("strategy.rows." + k1 + ": expected an object");
    for (const auto& [k, a] : row.items()) {
      const int s = int_key(k, "strategy.rows." + k1) - 1;
      if (s < 0 || s >= z) throw StrategyMismatch("strategy names unknown state " + k);
      const int act = int_field(a, "strategy.rows." + k1 + "." + k) - 1;
      const auto su = static_cast<std::size_t>(s);
      if (act < 0 || static_cast<std::size_t>(act) >= game.states[su].actions.size())
        throw StrategyMismatch("state " + k + " has no action " + std::to_string(act + 1));
      const int owner = game.owner(su);
      if (player && *player != owner)
        throw StrategyMismatch("player " + std::to_string(*player + 1) + " does not own state " + k);
      profile.players[static_cast<std::size_t>(owner)].rows[static_cast<std::size_t>(s1)][su] = act;
    }
  }
}

}  // namespace detail

// Accepts a single strategy object or an array of them. Entries for states
// a file does not mention stay unassigned.
inline StrategyProfile profile_from_json(const Json& doc, const GameInstance& game) {
  StrategyProfile profile = empty_profile(game);
  auto read_one = [&](const Json& obj) {
    std::optional<int> player;
    if (obj.is_object() && obj.contains("player")) {
      player = detail::int_field(obj.at("player"), "strategy.player") - 1;
      if (*player < 0 || *player >= game.num_players)
        throw StrategyMismatch("strategy for unknown player " + std::to_string(*player + 1));
    }
    detail::read_rows(obj, game, player, profile);
  };
  if (doc.is_array()) {
    for (const auto& obj : doc) read_one(obj);
  } else {
    read_one(doc);
  }
  return profile;
}

// Checks that every state has an action for every initial state.
inline void require_complete(const StrategyProfile& profile, const GameInstance& game) {
  for (std::size_t s1 = 0; s1 < game.size(); ++s1) {
    try {
      joint_policy(game, profile, s1);
    } catch (const MissingAssignment& e) {
      throw StrategyMismatch(e.what());
    }
  }
}

inline Json policy_to_json(const PureStationaryPolicy& f) {
  Json out = Json::array();
  for (int a : f.actions) out.push_back(a + 1);
  return out;
}

// Exact rational string, or fixed-point with four decimals.
inline Json number_json(const Rational& r, bool exact) {
  return exact ? Json(to_string(r)) : Json(format_fixed(r, 4));
}

inline Json deviation_report_to_json(const DeviationReport& report, bool exact) {
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    Json row = {{"player", r.player + 1},
                {"initial_state", r.initial_state + 1},
                {"equilibrium", number_json(r.equilibrium, exact)},
                {"best_response", number_json(r.best_response, exact)},
                {"improving", r.improving}};
    if (r.witness) row["witness"] = policy_to_json(*r.witness);
    rows.push_back(row);
  }
  return {{"mode", to_string(report.mode)},
          {"improving", report.improving_count()},
          {"rows", rows}};
}

inline Json enumeration_to_json(const EnumerationResult& res, bool exact) {
  Json table = Json::array();
  for (std::size_t k = 0; k < res.policies.size(); ++k) {
    Json values = Json::array();
    for (const auto& v : res.table[k]) values.push_back(number_json(v, exact));
    table.push_back({{"index", k + 1}, {"policy", policy_to_json(res.policies[k])}, {"values", values}});
  }
  Json best = Json::array();
  Json argmax = Json::array();
  for (std::size_t s = 0; s < res.best.size(); ++s) {
    best.push_back(number_json(res.best[s], exact));
    Json ids = Json::array();
    for (auto k : res.argmax[s]) ids.push_back(k + 1);
    argmax.push_back(ids);
  }
  return {{"policies", res.policies.size()}, {"table", table}, {"best", best}, {"argmax", argmax}};
}

}  // namespace pisg
