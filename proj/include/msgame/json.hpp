#pragma once

// JSON views of engine results. Field names are stable; object keys are emitted sorted.

#include <nlohmann/json.hpp>

#include "bounds.hpp"
#include "constants.hpp"
#include "formulas.hpp"
#include "oracle.hpp"

namespace msgame {

using Json = nlohmann::json;

inline Json to_json(const Pattern& p) { return to_string(p); }

inline Json to_json(const RoundRecord& r) {
  Json j{{"round", r.round},
         {"left_boards", r.left_boards},
         {"right_boards", r.right_boards},
         {"discarded_left", r.discarded_left},
         {"discarded_right", r.discarded_right}};
  if (r.round > 0) {
    j["side"] = to_string(r.side);
    j["color"] = color_name(r.color);
  }
  Json types = Json::array();
  for (const auto& t : r.left_only) types.push_back(t.describe());
  j["left_only_types"] = std::move(types);
  if (!r.placements.empty()) {
    Json pl = Json::array();
    for (const auto& [b, p] : r.placements) pl.push_back({{"board", render(b)}, {"position", p}});
    j["placements"] = std::move(pl);
  }
  return j;
}

inline Json to_json(const Transcript& t) {
  Json j{{"vocabulary", t.vocabulary == Vocabulary::Order ? "order" : "string"},
         {"pattern", to_string(t.pattern)},
         {"won", t.won}};
  Json l = Json::array(), r = Json::array(), rounds = Json::array();
  for (const auto& b : t.initial_left) l.push_back(render(b));
  for (const auto& b : t.initial_right) r.push_back(render(b));
  for (const auto& rec : t.rounds) rounds.push_back(to_json(rec));
  j["left"] = std::move(l);
  j["right"] = std::move(r);
  j["rounds"] = std::move(rounds);
  return j;
}

inline Json to_json(const RunResult& r) {
  return {{"won", r.won},
          {"rounds", r.pattern.size()},
          {"pattern", to_string(r.pattern)},
          {"diagnostics", r.diagnostics},
          {"peak_boards", r.peak_boards}};
}

inline Json term_json(int t) {
  if (t == kMinTerm) return "min";
  if (t == kMaxTerm) return "max";
  return "x" + std::to_string(t + 1);
}

inline Json node_json(const Formula& f, int id) {
  const FormulaNode& n = f.nodes[static_cast<std::size_t>(id)];
  switch (n.op) {
    case Op::True: return {{"op", "true"}};
    case Op::False: return {{"op", "false"}};
    case Op::Less: return {{"op", "less"}, {"left", term_json(n.a)}, {"right", term_json(n.b)}};
    case Op::Equal: return {{"op", "equal"}, {"left", term_json(n.a)}, {"right", term_json(n.b)}};
    case Op::Pred: return {{"op", "S"}, {"term", term_json(n.a)}};
    case Op::Not: return {{"op", "not"}, {"arg", node_json(f, n.kids[0])}};
    case Op::And:
    case Op::Or: {
      Json kids = Json::array();
      for (int k : n.kids) kids.push_back(node_json(f, k));
      return {{"op", n.op == Op::And ? "and" : "or"}, {"args", std::move(kids)}};
    }
  }
  return {};
}

inline Json to_json(const Formula& f) {
  Json prefix = Json::array();
  for (std::size_t i = 0; i < f.prefix.size(); ++i)
    prefix.push_back({{"quantifier", f.prefix[i] == Quantifier::Exists ? "exists" : "forall"},
                      {"variable", "x" + std::to_string(i + 1)}});
  return {{"prefix", std::move(prefix)}, {"matrix", node_json(f, f.root)}, {"text", f.to_string()}};
}

inline Json to_json(const OracleResult& r) {
  Json j{{"nodes_expanded", r.nodes_expanded}, {"proven_lower", r.proven_lower}, {"exceeded", r.exceeded},
         {"value", r.describe()}};
  j["rounds"] = r.rounds ? Json(*r.rounds) : Json(nullptr);
  if (r.exceeded) j["exceeded_reason"] = r.exceeded_reason;
  return j;
}

inline Json to_json(const QRow& r) {
  return {{"length", r.length}, {"q_forall", r.q_forall}, {"q_exists", r.q_exists}, {"q", r.q}, {"r", r.r}};
}

inline Json to_json(const CountingResult& c) {
  return {{"n", c.n},
          {"k_min", c.k_min},
          {"n_over_log2_n", c.n / std::log2(static_cast<double>(c.n))},
          {"at_least_n_over_log2_n", c.above_n_over_log},
          {"exact_agrees", c.interval_agrees},
          {"max_precision_bits", c.max_precision}};
}

inline Json to_json(const BudgetRow& r) {
  return {{"row", r.row},           {"sides", r.sides},           {"formula", r.formula},
          {"main_term", r.main_term}, {"applicable", r.applicable}, {"best", r.best}};
}

inline Json to_json(const RowMeasurement& m) {
  return {{"row", m.row},          {"n", m.n},
          {"left_size", m.left_size}, {"right_size", m.right_size},
          {"rounds", m.rounds},    {"budget", m.budget},
          {"table_term", m.table_term}, {"constant", m.constant},
          {"verified", m.verified}, {"exceeded", m.exceeded},
          {"note", m.note}};
}

}  // namespace msgame
