#pragma once

// Verification runs shared by the command-line tool and the acceptance binary.

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "formulas.hpp"
#include "oracle.hpp"
#include "order_strategies.hpp"
#include "string_strategies.hpp"

namespace msgame {

enum class LinearStrategy { Cma, Alternating, ExactLength };

inline const char* to_string(LinearStrategy s) {
  switch (s) {
    case LinearStrategy::Cma: return "cma";
    case LinearStrategy::Alternating: return "alternating";
    case LinearStrategy::ExactLength: return "exact-length";
  }
  return "?";
}

struct Verification {
  std::string strategy;
  std::string instance;
  GameState game;
  PlayerPtr player;
  int expected_rounds = 0;  // exact target, or the ceiling when `at_most` is set
  bool at_most = false;
  Pattern expected_pattern;  // empty when any pattern is accepted
};

inline Verification linear_case(LinearStrategy s, int length, Quantifier q = Quantifier::Exists) {
  Verification v;
  v.strategy = to_string(s);
  switch (s) {
    case LinearStrategy::Cma: {
      int r = q_star(q, length);
      v.instance = "L<=" + std::to_string(length) + " vs longer, first " + std::string(1, to_char(q));
      v.game = msl_instance(length, r);
      v.player = cma_player({q, r, length});
      v.expected_rounds = r;
      v.expected_pattern = cma_pattern(q, length);
      break;
    }
    case LinearStrategy::Alternating: {
      int r = q_star(length);
      v.instance = "L<=" + std::to_string(length) + " vs longer";
      v.game = msl_instance(length, r);
      v.player = alternating_separator(length);
      v.expected_rounds = r;
      v.expected_pattern = alternating_pattern(alternating_first(length), r);
      break;
    }
    case LinearStrategy::ExactLength: {
      v.player = exact_length_separator(length);
      int r = static_cast<int>(v.player->pattern().size());
      v.instance = "L" + std::to_string(length) + " vs every other length";
      v.game = GameState({make_linear_order(length)}, orders_except(length, r));
      v.expected_rounds = q_star(length) + 2;
      v.at_most = true;
      break;
    }
  }
  return v;
}

inline Verification one_vs_all_case(const std::string& w) {
  Verification v;
  const int n = static_cast<int>(w.size());
  v.strategy = "one-vs-all";
  v.instance = w + " vs all other " + std::to_string(n) + "-bit strings";
  v.game = string_game({w}, complement_of({w}, n));
  v.player = sep_one_vs_all(w);
  const int k = ceil_log3(n);
  v.expected_rounds = 3 * k;
  for (int i = 0; i < k; ++i)
    for (Quantifier q : {Quantifier::Exists, Quantifier::Exists, Quantifier::Forall}) v.expected_pattern.push_back(q);
  return v;
}

struct RoundTrip {
  bool done = false;
  int quantifiers = 0;
  bool signature_matches = false;
  bool separates = false;
  bool replay_won = false;
  int replay_rounds = 0;
  std::string formula_text;
  bool ok() const { return done && signature_matches && separates && replay_won; }
};

struct VerificationResult {
  std::string strategy;
  std::string instance;
  bool won = false;
  int rounds = 0;
  Pattern pattern;
  bool rounds_ok = false;
  bool pattern_ok = false;
  std::vector<std::string> diagnostics;
  std::size_t peak_boards = 0;
  RoundTrip round_trip;
  Transcript transcript;
  bool ok() const { return won && rounds_ok && pattern_ok && diagnostics.empty(); }
};

// Synthesizes the sentence, model-checks it on the instance and replays it as a strategy.
inline RoundTrip round_trip(const GameState& game, const Transcript& tr, std::string* text = nullptr) {
  RoundTrip rt;
  Formula f = synthesize(tr);
  rt.quantifiers = f.rank();
  rt.signature_matches = f.prefix == tr.pattern && f.rank() == static_cast<int>(tr.pattern.size());
  if (text) *text = f.to_string();
  auto mc = std::make_shared<const ModelChecker>(std::move(f));
  rt.separates = check_separation(*mc, game.left(), game.right()).ok;
  if (rt.separates) {
    RunResult replay = run_strategy(game, *spoiler_from_formula(mc), rt.quantifiers);
    rt.replay_won = replay.won;
    rt.replay_rounds = static_cast<int>(replay.pattern.size());
  }
  rt.done = true;
  return rt;
}

inline VerificationResult verify(const Verification& v, bool with_round_trip, bool keep_transcript = false) {
  VerificationResult out;
  out.strategy = v.strategy;
  out.instance = v.instance;
  const int r = static_cast<int>(v.player->pattern().size());
  RunResult res = run_strategy(v.game, *v.player, r);
  out.won = res.won;
  out.rounds = r;
  out.pattern = res.pattern;
  out.diagnostics = res.diagnostics;
  out.peak_boards = res.peak_boards;
  out.rounds_ok = v.at_most ? r <= v.expected_rounds : r == v.expected_rounds;
  out.pattern_ok = v.expected_pattern.empty() || res.pattern == v.expected_pattern;
  if (with_round_trip && res.won) {
    out.round_trip = round_trip(v.game, res.transcript);
    out.round_trip.done = true;
    if (out.round_trip.replay_rounds != r) out.round_trip.replay_won = false;
  }
  if (keep_transcript) out.transcript = std::move(res.transcript);
  return out;
}

inline bool strictly_alternating(const Pattern& p) {
  for (std::size_t i = 1; i < p.size(); ++i)
    if (p[i] == p[i - 1]) return false;
  return true;
}

// Small order or string instance with disjoint sides; `copies` repeats each board.
inline GameState random_tiny_instance(std::mt19937_64& rng, int copies = 1) {
  std::vector<Board> pool;
  if (rng() & 1) {
    for (int l = 1; l <= 4; ++l) pool.push_back(make_linear_order(l));
  } else {
    int n = 2 + static_cast<int>(rng() % 3);
    for (const auto& w : all_strings(n)) pool.push_back(make_binary_string(w));
  }
  std::shuffle(pool.begin(), pool.end(), rng);
  std::size_t nl = 1 + rng() % 3, nr = 1 + rng() % 3;
  nl = std::min(nl, pool.size() - 1);
  nr = std::min(nr, pool.size() - nl);
  std::vector<Board> left, right;
  for (int c = 0; c < copies; ++c) {
    left.insert(left.end(), pool.begin(), pool.begin() + static_cast<long>(nl));
    right.insert(right.end(), pool.begin() + static_cast<long>(nl), pool.begin() + static_cast<long>(nl + nr));
  }
  return GameState(std::move(left), std::move(right), false);
}

struct InvarianceCase {
  std::string instance;
  OracleResult base;
  OracleResult without_discard;
  OracleResult without_dedup;
  bool ok() const {
    return base.rounds == without_discard.rounds && base.rounds == without_dedup.rounds &&
           base.proven_lower == without_discard.proven_lower && base.proven_lower == without_dedup.proven_lower;
  }
};

// The oracle value with and without interleaved discards and board deduplication. Without
// discards the order search blows up past two rounds, so orders get a lower round cap.
inline InvarianceCase oracle_invariance(std::mt19937_64& rng, int order_rounds = 2, int string_rounds = 3) {
  GameState doubled = random_tiny_instance(rng, 2);
  GameState plain(doubled.left(), doubled.right());
  InvarianceCase c;
  for (const auto& b : plain.left()) c.instance += render(b) + " ";
  c.instance += "vs";
  for (const auto& b : plain.right()) c.instance += " " + render(b);
  OracleOptions o;
  o.max_rounds = plain.left().front().base().is_order() ? order_rounds : string_rounds;
  c.base = min_rounds(plain, o);
  OracleOptions nd = o;
  nd.discard = false;
  c.without_discard = min_rounds(plain, nd);
  OracleOptions nu = o;
  nu.dedup = false;
  c.without_dedup = min_rounds(doubled, nu);
  return c;
}

}  // namespace msgame
