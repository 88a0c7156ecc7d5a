#pragma once

#include <bit>
#include <memory>
#include <utility>
#include <vector>

#include "players.hpp"

namespace msgame {

// MSL(Q, rounds)(length): separate {L_m : m <= length} from {L_m : m > length}.
struct MslSpec {
  Quantifier first;
  int rounds;
  int length;
  friend bool operator==(const MslSpec&, const MslSpec&) = default;
};

inline int q_rank(int length) {
  if (length < 1) throw error("length must be at least 1");
  return std::bit_width(static_cast<unsigned>(length));
}

inline int q_star(Quantifier q, int length);

inline int q_star_forall(int length) {
  if (length < 1) throw error("length must be at least 1");
  if (length == 1) return 1;
  if (length == 2) return 2;
  return q_star(Quantifier::Exists, length / 2) + 1;
}

inline int q_star_exists(int length) {
  if (length < 1) throw error("length must be at least 1");
  if (length == 1) return 2;
  return q_star(Quantifier::Forall, (length + 1) / 2) + 1;
}

inline int q_star(Quantifier q, int length) {
  return q == Quantifier::Forall ? q_star_forall(length) : q_star_exists(length);
}

inline int q_star(int length) { return std::min(q_star_forall(length), q_star_exists(length)); }

// The first quantifier of the alternating separator: a pattern of q*(l) rounds ending in A.
inline Quantifier alternating_first(int length) {
  return q_star(length) % 2 == 1 ? Quantifier::Forall : Quantifier::Exists;
}

struct Budget {
  int q_star;
  int rank_lower;
  int rank_upper;  // rank + 1
};

inline Budget budget(int length) {
  int r = q_rank(length);
  return {q_star(length), r, r + 1};
}

inline bool is_irreducible(const MslSpec& s) {
  return s.length == 1 || (s.first == Quantifier::Forall && s.length == 2);
}

// Sub-games of a reducible spec: (lower half spec, upper half spec).
inline std::pair<MslSpec, MslSpec> split_halves(const MslSpec& s) {
  if (s.length < 1) throw error("length must be at least 1");
  if (is_irreducible(s)) throw error("irreducible spec cannot be split");
  if (s.rounds < 2) throw error("a split needs at least two rounds");
  const int l = s.length / 2;
  const int k = s.rounds - 1;
  const Quantifier c = dual(s.first);
  if (s.first == Quantifier::Exists) {
    if (s.length % 2 == 0) return {{c, k, l}, {c, k, l}};
    return {{c, k, l}, {c, k, l + 1}};
  }
  if (s.length % 2 == 0) return {{c, k, l - 1}, {c, k, l}};
  return {{c, k, l}, {c, k, l}};
}

// Larger sub-length first.
inline std::pair<MslSpec, MslSpec> split(const MslSpec& s) {
  auto [lo, hi] = split_halves(s);
  if (lo.length > hi.length) return {lo, hi};
  return {hi, lo};
}

// Alternating from q with length q*_q(l); a trailing E becomes A A.
inline Pattern cma_pattern(Quantifier q, int length) {
  const int n = q_star(q, length);
  Pattern p;
  Quantifier cur = q;
  for (int i = 0; i < n; ++i, cur = dual(cur)) p.push_back(cur);
  if (p.back() == Quantifier::Exists) p.back() = Quantifier::Forall;
  return p;
}

inline Pattern alternating_pattern(Quantifier first, int n) {
  Pattern p;
  Quantifier cur = first;
  for (int i = 0; i < n; ++i, cur = dual(cur)) p.push_back(cur);
  return p;
}

// Closest-to-midpoint strategy. The pattern is written in the frame where E means a move on the
// short side (lengths <= l); `short_side` says which actual side that is.
class CmaPlayer final : public StrategyPlayer {
 public:
  CmaPlayer(Quantifier first, int length, int rounds, Side short_side = Side::Left)
      : short_(short_side) {
    if (length < 1) throw error("length must be at least 1");
    int need = q_star(first, length);
    if (rounds < need)
      throw error("MSL(" + std::string(1, to_char(first)) + ", " + std::to_string(rounds) + ")(" +
                  std::to_string(length) + ") is not winnable; needs " + std::to_string(need) + " rounds");
    std::vector<int> own(static_cast<std::size_t>(need));
    for (int i = 0; i < need; ++i) own[i] = i + 1;
    build(first, length, own);
    frame_ = nodes_[0].pattern;
    Quantifier cur = dual(frame_.back());
    while (static_cast<int>(frame_.size()) < rounds) {
      frame_.push_back(cur);
      cur = dual(cur);
    }
  }

  Pattern pattern() const override {
    return short_ == Side::Left ? frame_ : flipped(frame_);
  }

  int place(const Board& b, Side side, int t) const override {
    int lo = b.base().first();
    int hi = b.base().last();
    int n = 0;
    while (true) {
      const Node& N = nodes_[n];
      auto it = std::lower_bound(N.rounds.begin(), N.rounds.end(), t);
      if (t < N.rounds.front()) return lo;
      if (N.base) {
        if (it == N.rounds.end() || *it != t) return lo;
        return base_move(N, static_cast<int>(it - N.rounds.begin()), b, lo, hi);
      }
      if (t == N.rounds[0]) return hi > lo ? closest_to_midpoint({lo, hi}) : lo;
      if (t < N.rounds[1]) return lo;
      int p1 = b.pebble(N.rounds[0]);
      if (p1 < lo || p1 > hi) return lo;
      bool lower;
      if (t == N.rounds[1]) {
        if (side != side_of(N.pattern[1])) return lo;
        bool long_side = side != short_;
        lower = long_side ? (p1 - lo) > N.lower_len : (p1 - lo) <= N.lower_len;
      } else {
        int p2 = b.pebble(N.rounds[1]);
        lower = p2 >= lo && p2 < p1;
      }
      if (lower) {
        hi = p1;
        n = N.lower;
      } else {
        lo = p1;
        n = N.upper;
      }
    }
  }

  std::vector<int> branch_path(const Board& b, Side, int round) const override {
    std::vector<int> path;
    int lo = b.base().first();
    int hi = b.base().last();
    int n = 0;
    while (!nodes_[n].base && round >= nodes_[n].rounds[1]) {
      const Node& N = nodes_[n];
      int p1 = b.pebble(N.rounds[0]);
      int p2 = b.pebble(N.rounds[1]);
      if (p1 < lo || p1 > hi) break;
      bool lower = p2 >= lo && p2 < p1;
      path.push_back(lower ? 0 : 1);
      if (lower) {
        hi = p1;
        n = N.lower;
      } else {
        lo = p1;
        n = N.upper;
      }
    }
    return path;
  }
  bool tracks_branches() const override { return true; }

 private:
  struct Node {
    Quantifier q;
    int length;
    Pattern pattern;          // frame pattern of this sub-game
    std::vector<int> rounds;  // player rounds used by this sub-game
    bool base = false;
    int lower = -1;
    int upper = -1;
    int lower_len = 0;
  };

  Side side_of(Quantifier frame_q) const {
    return frame_q == Quantifier::Exists ? short_ : other(short_);
  }

  int build(Quantifier q, int length, const std::vector<int>& rounds) {
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back({q, length, {}, rounds});
    if (is_irreducible({q, static_cast<int>(rounds.size()), length})) {
      nodes_[id].base = true;
      nodes_[id].pattern = cma_pattern(q, length);
      return id;
    }
    auto [lo, hi] = split_halves({q, static_cast<int>(rounds.size()), length});
    Pattern lp = cma_pattern(lo.first, lo.length);
    Pattern hp = cma_pattern(hi.first, hi.length);
    Pattern tail = lp.size() >= hp.size() ? lp : hp;
    Pattern own = concat(Pattern{q}, tail);
    auto child_rounds = [&](const Pattern& p) {
      auto e = embed(p, tail);
      if (!e) throw error("child pattern does not embed");
      std::vector<int> r;
      for (int i : *e) r.push_back(rounds[i + 1]);
      return r;
    };
    auto lr = child_rounds(lp);
    auto hr = child_rounds(hp);
    int l = build(lo.first, lo.length, lr);
    int h = build(hi.first, hi.length, hr);
    nodes_[id].pattern = own;
    nodes_[id].lower = l;
    nodes_[id].upper = h;
    nodes_[id].lower_len = lo.length;
    return id;
  }

  int base_move(const Node& N, int idx, const Board& b, int lo, int hi) const {
    if (N.length == 1 && N.q == Quantifier::Exists) {
      if (idx == 0) return lo;
      return hi - lo >= 2 ? closest_to_midpoint({lo, hi}) : lo;
    }
    if (N.length == 1) return hi - lo >= 2 ? closest_to_midpoint({lo, hi}) : lo;
    // (A, 2): two distinct interior points.
    if (idx == 0) return hi - lo >= 2 ? closest_to_midpoint({lo, hi}) : lo;
    int first = b.pebble(N.rounds[0]);
    for (int c = lo + 1; c < hi; ++c)
      if (c != first) return c;
    return lo;
  }

  Side short_;
  std::vector<Node> nodes_;
  Pattern frame_;
};

inline PlayerPtr cma_player(const MslSpec& s, Side short_side = Side::Left) {
  return std::make_shared<CmaPlayer>(s.first, s.length, s.rounds, short_side);
}

inline PlayerPtr alternating_separator(int length, Side short_side = Side::Left) {
  return std::make_shared<CmaPlayer>(alternating_first(length), length, q_star(length), short_side);
}

// {L_m : length+1 <= m <= max(2 length + 2, 2^(rounds+1))}: stands in for all longer orders.
inline std::vector<Board> surrogate_above(int length, int rounds) {
  if (length < 1) throw error("length must be at least 1");
  if (rounds < 0) throw error("rounds must be nonnegative");
  if (rounds + 1 >= 15) throw error("surrogate too large");
  int top = std::max(2 * length + 2, 1 << (rounds + 1));
  if (top > kMaxOrderLength) throw error("surrogate too large");
  std::vector<Board> out;
  for (int m = length + 1; m <= top; ++m) out.push_back(make_linear_order(m));
  return out;
}

inline std::vector<Board> orders_up_to(int length) {
  std::vector<Board> out;
  for (int m = 1; m <= length; ++m) out.push_back(make_linear_order(m));
  return out;
}

inline GameState msl_instance(int length, int rounds) {
  return GameState(orders_up_to(length), surrogate_above(length, rounds));
}

// Separates L_length (left) from every other order (right) in at most q*(length) + 2 rounds.
inline PlayerPtr exact_length_separator(int length) {
  if (length < 1) throw error("length must be at least 1");
  if (length == 1) return alternating_separator(1);
  const int q = q_star(length);
  PlayerPtr longer = alternating_separator(length);
  PlayerPtr shorter = alternating_separator(length - 1, Side::Right);
  Pattern sp = shorter->pattern();
  if (static_cast<int>(sp.size()) < q)
    shorter = std::make_shared<SequencePlayer>(
        marker_player(dual(sp.front()), Element::min()), shorter);
  sp = shorter->pattern();
  const bool marker_on_long = sp.front() == Quantifier::Forall;
  PlayerPtr marked;
  std::vector<PlayerPtr> branches;
  Pattern master;
  if (marker_on_long) {
    marked = std::make_shared<SequencePlayer>(marker_player(Quantifier::Forall, Element::max()), longer);
    branches = {shorter, marked};
    master = marked->pattern();
  } else {
    marked = std::make_shared<SequencePlayer>(marker_player(Quantifier::Forall, Element::max()), shorter);
    branches = {marked, longer};
    master = alternating_pattern(Quantifier::Forall, q + 2);
  }
  const std::size_t marker_branch = marker_on_long ? 1 : 0;
  auto classify = [length, marker_branch](const Board& b, Side, int round) -> std::optional<std::size_t> {
    if (round == 1) {
      int len = b.base().last() - b.base().first();
      if (len == length) return std::nullopt;
      return len < length ? 0 : 1;
    }
    return b.pebble(1) == b.base().last() ? marker_branch : 1 - marker_branch;
  };
  return schedule_parallel(branches, master, classify);
}

inline std::vector<Board> orders_except(int length, int rounds) {
  std::vector<Board> out;
  for (int m = 1; m < length; ++m) out.push_back(make_linear_order(m));
  for (auto& b : surrogate_above(length, rounds)) out.push_back(b);
  return out;
}

}  // namespace msgame
