#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "order_strategies.hpp"

namespace msgame {

inline std::vector<std::string> all_strings(int n) {
  if (n < 1 || n > 24) throw error("string length out of range for enumeration");
  std::vector<std::string> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i)
      if ((x >> (n - 1 - i)) & 1U) s[i] = '1';
    out.push_back(s);
  }
  return out;
}

inline std::vector<std::string> all_strings_up_to(int n) {
  std::vector<std::string> out;
  for (int k = 1; k <= n; ++k)
    for (auto& s : all_strings(k)) out.push_back(std::move(s));
  return out;
}

inline std::vector<std::string> complement_of(const std::vector<std::string>& set, int n) {
  std::set<std::string> drop(set.begin(), set.end());
  std::vector<std::string> out;
  for (auto& s : all_strings(n))
    if (!drop.contains(s)) out.push_back(std::move(s));
  return out;
}

inline std::vector<Board> string_boards(const std::vector<std::string>& strings) {
  std::vector<Board> out;
  out.reserve(strings.size());
  for (const auto& s : strings) out.push_back(make_binary_string(s));
  return out;
}

inline GameState string_game(const std::vector<std::string>& left, const std::vector<std::string>& right) {
  return GameState(string_boards(left), string_boards(right));
}

// 1-based index of the first position where the strings differ.
inline int first_difference(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) throw error("strings have different lengths");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return static_cast<int>(i) + 1;
  throw error("strings are equal");
}

inline PlayerPtr empty_player() {
  return std::make_shared<FunctionPlayer>(Pattern{}, [](const Board& b, Side, int) { return b.base().first(); });
}

inline PlayerPtr sep_one_vs_one(const std::string& w, const std::string& v) {
  Structure::binary_string(w);
  Structure::binary_string(v);
  if (w.size() != v.size()) throw error("one-vs-one needs strings of equal length");
  const int i = first_difference(w, v);
  if (i == 1) return empty_player();
  auto first = std::make_shared<FunctionPlayer>(Pattern{Quantifier::Exists},
                                                [i](const Board&, Side, int) { return i; });
  auto rest = std::make_shared<SegmentPlayer>(exact_length_separator(i - 1), Element::min(),
                                              Element::color(1), 1);
  return std::make_shared<SequencePlayer>(first, rest, true);
}

inline PlayerPtr sep_one_vs_one_anylen(const std::string& w, const std::string& v) {
  Structure::binary_string(w);
  Structure::binary_string(v);
  if (w == v) throw error("strings are equal");
  if (w.size() == v.size()) return sep_one_vs_one(w, v);
  if (w.size() == 1 || v.size() == 1) return empty_player();
  return std::make_shared<OrderViewPlayer>(exact_length_separator(static_cast<int>(w.size()) - 1));
}

inline int ceil_log3(int n) {
  int k = 0;
  for (long long p = 1; p < n; p *= 3) ++k;
  return k;
}

// Thirds recursion: Spoiler marks the cut points of w's current segment, then pins the leftmost
// third where the other string's segment falls short (or runs long) or disagrees.
class OneVsAllPlayer final : public StrategyPlayer {
 public:
  enum class Variant { TooShort, TooLong };

  OneVsAllPlayer(std::string w, Variant v, bool cleanup)
      : w_(Structure::binary_string(w)), variant_(v), cleanup_(cleanup),
        blocks_(ceil_log3(static_cast<int>(w.size()))) {}

  Pattern pattern() const override {
    Pattern p;
    for (int k = 0; k < blocks_; ++k) {
      p.push_back(Quantifier::Exists);
      p.push_back(Quantifier::Exists);
      p.push_back(Quantifier::Forall);
    }
    if (cleanup_) p.push_back(Quantifier::Forall);
    return p;
  }

  int place(const Board& b, Side side, int t) const override {
    const int block = (t - 1) / 3;
    const int phase = (t - 1) % 3;
    Cursor own{b.base().first(), b.base().last() + 1};
    Cursor ref{w_.first(), w_.last() + 1};
    for (int k = 0; k < std::min(block, blocks_); ++k) {
      int c = third_of(b, k, own);
      if (c < 0) return own.start;
      advance(ref, c, cut1(ref), cut2(ref));
      advance(own, c, b.pebble(3 * k + 1), b.pebble(3 * k + 2));
    }
    if (block >= blocks_) {
      if (own.end - own.start >= 2) return own.start + 1;
      return std::min(own.start, b.base().last());
    }
    if (phase == 0) return std::min(cut1(own), b.base().last());
    if (phase == 1) return std::min(cut2(own), b.base().last());
    (void)side;
    int r = b.pebble(3 * block + 1);
    int bl = b.pebble(3 * block + 2);
    if (!(own.start <= r && r <= bl && bl <= own.end)) return std::min(own.start, b.base().last());
    const int ls[3] = {ref.start, cut1(ref), cut2(ref)};
    const int le[3] = {cut1(ref), cut2(ref), ref.end};
    const int os[3] = {own.start, r, bl};
    const int oe[3] = {r, bl, own.end};
    for (int c = 0; c < 3; ++c) {
      int a = le[c] - ls[c];
      int o = oe[c] - os[c];
      bool violated = variant_ == Variant::TooShort ? o < a : o > a;
      if (!violated && o == a) violated = !same_bits(b.base(), os[c], ls[c], a);
      if (violated) return std::min(os[c], b.base().last());
    }
    return std::min(own.start, b.base().last());
  }

  std::vector<int> branch_path(const Board& b, Side, int round) const override {
    std::vector<int> path;
    Cursor own{b.base().first(), b.base().last() + 1};
    for (int k = 0; k < std::min(round / 3, blocks_); ++k) {
      int c = third_of(b, k, own);
      if (c < 0) break;
      path.push_back(c);
      advance(own, c, b.pebble(3 * k + 1), b.pebble(3 * k + 2));
    }
    return path;
  }
  bool tracks_branches() const override { return true; }

  int blocks() const { return blocks_; }

 private:
  struct Cursor {
    int start;
    int end;  // exclusive; last + 1 for a segment running to max
  };

  static int cut1(const Cursor& c) { return c.start + (c.end - c.start) / 3; }
  static int cut2(const Cursor& c) { return c.start + 2 * (c.end - c.start) / 3; }

  static void advance(Cursor& c, int third, int r, int b) {
    if (third == 0) c.end = r;
    else if (third == 1) c = {r, b};
    else c.start = b;
  }

  // Which third the universal pebble of block k selected: checked as b, then r, then start,
  // so that coinciding markers resolve to the third that can be nonempty.
  static int third_of(const Board& b, int k, const Cursor& own) {
    int g = b.pebble(3 * k + 3);
    if (g == b.pebble(3 * k + 2)) return 2;
    if (g == b.pebble(3 * k + 1)) return 1;
    if (g == own.start) return 0;
    return -1;
  }

  bool same_bits(const Structure& s, int from, int ref_from, int len) const {
    for (int k = 0; k < len; ++k)
      if (s.bit(from + k) != w_.bit(ref_from + k)) return false;
    return true;
  }

  Structure w_;
  Variant variant_;
  bool cleanup_;
  int blocks_;
};

inline PlayerPtr sep_one_vs_all(const std::string& w) {
  return std::make_shared<OneVsAllPlayer>(w, OneVsAllPlayer::Variant::TooShort, false);
}

// w against every other string of length at most max_other_len.
inline PlayerPtr sep_one_vs_all_anylen(const std::string& w, int max_other_len) {
  Structure::binary_string(w);
  if (max_other_len < 1) throw error("max_other_len must be at least 1");
  const int n = static_cast<int>(w.size());
  if (n == 1) return empty_player();
  auto shorter = std::make_shared<SequencePlayer>(
      marker_player(Quantifier::Forall, Element::min()),
      std::make_shared<OneVsAllPlayer>(w, OneVsAllPlayer::Variant::TooShort, false));
  auto longer = std::make_shared<SequencePlayer>(
      marker_player(Quantifier::Forall, Element::max()),
      std::make_shared<OneVsAllPlayer>(w, OneVsAllPlayer::Variant::TooLong, true));
  auto classify = [n](const Board& b, Side, int round) -> std::optional<std::size_t> {
    if (round == 1) return b.base().size() <= n ? 0 : 1;
    if (b.pebble(1) == b.base().first()) return 0;
    if (b.pebble(1) == b.base().last()) return 1;
    return std::nullopt;
  };
  return schedule_parallel({shorter, longer}, longer->pattern(), classify);
}

// ---------------------------------------------------------------- preprocessing

enum class PreprocessKind { None, Permutation, Instructional };

struct Preprocessing {
  PreprocessKind kind = PreprocessKind::None;
  Side side = Side::Right;
  int moves = 0;
  std::vector<std::string> strings;             // sorted
  std::vector<std::vector<int>> positions;      // per string, one position per move
  std::vector<std::string> codes;               // instructional codes, per string
  std::map<std::string, std::size_t> index;     // string -> row
};

inline Preprocessing sorted_rows(std::vector<std::string> strings, Side side) {
  Preprocessing p;
  std::sort(strings.begin(), strings.end());
  strings.erase(std::unique(strings.begin(), strings.end()), strings.end());
  p.side = side;
  p.strings = std::move(strings);
  for (std::size_t i = 0; i < p.strings.size(); ++i) p.index[p.strings[i]] = i;
  return p;
}

inline int common_length(const std::vector<std::string>& strings) {
  if (strings.empty()) throw error("empty string set");
  std::size_t n = strings.front().size();
  for (const auto& s : strings) {
    Structure::binary_string(s);
    if (s.size() != n) throw error("strings have different lengths");
  }
  return static_cast<int>(n);
}

inline int ceil_log2(std::uint64_t x) {
  int c = 0;
  while ((std::uint64_t{1} << c) < x) ++c;
  return c;
}

// Code i (lexicographic, ceil(log2 |side|) bits) walks from position 1, stepping right on each 1.
inline Preprocessing preprocess_instructional(const std::vector<std::string>& strings, Side side = Side::Right) {
  const int n = common_length(strings);
  Preprocessing p = sorted_rows(strings, side);
  p.kind = PreprocessKind::Instructional;
  const std::size_t count = p.strings.size();
  const int c = ceil_log2(count);
  if (c > n) throw error("instructional codes longer than the strings");
  if (c == n && count == (std::size_t{1} << n)) throw error("all-ones code would leave the string");
  p.moves = c + 1;
  for (std::size_t i = 0; i < count; ++i) {
    std::string code(static_cast<std::size_t>(c), '0');
    for (int k = 0; k < c; ++k)
      if ((i >> (c - 1 - k)) & 1U) code[k] = '1';
    std::vector<int> walk{1};
    for (char bit : code) walk.push_back(walk.back() + (bit == '1' ? 1 : 0));
    p.codes.push_back(code);
    p.positions.push_back(std::move(walk));
  }
  return p;
}

inline std::uint64_t factorial_capped(int m, std::uint64_t cap) {
  std::uint64_t f = 1;
  for (int k = 2; k <= m; ++k) {
    f *= static_cast<std::uint64_t>(k);
    if (f >= cap) return cap;
  }
  return f;
}

// Pebble i on position sigma(i) of 1..m; permutations handed out in lexicographic order.
inline Preprocessing preprocess_permutations(const std::vector<std::string>& strings, int m,
                                             Side side = Side::Right) {
  const int n = common_length(strings);
  Preprocessing p = sorted_rows(strings, side);
  p.kind = PreprocessKind::Permutation;
  if (m < 0 || m > n) throw error("permutation preprocessing needs m <= n");
  if (factorial_capped(m, p.strings.size()) < p.strings.size())
    throw error("m! is smaller than the number of strings");
  p.moves = m;
  std::vector<int> sigma(static_cast<std::size_t>(m));
  std::iota(sigma.begin(), sigma.end(), 1);
  for (std::size_t i = 0; i < p.strings.size(); ++i) {
    p.positions.push_back(sigma);
    std::next_permutation(sigma.begin(), sigma.end());
  }
  return p;
}

// Smallest m with t^m >= count.
inline int ceil_log_base(std::uint64_t count, int t) {
  if (t < 2) throw error("base must be at least 2");
  int m = 0;
  for (std::uint64_t p = 1; p < count; ++m) {
    if (p > count / static_cast<std::uint64_t>(t)) return m + 1;
    p *= static_cast<std::uint64_t>(t);
  }
  return m;
}

// Permutations on m = ceil(log_t |side|) pebbles when m! suffices, else instructional codes.
inline Preprocessing preprocess_for(const std::vector<std::string>& strings, int m, Side side) {
  const int n = common_length(strings);
  std::size_t count = std::set<std::string>(strings.begin(), strings.end()).size();
  if (count <= 1) {
    Preprocessing p = sorted_rows(strings, side);
    p.positions.assign(p.strings.size(), {});
    return p;
  }
  if (m <= n && factorial_capped(m, count) >= count) return preprocess_permutations(strings, m, side);
  return preprocess_instructional(strings, side);
}

inline std::vector<SpoilerMove> preprocessing_moves(const Preprocessing& p, int first_color = 1) {
  std::vector<SpoilerMove> moves;
  for (int k = 0; k < p.moves; ++k) {
    SpoilerMove m{p.side, first_color + k, {}};
    for (const auto& row : p.positions) m.placement.push_back(row[k]);
    moves.push_back(std::move(m));
  }
  return moves;
}

inline Pattern preprocessing_pattern(const Preprocessing& p) {
  return Pattern(static_cast<std::size_t>(p.moves), quantifier_for(p.side));
}

// Type of the pebbles [from, from + count) on their own, keyed to rows of a preprocessing.
class PrefixTypeIndex {
 public:
  PrefixTypeIndex() = default;
  PrefixTypeIndex(const Preprocessing& p, int from) : from_(from), moves_(p.moves) {
    for (std::size_t i = 0; i < p.strings.size(); ++i) {
      Board b = make_binary_string(p.strings[i]);
      for (int pos : p.positions[i]) b = b.with_pebble(pos);
      map_.emplace(AtomicType::of(b), i);
    }
    if (map_.size() != p.strings.size()) throw error("preprocessing does not separate the strings");
  }

  std::optional<std::size_t> lookup(const Board& b) const {
    std::vector<int> colors;
    for (int k = 0; k < moves_; ++k) colors.push_back(from_ + k);
    auto it = map_.find(AtomicType::of(b.projected(colors)));
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

 private:
  int from_ = 1;
  int moves_ = 0;
  std::unordered_map<AtomicType, std::size_t, AtomicTypeHash> map_;
};

inline PlayerPtr preprocessing_player(std::vector<Preprocessing> steps) {
  Pattern pattern;
  for (const auto& s : steps) pattern = concat(pattern, preprocessing_pattern(s));
  return std::make_shared<FunctionPlayer>(pattern, [steps](const Board& b, Side side, int round) {
    int offset = 0;
    for (const auto& s : steps) {
      if (round <= offset + s.moves) {
        if (side != s.side) return b.base().first();
        auto it = s.index.find(b.base().bits());
        if (it == s.index.end()) return b.base().first();
        return s.positions[it->second][round - offset - 1];
      }
      offset += s.moves;
    }
    return b.base().first();
  });
}

struct ComposedStrategy {
  PlayerPtr player;
  std::vector<Preprocessing> preprocessing;
  int preprocessing_rounds = 0;
  int rounds = 0;
};

inline ComposedStrategy compose(std::vector<Preprocessing> steps, std::vector<PlayerPtr> branches,
                                std::function<std::optional<std::size_t>(const Board&)> classify) {
  ComposedStrategy out;
  int m = 0;
  for (const auto& s : steps) m += s.moves;
  Pattern master = longest_pattern(branches);
  auto parallel = schedule_parallel(
      std::move(branches), master,
      [classify](const Board& b, Side, int) { return classify(b); }, m);
  out.player = std::make_shared<SequencePlayer>(preprocessing_player(steps), parallel, true);
  out.preprocessing = std::move(steps);
  out.preprocessing_rounds = m;
  out.rounds = static_cast<int>(out.player->pattern().size());
  return out;
}

inline ComposedStrategy sep_one_vs_many(const std::string& w, const std::vector<std::string>& right, int t) {
  if (t < 2) throw error("t must be at least 2");
  std::vector<std::string> all = right;
  all.push_back(w);
  common_length(all);
  if (std::find(right.begin(), right.end(), w) != right.end()) throw error("w occurs on the right");
  std::set<std::string> uniq(right.begin(), right.end());
  const int m = ceil_log_base(uniq.size(), t);
  Preprocessing pre = preprocess_for(right, m, Side::Right);
  std::vector<PlayerPtr> branches;
  for (const auto& v : pre.strings) branches.push_back(sep_one_vs_one(w, v));
  PrefixTypeIndex idx(pre, 1);
  return compose({pre}, std::move(branches), [idx](const Board& b) { return idx.lookup(b); });
}

inline ComposedStrategy sep_many_vs_many(const std::vector<std::string>& left,
                                         const std::vector<std::string>& right, int t) {
  if (t < 2) throw error("t must be at least 2");
  std::vector<std::string> all = left;
  all.insert(all.end(), right.begin(), right.end());
  common_length(all);
  std::set<std::string> ls(left.begin(), left.end());
  for (const auto& v : right)
    if (ls.contains(v)) throw error("left and right share a string");
  std::set<std::string> rs(right.begin(), right.end());
  Preprocessing a = preprocess_for(left, ceil_log_base(ls.size(), t), Side::Left);
  Preprocessing b = preprocess_for(right, ceil_log_base(rs.size(), t), Side::Right);
  std::vector<PlayerPtr> branches;
  for (const auto& x : a.strings)
    for (const auto& y : b.strings) branches.push_back(sep_one_vs_one(x, y));
  PrefixTypeIndex ia(a, 1);
  PrefixTypeIndex ib(b, 1 + a.moves);
  const std::size_t nb = b.strings.size();
  return compose({a, b}, std::move(branches), [ia, ib, nb](const Board& brd) -> std::optional<std::size_t> {
    auto x = ia.lookup(brd);
    auto y = ib.lookup(brd);
    if (!x || !y) return std::nullopt;
    return *x * nb + *y;
  });
}

inline ComposedStrategy sep_many_vs_all(const std::vector<std::string>& left, int n, int t) {
  if (t < 2) throw error("t must be at least 2");
  if (common_length(left) != n) throw error("left strings must have length n");
  std::set<std::string> ls(left.begin(), left.end());
  if (ls.size() == (std::size_t{1} << n)) throw error("left contains every string");
  Preprocessing a = preprocess_for(left, ceil_log_base(ls.size(), t), Side::Left);
  std::vector<PlayerPtr> branches;
  for (const auto& x : a.strings) branches.push_back(sep_one_vs_all(x));
  PrefixTypeIndex ia(a, 1);
  return compose({a}, std::move(branches), [ia](const Board& b) { return ia.lookup(b); });
}

// ceil(n (1 + eps/4) / log2 n), snapping values within 1e-9 of an integer.
inline int any_vs_any_moves(int n, double epsilon) {
  if (n < 2) throw error("n must be at least 2");
  if (!(epsilon > 0)) throw error("epsilon must be positive");
  long double x = static_cast<long double>(n) * (1.0L + static_cast<long double>(epsilon) / 4.0L) /
                  std::log2(static_cast<long double>(n));
  long double r = std::round(x);
  if (std::fabs(x - r) < 1e-9L) return static_cast<int>(r);
  return static_cast<int>(std::ceil(x));
}

inline ComposedStrategy sep_any_vs_any(const std::vector<std::string>& left,
                                       const std::vector<std::string>& right, double epsilon) {
  std::vector<std::string> all = left;
  all.insert(all.end(), right.begin(), right.end());
  const int n = common_length(all);
  std::set<std::string> ls(left.begin(), left.end());
  for (const auto& v : right)
    if (ls.contains(v)) throw error("left and right share a string");
  const int m = any_vs_any_moves(n, epsilon);
  if (m > n) throw error("m = " + std::to_string(m) + " exceeds n = " + std::to_string(n));
  Preprocessing a = preprocess_for(left, m, Side::Left);
  std::vector<PlayerPtr> branches;
  for (const auto& x : a.strings) branches.push_back(sep_one_vs_all(x));
  PrefixTypeIndex ia(a, 1);
  return compose({a}, std::move(branches), [ia](const Board& b) { return ia.lookup(b); });
}

}  // namespace msgame
