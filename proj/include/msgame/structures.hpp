#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pattern.hpp"

namespace msgame {

enum class Vocabulary : std::uint8_t { Order, String };

inline constexpr int kMaxPebbles = 40;
inline constexpr int kMaxStringLength = 64;
inline constexpr int kMaxOrderLength = 30000;

// A finite linear order 0 < 1 < ... < length, or a binary string on positions 1..n.
class Structure {
 public:
  static Structure linear_order(int length) {
    if (length < 1) throw error("linear order length must be at least 1");
    if (length > kMaxOrderLength) throw error("linear order too long");
    return Structure(Vocabulary::Order, length, 0);
  }

  static Structure binary_string(std::string_view bits) {
    if (bits.empty()) throw error("binary string must be nonempty");
    if (bits.size() > kMaxStringLength) throw error("binary string longer than 64 bits");
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1')
        mask |= std::uint64_t{1} << i;
      else if (bits[i] != '0')
        throw error("binary string may only contain 0 and 1");
    }
    return Structure(Vocabulary::String, static_cast<int>(bits.size()), mask);
  }

  Vocabulary vocabulary() const { return vocab_; }
  bool is_order() const { return vocab_ == Vocabulary::Order; }
  bool is_string() const { return vocab_ == Vocabulary::String; }

  // Order: number of edges. String: number of positions.
  int size() const { return size_; }
  int first() const { return is_order() ? 0 : 1; }
  int last() const { return size_; }
  int universe_size() const { return last() - first() + 1; }
  bool contains(int pos) const { return pos >= first() && pos <= last(); }

  bool bit(int pos) const { return is_string() && ((bits_ >> (pos - 1)) & 1U); }
  std::uint64_t mask() const { return bits_; }

  std::string bits() const {
    std::string out;
    for (int i = 1; i <= size_; ++i) out.push_back(bit(i) ? '1' : '0');
    return out;
  }

  friend auto operator<=>(const Structure&, const Structure&) = default;

 private:
  Structure(Vocabulary v, int size, std::uint64_t bits)
      : vocab_(v), size_(static_cast<std::int16_t>(size)), bits_(bits) {}

  Vocabulary vocab_;
  std::int16_t size_;
  std::uint64_t bits_;
};

// Named elements of a pebbled structure: min, max, or a pebble color (1-based).
struct Element {
  int id;
  static constexpr Element min() { return {-1}; }
  static constexpr Element max() { return {-2}; }
  static constexpr Element color(int c) { return {c}; }
  friend constexpr bool operator==(Element, Element) = default;
};

inline std::string color_name(int color) {
  switch (color) {
    case 1: return "r";
    case 2: return "b";
    case 3: return "g";
    default: return "c" + std::to_string(color);
  }
}

inline std::string element_name(Element e) {
  if (e == Element::min()) return "min";
  if (e == Element::max()) return "max";
  return color_name(e.id);
}

class Board {
 public:
  explicit Board(Structure base) : base_(base) {}

  const Structure& base() const { return base_; }
  int pebble_count() const { return count_; }
  std::span<const std::int16_t> pebbles() const { return {pos_.data(), count_}; }
  int pebble(int color) const { return pos_[color - 1]; }

  int element(Element e) const {
    if (e == Element::min()) return base_.first();
    if (e == Element::max()) return base_.last();
    return pebble(e.id);
  }

  Board with_pebble(int pos) const {
    if (count_ >= kMaxPebbles) throw error("too many pebbles on one board");
    if (!base_.contains(pos)) throw error("pebble position outside universe");
    Board b = *this;
    b.pos_[count_] = static_cast<std::int16_t>(pos);
    ++b.count_;
    return b;
  }

  // Keeps the listed colors (in order) as colors 1..k of a fresh board.
  Board projected(std::span<const int> colors) const {
    Board b(base_);
    for (int c : colors) b.pos_[b.count_++] = pos_[c - 1];
    return b;
  }

  Board prefix(int colors) const {
    Board b(base_);
    for (int i = 0; i < colors; ++i) b.pos_[i] = pos_[i];
    b.count_ = static_cast<std::uint8_t>(colors);
    return b;
  }

  Board rebased(Structure base, std::span<const int> positions) const {
    Board b(base);
    for (int p : positions) b = b.with_pebble(p);
    return b;
  }

  friend auto operator<=>(const Board&, const Board&) = default;

 private:
  Structure base_;
  std::uint8_t count_ = 0;
  std::array<std::int16_t, kMaxPebbles> pos_{};
};

inline Board make_linear_order(int length) { return Board(Structure::linear_order(length)); }
inline Board make_binary_string(std::string_view bits) {
  return Board(Structure::binary_string(bits));
}

struct Segment {
  int lo;
  int hi;
  int length() const { return hi - lo; }
};

inline int closest_to_midpoint(Segment s) {
  if (s.hi <= s.lo) throw error("closest_to_midpoint needs a segment with at least one edge");
  return s.lo + s.length() / 2;
}

// Quantifier-free type of (min, max, pebbles): dense order ranks, plus S per rank block on strings.
class AtomicType {
 public:
  static constexpr int kCapacity = kMaxPebbles + 2;

  static AtomicType of(const Board& b) {
    AtomicType t;
    const int n = b.pebble_count() + 2;
    std::array<int, kCapacity> pos{};
    std::array<std::uint8_t, kCapacity> order{};
    pos[0] = b.base().first();
    pos[1] = b.base().last();
    auto peb = b.pebbles();
    for (int i = 0; i < b.pebble_count(); ++i) pos[i + 2] = peb[i];
    for (int i = 0; i < n; ++i) order[i] = static_cast<std::uint8_t>(i);
    for (int i = 1; i < n; ++i) {
      auto v = order[i];
      int j = i;
      while (j > 0 && pos[order[j - 1]] > pos[v]) {
        order[j] = order[j - 1];
        --j;
      }
      order[j] = v;
    }
    int rank = -1;
    int prev = -1;
    for (int i = 0; i < n; ++i) {
      int p = pos[order[i]];
      if (i == 0 || p != prev) {
        ++rank;
        prev = p;
        if (b.base().bit(p)) t.sbits_ |= std::uint64_t{1} << rank;
      }
      t.ranks_[order[i]] = static_cast<std::uint8_t>(rank);
    }
    t.elements_ = static_cast<std::uint8_t>(n);
    t.blocks_ = static_cast<std::uint8_t>(rank + 1);
    t.string_ = b.base().is_string();
    return t;
  }

  // Parses the compact form produced by key().
  static AtomicType from_key(std::string_view key) {
    AtomicType t;
    auto bar = key.find('|');
    std::string_view ranks = key.substr(0, bar);
    int n = 0;
    int blocks = 0;
    std::size_t i = 0;
    while (i < ranks.size()) {
      std::size_t j = ranks.find(',', i);
      if (j == std::string_view::npos) j = ranks.size();
      int r = std::stoi(std::string(ranks.substr(i, j - i)));
      if (n >= kCapacity || r < 0 || r >= kCapacity) throw error("bad atomic type key");
      t.ranks_[n++] = static_cast<std::uint8_t>(r);
      blocks = std::max(blocks, r + 1);
      i = j + 1;
    }
    if (n < 2) throw error("bad atomic type key");
    t.elements_ = static_cast<std::uint8_t>(n);
    t.blocks_ = static_cast<std::uint8_t>(blocks);
    if (bar != std::string_view::npos) {
      std::string_view s = key.substr(bar + 1);
      if (static_cast<int>(s.size()) != blocks) throw error("bad atomic type key");
      t.string_ = true;
      for (int k = 0; k < blocks; ++k)
        if (s[k] == '1') t.sbits_ |= std::uint64_t{1} << k;
    }
    return t;
  }

  int element_count() const { return elements_; }
  int pebble_count() const { return elements_ - 2; }
  int block_count() const { return blocks_; }
  bool is_string() const { return string_; }
  // Index 0 is min, 1 is max, 1 + c is color c.
  int rank(int index) const { return ranks_[index]; }
  int rank(Element e) const {
    if (e == Element::min()) return ranks_[0];
    if (e == Element::max()) return ranks_[1];
    return ranks_[e.id + 1];
  }
  bool block_bit(int block) const { return (sbits_ >> block) & 1U; }
  bool bit(Element e) const { return block_bit(rank(e)); }

  AtomicType restricted(int colors) const {
    AtomicType t;
    const int n = colors + 2;
    std::array<int, kCapacity> remap;
    remap.fill(-1);
    for (int i = 0; i < n; ++i) remap[ranks_[i]] = 0;
    int next = 0;
    for (int r = 0; r < blocks_; ++r) {
      if (remap[r] < 0) continue;
      if (block_bit(r)) t.sbits_ |= std::uint64_t{1} << next;
      remap[r] = next++;
    }
    for (int i = 0; i < n; ++i) t.ranks_[i] = static_cast<std::uint8_t>(remap[ranks_[i]]);
    t.elements_ = static_cast<std::uint8_t>(n);
    t.blocks_ = static_cast<std::uint8_t>(next);
    t.string_ = string_;
    return t;
  }

  std::string key() const {
    std::string out;
    for (int i = 0; i < elements_; ++i) {
      if (i) out.push_back(',');
      out += std::to_string(ranks_[i]);
    }
    if (string_) {
      out.push_back('|');
      for (int r = 0; r < blocks_; ++r) out.push_back(block_bit(r) ? '1' : '0');
    }
    return out;
  }

  // e.g. "min < r < max, S(r)=1, S(min)=0, S(max)=0"
  std::string describe() const {
    std::vector<std::vector<std::string>> blocks(blocks_);
    blocks[ranks_[0]].push_back("min");
    blocks[ranks_[1]].push_back("max");
    for (int c = 1; c <= pebble_count(); ++c) blocks[ranks_[c + 1]].push_back(color_name(c));
    std::string out;
    for (int r = 0; r < blocks_; ++r) {
      if (r) out += " < ";
      for (std::size_t k = 0; k < blocks[r].size(); ++k) {
        if (k) out += " = ";
        out += blocks[r][k];
      }
    }
    if (string_) {
      auto lit = [&](const std::string& name, int index) {
        out += ", S(" + name + ")=" + (block_bit(ranks_[index]) ? "1" : "0");
      };
      for (int c = 1; c <= pebble_count(); ++c) lit(color_name(c), c + 1);
      lit("min", 0);
      lit("max", 1);
    }
    return out;
  }

  friend bool operator==(const AtomicType&, const AtomicType&) = default;
  friend auto operator<=>(const AtomicType&, const AtomicType&) = default;

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ULL ^ sbits_ ^ (std::uint64_t{elements_} << 56);
    for (int i = 0; i < elements_; ++i) {
      h ^= ranks_[i];
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }

 private:
  std::uint8_t elements_ = 0;
  std::uint8_t blocks_ = 0;
  bool string_ = false;
  std::uint64_t sbits_ = 0;
  std::array<std::uint8_t, kCapacity> ranks_{};
};

struct AtomicTypeHash {
  std::size_t operator()(const AtomicType& t) const { return t.hash(); }
};

inline AtomicType atomic_type(const Board& b) { return AtomicType::of(b); }

// Direct partial-isomorphism test on (min, max, pebbles), independent of AtomicType.
inline bool is_matching_pair(const Board& a, const Board& b) {
  if (a.base().vocabulary() != b.base().vocabulary())
    throw error("matching pair across vocabularies");
  if (a.pebble_count() != b.pebble_count()) throw error("matching pair with unequal pebble counts");
  const int n = a.pebble_count() + 2;
  auto at = [](const Board& x, int i) {
    return i == 0 ? x.base().first() : i == 1 ? x.base().last() : x.pebble(i - 1);
  };
  for (int i = 0; i < n; ++i) {
    if (a.base().bit(at(a, i)) != b.base().bit(at(b, i))) return false;
    for (int j = i + 1; j < n; ++j) {
      int ai = at(a, i), aj = at(a, j), bi = at(b, i), bj = at(b, j);
      if ((ai < aj) != (bi < bj) || (ai == aj) != (bi == bj)) return false;
    }
  }
  return true;
}

inline std::string render(const Board& b) {
  std::string out = b.base().is_order() ? "L(" + std::to_string(b.base().size()) + ")"
                                        : "S(" + b.base().bits() + ")";
  out.push_back('[');
  for (int c = 1; c <= b.pebble_count(); ++c) {
    if (c > 1) out.push_back(',');
    out += color_name(c) + "@" + std::to_string(b.pebble(c));
  }
  out.push_back(']');
  return out;
}

// Caps every gap between consecutive distinguished points at `cap`. Structures whose gaps
// reach 2^k are indistinguishable in k further rounds, so the capped board is equivalent.
inline Board normalize_gaps(const Board& b, int cap) {
  if (!b.base().is_order() || cap >= b.base().size()) return b;
  std::array<int, kMaxPebbles + 2> pts{};
  int n = 0;
  pts[n++] = 0;
  pts[n++] = b.base().size();
  for (auto p : b.pebbles()) pts[n++] = p;
  std::sort(pts.begin(), pts.begin() + n);
  n = static_cast<int>(std::unique(pts.begin(), pts.begin() + n) - pts.begin());
  std::array<int, kMaxPebbles + 2> mapped{};
  for (int i = 1; i < n; ++i) mapped[i] = mapped[i - 1] + std::min(pts[i] - pts[i - 1], cap);
  auto where = [&](int p) {
    return mapped[std::lower_bound(pts.begin(), pts.begin() + n, p) - pts.begin()];
  };
  if (mapped[n - 1] == b.base().size()) return b;
  Board out(Structure::linear_order(mapped[n - 1]));
  for (auto p : b.pebbles()) out = out.with_pebble(where(p));
  return out;
}

inline int gap_cap(int remaining_rounds) {
  return remaining_rounds >= 14 ? (1 << 14) : (1 << remaining_rounds);
}

}  // namespace msgame

template <>
struct std::hash<msgame::Board> {
  std::size_t operator()(const msgame::Board& b) const {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ b.base().mask() ^
                      (static_cast<std::uint64_t>(b.base().size()) << 48);
    for (auto p : b.pebbles()) {
      h ^= static_cast<std::uint16_t>(p);
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};
