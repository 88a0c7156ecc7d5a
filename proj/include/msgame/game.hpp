#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "structures.hpp"

namespace msgame {

using TypeSet = std::unordered_set<AtomicType, AtomicTypeHash>;

inline void sort_unique(std::vector<Board>& boards) {
  std::sort(boards.begin(), boards.end());
  boards.erase(std::unique(boards.begin(), boards.end()), boards.end());
}

inline TypeSet types_of(const std::vector<Board>& boards) {
  TypeSet out;
  out.reserve(boards.size() * 2);
  for (const auto& b : boards) out.insert(AtomicType::of(b));
  return out;
}

struct HistoryEntry {
  Side side;
  int color;
};

class GameState {
 public:
  GameState() = default;

  GameState(std::vector<Board> left, std::vector<Board> right, bool deduplicate = true)
      : left_(std::move(left)), right_(std::move(right)) {
    if (deduplicate) {
      sort_unique(left_);
      sort_unique(right_);
    }
    check_uniform();
  }

  const std::vector<Board>& left() const { return left_; }
  const std::vector<Board>& right() const { return right_; }
  const std::vector<Board>& side(Side s) const { return s == Side::Left ? left_ : right_; }
  std::vector<Board>& side(Side s) { return s == Side::Left ? left_ : right_; }

  int round() const { return round_; }
  const std::vector<HistoryEntry>& history() const { return history_; }
  // Set between a Spoiler move and Duplicator's answer.
  std::optional<Side> pending() const { return pending_; }
  bool empty() const { return left_.empty() && right_.empty(); }

  void check_uniform() const {
    std::optional<Vocabulary> vocab;
    for (Side s : {Side::Left, Side::Right}) {
      int want = round_ + (pending_ == s ? 1 : 0);
      for (const auto& b : side(s)) {
        if (vocab && *vocab != b.base().vocabulary()) throw error("mixed vocabularies in one game");
        vocab = b.base().vocabulary();
        if (b.pebble_count() != want) throw error("boards carry different pebble counts");
      }
    }
  }

 private:
  friend GameState apply_spoiler_move(const GameState&, const struct SpoilerMove&);
  friend GameState oblivious_expand(const GameState&, Side, int);
  friend GameState discard_unmatched(const GameState&);
  friend class Engine;

  std::vector<Board> left_;
  std::vector<Board> right_;
  int round_ = 0;
  std::vector<HistoryEntry> history_;
  std::optional<Side> pending_;
};

struct SpoilerMove {
  Side side;
  int color;
  std::vector<int> placement;  // one position per board of `side`, in board order
};

inline GameState apply_spoiler_move(const GameState& s, const SpoilerMove& m) {
  if (s.pending_) throw error("previous Spoiler move has not been answered");
  if (m.color <= s.round_) throw error("color " + std::to_string(m.color) + " already used");
  if (m.color != s.round_ + 1) throw error("colors must be played in order");
  const auto& boards = s.side(m.side);
  if (m.placement.size() != boards.size())
    throw error("placement must name one position per board");
  GameState out = s;
  auto& target = out.side(m.side);
  for (std::size_t i = 0; i < boards.size(); ++i) {
    if (!boards[i].base().contains(m.placement[i])) throw error("position out of range");
    target[i] = boards[i].with_pebble(m.placement[i]);
  }
  out.pending_ = m.side;
  return out;
}

inline GameState oblivious_expand(const GameState& s, Side side, int color) {
  if (color != s.round_ + 1) throw error("expansion color must be the next color");
  if (s.pending_ == side) throw error("cannot expand the side Spoiler just moved on");
  if (!s.pending_ && !s.side(other(side)).empty())
    throw error("expansion requires a pending Spoiler move on the other side");
  GameState out = s;
  auto& target = out.side(side);
  target.clear();
  for (const auto& b : s.side(side))
    for (int p = b.base().first(); p <= b.base().last(); ++p) target.push_back(b.with_pebble(p));
  sort_unique(target);
  out.pending_.reset();
  out.round_ = s.round_ + 1;
  out.history_.push_back({other(side), color});
  return out;
}

inline GameState discard_unmatched(const GameState& s) {
  if (s.pending_) throw error("cannot discard during a half-round");
  GameState out = s;
  // Removal is by type and the surviving type sets coincide, so one pass reaches the fixed point.
  while (true) {
    TypeSet lt = types_of(out.left_);
    TypeSet rt = types_of(out.right_);
    auto keep = [](std::vector<Board>& v, const TypeSet& allowed) {
      std::size_t before = v.size();
      std::erase_if(v, [&](const Board& b) { return !allowed.contains(AtomicType::of(b)); });
      return v.size() != before;
    };
    bool changed = keep(out.left_, rt);
    changed = keep(out.right_, lt) || changed;
    if (!changed) break;
  }
  return out;
}

inline bool has_matching_pair(const GameState& s) {
  if (s.left().empty() || s.right().empty()) return false;
  TypeSet lt = types_of(s.left());
  for (const auto& b : s.right())
    if (lt.contains(AtomicType::of(b))) return true;
  return false;
}

// A Spoiler strategy that places one pebble per board on the side named by its pattern.
// Boards handed to place() carry the player's own colors 1..round-1.
class StrategyPlayer {
 public:
  virtual ~StrategyPlayer() = default;
  virtual Pattern pattern() const = 0;
  virtual int place(const Board& board, Side side, int round) const = 0;
  // Branch path of a board after `round` completed rounds; prefix-comparable across boards.
  virtual std::vector<int> branch_path(const Board&, Side, int /*round*/) const { return {}; }
  virtual bool tracks_branches() const { return false; }
};

using PlayerPtr = std::shared_ptr<const StrategyPlayer>;

struct RoundRecord {
  int round = 0;
  Side side = Side::Left;
  int color = 0;
  std::size_t left_boards = 0;
  std::size_t right_boards = 0;
  std::size_t discarded_left = 0;
  std::size_t discarded_right = 0;
  std::vector<AtomicType> left_only;  // types of left boards removed at this time
  std::vector<std::pair<Board, int>> placements;
};

struct Transcript {
  Vocabulary vocabulary = Vocabulary::Order;
  Pattern pattern;
  bool won = false;
  std::vector<Board> initial_left;
  std::vector<Board> initial_right;
  std::vector<RoundRecord> rounds;  // index t: time t, with t = 0 before any move
};

struct RunOptions {
  bool normalize = true;
  bool record_placements = false;
  bool check_branches = true;
  std::size_t max_boards = 8'000'000;
};

struct RunResult {
  bool won = false;
  Pattern pattern;
  Transcript transcript;
  std::vector<std::string> diagnostics;
  double seconds = 0;
  std::size_t peak_boards = 0;
};

namespace detail {

inline bool prefix_compatible(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t n = std::min(a.size(), b.size());
  return std::equal(a.begin(), a.begin() + static_cast<long>(n), b.begin());
}

inline void check_branch_separation(const StrategyPlayer& player, const std::vector<Board>& left,
                                    const std::vector<Board>& right, int round,
                                    std::vector<std::string>& diagnostics) {
  std::unordered_map<AtomicType, std::vector<int>, AtomicTypeHash> seen;
  for (Side side : {Side::Left, Side::Right}) {
    for (const auto& b : side == Side::Left ? left : right) {
      auto path = player.branch_path(b, side, round);
      auto t = AtomicType::of(b);
      auto [it, fresh] = seen.try_emplace(t, path);
      if (fresh) continue;
      if (!prefix_compatible(it->second, path)) {
        if (diagnostics.size() < 16)
          diagnostics.push_back("round " + std::to_string(round) + ": branches collide on type " +
                                t.describe());
      } else if (path.size() > it->second.size()) {
        it->second = path;
      }
    }
  }
}

inline void normalize_side(std::vector<Board>& boards, int cap) {
  bool changed = false;
  for (auto& b : boards) {
    Board n = normalize_gaps(b, cap);
    if (n != b) {
      b = n;
      changed = true;
    }
  }
  if (changed) sort_unique(boards);
}

}  // namespace detail

inline RunResult run_strategy(const GameState& initial, const StrategyPlayer& player, int rounds,
                              const RunOptions& opt = {}) {
  auto start = std::chrono::steady_clock::now();
  if (initial.pending() || initial.round() != 0) throw error("run_strategy needs an unpebbled state");
  Pattern full = player.pattern();
  if (rounds < 0 || static_cast<std::size_t>(rounds) > full.size())
    throw error("strategy pattern shorter than the requested rounds");
  RunResult res;
  res.pattern.assign(full.begin(), full.begin() + rounds);
  Transcript& tr = res.transcript;
  tr.pattern = res.pattern;
  tr.initial_left = initial.left();
  tr.initial_right = initial.right();
  if (!initial.left().empty()) tr.vocabulary = initial.left().front().base().vocabulary();
  else if (!initial.right().empty()) tr.vocabulary = initial.right().front().base().vocabulary();

  std::vector<Board> L = initial.left();
  std::vector<Board> R = initial.right();
  const bool orders = tr.vocabulary == Vocabulary::Order;
  const bool track = opt.check_branches && player.tracks_branches();

  auto settle = [&](RoundRecord& rec, int t) {
    TypeSet lt = types_of(L);
    TypeSet rt = types_of(R);
    TypeSet dropped;
    std::size_t nl = L.size(), nr = R.size();
    std::erase_if(L, [&](const Board& b) {
      auto ty = AtomicType::of(b);
      if (rt.contains(ty)) return false;
      dropped.insert(ty);
      return true;
    });
    std::erase_if(R, [&](const Board& b) { return !lt.contains(AtomicType::of(b)); });
    rec.discarded_left += nl - L.size();
    rec.discarded_right += nr - R.size();
    rec.left_only.insert(rec.left_only.end(), dropped.begin(), dropped.end());
    if (orders && opt.normalize) {
      int cap = gap_cap(rounds - t);
      detail::normalize_side(L, cap);
      detail::normalize_side(R, cap);
    }
    rec.left_boards = L.size();
    rec.right_boards = R.size();
    res.peak_boards = std::max(res.peak_boards, L.size() + R.size());
    if (track && t > 0) detail::check_branch_separation(player, L, R, t, res.diagnostics);
  };

  {
    RoundRecord rec;
    settle(rec, 0);
    tr.rounds.push_back(std::move(rec));
  }

  for (int t = 1; t <= rounds; ++t) {
    Side s = mover(res.pattern[t - 1]);
    auto& S = s == Side::Left ? L : R;
    auto& O = s == Side::Left ? R : L;
    RoundRecord rec;
    rec.round = t;
    rec.side = s;
    rec.color = t;
    for (auto& b : S) {
      int p = player.place(b, s, t);
      if (!b.base().contains(p))
        throw error("strategy placed a pebble outside the universe in round " + std::to_string(t));
      if (opt.record_placements) rec.placements.emplace_back(b, p);
      b = b.with_pebble(p);
    }
    if (orders && opt.normalize) sort_unique(S);
    TypeSet ts = types_of(S);
    std::vector<Board> expanded;
    TypeSet dropped;
    std::size_t produced = 0;
    for (const auto& b : O) {
      for (int p = b.base().first(); p <= b.base().last(); ++p) {
        Board e = b.with_pebble(p);
        ++produced;
        auto ty = AtomicType::of(e);
        if (ts.contains(ty)) {
          expanded.push_back(e);
          if (expanded.size() > opt.max_boards) throw error("board budget exceeded");
        } else if (s == Side::Right) {
          dropped.insert(ty);
        }
      }
    }
    O = std::move(expanded);
    if (s == Side::Right) {
      rec.discarded_left += produced - O.size();
      rec.left_only.insert(rec.left_only.end(), dropped.begin(), dropped.end());
    } else {
      rec.discarded_right += produced - O.size();
    }
    settle(rec, t);
    tr.rounds.push_back(std::move(rec));
  }
  res.won = L.empty() || R.empty();
  tr.won = res.won;
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace msgame
