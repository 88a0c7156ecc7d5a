#pragma once

#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "game.hpp"

namespace msgame {

// Moves given by a plain function of (board, side, round).
class FunctionPlayer final : public StrategyPlayer {
 public:
  using Fn = std::function<int(const Board&, Side, int)>;
  FunctionPlayer(Pattern pattern, Fn fn) : pattern_(std::move(pattern)), fn_(std::move(fn)) {}
  Pattern pattern() const override { return pattern_; }
  int place(const Board& b, Side s, int round) const override { return fn_(b, s, round); }

 private:
  Pattern pattern_;
  Fn fn_;
};

inline PlayerPtr marker_player(Quantifier q, Element where) {
  return std::make_shared<FunctionPlayer>(
      Pattern{q}, [where](const Board& b, Side, int) { return b.element(where); });
}

// Trailing dummy rounds on min.
class PaddedPlayer final : public StrategyPlayer {
 public:
  PaddedPlayer(PlayerPtr inner, Pattern pattern) : inner_(std::move(inner)), pattern_(std::move(pattern)) {
    auto own = inner_->pattern();
    if (own.size() > pattern_.size() || !std::equal(own.begin(), own.end(), pattern_.begin()))
      throw error("padding must extend the inner pattern");
  }
  Pattern pattern() const override { return pattern_; }
  int place(const Board& b, Side s, int round) const override {
    if (static_cast<std::size_t>(round) > inner_->pattern().size()) return b.base().first();
    return inner_->place(b, s, round);
  }
  std::vector<int> branch_path(const Board& b, Side s, int round) const override {
    int n = std::min<int>(round, static_cast<int>(inner_->pattern().size()));
    return inner_->branch_path(b.prefix(n), s, n);
  }
  bool tracks_branches() const override { return inner_->tracks_branches(); }

 private:
  PlayerPtr inner_;
  Pattern pattern_;
};

// Plays `first` for its rounds, then `second`. When keep_context is false `second` sees only its own
// pebbles; otherwise it receives the earlier pebbles as leading context colors.
class SequencePlayer final : public StrategyPlayer {
 public:
  SequencePlayer(PlayerPtr first, PlayerPtr second, bool keep_context = false)
      : first_(std::move(first)), second_(std::move(second)), keep_(keep_context),
        split_(static_cast<int>(first_->pattern().size())) {}

  Pattern pattern() const override { return concat(first_->pattern(), second_->pattern()); }

  int place(const Board& b, Side s, int round) const override {
    if (round <= split_) return first_->place(b, s, round);
    return second_->place(view(b), s, round - split_);
  }

  std::vector<int> branch_path(const Board& b, Side s, int round) const override {
    if (round <= split_) {
      auto p = first_->branch_path(b, s, round);
      p.insert(p.begin(), 0);
      return p;
    }
    auto p = second_->branch_path(view(b), s, round - split_);
    p.insert(p.begin(), 1);
    return p;
  }
  bool tracks_branches() const override {
    return first_->tracks_branches() || second_->tracks_branches();
  }

 private:
  Board view(const Board& b) const {
    if (keep_) return b;
    std::vector<int> colors(static_cast<std::size_t>(b.pebble_count() - split_));
    std::iota(colors.begin(), colors.end(), split_ + 1);
    return b.projected(colors);
  }

  PlayerPtr first_;
  PlayerPtr second_;
  bool keep_;
  int split_;
};

// Names the branch a board belongs to, given the board (with context pebbles) after `round - 1`
// local rounds, or nullopt when the board is not tied to any branch.
using BranchClassifier = std::function<std::optional<std::size_t>(const Board&, Side, int round)>;

// Runs sub-strategies side by side under one master pattern. Each sub-pattern is embedded greedily;
// rounds a branch does not use are dummy moves on min. Boards carry `context` leading pebbles that
// the classifier may read and the sub-strategies never see.
class ParallelPlayer final : public StrategyPlayer {
 public:
  ParallelPlayer(std::vector<PlayerPtr> branches, Pattern master, BranchClassifier classify,
                 int context = 0)
      : branches_(std::move(branches)), master_(std::move(master)), classify_(std::move(classify)),
        context_(context) {
    for (const auto& br : branches_) {
      auto e = embed(br->pattern(), master_);
      if (!e) throw error("sub-pattern " + to_string(br->pattern()) + " does not embed in " + to_string(master_));
      std::vector<int> local(master_.size() + 1, 0);  // master round -> local round or 0
      for (std::size_t k = 0; k < e->size(); ++k) local[(*e)[k] + 1] = static_cast<int>(k) + 1;
      local_.push_back(std::move(local));
      embedding_.push_back(std::move(*e));
    }
  }

  Pattern pattern() const override { return master_; }

  int place(const Board& b, Side s, int round) const override {
    auto br = classify_(b, s, round);
    if (!br || *br >= branches_.size()) return b.base().first();
    int k = local_[*br][round];
    if (k == 0) return b.base().first();
    return branches_[*br]->place(view(b, *br, k - 1), s, k);
  }

  std::vector<int> branch_path(const Board& b, Side s, int round) const override {
    auto br = classify_(b, s, round + 1);
    if (!br || *br >= branches_.size()) return {};
    int done = 0;
    while (done < static_cast<int>(embedding_[*br].size()) && embedding_[*br][done] + 1 <= round) ++done;
    auto p = branches_[*br]->branch_path(view(b, *br, done), s, done);
    p.insert(p.begin(), static_cast<int>(*br));
    return p;
  }
  bool tracks_branches() const override { return true; }

  const std::vector<int>& embedding(std::size_t branch) const { return embedding_[branch]; }
  std::size_t branch_count() const { return branches_.size(); }

 private:
  Board view(const Board& b, std::size_t br, int local_done) const {
    std::vector<int> colors;
    colors.reserve(local_done);
    for (int k = 0; k < local_done; ++k) colors.push_back(context_ + embedding_[br][k] + 1);
    return b.projected(colors);
  }

  std::vector<PlayerPtr> branches_;
  Pattern master_;
  BranchClassifier classify_;
  int context_;
  std::vector<std::vector<int>> embedding_;
  std::vector<std::vector<int>> local_;
};

inline PlayerPtr schedule_parallel(std::vector<PlayerPtr> branches, Pattern master,
                                   BranchClassifier classify, int context = 0) {
  return std::make_shared<ParallelPlayer>(std::move(branches), std::move(master), std::move(classify),
                                          context);
}

// Shortest master pattern containing every branch pattern, when they are nested by length.
inline Pattern longest_pattern(const std::vector<PlayerPtr>& branches) {
  Pattern best;
  for (const auto& b : branches) {
    auto p = b->pattern();
    if (p.size() > best.size()) best = p;
  }
  for (const auto& b : branches)
    if (!is_subsequence(b->pattern(), best)) throw error("branch patterns are not nested");
  return best;
}

// Restricts boards to the segment [lo, hi] between two named elements and hands the inner
// strategy a linear order of length hi - lo. Boards carry `context` leading pebbles.
class SegmentPlayer final : public StrategyPlayer {
 public:
  SegmentPlayer(PlayerPtr inner, Element lo, Element hi, int context)
      : inner_(std::move(inner)), lo_(lo), hi_(hi), context_(context) {}

  Pattern pattern() const override { return inner_->pattern(); }

  int place(const Board& b, Side s, int round) const override {
    auto v = view(b, round - 1);
    if (!v) return b.element(lo_);
    return b.element(lo_) + inner_->place(*v, s, round);
  }

  std::vector<int> branch_path(const Board& b, Side s, int round) const override {
    auto v = view(b, round);
    if (!v) return {};
    return inner_->branch_path(*v, s, round);
  }
  bool tracks_branches() const override { return inner_->tracks_branches(); }

 private:
  std::optional<Board> view(const Board& b, int own) const {
    int lo = b.element(lo_);
    int hi = b.element(hi_);
    if (hi <= lo) return std::nullopt;
    Board v(Structure::linear_order(hi - lo));
    for (int c = context_ + 1; c <= context_ + own; ++c) {
      int p = b.pebble(c);
      if (p < lo || p > hi) return std::nullopt;
      v = v.with_pebble(p - lo);
    }
    return v;
  }

  PlayerPtr inner_;
  Element lo_;
  Element hi_;
  int context_;
};

// Views any board as the linear order on its universe.
class OrderViewPlayer final : public StrategyPlayer {
 public:
  explicit OrderViewPlayer(PlayerPtr inner) : inner_(std::move(inner)) {}
  Pattern pattern() const override { return inner_->pattern(); }
  int place(const Board& b, Side s, int round) const override {
    if (b.base().is_order()) return inner_->place(b, s, round);
    return inner_->place(as_order(b), s, round) + b.base().first();
  }
  std::vector<int> branch_path(const Board& b, Side s, int round) const override {
    return inner_->branch_path(b.base().is_order() ? b : as_order(b), s, round);
  }
  bool tracks_branches() const override { return inner_->tracks_branches(); }

 private:
  static Board as_order(const Board& b) {
    Board v(Structure::linear_order(b.base().last() - b.base().first()));
    for (auto p : b.pebbles()) v = v.with_pebble(p - b.base().first());
    return v;
  }
  PlayerPtr inner_;
};

}  // namespace msgame
