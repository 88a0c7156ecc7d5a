#include <gtest/gtest.h>

#include <msgame/game.hpp>

using namespace msgame;

namespace {

class FixedPlayer final : public StrategyPlayer {
 public:
  FixedPlayer(Pattern p, int pos) : p_(std::move(p)), pos_(pos) {}
  Pattern pattern() const override { return p_; }
  int place(const Board&, Side, int) const override { return pos_; }

 private:
  Pattern p_;
  int pos_;
};

}  // namespace

TEST(GameState, DeduplicatesAndChecksUniformity) {
  GameState s({make_linear_order(2), make_linear_order(2)}, {make_linear_order(3)});
  EXPECT_EQ(s.left().size(), 1u);
  EXPECT_THROW(GameState({make_linear_order(2)}, {make_binary_string("01")}), error);
  EXPECT_THROW(GameState({make_linear_order(2).with_pebble(1)}, {make_linear_order(3)}), error);
  GameState raw({make_linear_order(2), make_linear_order(2)}, {make_linear_order(3)}, false);
  EXPECT_EQ(raw.left().size(), 2u);
}

TEST(GameState, MoveThenExpand) {
  GameState s({make_linear_order(1)}, {make_linear_order(2)});
  GameState m = apply_spoiler_move(s, {Side::Right, 1, {1}});
  EXPECT_EQ(m.pending(), Side::Right);
  GameState e = oblivious_expand(m, Side::Left, 1);
  EXPECT_EQ(e.round(), 1);
  EXPECT_FALSE(e.pending());
  EXPECT_EQ(e.left().size(), 2u);
  EXPECT_EQ(e.right().size(), 1u);
  EXPECT_FALSE(has_matching_pair(e));
  EXPECT_TRUE(discard_unmatched(e).empty() || !has_matching_pair(discard_unmatched(e)));
}

TEST(GameState, MoveErrors) {
  GameState s({make_linear_order(1)}, {make_linear_order(2)});
  EXPECT_THROW(apply_spoiler_move(s, {Side::Right, 2, {1}}), error);
  EXPECT_THROW(apply_spoiler_move(s, {Side::Right, 1, {1, 1}}), error);
  EXPECT_THROW(apply_spoiler_move(s, {Side::Right, 1, {3}}), error);
  GameState m = apply_spoiler_move(s, {Side::Right, 1, {1}});
  EXPECT_THROW(apply_spoiler_move(m, {Side::Left, 2, {0}}), error);
  EXPECT_THROW(oblivious_expand(m, Side::Right, 1), error);
  EXPECT_THROW(discard_unmatched(m), error);
}

TEST(GameState, DiscardKeepsOnlySharedTypes) {
  GameState s({make_linear_order(1), make_linear_order(3)}, {make_linear_order(3), make_linear_order(5)});
  EXPECT_TRUE(has_matching_pair(s));
  // with no pebbles every order has the same type
  EXPECT_EQ(discard_unmatched(s).left().size(), 2u);
  GameState m = oblivious_expand(apply_spoiler_move(s, {Side::Left, 1, {0, 0}}), Side::Right, 1);
  GameState d = discard_unmatched(m);
  for (const auto& b : d.right()) EXPECT_EQ(b.pebble(1), 0);
}

TEST(RunStrategy, MiddlePointSeparatesL1FromL2) {
  GameState s({make_linear_order(1)}, {make_linear_order(2)});
  FixedPlayer p({Quantifier::Forall}, 1);
  RunResult r = run_strategy(s, p, 1);
  EXPECT_TRUE(r.won);
  EXPECT_EQ(to_string(r.pattern), "A");
  ASSERT_EQ(r.transcript.rounds.size(), 2u);
  EXPECT_EQ(r.transcript.rounds[1].left_boards, 0u);
}

TEST(RunStrategy, WrongSideLoses) {
  GameState s({make_linear_order(1)}, {make_linear_order(2)});
  FixedPlayer p({Quantifier::Exists}, 0);
  EXPECT_FALSE(run_strategy(s, p, 1).won);
}

TEST(RunStrategy, Errors) {
  GameState s({make_linear_order(1)}, {make_linear_order(2)});
  FixedPlayer p({Quantifier::Forall}, 7);
  EXPECT_THROW(run_strategy(s, p, 1), error);
  EXPECT_THROW(run_strategy(s, p, 2), error);
}

TEST(RunStrategy, BoardBudget) {
  std::vector<Board> right;
  for (const char* w : {"0001", "0010", "0011", "0100", "0101", "0110", "0111"}) right.push_back(make_binary_string(w));
  GameState s({make_binary_string("0000")}, right);
  FixedPlayer p({Quantifier::Exists}, 1);
  RunOptions o;
  // the unpebbled types already drop the strings ending in 1
  o.max_boards = 2;
  EXPECT_THROW(run_strategy(s, p, 1, o), error);
  o.max_boards = 100;
  EXPECT_FALSE(run_strategy(s, p, 1, o).won);
}

TEST(RunStrategy, GapNormalizationKeepsOutcome) {
  std::vector<Board> right;
  for (int l = 2; l <= 40; ++l) right.push_back(make_linear_order(l));
  GameState s({make_linear_order(1)}, right);
  FixedPlayer p({Quantifier::Forall}, 1);
  RunOptions raw;
  raw.normalize = false;
  EXPECT_EQ(run_strategy(s, p, 1).won, run_strategy(s, p, 1, raw).won);
}
