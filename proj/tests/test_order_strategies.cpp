#include <gtest/gtest.h>

#include <msgame/bounds.hpp>
#include <msgame/order_strategies.hpp>
#include <msgame/suites.hpp>

#include <map>

using namespace msgame;

namespace {

constexpr auto E = Quantifier::Exists;
constexpr auto A = Quantifier::Forall;

// q* built bottom-up from the splitting rules, taking the worse half explicitly.
struct SplitTable {
  std::vector<int> qa, qe;
  explicit SplitTable(int max) : qa(static_cast<std::size_t>(max) + 1), qe(static_cast<std::size_t>(max) + 1) {
    qa[1] = 1;
    qe[1] = 2;
    for (int l = 2; l <= max; ++l) {
      int h = l / 2;
      qe[l] = (l % 2 == 0 ? qa[h] : std::max(qa[h], qa[h + 1])) + 1;
      if (l == 2) qa[l] = 2;
      else qa[l] = (l % 2 == 0 ? std::max(qe[h], qe[h - 1]) : qe[h]) + 1;
    }
  }
};

}  // namespace

TEST(QStar, MatchesSplittingRules) {
  SplitTable t(4096);
  for (int l = 1; l <= 4096; ++l) {
    ASSERT_EQ(q_star_forall(l), t.qa[l]) << l;
    ASSERT_EQ(q_star_exists(l), t.qe[l]) << l;
  }
}

TEST(QStar, SmallValues) {
  EXPECT_EQ(q_row(1), (QRow{1, 1, 2, 1, 1}));
  EXPECT_EQ(q_row(10), (QRow{10, 5, 4, 4, 4}));
  EXPECT_EQ(q_star(E, 5), 4);
  EXPECT_EQ(q_star(A, 2), 2);
  EXPECT_THROW(q_star(0), error);
}

TEST(QStar, ClosedFormForExists) {
  // q*_E(l) = 2 + q*_E(floor((l+1)/4)) once the argument is at least 2
  for (int l = 7; l <= 4096; ++l) ASSERT_EQ(q_star_exists(l), 2 + q_star_exists((l + 1) / 4)) << l;
}

TEST(QStar, Sandwich) {
  for (int l = 1; l <= 4096; ++l) {
    ASSERT_LE(q_rank(l), q_star(l)) << l;
    ASSERT_LE(q_star(l), q_rank(l) + 1) << l;
  }
}

TEST(QStar, GoldenTableDiffersOnlyAt75) {
  auto diffs = diff_against_golden(127);
  ASSERT_EQ(diffs.size(), 1u);
  EXPECT_EQ(diffs[0].actual.length, 75);
  EXPECT_EQ(diffs[0].expected.q_exists, 7);
  EXPECT_EQ(diffs[0].actual.q_exists, 8);
  EXPECT_EQ(diffs[0].actual.q_forall, diffs[0].expected.q_forall);
  EXPECT_EQ(diffs[0].actual.q, diffs[0].expected.q);
  EXPECT_EQ(diffs[0].actual.r, diffs[0].expected.r);
  // the table's own rows give q*_A(38) = 7, and an odd E split needs one more round
  EXPECT_EQ(golden_q_table()[37].q_forall, 7);
}

TEST(Split, Rules) {
  EXPECT_EQ(split_halves({E, 5, 10}), (std::pair<MslSpec, MslSpec>{{A, 4, 5}, {A, 4, 5}}));
  EXPECT_EQ(split_halves({E, 5, 11}), (std::pair<MslSpec, MslSpec>{{A, 4, 5}, {A, 4, 6}}));
  EXPECT_EQ(split_halves({A, 5, 10}), (std::pair<MslSpec, MslSpec>{{E, 4, 4}, {E, 4, 5}}));
  EXPECT_EQ(split_halves({A, 5, 11}), (std::pair<MslSpec, MslSpec>{{E, 4, 5}, {E, 4, 5}}));
  EXPECT_THROW(split_halves({A, 3, 2}), error);
  EXPECT_THROW(split_halves({E, 3, 1}), error);
  EXPECT_THROW(split_halves({E, 1, 4}), error);
}

TEST(Surrogate, Range) {
  auto s = surrogate_above(3, 2);
  ASSERT_EQ(s.size(), 5u);
  EXPECT_EQ(s.front().base().size(), 4);
  EXPECT_EQ(s.back().base().size(), 8);
  EXPECT_EQ(surrogate_above(10, 2).back().base().size(), 22);
  EXPECT_THROW(surrogate_above(0, 2), error);
}

TEST(Cma, FigurePattern) {
  auto r = verify(linear_case(LinearStrategy::Cma, 5, E), false);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.rounds, 4);
  EXPECT_EQ(to_string(r.pattern), "EAEA");
}

TEST(Cma, BaseCaseForallTwo) {
  auto r = verify(linear_case(LinearStrategy::Cma, 2, A), false);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(to_string(r.pattern), "AA");
}

TEST(Cma, WinsUpTo24BothSides) {
  for (int l = 1; l <= 24; ++l)
    for (Quantifier q : {E, A}) {
      auto r = verify(linear_case(LinearStrategy::Cma, l, q), false);
      EXPECT_TRUE(r.ok()) << "l=" << l << " q=" << to_char(q);
      EXPECT_EQ(r.rounds, q_star(q, l));
    }
}

TEST(Cma, PatternEndsInForall) {
  for (int l = 1; l <= 100; ++l)
    for (Quantifier q : {E, A}) {
      auto p = cma_pattern(q, l);
      EXPECT_EQ(p.front(), q);
      EXPECT_EQ(p.back(), A);
    }
}

TEST(Cma, OneRoundShortLoses) {
  for (int l = 2; l <= 12; ++l) {
    int r = q_star(E, l);
    auto g = msl_instance(l, r - 1);
    EXPECT_FALSE(run_strategy(g, *cma_player({E, r, l}), r - 1).won) << l;
  }
}

TEST(Cma, MirroredSides) {
  for (int l = 1; l <= 10; ++l) {
    int r = q_star(A, l);
    GameState g(surrogate_above(l, r), orders_up_to(l));
    auto res = run_strategy(g, *cma_player({A, r, l}, Side::Right), r);
    EXPECT_TRUE(res.won) << l;
    EXPECT_EQ(res.pattern, flipped(cma_pattern(A, l)));
  }
}

TEST(Alternating, StrictlyAlternatingEndingForall) {
  for (int l = 1; l <= 24; ++l) {
    auto r = verify(linear_case(LinearStrategy::Alternating, l), false);
    EXPECT_TRUE(r.ok()) << l;
    EXPECT_TRUE(strictly_alternating(r.pattern));
    EXPECT_EQ(r.pattern.back(), A);
    EXPECT_EQ(static_cast<int>(r.pattern.size()), q_star(l));
  }
}

TEST(ExactLength, WithinTwoExtraRounds) {
  for (int l = 1; l <= 12; ++l) {
    auto r = verify(linear_case(LinearStrategy::ExactLength, l), false);
    EXPECT_TRUE(r.ok()) << l;
    EXPECT_LE(r.rounds, q_star(l) + 2);
  }
}
