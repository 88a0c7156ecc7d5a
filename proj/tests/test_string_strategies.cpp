#include <gtest/gtest.h>

#include <msgame/constants.hpp>
#include <msgame/string_strategies.hpp>
#include <msgame/suites.hpp>

#include <random>
#include <set>

using namespace msgame;

namespace {

bool wins(const GameState& g, const PlayerPtr& p) {
  auto r = run_strategy(g, *p, static_cast<int>(p->pattern().size()));
  return r.won && r.diagnostics.empty();
}

std::pair<std::vector<std::string>, std::vector<std::string>> random_halves(std::mt19937_64& rng, int n) {
  std::vector<std::string> l, r;
  for (auto& s : all_strings(n)) (rng() & 1 ? l : r).push_back(s);
  if (l.empty()) l.push_back(r.back()), r.pop_back();
  if (r.empty()) r.push_back(l.back()), l.pop_back();
  return {l, r};
}

}  // namespace

TEST(Strings, Enumeration) {
  EXPECT_EQ(all_strings(3).size(), 8u);
  EXPECT_EQ(all_strings(3).front(), "000");
  EXPECT_EQ(all_strings(3)[1], "001");
  EXPECT_EQ(all_strings_up_to(3).size(), 14u);
  EXPECT_EQ(complement_of({"01"}, 2), (std::vector<std::string>{"00", "10", "11"}));
  EXPECT_EQ(first_difference("0010", "0001"), 3);
  EXPECT_THROW(first_difference("01", "01"), error);
}

TEST(Logs, CeilingLogs) {
  EXPECT_EQ(ceil_log3(1), 0);
  EXPECT_EQ(ceil_log3(3), 1);
  EXPECT_EQ(ceil_log3(4), 2);
  EXPECT_EQ(ceil_log3(9), 2);
  EXPECT_EQ(ceil_log3(10), 3);
  EXPECT_EQ(ceil_log2(1), 0);
  EXPECT_EQ(ceil_log2(5), 3);
  EXPECT_EQ(ceil_log_base(1, 2), 0);
  EXPECT_EQ(ceil_log_base(8, 2), 3);
  EXPECT_EQ(ceil_log_base(9, 2), 4);
  EXPECT_EQ(ceil_log_base(27, 3), 3);
  EXPECT_EQ(ceil_log_base(~std::uint64_t{0}, 2), 64);
  EXPECT_THROW(ceil_log_base(4, 1), error);
}

TEST(OneVsOne, AllPairsUpToSix) {
  for (int n = 1; n <= 6; ++n)
    for (const auto& w : all_strings(n))
      for (const auto& v : all_strings(n)) {
        if (w == v) continue;
        auto p = sep_one_vs_one(w, v);
        ASSERT_TRUE(wins(string_game({w}, {v}), p)) << w << " " << v;
        int i = first_difference(w, v);
        EXPECT_LE(static_cast<int>(p->pattern().size()), i == 1 ? 0 : 1 + q_star(i - 1) + 2);
      }
}

TEST(OneVsOne, FirstPositionNeedsNoMoves) {
  EXPECT_TRUE(sep_one_vs_one("10", "00")->pattern().empty());
  EXPECT_TRUE(wins(string_game({"10"}, {"00"}), sep_one_vs_one("10", "00")));
  EXPECT_THROW(sep_one_vs_one("10", "100"), error);
}

TEST(OneVsOne, DifferentLengths) {
  for (const auto& w : all_strings_up_to(4))
    for (const auto& v : all_strings_up_to(4))
      if (w != v) {
        ASSERT_TRUE(wins(string_game({w}, {v}), sep_one_vs_one_anylen(w, v))) << w << " " << v;
      }
}

TEST(OneVsAll, ExhaustiveUpToEight) {
  for (int n = 1; n <= 8; ++n)
    for (const auto& w : all_strings(n)) {
      auto r = verify(one_vs_all_case(w), false);
      ASSERT_TRUE(r.ok()) << w;
      EXPECT_EQ(r.rounds, 3 * ceil_log3(n));
    }
}

TEST(OneVsAll, ShorterAndLongerStrings) {
  for (int n = 2; n <= 4; ++n)
    for (const auto& w : all_strings(n)) {
      std::vector<std::string> right;
      for (const auto& s : all_strings_up_to(n + 1))
        if (s != w) right.push_back(s);
      ASSERT_TRUE(wins(string_game({w}, right), sep_one_vs_all_anylen(w, n + 1))) << w;
    }
}

TEST(Preprocessing, PermutationsDistinguishRows) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = random_strings(rng, 8, 1 + rng() % 24);
    int m = 1;
    while (factorial_capped(m, s.size()) < s.size()) ++m;
    auto p = preprocess_permutations(s, m);
    EXPECT_NO_THROW(PrefixTypeIndex(p, 1));
    for (std::size_t i = 0; i < p.strings.size(); ++i) EXPECT_EQ(*PrefixTypeIndex(p, 1).lookup([&] {
      Board b = make_binary_string(p.strings[i]);
      for (int pos : p.positions[i]) b = b.with_pebble(pos);
      return b;
    }()), i);
  }
}

TEST(Preprocessing, InstructionalCodesDistinguishRows) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = random_strings(rng, 6, 2 + rng() % 30);
    auto p = preprocess_instructional(s);
    EXPECT_EQ(p.moves, ceil_log2(p.strings.size()) + 1);
    EXPECT_NO_THROW(PrefixTypeIndex(p, 1));
  }
  EXPECT_THROW(preprocess_instructional(all_strings(3)), error);
}

TEST(Preprocessing, FallsBackToInstructional) {
  auto s = all_strings(4);
  s.pop_back();
  EXPECT_EQ(preprocess_for(s, 2, Side::Right).kind, PreprocessKind::Instructional);
  EXPECT_EQ(preprocess_for(s, 4, Side::Right).kind, PreprocessKind::Permutation);
  EXPECT_EQ(preprocess_for({"0101"}, 1, Side::Right).kind, PreprocessKind::None);
}

TEST(OneVsMany, RandomInstances) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 4 + static_cast<int>(rng() % 5);
    auto w = random_string(rng, n);
    auto right = random_strings(rng, n, 1 + rng() % 10, {w});
    for (int t : {2, 3}) {
      auto c = sep_one_vs_many(w, right, t);
      ASSERT_TRUE(wins(string_game({w}, right), c.player)) << w;
      EXPECT_EQ(c.preprocessing_rounds, c.preprocessing[0].moves);
    }
  }
  EXPECT_THROW(sep_one_vs_many("01", {"01", "10"}, 2), error);
  EXPECT_THROW(sep_one_vs_many("01", {"10"}, 1), error);
}

TEST(ManyVsMany, RandomInstances) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 4 + static_cast<int>(rng() % 3);
    auto left = random_strings(rng, n, 1 + rng() % 4);
    auto right = random_strings(rng, n, 1 + rng() % 4, {left.begin(), left.end()});
    auto c = sep_many_vs_many(left, right, 2);
    ASSERT_TRUE(wins(string_game(left, right), c.player));
  }
  EXPECT_THROW(sep_many_vs_many({"01"}, {"01"}, 2), error);
}

TEST(ManyVsAll, RandomInstances) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 4 + static_cast<int>(rng() % 2);
    auto left = random_strings(rng, n, 1 + rng() % 3);
    auto c = sep_many_vs_all(left, n, 2);
    ASSERT_TRUE(wins(string_game(left, complement_of(left, n)), c.player));
  }
  EXPECT_THROW(sep_many_vs_all(all_strings(2), 2, 2), error);
}

TEST(AnyVsAny, RandomHalvesOfFourBitStrings) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    auto [l, r] = random_halves(rng, 4);
    auto c = sep_any_vs_any(l, r, 1.0);
    ASSERT_TRUE(wins(string_game(l, r), c.player));
  }
}

TEST(AnyVsAny, MoveCount) {
  EXPECT_EQ(any_vs_any_moves(16, 1.0), 5);
  EXPECT_EQ(any_vs_any_moves(4, 1.0), 3);
  EXPECT_THROW(any_vs_any_moves(1, 1.0), error);
  EXPECT_THROW(any_vs_any_moves(8, 0.0), error);
}
