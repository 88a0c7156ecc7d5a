#include <gtest/gtest.h>

#include <msgame/formulas.hpp>
#include <msgame/suites.hpp>

#include <random>

using namespace msgame;

namespace {

// Textbook semantics: bind each variable in turn over the whole universe.
bool naive_holds(const Formula& f, const Board& b) {
  if (b.pebble_count() == f.rank()) return f.eval(b, f.rank()) == Tri::True;
  bool exists = f.prefix[static_cast<std::size_t>(b.pebble_count())] == Quantifier::Exists;
  for (int p = b.base().first(); p <= b.base().last(); ++p)
    if (naive_holds(f, b.with_pebble(p)) == exists) return exists;
  return !exists;
}

std::string random_term(std::mt19937_64& rng, int vars) {
  int k = static_cast<int>(rng() % static_cast<unsigned>(vars + 2));
  if (k == vars) return "min";
  if (k == vars + 1) return "max";
  return "x" + std::to_string(k + 1);
}

std::string random_matrix(std::mt19937_64& rng, int vars, int depth, bool strings) {
  int pick = static_cast<int>(rng() % (depth > 0 ? 6 : 3));
  switch (pick) {
    case 0: return random_term(rng, vars) + " < " + random_term(rng, vars);
    case 1: return random_term(rng, vars) + " = " + random_term(rng, vars);
    case 2: return strings ? "S(" + random_term(rng, vars) + ")" : random_term(rng, vars) + " < max";
    case 3: return "!" + random_matrix(rng, vars, depth - 1, strings);
    case 4: return "(" + random_matrix(rng, vars, depth - 1, strings) + " & " + random_matrix(rng, vars, depth - 1, strings) + ")";
    default: return "(" + random_matrix(rng, vars, depth - 1, strings) + " | " + random_matrix(rng, vars, depth - 1, strings) + ")";
  }
}

std::string random_sentence(std::mt19937_64& rng, bool strings) {
  int k = 1 + static_cast<int>(rng() % 3);
  std::string s;
  for (int i = 1; i <= k; ++i) s += std::string(rng() & 1 ? "E" : "A") + " x" + std::to_string(i) + " . ";
  return s + random_matrix(rng, k, 3, strings);
}

}  // namespace

TEST(Parse, RoundTrip) {
  for (const char* text : {"E x1 . A x2 . x1 < x2 | x2 = max", "A x1 . S(x1) & !(x1 = min)", "true",
                           "E x1 . (x1 < max | false) & S(min)"}) {
    Formula f = parse_formula(text);
    Formula g = parse_formula(f.to_string());
    EXPECT_TRUE(f.same_as(g)) << text;
    EXPECT_EQ(f.to_string(), g.to_string());
  }
}

TEST(Parse, RandomRoundTrip) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 300; ++i) {
    Formula f = parse_formula(random_sentence(rng, true));
    EXPECT_TRUE(f.same_as(parse_formula(f.to_string()))) << f.to_string();
  }
}

TEST(Parse, ErrorOffsets) {
  try {
    parse_formula("E x1 (");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 5u);
  }
  EXPECT_THROW(parse_formula("E x1 . x2 < x1"), ParseError);
  EXPECT_THROW(parse_formula("E x1 . E x1 . true"), ParseError);
  EXPECT_THROW(parse_formula("x1 <"), ParseError);
  EXPECT_THROW(parse_formula("true true"), ParseError);
}

TEST(ModelCheck, AgreesWithNaiveSemantics) {
  std::mt19937_64 rng(4);
  std::vector<Board> orders, strings;
  for (int l = 1; l <= 6; ++l) orders.push_back(make_linear_order(l));
  for (const char* w : {"0", "1", "01", "110", "1001", "01101"}) strings.push_back(make_binary_string(w));
  for (int i = 0; i < 200; ++i) {
    bool str = i % 2 == 1;
    Formula f = parse_formula(random_sentence(rng, str));
    ModelChecker mc(f);
    for (const auto& b : str ? strings : orders) ASSERT_EQ(mc.holds(b), naive_holds(f, b)) << f.to_string() << " " << render(b);
  }
}

TEST(ModelCheck, DummyQuantifier) {
  Formula f = parse_formula("E x1 . A x2 . S(x1)");
  EXPECT_TRUE(model_check(f, make_binary_string("010")));
  EXPECT_FALSE(model_check(f, make_binary_string("000")));
}

TEST(ModelCheck, LengthSentence) {
  // an order has at least 2 edges iff some point sits strictly inside
  Formula f = parse_formula("E x1 . min < x1 & x1 < max");
  EXPECT_FALSE(model_check(f, make_linear_order(1)));
  EXPECT_TRUE(model_check(f, make_linear_order(2)));
}

TEST(ModelCheck, Witness) {
  ModelChecker mc(parse_formula("E x1 . S(x1)"));
  EXPECT_EQ(mc.witness(make_binary_string("0010"), true), 3);
  EXPECT_FALSE(mc.witness(make_binary_string("0000"), true));
}

TEST(FormulaPlayer, RejectsNonSeparatingSentence) {
  GameState g({make_linear_order(1)}, {make_linear_order(2)});
  EXPECT_THROW(spoiler_from_formula(parse_formula("E x1 . x1 = min"), g), error);
  EXPECT_NO_THROW(spoiler_from_formula(parse_formula("A x1 . x1 = min | x1 = max"), g));
}

TEST(FormulaPlayer, HandWrittenSentenceWins) {
  GameState g({make_linear_order(1)}, {make_linear_order(2)});
  auto p = spoiler_from_formula(parse_formula("A x1 . x1 = min | x1 = max"), g);
  EXPECT_TRUE(run_strategy(g, *p, 1).won);
}

TEST(Synthesize, RoundTripOnLinearRuns) {
  for (int l = 1; l <= 10; ++l)
    for (auto s : {LinearStrategy::Cma, LinearStrategy::Alternating, LinearStrategy::ExactLength}) {
      auto v = linear_case(s, l);
      auto r = verify(v, true);
      ASSERT_TRUE(r.ok());
      EXPECT_TRUE(r.round_trip.ok()) << to_string(s) << " " << l;
      EXPECT_EQ(r.round_trip.quantifiers, r.rounds);
    }
}

TEST(Synthesize, RoundTripOnStrings) {
  for (const auto& w : {"0110", "1", "10101"}) {
    auto r = verify(one_vs_all_case(w), true);
    EXPECT_TRUE(r.round_trip.ok()) << w;
  }
}

TEST(Synthesize, SentenceParsesBack) {
  auto v = linear_case(LinearStrategy::Cma, 5);
  auto res = run_strategy(v.game, *v.player, 4);
  Formula f = synthesize(res.transcript);
  EXPECT_EQ(to_string(f.prefix), "EAEA");
  Formula g = parse_formula(f.to_string());
  EXPECT_TRUE(check_separation(g, v.game.left(), v.game.right()).ok);
}
