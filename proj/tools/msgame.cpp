// msgame: command-line driver for the multi-structural game engine.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include <msgame/json.hpp>
#include <msgame/suites.hpp>

using namespace msgame;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2 };

struct Output {
  std::string json_path;
  bool quiet = false;
  bool timings = false;
};

int emit(const Output& out, const Json& report, bool ok) {
  const std::string text = report.dump(2) + "\n";
  if (out.json_path.empty() || out.json_path == "-") {
    std::cout << (out.quiet ? "" : "\n") << text;
  } else {
    std::ofstream f(out.json_path);
    if (!f) throw error("cannot write " + out.json_path);
    f << text;
  }
  return ok ? kOk : kFailed;
}

double since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::vector<std::string> read_strings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot read " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::string s;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) continue;
    Structure::binary_string(s);
    out.push_back(s);
  }
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    Structure::binary_string(item);
    out.push_back(item);
  }
  return out;
}

// ---- qtable ----

struct QTableArgs {
  int max_l = 127;
  bool golden = false;
};

int cmd_qtable(const QTableArgs& a, const Output& out) {
  if (a.max_l < 1) throw error("--max-l must be at least 1");
  Json rows = Json::array();
  if (!out.quiet) std::printf("%6s %4s %4s %4s %4s\n", "l", "q*A", "q*E", "q*", "r");
  for (int l = 1; l <= a.max_l; ++l) {
    QRow r = q_row(l);
    rows.push_back(to_json(r));
    if (!out.quiet) std::printf("%6d %4d %4d %4d %4d\n", l, r.q_forall, r.q_exists, r.q, r.r);
  }
  Json report{{"command", "qtable"}, {"max_l", a.max_l}, {"rows", rows}};
  bool ok = true;
  if (a.golden) {
    auto diffs = diff_against_golden(std::min(a.max_l, 127));
    Json d = Json::array();
    for (const auto& x : diffs) d.push_back({{"expected", to_json(x.expected)}, {"actual", to_json(x.actual)}});
    report["golden_rows_checked"] = std::min(a.max_l, 127);
    report["golden_diffs"] = d;
    ok = diffs.empty();
    if (!out.quiet) {
      std::printf("golden: %zu differing rows\n", diffs.size());
      for (const auto& x : diffs)
        std::printf("  l = %d: computed (%d, %d, %d, %d), table (%d, %d, %d, %d)\n", x.actual.length, x.actual.q_forall,
                    x.actual.q_exists, x.actual.q, x.actual.r, x.expected.q_forall, x.expected.q_exists, x.expected.q,
                    x.expected.r);
    }
  }
  return emit(out, report, ok);
}

// ---- verify-linear ----

struct LinearArgs {
  int min_l = 1;
  int max_l = 16;
  std::string q = "both";
  std::vector<std::string> strategies{"cma", "alternating", "exact-length"};
  bool synthesize = false;
};

int cmd_verify_linear(const LinearArgs& a, const Output& out) {
  if (a.min_l < 1 || a.max_l < a.min_l) throw error("bad length range");
  std::vector<Quantifier> qs;
  if (a.q == "both" || a.q == "E") qs.push_back(Quantifier::Exists);
  if (a.q == "both" || a.q == "A") qs.push_back(Quantifier::Forall);
  if (qs.empty()) throw error("--q must be E, A or both");
  Json rows = Json::array();
  bool ok = true;
  auto start = std::chrono::steady_clock::now();
  for (int l = a.min_l; l <= a.max_l; ++l) {
    for (const auto& name : a.strategies) {
      std::vector<Verification> cases;
      if (name == "cma") {
        for (auto q : qs) cases.push_back(linear_case(LinearStrategy::Cma, l, q));
      } else if (name == "alternating") {
        cases.push_back(linear_case(LinearStrategy::Alternating, l));
      } else if (name == "exact-length") {
        cases.push_back(linear_case(LinearStrategy::ExactLength, l));
      } else {
        throw error("unknown strategy " + name);
      }
      for (const auto& c : cases) {
        auto r = verify(c, a.synthesize);
        bool good = r.ok() && (!a.synthesize || r.round_trip.ok());
        ok = ok && good;
        Json row{{"strategy", r.strategy}, {"length", l},         {"instance", r.instance},
                 {"won", r.won},           {"rounds", r.rounds},  {"expected_rounds", c.expected_rounds},
                 {"pattern", to_string(r.pattern)}, {"diagnostics", r.diagnostics}, {"ok", good}};
        if (a.synthesize) row["sentence_ok"] = r.round_trip.ok();
        rows.push_back(row);
        if (!out.quiet)
          std::printf("%-13s l=%-4d %-30s %s rounds=%d pattern=%s%s\n", r.strategy.c_str(), l, r.instance.c_str(),
                      r.won ? "won " : "LOST", r.rounds, to_string(r.pattern).c_str(), good ? "" : "  FAILED");
      }
    }
  }
  if (!out.quiet && out.timings) std::printf("wall time %.2fs\n", since(start));
  return emit(out, {{"command", "verify-linear"}, {"rows", rows}, {"ok", ok}}, ok);
}

// ---- verify-string ----

struct StringArgs {
  std::string mode;
  int n = 0;
  std::string w, v;
  std::string left_file, right_file, left_inline, right_inline;
  bool exhaustive = false;
  int random = 0;
  std::size_t size = 4;
  std::uint64_t seed = 1;
  int t = 2;
  double epsilon = 1.0;
  int max_other_len = 0;
  bool synthesize = true;
  bool oracle = false;
  OracleOptions caps;
};

struct StringCase {
  std::vector<std::string> left, right;
  PlayerPtr player;
  int budget = 0;
  std::string budget_formula;
  std::string note;
};

std::vector<std::string> side_of(const std::string& file, const std::string& inl) {
  if (!file.empty()) return read_strings(file);
  return split_list(inl);
}

StringCase build_string_case(const StringArgs& a, const std::vector<std::string>& left,
                             const std::vector<std::string>& right) {
  StringCase c;
  c.left = left;
  c.right = right;
  const std::string& m = a.mode;
  auto n_of = [&](const std::vector<std::string>& s) { return s.empty() ? 0 : static_cast<int>(s.front().size()); };
  const int n = std::max(n_of(left), n_of(right));
  const int cl2 = n > 1 ? ceil_log2(static_cast<std::uint64_t>(n)) : 0;
  if (m == "one-vs-one") {
    if (left.size() != 1 || right.size() != 1) throw error("one-vs-one needs one string per side");
    c.player = sep_one_vs_one_anylen(left[0], right[0]);
    int i = left[0].size() == right[0].size() ? first_difference(left[0], right[0]) : 0;
    c.budget = i > 1 ? 1 + q_star(i - 1) + 2 : (i == 0 && left[0].size() > 1 ? q_star(n_of(left) - 1) + 2 : 0);
    c.budget_formula = "1 + q*(i-1) + 2 at first difference i";
  } else if (m == "one-vs-all") {
    if (left.size() != 1) throw error("one-vs-all needs one string on the left");
    if (a.max_other_len > 0) {
      c.player = sep_one_vs_all_anylen(left[0], a.max_other_len);
      c.budget = 3 * ceil_log3(n_of(left)) + 2;
      c.budget_formula = "3 ceil(log3 n) + 2";
    } else {
      c.player = sep_one_vs_all(left[0]);
      c.budget = 3 * ceil_log3(n);
      c.budget_formula = "3 ceil(log3 n)";
    }
  } else if (m == "one-vs-many") {
    if (left.size() != 1) throw error("one-vs-many needs one string on the left");
    auto s = sep_one_vs_many(left[0], right, a.t);
    c.player = s.player;
    c.budget = cl2 + ceil_log_base(right.size(), a.t);
    c.budget_formula = "ceil(log2 n) + ceil(log_t |B|) + C";
    c.note = s.preprocessing.front().kind == PreprocessKind::Permutation ? "permutation coding" : "instructional coding";
  } else if (m == "many-vs-many") {
    auto s = sep_many_vs_many(left, right, a.t);
    c.player = s.player;
    c.budget = cl2 + ceil_log_base(left.size(), a.t) + ceil_log_base(right.size(), a.t);
    c.budget_formula = "ceil(log2 n) + ceil(log_t |A|) + ceil(log_t |B|) + C";
  } else if (m == "many-vs-all") {
    auto s = sep_many_vs_all(left, n, a.t);
    c.player = s.player;
    c.budget = 3 * ceil_log3(n) + ceil_log_base(left.size(), a.t);
    c.budget_formula = "3 ceil(log3 n) + ceil(log_t |A|) + C";
  } else if (m == "any-vs-any") {
    auto s = sep_any_vs_any(left, right, a.epsilon);
    c.player = s.player;
    c.budget = any_vs_any_moves(n, a.epsilon) + 3 * ceil_log3(n);
    c.budget_formula = "ceil(n (1+eps/4) / log2 n) + 3 ceil(log3 n)";
    c.note = s.preprocessing.front().kind == PreprocessKind::Permutation ? "permutation coding" : "instructional coding";
  } else {
    throw error("unknown mode " + m);
  }
  return c;
}

std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> string_instances(const StringArgs& a) {
  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> out;
  auto L = side_of(a.left_file, a.left_inline);
  auto R = side_of(a.right_file, a.right_inline);
  if (!a.w.empty()) L = {a.w};
  if (!a.v.empty()) R = {a.v};
  const std::string& m = a.mode;
  std::mt19937_64 rng(a.seed);
  auto complement = [&](const std::vector<std::string>& left) {
    if (a.max_other_len > 0) {
      std::vector<std::string> r;
      for (const auto& s : all_strings_up_to(a.max_other_len))
        if (std::find(left.begin(), left.end(), s) == left.end()) r.push_back(s);
      return r;
    }
    return complement_of(left, static_cast<int>(left.front().size()));
  };
  if (!L.empty()) {
    if (m == "one-vs-all" || m == "many-vs-all") R = complement(L);
    if (R.empty()) throw error("no right side given");
    out.emplace_back(L, R);
    return out;
  }
  if (a.n < 1) throw error("give --n or explicit strings");
  if (a.exhaustive) {
    if (m == "one-vs-all") {
      if (a.n > 12) throw error("exhaustive one-vs-all is capped at n = 12; use --random");
      for (const auto& w : all_strings(a.n)) out.emplace_back(std::vector<std::string>{w}, complement({w}));
    } else if (m == "one-vs-one") {
      if (a.n > 8) throw error("exhaustive one-vs-one is capped at n = 8");
      auto all = all_strings(a.n);
      for (const auto& x : all)
        for (const auto& y : all)
          if (x != y) out.emplace_back(std::vector<std::string>{x}, std::vector<std::string>{y});
    } else if (m == "any-vs-any") {
      // disjoint halves of {0,1}^n
      auto all = all_strings(a.n);
      std::vector<std::string> l(all.begin(), all.begin() + static_cast<long>(all.size() / 2));
      std::vector<std::string> r(all.begin() + static_cast<long>(all.size() / 2), all.end());
      out.emplace_back(l, r);
    } else {
      throw error("--exhaustive supports one-vs-one, one-vs-all and any-vs-any");
    }
    return out;
  }
  const int count = std::max(1, a.random);
  for (int i = 0; i < count; ++i) {
    std::vector<std::string> l, r;
    if (m == "one-vs-one") {
      l = random_strings(rng, a.n, 1);
      r = random_strings(rng, a.n, 1, {l[0]});
    } else if (m == "one-vs-all") {
      l = random_strings(rng, a.n, 1);
      r = complement(l);
    } else if (m == "one-vs-many") {
      l = random_strings(rng, a.n, 1);
      r = random_strings(rng, a.n, a.size, {l[0]});
    } else if (m == "many-vs-all") {
      l = random_strings(rng, a.n, a.size);
      r = complement(l);
    } else if (m == "any-vs-any") {
      // a random split of {0,1}^n into two halves
      auto all = all_strings(a.n);
      std::shuffle(all.begin(), all.end(), rng);
      l.assign(all.begin(), all.begin() + static_cast<long>(all.size() / 2));
      r.assign(all.begin() + static_cast<long>(all.size() / 2), all.end());
      std::sort(l.begin(), l.end());
      std::sort(r.begin(), r.end());
    } else {
      l = random_strings(rng, a.n, a.size);
      r = random_strings(rng, a.n, a.size, std::set<std::string>(l.begin(), l.end()));
    }
    out.emplace_back(l, r);
  }
  return out;
}

int cmd_verify_string(const StringArgs& a, const Output& out) {
  auto start = std::chrono::steady_clock::now();
  auto instances = string_instances(a);
  Json rows = Json::array();
  bool ok = true;
  std::size_t wins = 0;
  for (const auto& [left, right] : instances) {
    StringCase c = build_string_case(a, left, right);
    GameState game = string_game(left, right);
    const int r = static_cast<int>(c.player->pattern().size());
    RunResult res = run_strategy(game, *c.player, r);
    bool good = res.won && res.diagnostics.empty();
    RoundTrip rt;
    if (good && a.synthesize) {
      rt = round_trip(game, res.transcript);
      good = rt.ok() && rt.replay_rounds == r;
    }
    ok = ok && good;
    if (good) ++wins;
    Json row{{"strategy", a.mode},
             {"n", static_cast<int>(left.front().size())},
             {"sizes", {left.size(), right.size()}},
             {"budget_formula", c.budget_formula},
             {"budget_value", c.budget},
             {"rounds_used", r},
             {"pattern", to_string(res.pattern)},
             {"won", res.won},
             {"ok", good}};
    if (left.size() == 1) row["w"] = left.front();
    if (right.size() == 1) row["v"] = right.front();
    if (!c.note.empty()) row["note"] = c.note;
    if (a.synthesize) row["sentence_ok"] = rt.ok();
    if (a.oracle) {
      auto o = min_rounds(game, a.caps);
      row["oracle"] = to_json(o);
      if (!out.quiet)
        std::printf("  oracle: %s (strategy %d)%s\n", o.describe().c_str(), r,
                    out.timings ? (" in " + std::to_string(o.seconds) + "s").c_str() : "");
    }
    rows.push_back(row);
    if (!out.quiet && instances.size() <= 64)
      std::printf("%-12s |A|=%zu |B|=%zu %s rounds=%d budget=%d pattern=%s%s\n", a.mode.c_str(), left.size(),
                  right.size(), res.won ? "won " : "LOST", r, c.budget, to_string(res.pattern).c_str(),
                  good ? "" : "  FAILED");
  }
  if (!out.quiet) std::printf("%zu of %zu instances won\n", wins, instances.size());
  if (!out.quiet && out.timings) std::printf("wall time %.2fs\n", since(start));
  Json report{{"command", "verify-string"}, {"mode", a.mode},  {"seed", a.seed},
              {"instances", instances.size()}, {"wins", wins}, {"ok", ok}};
  if (instances.size() <= 256) report["rows"] = rows;
  return emit(out, report, ok);
}

// ---- synthesize ----

struct SynthArgs {
  int length = 0;
  std::string q = "E";
  std::string strategy = "cma";
  std::string w, v;
  std::string formula;
};

int cmd_synthesize(const SynthArgs& a, const Output& out) {
  Verification c;
  if (!a.w.empty()) {
    c.strategy = a.v.empty() ? "one-vs-all" : "one-vs-one";
    c.game = a.v.empty() ? string_game({a.w}, complement_of({a.w}, static_cast<int>(a.w.size())))
                         : string_game({a.w}, {a.v});
    c.player = a.v.empty() ? sep_one_vs_all(a.w) : sep_one_vs_one_anylen(a.w, a.v);
    c.instance = a.w + (a.v.empty() ? " vs all others" : " vs " + a.v);
  } else {
    if (a.length < 1) throw error("give --l or --w");
    Quantifier q = a.q == "A" ? Quantifier::Forall : Quantifier::Exists;
    LinearStrategy s = a.strategy == "alternating"    ? LinearStrategy::Alternating
                       : a.strategy == "exact-length" ? LinearStrategy::ExactLength
                                                      : LinearStrategy::Cma;
    c = linear_case(s, a.length, q);
  }
  Json report{{"command", "synthesize"}, {"instance", c.instance}, {"strategy", c.strategy}};
  bool ok;
  if (!a.formula.empty()) {
    Formula f = parse_formula(a.formula);
    auto mc = std::make_shared<const ModelChecker>(f);
    auto rep = check_separation(*mc, c.game.left(), c.game.right());
    report["formula"] = to_json(f);
    report["separates"] = rep.ok;
    ok = rep.ok;
    if (ok) {
      auto res = run_strategy(c.game, *spoiler_from_formula(mc), f.rank());
      report["replay_won"] = res.won;
      ok = res.won;
    }
    if (!out.quiet) std::printf("%s\nseparates: %s\n", f.to_string().c_str(), rep.ok ? "yes" : "no");
  } else {
    const int r = static_cast<int>(c.player->pattern().size());
    RunResult res = run_strategy(c.game, *c.player, r);
    if (!res.won) throw error("strategy lost; nothing to synthesize");
    Formula f = synthesize(res.transcript);
    RoundTrip rt = round_trip(c.game, res.transcript);
    report["transcript"] = to_json(res.transcript);
    report["formula"] = to_json(f);
    report["quantifiers"] = rt.quantifiers;
    report["separates"] = rt.separates;
    report["replay_won"] = rt.replay_won;
    ok = rt.ok();
    if (!out.quiet)
      std::printf("%s\nquantifiers=%d separates=%s replay=%s\n", f.to_string().c_str(), rt.quantifiers,
                  rt.separates ? "yes" : "no", rt.replay_won ? "won" : "lost");
  }
  return emit(out, report, ok);
}

// ---- oracle ----

struct OracleArgs {
  int length = 0;
  std::string q;
  std::string left_inline, right_inline, left_file, right_file;
  bool winnable = false;
  int rounds = -1;
  OracleOptions caps;
};

int cmd_oracle(const OracleArgs& a, const Output& out) {
  Json report{{"command", "oracle"},
              {"caps",
               {{"rounds", a.caps.max_rounds},
                {"boards", a.caps.max_boards},
                {"universe", a.caps.max_universe},
                {"nodes", a.caps.max_nodes}}}};
  std::optional<Quantifier> forced;
  if (a.q == "E") forced = Quantifier::Exists;
  else if (a.q == "A") forced = Quantifier::Forall;
  else if (!a.q.empty()) throw error("--q must be E or A");
  OracleResult res;
  if (a.length > 0) {
    if (a.winnable) {
      if (!forced || a.rounds < 0) throw error("--winnable needs --q and --rounds");
      auto w = is_winnable_msl({*forced, a.rounds, a.length}, a.caps);
      report["instance"] = std::string("MSL(") + to_char(*forced) + "," + std::to_string(a.rounds) + "," +
                           std::to_string(a.length) + ")";
      report["winnable"] = w.winnable ? Json(*w.winnable) : Json("unknown");
      res = w.detail;
    } else {
      int r = a.caps.max_rounds;
      GameState g = msl_instance(a.length, r);
      report["instance"] = "L<=" + std::to_string(a.length) + " vs L" + std::to_string(a.length + 1) + "..L" +
                           std::to_string(g.right().back().base().last());
      res = min_rounds(g, a.caps, forced);
      report["bracket"] = {{"r", q_rank(a.length)}, {"q_star", q_star(a.length)}};
    }
  } else {
    auto L = side_of(a.left_file, a.left_inline);
    auto R = side_of(a.right_file, a.right_inline);
    if (L.empty() || R.empty()) throw error("give --l or both sides");
    report["instance"] = {{"left", L}, {"right", R}};
    res = min_rounds(string_game(L, R), a.caps, forced);
  }
  if (forced) report["forced_first"] = std::string(1, to_char(*forced));
  report["result"] = to_json(res);
  if (!out.quiet) {
    std::printf("min rounds: %s, nodes expanded %zu\n", res.describe().c_str(), res.nodes_expanded);
    std::printf("wall time %.3fs\n", res.seconds);
  }
  if (out.timings) report["wall_time"] = res.seconds;
  return emit(out, report, !res.exceeded || res.rounds.has_value());
}

// ---- bounds / counting ----

double parse_size(const std::string& s, int n) {
  if (s == "all") return std::ldexp(1.0, n) - 1;
  if (s == "n") return n;
  if (s.rfind("n^", 0) == 0) return std::pow(n, std::stod(s.substr(2)));
  if (s.rfind("2^", 0) == 0) return std::ldexp(1.0, std::stoi(s.substr(2)));
  return std::stod(s);
}

struct BoundsArgs {
  int n = 64;
  std::vector<std::string> sizes{"1", "1"};
  double epsilon = 1.0;
  bool measure = false;
  std::vector<int> measure_n{8, 16, 32, 64};
  std::uint64_t seed = 1;
};

int cmd_bounds(const BoundsArgs& a, const Output& out) {
  if (a.sizes.size() != 2) throw error("--sizes takes two values");
  double sa = parse_size(a.sizes[0], a.n), sb = parse_size(a.sizes[1], a.n);
  auto rows = budget_table(a.n, sa, sb, a.epsilon);
  Json jr = Json::array();
  for (const auto& r : rows) {
    jr.push_back(to_json(r));
    if (!out.quiet)
      std::printf("%s row %d  %-38s %-40s %8.2f%s\n", r.best ? "*" : " ", r.row, r.sides.c_str(), r.formula.c_str(),
                  r.main_term, r.applicable ? "" : "  (shape does not fit)");
  }
  Json report{{"command", "bounds"}, {"n", a.n}, {"sizes", {sa, sb}}, {"epsilon", a.epsilon}, {"rows", jr}};
  bool ok = true;
  if (a.measure) {
    MeasureOptions mo;
    mo.epsilon = a.epsilon;
    mo.seed = a.seed;
    auto rep = measure_constants(a.measure_n, mo);
    Json cells = Json::array();
    for (const auto& m : rep.cells) {
      cells.push_back(to_json(m));
      if (!out.quiet)
        std::printf("row %d n=%-3d rounds=%-3d budget=%-3d constant=%-3d %s  (%s)\n", m.row, m.n, m.rounds, m.budget,
                    m.constant, m.verified ? "verified" : m.exceeded ? "planned, board budget exceeded" : "LOST",
                    m.note.c_str());
    }
    report["measured"] = cells;
    report["constants_bounded"] = rep.bounded;
    ok = rep.all_won && rep.bounded;
  }
  return emit(out, report, ok);
}

struct CountingArgs {
  int from = 16;
  int to = 64;
};

int cmd_counting(const CountingArgs& a, const Output& out) {
  if (a.from < 2 || a.to < a.from) throw error("bad n range");
  Json rows = Json::array();
  bool ok = true;
  int prev = 0;
  for (int n = a.from; n <= a.to; ++n) {
    auto c = counting_lower_bound(n);
    bool good = c.above_n_over_log && c.interval_agrees && c.k_min >= prev;
    prev = c.k_min;
    ok = ok && good;
    rows.push_back(to_json(c));
    if (!out.quiet)
      std::printf("n=%-5d k_min=%-4d n/log2 n=%8.3f %s\n", n, c.k_min, n / std::log2(static_cast<double>(n)),
                  c.above_n_over_log ? "ok" : "BELOW");
  }
  return emit(out, {{"command", "counting"}, {"from", a.from}, {"to", a.to}, {"rows", rows}, {"ok", ok}}, ok);
}

void add_caps(CLI::App* app, OracleOptions& caps) {
  app->add_option("--cap-rounds", caps.max_rounds, "Deepest game the oracle tries");
  app->add_option("--cap-boards", caps.max_boards, "Boards per side allowed after normalization");
  app->add_option("--cap-universe", caps.max_universe, "Largest structure allowed");
  app->add_option("--cap-nodes", caps.max_nodes, "Search node budget");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-structural game engine: strategies, sentences and exact bounds"};
  app.require_subcommand(1);
  Output out;
  app.add_option("--json", out.json_path, "Write the JSON report to this file ('-' for stdout)");
  app.add_flag("--quiet", out.quiet, "Only emit the JSON report");
  app.add_flag("--timings", out.timings, "Include wall-clock times (makes JSON nondeterministic)");

  QTableArgs qa;
  auto* qt = app.add_subcommand("qtable", "Values of q*_A, q*_E, q* and r");
  qt->add_option("--max-l", qa.max_l, "Largest length listed");
  qt->add_flag("--golden", qa.golden, "Diff against the reference table (lengths up to 127)");

  LinearArgs la;
  auto* vl = app.add_subcommand("verify-linear", "Run the order strategies over a range of lengths");
  vl->add_option("--min-l", la.min_l, "Smallest length");
  vl->add_option("--max-l", la.max_l, "Largest length");
  vl->add_option("--q", la.q, "First quantifier for CMA runs")->check(CLI::IsMember({"E", "A", "both"}));
  vl->add_option("--strategy", la.strategies, "Strategies to run (repeatable)")->check(CLI::IsMember({"cma", "alternating", "exact-length"}));
  vl->add_flag("--synthesize", la.synthesize, "Also synthesize, check and replay each sentence");

  StringArgs sa;
  auto* vs = app.add_subcommand("verify-string", "Run a string strategy");
  vs->add_option("--mode", sa.mode, "Which pair of side shapes")
      ->required()
      ->check(CLI::IsMember({"one-vs-one", "one-vs-all", "one-vs-many", "many-vs-many", "many-vs-all", "any-vs-any"}));
  vs->add_option("--n", sa.n, "String length");
  vs->add_option("--w", sa.w, "Single left string");
  vs->add_option("--v", sa.v, "Single right string");
  vs->add_option("--left", sa.left_file, "File of left strings");
  vs->add_option("--right", sa.right_file, "File of right strings");
  vs->add_option("--left-strings", sa.left_inline, "Comma-separated left strings");
  vs->add_option("--right-strings", sa.right_inline, "Comma-separated right strings");
  vs->add_flag("--exhaustive", sa.exhaustive, "Every instance of length n (capped per mode)");
  vs->add_option("--random", sa.random, "Number of random instances");
  vs->add_option("--size", sa.size, "Side size for random instances");
  vs->add_option("--seed", sa.seed, "Seed for random instances");
  vs->add_option("--t", sa.t, "Preprocessing base");
  vs->add_option("--epsilon", sa.epsilon, "Slack in the budget exponent");
  vs->add_option("--max-other-len", sa.max_other_len, "Right side: all strings up to this length");
  vs->add_flag("!--no-synthesize", sa.synthesize, "Skip the sentence round trip");
  vs->add_flag("--oracle", sa.oracle, "Also compute the exact minimum");
  add_caps(vs, sa.caps);

  SynthArgs ya;
  auto* sy = app.add_subcommand("synthesize", "Turn a winning play into a sentence, or check a given one");
  sy->add_option("--l", ya.length, "Order instance: L1..Ll against longer orders");
  sy->add_option("--q", ya.q, "First quantifier for CMA")->check(CLI::IsMember({"E", "A"}));
  sy->add_option("--strategy", ya.strategy, "Order strategy to play")->check(CLI::IsMember({"cma", "alternating", "exact-length"}));
  sy->add_option("--w", ya.w, "String instance: w against all other strings of its length");
  sy->add_option("--v", ya.v, "With --w: a single right string instead");
  sy->add_option("--formula", ya.formula, "Check this sentence instead of synthesizing one");

  OracleArgs oa;
  auto* orc = app.add_subcommand("oracle", "Exact minimum number of rounds on a small instance");
  orc->add_option("--l", oa.length, "Short orders L1..Ll against the longer surrogate");
  orc->add_option("--q", oa.q, "Force the first quantifier")->check(CLI::IsMember({"E", "A"}));
  orc->add_option("--left-strings", oa.left_inline);
  orc->add_option("--right-strings", oa.right_inline);
  orc->add_option("--left", oa.left_file);
  orc->add_option("--right", oa.right_file);
  orc->add_flag("--winnable", oa.winnable, "Decide MSL(q, rounds, l)");
  orc->add_option("--rounds", oa.rounds, "Round count for --winnable");
  add_caps(orc, oa.caps);

  BoundsArgs ba;
  auto* bo = app.add_subcommand("bounds", "Quantifier budgets for separating sets of strings");
  bo->add_option("--n", ba.n, "String length");
  bo->add_option("--sizes", ba.sizes, "Two side sizes: numbers, n, n^k, 2^k or all")->expected(2);
  bo->add_option("--epsilon", ba.epsilon, "Slack in the budget exponent");
  bo->add_flag("--measure", ba.measure, "Measure additive constants for every row");
  bo->add_option("--measure-n", ba.measure_n, "Lengths to measure at (repeatable)");
  bo->add_option("--seed", ba.seed, "Seed for sampled sides");

  CountingArgs ca;
  auto* co = app.add_subcommand("counting", "Counting lower bound for any-vs-any");
  co->add_option("--from", ca.from, "First n");
  co->add_option("--to", ca.to, "Last n");
  co->add_option("--n", ca.to, "Single n")->each([&](const std::string& s) { ca.from = std::stoi(s); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  try {
    if (*qt) return cmd_qtable(qa, out);
    if (*vl) return cmd_verify_linear(la, out);
    if (*vs) return cmd_verify_string(sa, out);
    if (*sy) return cmd_synthesize(ya, out);
    if (*orc) return cmd_oracle(oa, out);
    if (*bo) return cmd_bounds(ba, out);
    if (*co) return cmd_counting(ca, out);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  }
  return kUsage;
}
