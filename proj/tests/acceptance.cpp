// Acceptance run: one PASS/FAIL line per criterion.
// Usage: msgame_acceptance [--known-failure N]... [--only N]...
// A known failure still prints FAIL but does not change the exit status; a known failure
// that starts passing does, so the list cannot go stale.

#include <msgame/bounds.hpp>
#include <msgame/constants.hpp>
#include <msgame/oracle.hpp>
#include <msgame/suites.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

using namespace msgame;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
  std::vector<std::string> notes;  // printed indented under the verdict
};

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Won transcripts from criteria 3-5, kept for the round trip.
struct Kept {
  std::string label;
  GameState game;
  Transcript transcript;
};
std::vector<Kept> kept;

Outcome golden_table() {
  auto t = Clock::now();
  auto diffs = diff_against_golden(127);
  double s = since(t);
  Outcome o;
  o.pass = diffs.empty() && s < 1.0;
  o.detail = fmt("%zu of 127 rows differ, %.3fs", diffs.size(), s);
  for (const auto& d : diffs)
    o.notes.push_back(fmt("l = %d: computed (q*A %d, q*E %d, q* %d, r %d), table (%d, %d, %d, %d)", d.actual.length,
                          d.actual.q_forall, d.actual.q_exists, d.actual.q, d.actual.r, d.expected.q_forall,
                          d.expected.q_exists, d.expected.q, d.expected.r));
  if (!diffs.empty())
    o.notes.push_back("the table's own rows give q*A(38) = 7, and an odd E-split of 75 needs q*A(38) + 1 = 8");
  return o;
}

Outcome sandwich() {
  auto t = Clock::now();
  int bad = 0;
  for (int l = 1; l <= 4096; ++l) {
    int q = q_star(l), r = q_rank(l);
    if (q < r || q > r + 1) ++bad;
  }
  double s = since(t);
  return {bad == 0 && s < 1.0, fmt("%d violations for 1 <= l <= 4096, %.3fs", bad, s), {}};
}

void keep(const std::string& label, const Verification& v, VerificationResult& r) {
  if (r.won) kept.push_back({label, v.game, std::move(r.transcript)});
}

Outcome cma() {
  auto t = Clock::now();
  int runs = 0, bad = 0;
  Outcome o;
  for (int l = 1; l <= 64; ++l)
    for (Quantifier q : {Quantifier::Exists, Quantifier::Forall}) {
      auto v = linear_case(LinearStrategy::Cma, l, q);
      auto r = verify(v, false, true);
      ++runs;
      if (!r.ok()) {
        ++bad;
        o.notes.push_back(fmt("l = %d, first %c: won %d, pattern %s", l, to_char(q), r.won, to_string(r.pattern).c_str()));
      }
      keep("cma l=" + std::to_string(l) + " " + to_char(q), v, r);
    }
  auto fig = verify(linear_case(LinearStrategy::Cma, 5, Quantifier::Exists), false);
  bool fig_ok = fig.ok() && to_string(fig.pattern) == "EAEA";
  double s = since(t);
  o.pass = bad == 0 && fig_ok && s < 120;
  o.detail = fmt("%d/%d runs won in exactly q*_Q(l) with the required pattern; l = 5, E: %s; %.1fs", runs - bad, runs,
                 to_string(fig.pattern).c_str(), s);
  return o;
}

Outcome alternation() {
  auto t = Clock::now();
  int alt_bad = 0, exact_bad = 0;
  Outcome o;
  for (int l = 1; l <= 64; ++l) {
    auto v = linear_case(LinearStrategy::Alternating, l);
    auto r = verify(v, false, true);
    bool ok = r.ok() && strictly_alternating(r.pattern) && !r.pattern.empty() &&
              r.pattern.back() == Quantifier::Forall && r.rounds == q_star(l);
    if (!ok) {
      ++alt_bad;
      o.notes.push_back(fmt("alternating l = %d: pattern %s", l, to_string(r.pattern).c_str()));
    }
    keep("alternating l=" + std::to_string(l), v, r);
  }
  int worst_extra = 0;
  for (int l = 1; l <= 32; ++l) {
    auto v = linear_case(LinearStrategy::ExactLength, l);
    auto r = verify(v, false, true);
    if (!r.ok()) {
      ++exact_bad;
      o.notes.push_back(fmt("exact length l = %d: won %d in %d rounds", l, r.won, r.rounds));
    }
    worst_extra = std::max(worst_extra, r.rounds - q_star(l));
    keep("exact-length l=" + std::to_string(l), v, r);
  }
  o.pass = alt_bad == 0 && exact_bad == 0;
  o.detail = fmt("alternating %d/64 ok; exact length %d/32 ok, at most q* + %d rounds; %.1fs", 64 - alt_bad,
                 32 - exact_bad, worst_extra, since(t));
  return o;
}

Outcome one_vs_all() {
  auto t = Clock::now();
  long runs = 0, bad = 0;
  Outcome o;
  for (int n = 1; n <= 10; ++n)
    for (const auto& w : all_strings(n)) {
      auto v = one_vs_all_case(w);
      auto r = verify(v, false, true);
      ++runs;
      if (!r.ok()) {
        ++bad;
        if (o.notes.size() < 10) o.notes.push_back(w + ": pattern " + to_string(r.pattern));
      }
      keep("one-vs-all " + w, v, r);
    }
  o.pass = bad == 0;
  o.detail = fmt("%ld/%ld strings w with n <= 10 separated in 3*ceil(log3 n) rounds, pattern (EEA)^k; %.1fs",
                 runs - bad, runs, since(t));
  return o;
}

Outcome round_trips() {
  auto t = Clock::now();
  std::size_t bad = 0;
  Outcome o;
  for (const auto& k : kept) {
    RoundTrip rt = round_trip(k.game, k.transcript);
    bool ok = rt.ok() && rt.quantifiers == static_cast<int>(k.transcript.pattern.size()) &&
              rt.replay_rounds == rt.quantifiers;
    if (!ok) {
      ++bad;
      if (o.notes.size() < 10)
        o.notes.push_back(fmt("%s: signature %d, separates %d, replay %d", k.label.c_str(), rt.signature_matches,
                              rt.separates, rt.replay_won));
    }
  }
  o.pass = bad == 0 && !kept.empty();
  o.detail = fmt("%zu/%zu won transcripts from criteria 3-5 round-trip; %.1fs", kept.size() - bad, kept.size(), since(t));
  return o;
}

Outcome oracle_brackets() {
  auto t = Clock::now();
  Outcome o;
  bool ok = true;
  std::string values;
  for (int l = 1; l <= 6; ++l) {
    auto res = min_rounds(msl_instance(l, q_star(l)));
    bool in = res.rounds && *res.rounds >= q_rank(l) && *res.rounds <= q_star(l);
    ok = ok && in;
    values += fmt("%s%d:%s", l > 1 ? " " : "", l, res.describe().c_str());
    if (!in) o.notes.push_back(fmt("l = %d: %s not in [%d, %d]", l, res.describe().c_str(), q_rank(l), q_star(l)));
  }
  struct Base {
    MslSpec spec;
    bool winnable;
  };
  const Base bases[] = {{{Quantifier::Forall, 1, 1}, true},
                        {{Quantifier::Exists, 2, 1}, true},
                        {{Quantifier::Forall, 2, 2}, true},
                        {{Quantifier::Forall, 3, 2}, true},
                        {{Quantifier::Exists, 1, 1}, false}};
  int base_ok = 0;
  for (const auto& b : bases) {
    auto w = is_winnable_msl(b.spec);
    if (w.winnable == b.winnable) ++base_ok;
    else o.notes.push_back(fmt("base case (%c, %d, %d) wrong", to_char(b.spec.first), b.spec.rounds, b.spec.length));
  }
  auto pair = min_rounds(string_game({"001000"}, {"000100"}));
  bool pair_ok = pair.rounds && *pair.rounds >= 2;
  o.pass = ok && base_ok == 5 && pair_ok;
  o.detail = fmt("min_rounds l=1..6 {%s}; base cases %d/5; 001000 vs 000100: %s (>= 2); %.1fs", values.c_str(), base_ok,
                 pair.describe().c_str(), since(t));
  return o;
}

Outcome discard_dedup() {
  auto t = Clock::now();
  std::mt19937_64 rng(20240601);
  const int cases = 200;
  int bad = 0, decided = 0;
  Outcome o;
  for (int i = 0; i < cases; ++i) {
    auto c = oracle_invariance(rng);
    if (c.base.rounds) ++decided;
    if (!c.ok()) {
      ++bad;
      o.notes.push_back(c.instance + ": " + c.base.describe() + " / " + c.without_discard.describe() + " / " +
                        c.without_dedup.describe());
    }
  }
  o.pass = bad == 0;
  o.detail = fmt("%d/%d random tiny instances agree (%d with a value, the rest agree on the lower bound); %.1fs",
                 cases - bad, cases, decided, since(t));
  return o;
}

Outcome counting() {
  auto t = Clock::now();
  int bad = 0, disagree = 0;
  mpfr_prec_t prec = 0;
  Outcome o;
  for (int n = 16; n <= 1024; ++n) {
    auto c = counting_lower_bound(n);
    prec = std::max(prec, c.max_precision);
    if (!c.above_n_over_log) {
      ++bad;
      o.notes.push_back(fmt("n = %d: k_min = %d", n, c.k_min));
    }
    if (!c.interval_agrees) ++disagree;
  }
  double s = since(t);
  o.pass = bad == 0 && disagree == 0 && s < 10;
  o.detail = fmt("k_min >= n/log2 n for all n in 16..1024 (%d failures, %d interval/exact disagreements, max %ld bits); "
                 "%.2fs",
                 bad, disagree, static_cast<long>(prec), s);
  return o;
}

Outcome constants() {
  auto t = Clock::now();
  auto rep = measure_constants({8, 16, 32, 64});
  Outcome o;
  for (int row = 1; row <= 7; ++row) {
    std::string line = fmt("row %d constants:", row);
    for (const auto& m : rep.cells)
      if (m.row == row) line += fmt(" n=%d:%d%s", m.n, m.constant, m.exceeded ? "(planned)" : m.verified ? "" : "(lost)");
    o.notes.push_back(line);
  }
  for (const auto& n : rep.notes) o.notes.push_back(n);
  o.pass = rep.bounded && rep.all_won;
  int exceeded = 0;
  for (const auto& m : rep.cells) exceeded += m.exceeded;
  o.detail = fmt("slack bounded over n in {8,16,32,64}: %s; every finished run won: %s; %d planned cells; %.1fs",
                 rep.bounded ? "yes" : "no", rep.all_won ? "yes" : "no", exceeded, since(t));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  std::set<int> known, only;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if ((a == "--known-failure" || a == "--only") && i + 1 < argc) {
      (a == "--only" ? only : known).insert(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--known-failure N]... [--only N]...\n", argv[0]);
      return 2;
    }
  }
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"golden q* table", golden_table},
      {"sandwich r <= q* <= r + 1", sandwich},
      {"CMA on surrogate instances", cma},
      {"alternation suites", alternation},
      {"one-vs-all exhaustive", one_vs_all},
      {"synthesis round trip", round_trips},
      {"oracle brackets", oracle_brackets},
      {"discard/dedup soundness", discard_dedup},
      {"counting bound", counting},
      {"measured constants", constants},
  };
  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    int id = static_cast<int>(i) + 1;
    bool feeds_round_trip = id >= 3 && id <= 5 && only.contains(6);
    if (!only.empty() && !only.contains(id) && !feeds_round_trip) continue;
    Outcome o = criteria[i].second();
    if (!only.empty() && !only.contains(id)) continue;
    bool is_known = known.contains(id);
    std::printf("%s %d %s: %s%s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first, o.detail.c_str(),
                !o.pass && is_known ? " [known]" : "");
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
    if (o.pass == is_known) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
