#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "string_strategies.hpp"

namespace msgame {

// Rounds used by a row's strategy on a concrete instance, set against the integer budget of the
// theorem behind the row. The difference is the measured additive constant.
struct RowMeasurement {
  int row = 0;
  int n = 0;
  std::size_t left_size = 0;
  std::size_t right_size = 0;
  int rounds = 0;           // pattern length of the strategy
  int budget = 0;           // integer main term, e.g. ceil(log2 n) + ceil(log_t N)
  double table_term = 0;    // the table's real-valued main term
  int constant = 0;         // rounds - budget
  bool verified = false;    // engine run finished and Spoiler won
  bool exceeded = false;    // engine board budget ran out; rounds are the planned ones
  double seconds = 0;
  std::string note;
};

inline std::string random_string(std::mt19937_64& rng, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (auto& c : s) c = (rng() & 1) ? '1' : '0';
  return s;
}

// `count` distinct n-bit strings avoiding `avoid`, sorted.
inline std::vector<std::string> random_strings(std::mt19937_64& rng, int n, std::size_t count,
                                               const std::set<std::string>& avoid = {}) {
  if (static_cast<double>(count + avoid.size()) > std::ldexp(1.0, n)) throw error("not enough strings of that length");
  std::set<std::string> out;
  while (out.size() < count) {
    auto s = random_string(rng, n);
    if (!avoid.contains(s)) out.insert(s);
  }
  return {out.begin(), out.end()};
}

inline std::string unit_string(int n, int i) {
  std::string s(static_cast<std::size_t>(n), '0');
  s[static_cast<std::size_t>(i - 1)] = '1';
  return s;
}

struct MeasureOptions {
  double epsilon = 1.0;
  std::size_t bounded_size = 4;
  std::size_t sample_size = 32;  // stand-in for a super-polynomial side
  std::uint64_t seed = 1;
  std::size_t max_boards = 4'000'000;
};

// least t >= 2 with degree / log2 t < eps
inline int poly_base(double degree, double epsilon) {
  int t = 2;
  while (!(degree / std::log2(static_cast<double>(t)) < epsilon)) ++t;
  return t;
}

namespace detail {

inline RowMeasurement run_row(int row, int n, const std::vector<std::string>& left,
                              const std::vector<std::string>& right, const PlayerPtr& player, int budget,
                              double table_term, std::size_t max_boards) {
  RowMeasurement m;
  m.row = row;
  m.n = n;
  m.left_size = left.size();
  m.right_size = right.size();
  m.budget = budget;
  m.table_term = table_term;
  m.rounds = static_cast<int>(player->pattern().size());
  RunOptions ro;
  ro.max_boards = max_boards;
  auto start = std::chrono::steady_clock::now();
  try {
    RunResult res = run_strategy(string_game(left, right), *player, m.rounds, ro);
    m.verified = res.won && res.diagnostics.empty();
  } catch (const error&) {
    m.exceeded = true;
  }
  m.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  m.constant = m.rounds - budget;
  return m;
}

inline int ceil_log(std::size_t x, int t) { return ceil_log_base(x, t); }

}  // namespace detail

inline RowMeasurement measure_row(int row, int n, const MeasureOptions& opt = {}) {
  if (n < 4 || n > 64) throw error("row measurements need 4 <= n <= 64");
  std::mt19937_64 rng(opt.seed * 1000003u + static_cast<std::uint64_t>(row) * 131u + static_cast<std::uint64_t>(n));
  const double ln = std::log2(static_cast<double>(n));
  const double l3 = log_base(n, 3);
  const int cl2 = ceil_log2(static_cast<std::uint64_t>(n));
  const int k3 = 3 * ceil_log3(n);
  const double eps = opt.epsilon;
  const std::size_t logn = static_cast<std::size_t>(cl2);
  using detail::ceil_log;
  using detail::run_row;
  switch (row) {
    case 1: {
      const std::string zero(static_cast<std::size_t>(n), '0');
      RowMeasurement worst;
      for (int i = 1; i <= n; ++i) {
        auto v = unit_string(n, i);
        auto m = run_row(1, n, {zero}, {v}, sep_one_vs_one(zero, v), cl2, ln, opt.max_boards);
        if (i == 1 || !m.verified || m.rounds > worst.rounds) worst = m;
        if (!m.verified) break;
      }
      worst.note = "worst of the n first-difference positions";
      return worst;
    }
    case 2: {
      auto w = random_string(rng, n);
      auto right = random_strings(rng, n, opt.bounded_size, {w});
      int t = bounded_base(static_cast<double>(right.size()));
      auto m = run_row(2, n, {w}, right, sep_one_vs_many(w, right, t).player, cl2 + ceil_log(right.size(), t),
                       ln + log_base(static_cast<double>(right.size()), t), opt.max_boards);
      m.note = "N = " + std::to_string(right.size()) + ", t = " + std::to_string(t);
      return m;
    }
    case 3: {
      auto w = random_string(rng, n);
      auto right = random_strings(rng, n, static_cast<std::size_t>(n), {w});
      int t = poly_base(1, eps);
      auto m = run_row(3, n, {w}, right, sep_one_vs_many(w, right, t).player, cl2 + ceil_log(right.size(), t),
                       (1 + eps) * ln, opt.max_boards);
      m.note = "f(n) = n, t = " + std::to_string(t);
      return m;
    }
    case 4: {
      auto w = random_string(rng, n);
      auto right = random_strings(rng, n, opt.sample_size, {w});
      auto m = run_row(4, n, {w}, right, sep_one_vs_all(w), k3, 3 * l3, opt.max_boards);
      m.note = "sampled complement";
      return m;
    }
    case 5: {
      auto left = random_strings(rng, n, logn);
      std::set<std::string> ls(left.begin(), left.end());
      auto right = random_strings(rng, n, logn, ls);
      int t = poly_base(1, eps);
      auto m = run_row(5, n, left, right, sep_many_vs_many(left, right, t).player,
                       cl2 + ceil_log(left.size(), t) + ceil_log(right.size(), t), (1 + eps) * ln, opt.max_boards);
      m.note = "f(n) = g(n) = ceil(log2 n), t = " + std::to_string(t);
      return m;
    }
    case 6: {
      auto left = random_strings(rng, n, logn);
      std::set<std::string> ls(left.begin(), left.end());
      auto right = random_strings(rng, n, opt.sample_size, ls);
      int t = poly_base(1, eps);
      auto m = run_row(6, n, left, right, sep_many_vs_all(left, n, t).player, k3 + ceil_log(left.size(), t),
                       (3 + eps) * l3, opt.max_boards);
      m.note = "f(n) = ceil(log2 n), sampled complement, t = " + std::to_string(t);
      return m;
    }
    case 7: {
      auto left = random_strings(rng, n, opt.sample_size);
      std::set<std::string> ls(left.begin(), left.end());
      auto right = random_strings(rng, n, opt.sample_size, ls);
      int mm = any_vs_any_moves(n, eps);
      auto m = run_row(7, n, left, right, sep_any_vs_any(left, right, eps).player, mm + k3, (1 + eps) * n / ln,
                       opt.max_boards);
      m.note = "sampled sides, m = " + std::to_string(mm);
      return m;
    }
    default: throw error("no such row");
  }
}

struct ConstantsReport {
  std::vector<RowMeasurement> cells;
  bool all_won = true;         // every cell the engine finished was a win
  bool bounded = true;         // per row, the largest n sets no new maximum constant
  std::vector<std::string> notes;
};

// Measured constants for rows 1..7 across the given n. Per row, the running maximum of the
// constant must stop growing: the last n may not exceed what the smaller n already needed.
inline ConstantsReport measure_constants(const std::vector<int>& ns, const MeasureOptions& opt = {}) {
  ConstantsReport rep;
  for (int row = 1; row <= 7; ++row) {
    int running = INT32_MIN;
    for (std::size_t i = 0; i < ns.size(); ++i) {
      auto m = measure_row(row, ns[i], opt);
      if (!m.verified && !m.exceeded) rep.all_won = false;
      if (i + 1 == ns.size() && i > 0 && m.constant > running) {
        rep.bounded = false;
        rep.notes.push_back("row " + std::to_string(row) + ": constant grows at n = " + std::to_string(ns[i]));
      }
      running = std::max(running, m.constant);
      rep.cells.push_back(std::move(m));
    }
  }
  return rep;
}

}  // namespace msgame
