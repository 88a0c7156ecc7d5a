#pragma once

#include <algorithm>
#include <chrono>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "order_strategies.hpp"

namespace msgame {

struct OracleOptions {
  int max_rounds = 6;
  std::size_t max_boards = 64;  // per side, after normalization
  int max_universe = 65;
  std::size_t max_nodes = 20'000'000;
  bool discard = true;
  bool dedup = true;
  bool normalize = true;
};

struct OracleResult {
  std::optional<int> rounds;  // least winning round count, if found within the caps
  int proven_lower = 0;       // Spoiler loses every game shorter than this
  bool exceeded = false;
  std::string exceeded_reason;
  std::size_t nodes_expanded = 0;
  double seconds = 0;

  std::string describe() const {
    if (rounds) return std::to_string(*rounds);
    return "more than " + std::to_string(proven_lower - 1) +
           (exceeded ? " (" + exceeded_reason + ")" : "");
  }
};

namespace detail {

class Searcher {
 public:
  explicit Searcher(const OracleOptions& o) : opt_(o) {}

  // Spoiler wins the k-round game from (L, R); `forced` restricts the first move only.
  bool wins(std::vector<Board> L, std::vector<Board> R, int k, std::optional<Side> forced) {
    prepare(L, k);
    prepare(R, k);
    if (opt_.discard) discard(L, R);
    if (!matching(L, R)) return true;
    if (k == 0) return false;
    std::string key = encode(L, R, k, forced);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (++nodes_ > opt_.max_nodes) throw budget_exceeded{};
    bool result = false;
    for (Side s : {Side::Left, Side::Right}) {
      if (forced && *forced != s) continue;
      if (try_side(L, R, s, k)) {
        result = true;
        break;
      }
    }
    memo_.emplace(std::move(key), result);
    return result;
  }

  std::size_t nodes() const { return nodes_; }

  struct budget_exceeded {};

  void prepare(std::vector<Board>& v, int k) const {
    if (opt_.normalize)
      for (auto& b : v) b = normalize_gaps(b, gap_cap(k));
    if (opt_.dedup) sort_unique(v);
  }

 private:
  static bool matching(const std::vector<Board>& L, const std::vector<Board>& R) {
    if (L.empty() || R.empty()) return false;
    TypeSet lt = types_of(L);
    for (const auto& b : R)
      if (lt.contains(AtomicType::of(b))) return true;
    return false;
  }

  static void discard(std::vector<Board>& L, std::vector<Board>& R) {
    TypeSet lt = types_of(L);
    TypeSet rt = types_of(R);
    std::erase_if(L, [&](const Board& b) { return !rt.contains(AtomicType::of(b)); });
    std::erase_if(R, [&](const Board& b) { return !lt.contains(AtomicType::of(b)); });
  }

  static std::string encode(const std::vector<Board>& L, const std::vector<Board>& R, int k,
                            std::optional<Side> forced) {
    std::string key;
    key.push_back(static_cast<char>(k));
    key.push_back(forced ? static_cast<char>(*forced) + 1 : 0);
    auto put = [&](const std::vector<Board>& v) {
      for (const auto& b : v) {
        key.push_back(static_cast<char>(b.base().vocabulary()));
        auto sz = b.base().size();
        key.append(reinterpret_cast<const char*>(&sz), sizeof sz);
        auto mask = b.base().mask();
        key.append(reinterpret_cast<const char*>(&mask), sizeof mask);
        for (auto p : b.pebbles()) key.append(reinterpret_cast<const char*>(&p), sizeof p);
      }
      key.push_back('|');
    };
    put(L);
    put(R);
    return key;
  }

  bool try_side(const std::vector<Board>& L, const std::vector<Board>& R, Side s, int k) {
    const auto& M = s == Side::Left ? L : R;
    const auto& O = s == Side::Left ? R : L;
    std::vector<Board> other;
    for (const auto& b : O)
      for (int p = b.base().first(); p <= b.base().last(); ++p) other.push_back(b.with_pebble(p));
    prepare(other, k - 1);

    TypeSet ot = types_of(other);

    std::vector<std::vector<Board>> options;
    for (const auto& b : M) {
      std::vector<Board> opts;
      bool free = false;
      for (int p = b.base().first(); p <= b.base().last(); ++p) {
        Board e = b.with_pebble(p);
        if (opt_.normalize) e = normalize_gaps(e, gap_cap(k - 1));
        if (opt_.discard && !ot.contains(AtomicType::of(e))) {
          free = true;
          break;
        }
        opts.push_back(e);
      }
      if (free) continue;
      sort_unique(opts);
      options.push_back(std::move(opts));
    }
    if (options.empty()) return true;
    std::sort(options.begin(), options.end(),
              [](const auto& a, const auto& b) { return a.size() < b.size(); });
    std::vector<Board> chosen;
    return extend(options, 0, chosen, other, s, k);
  }

  bool extend(const std::vector<std::vector<Board>>& options, std::size_t i, std::vector<Board>& chosen,
              const std::vector<Board>& other, Side s, int k) {
    if (i == options.size()) return true;
    for (const auto& e : options[i])
      if (std::find(chosen.begin(), chosen.end(), e) != chosen.end())
        return extend(options, i + 1, chosen, other, s, k);
    for (const auto& e : options[i]) {
      chosen.push_back(e);
      bool ok = s == Side::Left ? wins(chosen, other, k - 1, std::nullopt)
                                : wins(other, chosen, k - 1, std::nullopt);
      // Fewer boards on one side never hurts Spoiler, so a losing partial choice prunes all supersets.
      if (ok && extend(options, i + 1, chosen, other, s, k)) {
        chosen.pop_back();
        return true;
      }
      chosen.pop_back();
    }
    return false;
  }

  OracleOptions opt_;
  std::size_t nodes_ = 0;
  std::unordered_map<std::string, bool> memo_;
};

}  // namespace detail

inline OracleResult min_rounds(const GameState& instance, const OracleOptions& opt = {},
                               std::optional<Quantifier> forced_first = std::nullopt) {
  auto start = std::chrono::steady_clock::now();
  if (instance.round() != 0 || instance.pending()) throw error("oracle needs an unpebbled instance");
  OracleResult res;
  detail::Searcher search(opt);
  std::optional<Side> forced;
  if (forced_first) forced = mover(*forced_first);
  for (int k = 0; k <= opt.max_rounds; ++k) {
    std::vector<Board> L = instance.left();
    std::vector<Board> R = instance.right();
    search.prepare(L, k);
    search.prepare(R, k);
    auto too_big = [&](const std::vector<Board>& v) -> std::optional<std::string> {
      if (v.size() > opt.max_boards) return std::to_string(v.size()) + " boards on one side";
      for (const auto& b : v)
        if (b.base().universe_size() > opt.max_universe)
          return "universe of size " + std::to_string(b.base().universe_size());
      return std::nullopt;
    };
    auto why = too_big(L);
    if (!why) why = too_big(R);
    if (why) {
      res.exceeded = true;
      res.exceeded_reason = "cap at " + std::to_string(k) + " rounds: " + *why;
      break;
    }
    bool won;
    try {
      won = search.wins(L, R, k, forced);
    } catch (const detail::Searcher::budget_exceeded&) {
      res.exceeded = true;
      res.exceeded_reason = "node budget at " + std::to_string(k) + " rounds";
      break;
    }
    if (won) {
      res.rounds = k;
      break;
    }
    res.proven_lower = k + 1;
    if (k == opt.max_rounds) {
      res.exceeded = true;
      res.exceeded_reason = "round cap " + std::to_string(opt.max_rounds);
    }
  }
  res.nodes_expanded = search.nodes();
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

struct WinnabilityResult {
  std::optional<bool> winnable;  // empty when the caps stopped the search
  OracleResult detail;
};

inline WinnabilityResult is_winnable_msl(const MslSpec& spec, const OracleOptions& base = {}) {
  if (spec.length < 1 || spec.rounds < 0) throw error("bad MSL spec");
  OracleOptions opt = base;
  opt.max_rounds = std::min(opt.max_rounds, spec.rounds);
  GameState inst(orders_up_to(spec.length), surrogate_above(spec.length, spec.rounds));
  WinnabilityResult w;
  w.detail = min_rounds(inst, opt, spec.first);
  if (w.detail.rounds) w.winnable = *w.detail.rounds <= spec.rounds;
  else if (w.detail.proven_lower > spec.rounds) w.winnable = false;
  return w;
}

}  // namespace msgame
