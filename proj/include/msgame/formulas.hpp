#pragma once

#include <cctype>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "game.hpp"

namespace msgame {

// Term ids: -1 is min, -2 is max, k >= 0 is the variable bound by quantifier k (x{k+1}).
inline constexpr int kMinTerm = -1;
inline constexpr int kMaxTerm = -2;

enum class Op : std::uint8_t { True, False, Less, Equal, Pred, Not, And, Or };

struct FormulaNode {
  Op op;
  int a = 0;
  int b = 0;
  std::vector<int> kids;
};

enum class Tri : std::uint8_t { False, True, Unknown };

// Prenex sentence: quantifier prefix over x1..xk, then a quantifier-free matrix.
class Formula {
 public:
  Pattern prefix;
  std::vector<FormulaNode> nodes;
  int root = -1;

  int rank() const { return static_cast<int>(prefix.size()); }

  int add(FormulaNode n) {
    nodes.push_back(std::move(n));
    return static_cast<int>(nodes.size()) - 1;
  }
  int constant(bool v) { return add({v ? Op::True : Op::False, 0, 0, {}}); }
  int less(int a, int b) { return add({Op::Less, a, b, {}}); }
  int equal(int a, int b) { return add({Op::Equal, a, b, {}}); }
  int pred(int a) { return add({Op::Pred, a, 0, {}}); }
  int negate(int k) { return add({Op::Not, 0, 0, {k}}); }
  int conj(std::vector<int> kids) {
    if (kids.size() == 1) return kids[0];
    return add({Op::And, 0, 0, std::move(kids)});
  }
  int disj(std::vector<int> kids) {
    if (kids.size() == 1) return kids[0];
    return add({Op::Or, 0, 0, std::move(kids)});
  }

  // Kleene evaluation with the first `assigned` variables bound to positions on `b`.
  Tri eval(const Board& b, int assigned) const { return eval(root, b, assigned); }

  Tri eval(int id, const Board& b, int assigned) const {
    const FormulaNode& n = nodes[id];
    auto val = [&](int term) {
      if (term == kMinTerm) return b.base().first();
      if (term == kMaxTerm) return b.base().last();
      return b.pebble(term + 1);
    };
    auto known = [&](int term) { return term < 0 || term < assigned; };
    switch (n.op) {
      case Op::True: return Tri::True;
      case Op::False: return Tri::False;
      case Op::Less:
        if (!known(n.a) || !known(n.b)) return Tri::Unknown;
        return val(n.a) < val(n.b) ? Tri::True : Tri::False;
      case Op::Equal:
        if (!known(n.a) || !known(n.b)) return Tri::Unknown;
        return val(n.a) == val(n.b) ? Tri::True : Tri::False;
      case Op::Pred:
        if (!known(n.a)) return Tri::Unknown;
        return b.base().bit(val(n.a)) ? Tri::True : Tri::False;
      case Op::Not: {
        Tri v = eval(n.kids[0], b, assigned);
        return v == Tri::Unknown ? v : (v == Tri::True ? Tri::False : Tri::True);
      }
      case Op::And: {
        Tri out = Tri::True;
        for (int k : n.kids) {
          Tri v = eval(k, b, assigned);
          if (v == Tri::False) return v;
          if (v == Tri::Unknown) out = v;
        }
        return out;
      }
      case Op::Or: {
        Tri out = Tri::False;
        for (int k : n.kids) {
          Tri v = eval(k, b, assigned);
          if (v == Tri::True) return v;
          if (v == Tri::Unknown) out = v;
        }
        return out;
      }
    }
    return Tri::Unknown;
  }

  std::string to_string() const {
    std::string out;
    for (int i = 0; i < rank(); ++i) {
      out.push_back(to_char(prefix[i]));
      out += " x" + std::to_string(i + 1) + " . ";
    }
    out += render(root, rank() > 0 ? 2 : 0);
    return out;
  }

  static std::string term_name(int t) {
    if (t == kMinTerm) return "min";
    if (t == kMaxTerm) return "max";
    return "x" + std::to_string(t + 1);
  }

  bool same_as(const Formula& o) const { return prefix == o.prefix && equal_nodes(root, o, o.root); }

 private:
  // Precedence: 0 or, 1 and, 2 unary.
  std::string render(int id, int ctx) const {
    const FormulaNode& n = nodes[id];
    switch (n.op) {
      case Op::True: return "true";
      case Op::False: return "false";
      case Op::Less: return term_name(n.a) + " < " + term_name(n.b);
      case Op::Equal: return term_name(n.a) + " = " + term_name(n.b);
      case Op::Pred: return "S(" + term_name(n.a) + ")";
      case Op::Not: return "!" + render(n.kids[0], 2);
      case Op::And:
      case Op::Or: {
        const bool is_and = n.op == Op::And;
        if (n.kids.empty()) return is_and ? "true" : "false";
        const int prec = is_and ? 1 : 0;
        std::string s;
        for (std::size_t i = 0; i < n.kids.size(); ++i) {
          if (i) s += is_and ? " & " : " | ";
          s += render(n.kids[i], prec + 1);
        }
        return ctx > prec ? "(" + s + ")" : s;
      }
    }
    return "";
  }

  bool equal_nodes(int x, const Formula& o, int y) const {
    const auto& a = nodes[x];
    const auto& b = o.nodes[y];
    if (a.op != b.op || a.a != b.a || a.b != b.b || a.kids.size() != b.kids.size()) return false;
    for (std::size_t i = 0; i < a.kids.size(); ++i)
      if (!equal_nodes(a.kids[i], o, b.kids[i])) return false;
    return true;
  }
};

class ParseError : public error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : error("offset " + std::to_string(offset) + ": " + what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

namespace detail {

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view s) : s_(s) {}

  Formula parse() {
    skip();
    while (pos_ < s_.size() && (s_[pos_] == 'E' || s_[pos_] == 'A') && next_is_space_then_var()) {
      Quantifier q = s_[pos_] == 'E' ? Quantifier::Exists : Quantifier::Forall;
      ++pos_;
      skip();
      std::size_t at = pos_;
      std::string name = ident();
      if (name.size() < 2 || name[0] != 'x') throw ParseError(at, "expected a variable name");
      for (auto& v : vars_)
        if (v == name) throw ParseError(at, "variable " + name + " bound twice");
      vars_.push_back(name);
      f_.prefix.push_back(q);
      skip();
      expect('.');
      skip();
    }
    f_.root = disjunction();
    skip();
    if (pos_ != s_.size()) throw ParseError(pos_, "unexpected trailing input");
    return std::move(f_);
  }

 private:
  bool next_is_space_then_var() const {
    std::size_t p = pos_ + 1;
    if (p >= s_.size() || !std::isspace(static_cast<unsigned char>(s_[p]))) return false;
    while (p < s_.size() && std::isspace(static_cast<unsigned char>(s_[p]))) ++p;
    return p < s_.size() && s_[p] == 'x';
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != c) throw ParseError(pos_, std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string ident() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  int disjunction() {
    std::vector<int> kids{conjunction()};
    while (true) {
      skip();
      if (pos_ < s_.size() && s_[pos_] == '|') {
        ++pos_;
        kids.push_back(conjunction());
      } else {
        break;
      }
    }
    return kids.size() == 1 ? kids[0] : f_.disj(std::move(kids));
  }

  int conjunction() {
    std::vector<int> kids{unary()};
    while (true) {
      skip();
      if (pos_ < s_.size() && s_[pos_] == '&') {
        ++pos_;
        kids.push_back(unary());
      } else {
        break;
      }
    }
    return kids.size() == 1 ? kids[0] : f_.conj(std::move(kids));
  }

  int unary() {
    skip();
    if (pos_ >= s_.size()) throw ParseError(pos_, "unexpected end of input");
    if (s_[pos_] == '!') {
      ++pos_;
      return f_.negate(unary());
    }
    if (s_[pos_] == '(') {
      ++pos_;
      int k = disjunction();
      expect(')');
      return k;
    }
    std::size_t at = pos_;
    std::string word = ident();
    if (word == "true") return f_.constant(true);
    if (word == "false") return f_.constant(false);
    if (word == "S") {
      expect('(');
      skip();
      int t = term();
      expect(')');
      return f_.pred(t);
    }
    if (word.empty()) throw ParseError(at, "expected an atom");
    pos_ = at;
    int a = term();
    skip();
    if (pos_ >= s_.size()) throw ParseError(pos_, "expected '<' or '='");
    char op = s_[pos_];
    if (op != '<' && op != '=') throw ParseError(pos_, "expected '<' or '='");
    ++pos_;
    skip();
    int b = term();
    return op == '<' ? f_.less(a, b) : f_.equal(a, b);
  }

  int term() {
    std::size_t at = pos_;
    std::string name = ident();
    if (name == "min") return kMinTerm;
    if (name == "max") return kMaxTerm;
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return static_cast<int>(i);
    if (name.empty()) throw ParseError(at, "expected a term");
    throw ParseError(at, "unbound variable " + name);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::vector<std::string> vars_;
  Formula f_;
};

}  // namespace detail

inline Formula parse_formula(std::string_view text) { return detail::FormulaParser(text).parse(); }

// Tarskian evaluation. Each level first tries the matrix with the bound prefix and stops when the
// value no longer depends on the unbound variables. Order boards are memoized after capping gaps.
class ModelChecker {
 public:
  explicit ModelChecker(Formula f, bool memo = true) : f_(std::move(f)), memo_(memo) {
    const auto& r = f_.nodes[f_.root];
    std::vector<int> tops = r.op == Op::Or ? r.kids : std::vector<int>{f_.root};
    for (int k : tops) {
      auto d = compile(k);
      if (!d) {
        generic_ = true;
        break;
      }
      dnf_.push_back(std::move(*d));
    }
    if (generic_) dnf_.clear();
    for (std::size_t i = 0; i < (generic_ ? tops.size() : dnf_.size()); ++i)
      top_.push_back(generic_ ? tops[i] : static_cast<int>(i));
  }

  const Formula& formula() const { return f_; }

  bool holds(const Board& b) const {
    if (b.pebble_count() > f_.rank()) throw error("more pebbles than quantifiers");
    std::lock_guard lock(mu_);
    return eval(b, top_, 0);
  }

  // First position p with holds(b + p) == want, if any.
  std::optional<int> witness(const Board& b, bool want) const {
    if (b.pebble_count() >= f_.rank()) throw error("no quantifier left to witness");
    std::lock_guard lock(mu_);
    const int level = b.pebble_count();
    std::vector<int> open;
    for (int k : top_) {
      Tri v = eval_disjunct(k, b, level, 0);
      if (v == Tri::True) return want ? std::optional<int>(b.base().first()) : std::nullopt;
      if (v == Tri::Unknown) open.push_back(k);
    }
    if (open.empty()) return want ? std::nullopt : std::optional<int>(b.base().first());
    for (int p = b.base().first(); p <= b.base().last(); ++p)
      if (eval(b.with_pebble(p), open, level + 1) == want) return p;
    return std::nullopt;
  }

  std::size_t nodes_visited() const { return visited_; }

 private:
  struct Literal {
    Op op;
    int a;
    int b;
    bool negated;
  };
  // Literals grouped by the number of variables that must be bound to decide them.
  struct Disjunct {
    std::vector<std::vector<Literal>> by_level;
  };

  static int need(int term) { return term < 0 ? 0 : term + 1; }

  std::optional<Disjunct> compile(int id) const {
    const auto& n = f_.nodes[id];
    std::vector<int> parts = n.op == Op::And ? n.kids : std::vector<int>{id};
    Disjunct d;
    d.by_level.resize(static_cast<std::size_t>(f_.rank()) + 1);
    for (int k : parts) {
      const FormulaNode* atom = &f_.nodes[k];
      bool neg = false;
      if (atom->op == Op::Not) {
        atom = &f_.nodes[atom->kids[0]];
        neg = true;
      }
      int lvl = 0;
      switch (atom->op) {
        case Op::Less:
        case Op::Equal: lvl = std::max(need(atom->a), need(atom->b)); break;
        case Op::Pred: lvl = need(atom->a); break;
        case Op::True:
        case Op::False: break;
        default: return std::nullopt;
      }
      if (lvl > f_.rank()) return std::nullopt;
      d.by_level[lvl].push_back({atom->op, atom->a, atom->b, neg});
    }
    return d;
  }

  static bool literal(const Literal& l, const Board& b) {
    auto val = [&](int t) {
      return t == kMinTerm ? b.base().first() : t == kMaxTerm ? b.base().last() : b.pebble(t + 1);
    };
    bool v = false;
    switch (l.op) {
      case Op::Less: v = val(l.a) < val(l.b); break;
      case Op::Equal: v = val(l.a) == val(l.b); break;
      case Op::Pred: v = b.base().bit(val(l.a)); break;
      case Op::True: v = true; break;
      default: break;
    }
    return v != l.negated;
  }

  // Value of disjunct k given that its literals below `from` already hold.
  Tri eval_disjunct(int k, const Board& b, int level, int from) const {
    if (generic_) return f_.eval(k, b, level);
    const auto& d = dnf_[k];
    for (int l = from; l <= level; ++l)
      for (const auto& lit : d.by_level[l])
        if (!literal(lit, b)) return Tri::False;
    for (std::size_t l = static_cast<std::size_t>(level) + 1; l < d.by_level.size(); ++l)
      if (!d.by_level[l].empty()) return Tri::Unknown;
    return Tri::True;
  }

  // The matrix is read as a disjunction; only disjuncts still undetermined are passed down.
  bool eval(const Board& raw, const std::vector<int>& alive, int from) const {
    ++visited_;
    const int level = raw.pebble_count();
    std::vector<int> open;
    for (int k : alive) {
      Tri v = eval_disjunct(k, raw, level, from);
      if (v == Tri::True) return true;
      if (v == Tri::Unknown) open.push_back(k);
    }
    if (open.empty()) return false;
    if (level >= f_.rank()) throw error("matrix undetermined under a full assignment");
    const bool use_memo = memo_ && raw.base().is_order();
    Board b = use_memo ? normalize_gaps(raw, gap_cap(f_.rank() - level)) : raw;
    if (use_memo) {
      auto it = cache_.find(b);
      if (it != cache_.end()) return it->second;
    }
    const bool exists = f_.prefix[level] == Quantifier::Exists;
    bool result = !exists;
    for (int p = b.base().first(); p <= b.base().last(); ++p) {
      if (eval(b.with_pebble(p), open, level + 1) == exists) {
        result = exists;
        break;
      }
    }
    if (use_memo) cache_.emplace(b, result);
    return result;
  }

  Formula f_;
  bool memo_;
  bool generic_ = false;
  std::vector<Disjunct> dnf_;
  std::vector<int> top_;
  mutable std::mutex mu_;
  mutable std::unordered_map<Board, bool> cache_;
  mutable std::size_t visited_ = 0;
};

inline bool model_check(const Formula& f, const Board& b) { return ModelChecker(f).holds(b); }

// Incremental description of an atomic type: constants, then each variable relative to the
// elements named before it.
inline int describe_type(Formula& f, const AtomicType& t) {
  std::vector<int> lits;
  const bool strings = t.is_string();
  auto slit = [&](int term, int index) {
    int p = f.pred(term);
    lits.push_back(t.block_bit(t.rank(index)) ? p : f.negate(p));
  };
  if (t.rank(0) == t.rank(1)) {
    lits.push_back(f.equal(kMinTerm, kMaxTerm));
  } else {
    lits.push_back(f.less(kMinTerm, kMaxTerm));
  }
  if (strings) {
    slit(kMinTerm, 0);
    if (t.rank(0) != t.rank(1)) slit(kMaxTerm, 1);
  }
  auto term_of = [](int index) { return index == 0 ? kMinTerm : index == 1 ? kMaxTerm : index - 2; };
  for (int i = 2; i < t.element_count(); ++i) {
    const int r = t.rank(i);
    int same = -1, below = -1, above = -1;
    for (int j = 0; j < i; ++j) {
      int rj = t.rank(j);
      if (rj == r) {
        if (same < 0) same = j;
      } else if (rj < r) {
        if (below < 0 || rj > t.rank(below)) below = j;
      } else {
        if (above < 0 || rj < t.rank(above)) above = j;
      }
    }
    const int x = term_of(i);
    if (same >= 0) {
      lits.push_back(f.equal(x, term_of(same)));
      continue;
    }
    if (below >= 0) lits.push_back(f.less(term_of(below), x));
    if (above >= 0) lits.push_back(f.less(x, term_of(above)));
    if (strings) slit(x, i);
  }
  return f.conj(std::move(lits));
}

// Disjunction over every time t of the left-only types discarded at t.
inline Formula synthesize(const Transcript& tr) {
  if (!tr.won) throw error("transcript is not a Spoiler win");
  Formula f;
  f.prefix = tr.pattern;
  std::vector<int> disjuncts;
  for (const auto& rec : tr.rounds) {
    std::vector<AtomicType> types = rec.left_only;
    std::sort(types.begin(), types.end());
    for (const auto& t : types) disjuncts.push_back(describe_type(f, t));
  }
  f.root = disjuncts.empty() ? f.constant(false) : f.disj(std::move(disjuncts));
  return f;
}

struct ModelCheckReport {
  bool ok = true;
  std::size_t left_failures = 0;
  std::size_t right_failures = 0;
};

inline ModelCheckReport check_separation(const ModelChecker& mc, const std::vector<Board>& left,
                                         const std::vector<Board>& right) {
  ModelCheckReport r;
  for (const auto& b : left)
    if (!mc.holds(b)) ++r.left_failures;
  for (const auto& b : right)
    if (mc.holds(b)) ++r.right_failures;
  r.ok = r.left_failures == 0 && r.right_failures == 0;
  return r;
}

inline ModelCheckReport check_separation(const Formula& f, const std::vector<Board>& left,
                                         const std::vector<Board>& right) {
  return check_separation(ModelChecker(f), left, right);
}

// Spoiler reads its moves off the sentence: witnesses on the left, counter-witnesses on the right.
class FormulaPlayer final : public StrategyPlayer {
 public:
  explicit FormulaPlayer(std::shared_ptr<const ModelChecker> mc) : mc_(std::move(mc)) {}
  Pattern pattern() const override { return mc_->formula().prefix; }
  int place(const Board& b, Side side, int) const override {
    return mc_->witness(b, side == Side::Left).value_or(b.base().first());
  }

 private:
  std::shared_ptr<const ModelChecker> mc_;
};

inline PlayerPtr spoiler_from_formula(Formula f) {
  return std::make_shared<FormulaPlayer>(std::make_shared<const ModelChecker>(std::move(f)));
}

inline PlayerPtr spoiler_from_formula(std::shared_ptr<const ModelChecker> mc) {
  return std::make_shared<FormulaPlayer>(std::move(mc));
}

// Checks up front that the sentence holds on every left board and fails on every right board.
inline PlayerPtr spoiler_from_formula(std::shared_ptr<const ModelChecker> mc, const GameState& instance) {
  auto rep = check_separation(*mc, instance.left(), instance.right());
  if (!rep.ok)
    throw error("sentence does not separate the instance (" + std::to_string(rep.left_failures) +
                " left boards fail, " + std::to_string(rep.right_failures) + " right boards satisfy it)");
  return spoiler_from_formula(std::move(mc));
}

inline PlayerPtr spoiler_from_formula(Formula f, const GameState& instance) {
  return spoiler_from_formula(std::make_shared<const ModelChecker>(std::move(f)), instance);
}

}  // namespace msgame
