#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <mpfr.h>

#include "order_strategies.hpp"

namespace msgame {

struct QRow {
  int length;
  int q_forall;
  int q_exists;
  int q;
  int r;
  auto operator<=>(const QRow&) const = default;
};

inline QRow q_row(int length) {
  return {length, q_star_forall(length), q_star_exists(length), q_star(length), q_rank(length)};
}

// Published values for lengths 1..127, as ranges of lengths sharing one row.
inline std::vector<QRow> golden_q_table() {
  struct Range {
    int lo, hi, qa, qe, q, r;
  };
  static constexpr std::array<Range, 18> ranges{{
      {1, 1, 1, 2, 1, 1},      {2, 2, 2, 2, 2, 2},     {3, 3, 3, 3, 3, 2},     {4, 4, 3, 3, 3, 3},
      {5, 5, 3, 4, 3, 3},      {6, 7, 4, 4, 4, 3},     {8, 9, 4, 4, 4, 4},     {10, 10, 5, 4, 4, 4},
      {11, 15, 5, 5, 5, 4},    {16, 18, 5, 5, 5, 5},   {19, 21, 5, 6, 5, 5},   {22, 31, 6, 6, 6, 5},
      {32, 37, 6, 6, 6, 6},    {38, 42, 7, 6, 6, 6},   {43, 63, 7, 7, 7, 6},   {64, 75, 7, 7, 7, 7},
      {76, 85, 7, 8, 7, 7},    {86, 127, 8, 8, 8, 7},
  }};
  std::vector<QRow> rows;
  for (const auto& g : ranges)
    for (int l = g.lo; l <= g.hi; ++l) rows.push_back({l, g.qa, g.qe, g.q, g.r});
  return rows;
}

struct QTableDiff {
  QRow expected;
  QRow actual;
};

inline std::vector<QTableDiff> diff_against_golden(int max_length = 127) {
  std::vector<QTableDiff> out;
  for (const auto& g : golden_q_table()) {
    if (g.length > max_length) break;
    QRow a = q_row(g.length);
    if (a != g) out.push_back({g, a});
  }
  return out;
}

// ---- counting lower bound: least k with k + 2^(k log2 k) >= 2^n - 1 ----

using BigInt = boost::multiprecision::cpp_int;

inline BigInt pow_big(const BigInt& base, unsigned e) { return boost::multiprecision::pow(base, e); }

// 2^(k log2 k) is k^k, so the inequality has an exact integer form.
inline bool counting_holds_exact(int n, int k) {
  BigInt lhs = BigInt(k) + pow_big(BigInt(k), static_cast<unsigned>(k));
  BigInt rhs = (BigInt(1) << n) - 1;
  return lhs >= rhs;
}

enum class Certified { True, False, Undecided };

namespace detail {

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace detail

// Interval test of k log2 k >= log2(2^n - 1 - k) at the given precision.
inline Certified counting_holds_interval(int n, int k, mpfr_prec_t prec) {
  if (k >= 1 && BigInt(k) >= (BigInt(1) << n) - 1) return Certified::True;
  using detail::Mpfr;
  Mpfr lo(prec), hi(prec), rlo(prec), rhi(prec);
  // left side: k * log2 k, outward rounded
  mpfr_set_si(lo.get(), k, MPFR_RNDD);
  mpfr_log2(lo.get(), lo.get(), MPFR_RNDD);
  mpfr_mul_si(lo.get(), lo.get(), k, MPFR_RNDD);
  mpfr_set_si(hi.get(), k, MPFR_RNDU);
  mpfr_log2(hi.get(), hi.get(), MPFR_RNDU);
  mpfr_mul_si(hi.get(), hi.get(), k, MPFR_RNDU);
  // right side: log2(2^n - 1 - k)
  mpfr_set_ui_2exp(rlo.get(), 1, n, MPFR_RNDD);
  mpfr_sub_si(rlo.get(), rlo.get(), 1 + k, MPFR_RNDD);
  mpfr_log2(rlo.get(), rlo.get(), MPFR_RNDD);
  mpfr_set_ui_2exp(rhi.get(), 1, n, MPFR_RNDU);
  mpfr_sub_si(rhi.get(), rhi.get(), 1 + k, MPFR_RNDU);
  mpfr_log2(rhi.get(), rhi.get(), MPFR_RNDU);
  if (mpfr_cmp(lo.get(), rhi.get()) >= 0) return Certified::True;
  if (mpfr_cmp(hi.get(), rlo.get()) < 0) return Certified::False;
  return Certified::Undecided;
}

struct CountingCheck {
  bool holds = false;
  mpfr_prec_t precision = 0;  // precision that decided it; 0 when settled exactly
};

inline CountingCheck counting_holds(int n, int k) {
  // Powers of two make k log2 k an integer; equality cases are settled on integers.
  bool power_of_two = k > 0 && (k & (k - 1)) == 0;
  if (power_of_two) return {counting_holds_exact(n, k), 0};
  for (mpfr_prec_t p = 64; p <= 16384; p *= 2) {
    Certified c = counting_holds_interval(n, k, p);
    if (c != Certified::Undecided) return {c == Certified::True, p};
  }
  return {counting_holds_exact(n, k), 0};
}

struct CountingResult {
  int n = 0;
  int k_min = 0;
  bool above_n_over_log = false;  // k_min >= n / log2 n, decided on integers
  bool interval_agrees = true;    // interval route and exact route agree at k_min - 1 and k_min
  mpfr_prec_t max_precision = 0;
};

// k >= n / log2 n  <=>  n^k >= 2^n, for n >= 2
inline bool at_least_n_over_log(int n, int k) {
  return pow_big(BigInt(n), static_cast<unsigned>(k)) >= (BigInt(1) << n);
}

inline CountingResult counting_lower_bound(int n) {
  if (n < 2) throw error("counting bound needs n >= 2");
  CountingResult res;
  res.n = n;
  // The left side is increasing in k; binary search over [1, n].
  int lo = 1, hi = n;
  while (lo < hi) {
    int mid = lo + (hi - lo) / 2;
    CountingCheck c = counting_holds(n, mid);
    res.max_precision = std::max(res.max_precision, c.precision);
    if (c.holds) hi = mid;
    else lo = mid + 1;
  }
  res.k_min = lo;
  res.interval_agrees = counting_holds_exact(n, lo) && (lo == 1 || !counting_holds_exact(n, lo - 1));
  res.above_n_over_log = at_least_n_over_log(n, lo);
  return res;
}

// ---- quantifier budgets for sets of strings ----

enum class SizeClass { One, Bounded, Polynomial, SuperPolynomial };

inline std::string to_string(SizeClass c) {
  switch (c) {
    case SizeClass::One: return "one";
    case SizeClass::Bounded: return "bounded";
    case SizeClass::Polynomial: return "polynomial";
    case SizeClass::SuperPolynomial: return "super-polynomial";
  }
  return "?";
}

struct SizeThresholds {
  double bounded_max = 16;   // sizes up to this count as bounded
  double poly_degree = 3;    // sizes up to n^degree count as polynomial
};

inline SizeClass classify_size(double size, int n, const SizeThresholds& th = {}) {
  if (size <= 1) return SizeClass::One;
  if (size <= th.bounded_max) return SizeClass::Bounded;
  if (size <= std::pow(static_cast<double>(n), th.poly_degree)) return SizeClass::Polynomial;
  return SizeClass::SuperPolynomial;
}

// largest t >= 2 with t^(e t) <= N, or 2 when none exists
inline int bounded_base(double N) {
  int t = 2;
  while (std::pow(t + 1.0, std::exp(1.0) * (t + 1.0)) <= N) ++t;
  return t;
}

struct BudgetRow {
  int row = 0;  // 1..7 in table order
  std::string sides;
  std::string formula;
  double main_term = 0;
  bool applicable = false;
  bool best = false;
};

inline double log_base(double x, double b) { return std::log(x) / std::log(b); }

inline std::vector<BudgetRow> budget_table(int n, double size_a, double size_b, double epsilon = 1.0,
                                           const SizeThresholds& th = {}) {
  if (n < 1) throw error("n must be positive");
  if (size_a > size_b) std::swap(size_a, size_b);
  const double ln = n >= 2 ? std::log2(static_cast<double>(n)) : 0.0;
  const double l3 = n >= 2 ? log_base(n, 3) : 0.0;
  const int t = bounded_base(size_b);
  SizeClass a = classify_size(size_a, n, th);
  SizeClass b = classify_size(size_b, n, th);
  auto poly_like = [](SizeClass c) { return c == SizeClass::Bounded || c == SizeClass::Polynomial; };

  std::vector<BudgetRow> rows{
      {1, "1 vs 1", "log(n) + C", ln},
      {2, "1 vs f(n) bounded", "log(n) + log_t(N) + C, t = " + std::to_string(t),
       ln + (size_b > 1 ? log_base(size_b, t) : 0.0)},
      {3, "1 vs f(n) polynomial", "(1+eps) log(n) + C", (1 + epsilon) * ln},
      {4, "1 vs f(n) super-polynomial", "3 log_3(n) + C", 3 * l3},
      {5, "f(n) vs g(n) polynomial", "(1+eps) log(n) + C", (1 + epsilon) * ln},
      {6, "polynomial vs super-polynomial", "(3+eps) log_3(n) + C", (3 + epsilon) * l3},
      {7, "super-polynomial vs super-polynomial", "(1+eps) n/log(n) + C",
       n >= 2 ? (1 + epsilon) * n / ln : 0.0},
  };
  int best = 0;
  if (a == SizeClass::One) {
    if (b == SizeClass::One) best = 1;
    else if (b == SizeClass::Bounded) best = 2;
    else if (b == SizeClass::Polynomial) best = 3;
    else best = 4;
  } else if (poly_like(a) && poly_like(b)) {
    best = 5;
  } else if (poly_like(a) || poly_like(b)) {
    best = 6;
  } else {
    best = 7;
  }
  for (auto& r : rows) {
    // every bound is valid for a finite instance once its side shapes fit
    switch (r.row) {
      case 1: r.applicable = a == SizeClass::One && b == SizeClass::One; break;
      case 2: case 3: case 4: r.applicable = a == SizeClass::One; break;
      default: r.applicable = true;
    }
    r.best = r.row == best;
  }
  if (n == 1)
    for (auto& r : rows) r.main_term = 0;
  return rows;
}

}  // namespace msgame
