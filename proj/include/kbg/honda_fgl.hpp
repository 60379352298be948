#pragma once

// Height-s Honda formal group law at p = 2, computed in exact rationals from its
// logarithm sum_i x^{2^{s i}} / 2^i and reduced mod 2.

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kbg/errors.hpp"
#include "kbg/polyring.hpp"

namespace kbg {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Truncated power series in one or two variables with exact rational coefficients.
/// Univariate series use exponent pairs (i, 0). Only nonzero coefficients are stored.
struct RationalSeries {
  unsigned truncation = 0;
  std::map<std::pair<unsigned, unsigned>, Rational> coefficients;

  Rational coefficient(unsigned i, unsigned j = 0) const {
    auto it = coefficients.find({i, j});
    return it == coefficients.end() ? Rational(0) : it->second;
  }

  void add(unsigned i, unsigned j, const Rational& c) {
    if (i + j > truncation || c == 0) return;
    auto& slot = coefficients[{i, j}];
    slot += c;
    if (slot == 0) coefficients.erase({i, j});
  }

  friend RationalSeries operator*(const RationalSeries& p, const RationalSeries& q) {
    RationalSeries out{std::min(p.truncation, q.truncation), {}};
    for (const auto& [e1, c1] : p.coefficients)
      for (const auto& [e2, c2] : q.coefficients) out.add(e1.first + e2.first, e1.second + e2.second, c1 * c2);
    return out;
  }

  friend RationalSeries operator+(RationalSeries p, const RationalSeries& q) {
    for (const auto& [e, c] : q.coefficients) p.add(e.first, e.second, c);
    return p;
  }

  RationalSeries scaled(const Rational& k) const {
    RationalSeries out{truncation, {}};
    for (const auto& [e, c] : coefficients) out.add(e.first, e.second, c * k);
    return out;
  }

  bool operator==(const RationalSeries&) const = default;
};

/// Mod-2 reduction of the law, with v exponents attached so each term has halved degree 1.
struct FglMod2 {
  int s = 1;
  unsigned truncation = 0;
  PolyF2 F;           // over x, y
  PolyF2 two_series;  // over x
};

inline int honda_v_weight(int s) {
  if (s < 1 || s > 30) throw UsageError("height out of range");
  return -((1 << s) - 1);
}

/// Coefficient 1/2^i on x^{2^{s i}}, up to degree N.
inline RationalSeries honda_log(int s, unsigned N) {
  if (s < 1) throw UsageError("height s must be >= 1");
  if (N < 1) throw UsageError("truncation must be >= 1");
  RationalSeries out{N, {}};
  BigInt denom = 1;
  for (BigInt deg = 1; deg <= N; deg <<= s, denom *= 2) out.add(static_cast<unsigned>(deg), 0, Rational(1, denom));
  return out;
}

/// Compositional inverse of the logarithm, solved degree by degree. Not 2-integral.
inline RationalSeries honda_exp(int s, unsigned N) {
  auto log = honda_log(s, N);
  std::vector<Rational> e(N + 1, Rational(0));
  if (N >= 1) e[1] = 1;
  auto as_series = [&]() {
    RationalSeries out{N, {}};
    for (unsigned n = 1; n <= N; ++n) out.add(n, 0, e[n]);
    return out;
  };
  for (unsigned n = 2; n <= N; ++n) {
    // log(E(t)) = t forces [t^n] (e_n t^n + sum_{m >= 2} l_m E^m) = 0; e_n does not enter E^m at t^n.
    auto E = as_series();
    Rational acc = 0;
    RationalSeries power = E;
    for (unsigned m = 2; m <= n; ++m) {
      power = power * E;
      auto l = log.coefficient(m);
      if (l != 0) acc += l * power.coefficient(n);
    }
    e[n] = -acc;
  }
  return as_series();
}

namespace detail {

/// sum_k e_k S^k truncated, for a series S without constant term.
inline RationalSeries compose_exp(const RationalSeries& exp, const RationalSeries& inner) {
  RationalSeries out{inner.truncation, {}};
  RationalSeries power{inner.truncation, {{{0, 0}, Rational(1)}}};
  for (unsigned k = 1; k <= inner.truncation; ++k) {
    power = power * inner;
    if (power.coefficients.empty()) break;
    auto ek = exp.coefficient(k);
    if (ek != 0) out = out + power.scaled(ek);
  }
  return out;
}

inline bool reduce_mod2(const Rational& c, unsigned degree, int s, int* v_exp) {
  if (boost::multiprecision::denominator(c) % 2 == 0)
    throw InternalError("coefficient " + c.str() + " is not 2-integral");
  bool odd = boost::multiprecision::numerator(c) % 2 != 0;
  const int period = (1 << s) - 1;
  if ((static_cast<int>(degree) - 1) % period != 0) {
    if (c != 0) throw InternalError("nonzero coefficient in a degree with no integral v-weight");
    return false;
  }
  *v_exp = (static_cast<int>(degree) - 1) / period;
  return odd;
}

inline RationalSeries bivariate_log_sum(int s, unsigned N) {
  auto log = honda_log(s, N);
  RationalSeries sum{N, {}};
  for (const auto& [e, c] : log.coefficients) {
    sum.add(e.first, 0, c);
    sum.add(0, e.first, c);
  }
  return sum;
}

}  // namespace detail

/// F(x, y) = exp(log x + log y) in exact rationals, truncated at total degree N.
inline RationalSeries fgl_rational(int s, unsigned N) {
  if (N < 2) throw UsageError("FGL truncation must be >= 2");
  return detail::compose_exp(honda_exp(s, N), detail::bivariate_log_sum(s, N));
}

/// [2](x) = exp(2 log x) in exact rationals.
inline RationalSeries two_series_rational(int s, unsigned N) {
  return detail::compose_exp(honda_exp(s, N), honda_log(s, N).scaled(2));
}

inline RingPtr fgl_ring(int s, std::vector<std::string> names) {
  std::vector<int> degrees(names.size(), 1);
  return make_ring(VarTable(std::move(names), std::move(degrees), honda_v_weight(s)));
}

/// Reduces a rational series mod 2 into a polynomial over `ring` (variables x, y in order).
inline PolyF2 reduce_series_mod2(const RationalSeries& series, int s, const RingPtr& ring) {
  std::vector<Monomial> terms;
  for (const auto& [e, c] : series.coefficients) {
    int v_exp = 0;
    if (!detail::reduce_mod2(c, e.first + e.second, s, &v_exp)) continue;
    Monomial m;
    m.exps[0] = static_cast<Exponent>(e.first);
    if (e.second) {
      if (ring->vars.size() < 2) throw InternalError("bivariate term in a univariate series");
      m.exps[1] = static_cast<Exponent>(e.second);
    }
    m.v_exp = v_exp;
    terms.push_back(m);
  }
  return PolyF2(ring, std::move(terms));
}

inline PolyF2 two_series(int s, unsigned N) {
  if (N < static_cast<unsigned>(1 << s)) throw UsageError("two_series needs truncation >= 2^s");
  return reduce_series_mod2(two_series_rational(s, N), s, fgl_ring(s, {"x"}));
}

inline FglMod2 fgl(int s, unsigned N) {
  return FglMod2{s, N, reduce_series_mod2(fgl_rational(s, N), s, fgl_ring(s, {"x", "y"})),
                 reduce_series_mod2(two_series_rational(s, N), s, fgl_ring(s, {"x"}))};
}

namespace detail {

inline PolyF2 truncate_degree(const PolyF2& p, unsigned N) {
  std::vector<Monomial> kept;
  for (const auto& t : p.terms())
    if (t.total_degree() <= N) kept.push_back(t);
  return PolyF2(p.ring(), std::move(kept));
}

inline PolyF2 mul_truncated(const PolyF2& p, const PolyF2& q, unsigned N) {
  std::vector<Monomial> all;
  for (const auto& a : p.terms())
    for (const auto& b : q.terms())
      if (a.total_degree() + b.total_degree() <= N) all.push_back(a * b);
  return PolyF2(p.ring(), std::move(all));
}

/// F(U, W) truncated at total degree N, with F over (x, y) and U, W over a common ring.
inline PolyF2 compose(const PolyF2& F, const PolyF2& U, const PolyF2& W, unsigned N) {
  const auto& ring = U.ring();
  std::vector<PolyF2> upow{PolyF2::one(ring)};
  std::vector<PolyF2> wpow{PolyF2::one(ring)};
  PolyF2 out = PolyF2::zero(ring);
  for (const auto& t : F.terms()) {
    while (upow.size() <= t.exps[0]) upow.push_back(mul_truncated(upow.back(), U, N));
    while (wpow.size() <= t.exps[1]) wpow.push_back(mul_truncated(wpow.back(), W, N));
    Monomial v;
    v.v_exp = t.v_exp;
    out += v * mul_truncated(upow[t.exps[0]], wpow[t.exps[1]], N);
  }
  return out;
}

}  // namespace detail

/// F(F(x, y), z) = F(x, F(y, z)) mod 2, truncated at total degree N.
inline bool associativity_check(int s, unsigned N) {
  if (N < 3) throw UsageError("associativity check needs truncation >= 3");
  auto law = fgl(s, N).F;
  auto ring = fgl_ring(s, {"x", "y", "z"});
  auto x = PolyF2::variable(ring, "x");
  auto y = PolyF2::variable(ring, "y");
  auto z = PolyF2::variable(ring, "z");
  auto fxy = detail::compose(law, x, y, N);
  auto fyz = detail::compose(law, y, z, N);
  return detail::compose(law, fxy, z, N) == detail::compose(law, x, fyz, N);
}

inline bool is_symmetric(const PolyF2& F) {
  std::vector<Monomial> swapped;
  for (auto t : F.terms()) {
    std::swap(t.exps[0], t.exps[1]);
    swapped.push_back(t);
  }
  return PolyF2(F.ring(), std::move(swapped)) == F;
}

/// F(x, 0) = x and F(0, y) = y.
inline bool is_unital(const PolyF2& F) {
  auto zero = PolyF2::zero(F.ring());
  auto x = PolyF2::variable(F.ring(), "x");
  auto y = PolyF2::variable(F.ring(), "y");
  return F.substitute({{"y", zero}}) == x && F.substitute({{"x", zero}}) == y;
}

}  // namespace kbg
