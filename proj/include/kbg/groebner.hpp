#pragma once

// Buchberger's algorithm over F2, normal forms, and quotient-ring dimension.
// All ideal-theoretic routines work with v specialized to 1.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "kbg/errors.hpp"
#include "kbg/polyring.hpp"

namespace kbg {

/// Reduced Groebner basis, sorted ascending by leading monomial.
struct ReducedGB {
  RingPtr ring;
  std::vector<PolyF2> basis;

  const MonomialOrder& order() const { return ring->order; }
  const VarTable& vars() const { return ring->vars; }

  std::vector<Monomial> leading_monomials() const {
    std::vector<Monomial> out;
    out.reserve(basis.size());
    for (const auto& g : basis) out.push_back(g.leading());
    return out;
  }

  bool operator==(const ReducedGB& other) const { return *ring == *other.ring && basis == other.basis; }
};

namespace detail {

/// Division of `p` by `divisors`: repeatedly cancels the largest reducible term
/// using the first divisor (in list order) whose leading monomial divides it.
inline PolyF2 reduce(const PolyF2& p, std::span<const PolyF2> divisors) {
  const auto& ord = p.order();
  std::vector<Monomial> work = p.terms();
  std::vector<Monomial> rest;
  std::vector<Monomial> merged;
  std::size_t head = 0;
  while (head < work.size()) {
    const Monomial lt = work[head];
    const PolyF2* divisor = nullptr;
    for (const auto& g : divisors) {
      if (g.leading().divides(lt)) {
        divisor = &g;
        break;
      }
    }
    if (!divisor) {
      rest.push_back(lt);
      ++head;
      continue;
    }
    // work[head..] + q * divisor, merged with pairwise cancellation.
    const Monomial q = quotient(lt, divisor->leading());
    const auto& dt = divisor->terms();
    merged.clear();
    merged.reserve(work.size() - head + dt.size());
    std::size_t i = head;
    std::size_t j = 0;
    while (i < work.size() && j < dt.size()) {
      Monomial t = q * dt[j];
      auto c = ord.compare(work[i], t);
      if (c == 0 && work[i].v_exp == t.v_exp) {
        ++i;
        ++j;
      } else if (c > 0 || (c == 0 && work[i].v_exp > t.v_exp)) {
        merged.push_back(work[i++]);
      } else {
        merged.push_back(t);
        ++j;
      }
    }
    merged.insert(merged.end(), work.begin() + static_cast<std::ptrdiff_t>(i), work.end());
    for (; j < dt.size(); ++j) merged.push_back(q * dt[j]);
    std::swap(work, merged);
    head = 0;
  }
  // `rest` was emitted in descending order with no repeats.
  return PolyF2(p.ring(), std::move(rest));
}

inline void require_v_free(const PolyF2& p) {
  for (const auto& t : p.terms())
    if (t.v_exp != 0) throw UsageError("Groebner input must have v exponents forgotten");
}

}  // namespace detail

/// Normal form of `p` modulo the basis (v is specialized to 1 first).
inline PolyF2 normal_form(const PolyF2& p, const ReducedGB& gb) {
  auto q = p.forget_v().in_ring(gb.ring);
  return detail::reduce(q, gb.basis);
}

inline bool member(const PolyF2& p, const ReducedGB& gb) { return normal_form(p, gb).is_zero(); }

struct BuchbergerOptions {
  std::size_t max_basis = 50'000;
  std::size_t max_pending_pairs = 5'000'000;
  std::size_t max_terms = 2'000'000;
  /// When set, S-pairs are processed in a pseudo-random order instead of the normal strategy.
  std::optional<std::uint64_t> schedule_seed;
};

inline PolyF2 s_polynomial(const PolyF2& f, const PolyF2& g) {
  auto l = lcm(f.leading(), g.leading());
  return quotient(l, f.leading()) * f + quotient(l, g.leading()) * g;
}

/// Minimizes and autoreduces a Groebner basis (LTs distinct) into canonical reduced form.
inline std::vector<PolyF2> autoreduce(std::vector<PolyF2> basis, const MonomialOrder& ord) {
  std::sort(basis.begin(), basis.end(),
            [&](const PolyF2& a, const PolyF2& b) { return ord.compare(a.leading(), b.leading()) < 0; });
  std::vector<PolyF2> minimal;
  for (auto& g : basis) {
    bool redundant = std::any_of(minimal.begin(), minimal.end(),
                                 [&](const PolyF2& h) { return h.leading().divides(g.leading()); });
    if (!redundant) minimal.push_back(std::move(g));
  }
  std::vector<PolyF2> reduced;
  reduced.reserve(minimal.size());
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<PolyF2> others;
    others.reserve(minimal.size() - 1);
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    reduced.push_back(detail::reduce(minimal[i], others));
  }
  return reduced;
}

/// Reduced Groebner basis of the ideal generated by `relations` under `order`.
inline ReducedGB buchberger(std::span<const PolyF2> relations, const MonomialOrder& order,
                            const BuchbergerOptions& options = {}) {
  if (relations.empty()) throw UsageError("buchberger: empty relation list");
  auto ring = make_ring(relations.front().vars(), order);
  const auto& ord = ring->order;

  std::vector<PolyF2> basis;
  // pending[j][i] for i < j: the pair (i, j) is still waiting.
  std::vector<std::vector<bool>> pending;

  struct Pair {
    unsigned degree;
    std::uint64_t tiebreak;
    std::size_t i;
    std::size_t j;
  };
  auto later = [](const Pair& a, const Pair& b) {
    if (a.degree != b.degree) return a.degree > b.degree;
    return a.tiebreak > b.tiebreak;
  };
  std::priority_queue<Pair, std::vector<Pair>, decltype(later)> queue(later);
  std::mt19937_64 rng(options.schedule_seed.value_or(0));
  std::uint64_t serial = 0;

  auto is_pending = [&](std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return bool(pending[j][i]);
  };

  auto insert = [&](PolyF2 r) {
    if (r.size() > options.max_terms) throw ResourceError("polynomial exceeds term budget", queue.size());
    if (basis.size() + 1 > options.max_basis) throw ResourceError("basis exceeds size budget", queue.size());
    std::size_t n = basis.size();
    pending.emplace_back(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      unsigned deg = lcm(basis[i].leading(), r.leading()).total_degree();
      std::uint64_t tie = options.schedule_seed ? rng() : serial++;
      queue.push(Pair{deg, tie, i, n});
      pending[n][i] = true;
    }
    basis.push_back(std::move(r));
    if (queue.size() > options.max_pending_pairs) throw ResourceError("pair queue exceeds budget", queue.size());
  };

  for (const auto& f : relations) {
    detail::require_v_free(f);
    auto r = detail::reduce(f.in_ring(ring), basis);
    if (!r.is_zero()) insert(std::move(r));
  }

  while (!queue.empty()) {
    Pair pr = queue.top();
    queue.pop();
    pending[pr.j][pr.i] = false;
    const auto& fi = basis[pr.i].leading();
    const auto& fj = basis[pr.j].leading();
    if (fi.coprime(fj)) continue;
    auto l = lcm(fi, fj);
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (basis[k].leading().divides(l) && !is_pending(pr.i, k) && !is_pending(pr.j, k)) chain = true;
    }
    if (chain) continue;
    auto r = detail::reduce(s_polynomial(basis[pr.i], basis[pr.j]), basis);
    if (!r.is_zero()) insert(std::move(r));
  }

  return ReducedGB{ring, autoreduce(std::move(basis), ord)};
}

inline ReducedGB buchberger(const std::vector<PolyF2>& relations, const MonomialOrder& order,
                            const BuchbergerOptions& options = {}) {
  return buchberger(std::span<const PolyF2>(relations), order, options);
}

/// Monomials outside the leading-term ideal, enumerated degree by degree.
struct Staircase {
  enum class Status { finite, possibly_infinite, indeterminate };
  Status status = Status::indeterminate;
  std::vector<Monomial> monomials;
  unsigned explored_degree = 0;

  bool finite() const noexcept { return status == Status::finite; }
};

inline bool has_pure_powers(const ReducedGB& gb) {
  const auto n = gb.vars().size();
  std::vector<bool> seen(n, false);
  for (const auto& g : gb.basis) {
    const auto& lt = g.leading();
    std::size_t nonzero = 0;
    std::size_t which = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (lt.exps[i]) {
        ++nonzero;
        which = i;
      }
    if (nonzero == 0) return true;  // unit ideal
    if (nonzero == 1) seen[which] = true;
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

inline Staircase staircase(const ReducedGB& gb, unsigned cap) {
  const auto leads = gb.leading_monomials();
  const auto n = gb.vars().size();
  auto standard = [&](const Monomial& m) {
    return std::none_of(leads.begin(), leads.end(), [&](const Monomial& l) { return l.divides(m); });
  };
  Staircase out;
  std::vector<Monomial> level;
  if (standard(Monomial{})) level.push_back(Monomial{});
  unsigned degree = 0;
  while (true) {
    out.monomials.insert(out.monomials.end(), level.begin(), level.end());
    out.explored_degree = degree;
    if (level.empty()) {
      if (!has_pure_powers(gb)) throw InternalError("empty staircase level without pure powers");
      out.status = Staircase::Status::finite;
      return out;
    }
    if (degree == cap) break;
    std::unordered_set<Monomial, MonomialHash> next_set;
    std::vector<Monomial> next;
    for (const auto& m : level) {
      for (std::size_t i = 0; i < n; ++i) {
        Monomial up = m * Monomial::variable(i);
        if (standard(up) && next_set.insert(up).second) next.push_back(up);
      }
    }
    std::sort(next.begin(), next.end(),
              [&](const Monomial& a, const Monomial& b) { return gb.order().compare(a, b) > 0; });
    level = std::move(next);
    ++degree;
  }
  out.status = has_pure_powers(gb) ? Staircase::Status::indeterminate : Staircase::Status::possibly_infinite;
  return out;
}

inline std::size_t dimension(const ReducedGB& gb, unsigned cap) {
  auto st = staircase(gb, cap);
  switch (st.status) {
    case Staircase::Status::finite:
      return st.monomials.size();
    case Staircase::Status::possibly_infinite:
      throw InfiniteQuotientError("quotient ring is not finite-dimensional (a variable has no pure-power leading term)");
    case Staircase::Status::indeterminate:
      break;
  }
  throw IndeterminateError("staircase not certified within degree cap " + std::to_string(cap));
}

/// Finite-dimensional quotients have a pure-power leading term for every variable,
/// which bounds the staircase degree; use that as the cap.
inline std::size_t dimension(const ReducedGB& gb) {
  if (!has_pure_powers(gb)) throw InfiniteQuotientError("quotient ring is not finite-dimensional");
  unsigned cap = 0;
  for (std::size_t i = 0; i < gb.vars().size(); ++i) {
    unsigned best = ~0U;
    for (const auto& g : gb.basis) {
      const auto& lt = g.leading();
      if (lt.total_degree() == lt.exps[i] && lt.exps[i] > 0) best = std::min<unsigned>(best, lt.exps[i]);
    }
    if (best != ~0U) cap += best - 1;
  }
  return dimension(gb, cap + 1);
}

namespace detail {

/// F2 row-echelon accumulator over a fixed set of columns; rows are dense bitsets.
class EchelonF2 {
 public:
  explicit EchelonF2(std::size_t columns) : words_((columns + 63) / 64), pivot_of_(columns, -1) {}

  /// Reduces `row` against stored pivots; stores it if a new pivot appears.
  void insert(std::vector<std::uint64_t> row) {
    std::size_t w = 0;
    while (true) {
      while (w < words_ && row[w] == 0) ++w;
      if (w == words_) return;
      auto col = w * 64 + static_cast<std::size_t>(__builtin_ctzll(row[w]));
      auto p = pivot_of_[col];
      if (p < 0) {
        pivot_of_[col] = static_cast<long>(rows_.size());
        rows_.push_back(std::move(row));
        return;
      }
      const auto& pr = rows_[static_cast<std::size_t>(p)];
      for (std::size_t k = w; k < words_; ++k) row[k] ^= pr[k];
    }
  }

  bool is_pivot(std::size_t column) const { return pivot_of_[column] >= 0; }
  std::size_t words() const noexcept { return words_; }

 private:
  std::size_t words_;
  std::vector<long> pivot_of_;
  std::vector<std::vector<std::uint64_t>> rows_;
};

inline void monomials_up_to(std::size_t nvars, unsigned max_degree, std::vector<Monomial>& out) {
  std::vector<Monomial> level{Monomial{}};
  out.push_back(Monomial{});
  for (unsigned d = 1; d <= max_degree; ++d) {
    std::vector<Monomial> next;
    for (const auto& m : level) {
      // Only raise variables at or after the last nonzero one, so each monomial appears once.
      std::size_t start = 0;
      for (std::size_t i = 0; i < nvars; ++i)
        if (m.exps[i]) start = i;
      for (std::size_t i = start; i < nvars; ++i) next.push_back(m * Monomial::variable(i));
    }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
}

inline std::size_t macaulay_count(std::span<const PolyF2> relations, unsigned bound, unsigned span_degree) {
  const auto& vars = relations.front().vars();
  const auto& ord = relations.front().order();
  std::vector<Monomial> columns;
  monomials_up_to(vars.size(), span_degree, columns);
  std::sort(columns.begin(), columns.end(), [&](const Monomial& a, const Monomial& b) { return ord.compare(a, b) > 0; });
  std::unordered_map<Monomial, std::size_t, MonomialHash> index;
  index.reserve(columns.size());
  for (std::size_t i = 0; i < columns.size(); ++i) index.emplace(columns[i], i);

  EchelonF2 echelon(columns.size());
  std::vector<Monomial> multipliers;
  for (const auto& r : relations) {
    auto f = r.forget_v();
    if (f.is_zero()) continue;
    unsigned deg = 0;
    for (const auto& t : f.terms()) deg = std::max(deg, t.total_degree());
    if (deg > span_degree) continue;
    multipliers.clear();
    monomials_up_to(vars.size(), span_degree - deg, multipliers);
    for (const auto& m : multipliers) {
      std::vector<std::uint64_t> row(echelon.words(), 0);
      for (const auto& t : f.terms()) {
        auto col = index.at(m * t);
        row[col / 64] ^= std::uint64_t{1} << (col % 64);
      }
      echelon.insert(std::move(row));
    }
  }
  std::size_t count = 0;
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i].total_degree() <= bound && !echelon.is_pivot(i)) ++count;
  return count;
}

}  // namespace detail

/// Quotient dimension by linear algebra alone: row-reduce the span of all
/// multiples m*r with deg(m*r) <= bound + slack and count standard monomials of
/// degree <= bound. Needs a degree-compatible order. Throws IndeterminateError
/// when the count changes on raising the bound by one.
inline std::size_t dimension_oracle(std::span<const PolyF2> relations, unsigned degree_bound, unsigned slack = 4) {
  if (relations.empty()) throw UsageError("dimension_oracle: empty relation list");
  if (relations.front().order().kind() != MonomialOrder::Kind::degrevlex)
    throw UsageError("dimension_oracle: requires a degree-compatible order");
  auto lo = detail::macaulay_count(relations, degree_bound, degree_bound + slack);
  auto hi = detail::macaulay_count(relations, degree_bound + 1, degree_bound + 1 + slack);
  if (lo != hi)
    throw IndeterminateError("dimension oracle unstable: " + std::to_string(lo) + " at bound " +
                             std::to_string(degree_bound) + " vs " + std::to_string(hi) + " at bound+1");
  return lo;
}

inline std::size_t dimension_oracle(const std::vector<PolyF2>& relations, unsigned degree_bound, unsigned slack = 4) {
  return dimension_oracle(std::span<const PolyF2>(relations), degree_bound, slack);
}

}  // namespace kbg
