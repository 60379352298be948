#pragma once

// x1 and y1 are defined implicitly by equations of the form
//   w1 = v (w2 + v w1 w2^{2^{s-1}})^{2^{s-1}} + tail(a, b, c).
// Two independent constructions express them in a, b, c, x2, y2, T:
// fixed-point iteration in the quotient ring, and a block-elimination basis.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "kbg/errors.hpp"
#include "kbg/groebner.hpp"
#include "kbg/presentations.hpp"

namespace kbg {

enum class Dependent { x1, y1 };

inline const char* name_of(Dependent d) { return d == Dependent::x1 ? "x1" : "y1"; }
inline const char* partner_of(Dependent d) { return d == Dependent::x1 ? "x2" : "y2"; }
inline const char* relation_of(Dependent d) { return d == Dependent::x1 ? "def_x1" : "def_y1"; }

struct FixedPointResult {
  PolyF2 solution;  // free of x1 and y1
  int iterations = 0;
  bool stabilized = false;
  bool satisfies_definition = false;  // defining relation with the solution substituted lies in the ideal
};

namespace detail {

/// Right-hand side of the defining equation as a function of the candidate for `which`.
/// The defining relation is `which + rhs`, so rhs = relation + which.
inline PolyF2 defining_rhs(Dependent which, const Presentation& p) {
  auto rel = p.relation(relation_of(which)).forget_v();
  return rel + PolyF2::variable(rel.ring(), name_of(which));
}

inline bool free_of_dependents(const PolyF2& f) {
  const auto& vars = f.vars();
  return !f.involves(vars.require("x1")) && !f.involves(vars.require("y1"));
}

}  // namespace detail

/// Least N <= limit with var^N in the ideal.
inline std::optional<unsigned> nilpotency_index(std::string_view var, const ReducedGB& gb, unsigned limit) {
  auto x = PolyF2::variable(gb.ring, var);
  auto power = PolyF2::one(gb.ring);
  for (unsigned n = 1; n <= limit; ++n) {
    power = normal_form(power * x, gb);
    if (power.is_zero()) return n;
  }
  return std::nullopt;
}

namespace detail {

/// Drops every term divisible by one of the given pure powers. Those powers lie in
/// the ideal, so the residue class is unchanged and no x1, y1 is introduced.
inline PolyF2 truncate_by(const PolyF2& f, const std::vector<Monomial>& killers) {
  std::vector<Monomial> kept;
  for (const auto& t : f.terms())
    if (std::none_of(killers.begin(), killers.end(), [&](const Monomial& k) { return k.divides(t); }))
      kept.push_back(t);
  return PolyF2(f.ring(), std::move(kept));
}

}  // namespace detail

/// Iterates w1 <- rhs(w1) from 0 over the six independent generators, truncating
/// by pure powers certified to lie in the ideal. Stops when consecutive iterates
/// have equal normal forms, which makes the iterate a fixed point in the quotient.
inline FixedPointResult solve_fixed_point(Dependent which, const Presentation& p, const ReducedGB& gb) {
  if (p.restricted) throw UsageError("fixed-point solve needs the full presentation");
  auto full = forget_v(p);
  const auto& ring = gb.ring;
  const auto& vars = gb.vars();
  auto rhs = detail::defining_rhs(which, full).in_ring(ring);
  auto relation = full.relation(relation_of(which)).in_ring(ring);

  const unsigned limit = 4U * static_cast<unsigned>(pow2(p.s));
  const unsigned power_search = static_cast<unsigned>(pow2(p.s) * pow2(p.s)) * 4U;
  std::vector<Monomial> killers;
  for (const char* n : {"a", "b", "c", "x2", "y2", "T"})
    if (auto k = nilpotency_index(n, gb, power_search))
      killers.push_back(Monomial::variable(vars.require(n), static_cast<Exponent>(*k)));

  FixedPointResult out{PolyF2::zero(ring)};
  auto current_nf = normal_form(out.solution, gb);
  const std::string var = name_of(which);
  while (out.iterations < static_cast<int>(limit)) {
    ++out.iterations;
    auto next = detail::truncate_by(rhs.substitute({{var, out.solution}}), killers);
    auto next_nf = normal_form(next, gb);
    bool repeat = next_nf == current_nf;
    out.solution = std::move(next);
    current_nf = std::move(next_nf);
    if (repeat) {
      out.stabilized = detail::free_of_dependents(out.solution);
      break;
    }
  }
  out.satisfies_definition = member(relation.substitute({{var, out.solution}}), gb);
  return out;
}

/// Block order eliminating {x1, y1}: x1 > y1 in front, default order on the rest.
inline MonomialOrder elimination_order(const VarTable& vars) {
  std::vector<std::size_t> prec{vars.require("x1"), vars.require("y1")};
  for (const char* n : {"T", "x2", "y2", "a", "b", "c"}) prec.push_back(vars.require(n));
  return MonomialOrder::elimination(std::move(prec), {vars.require("x1"), vars.require("y1")});
}

inline ReducedGB elimination_basis(const Presentation& p, const BuchbergerOptions& options = {}) {
  auto full = forget_v(p);
  return buchberger(full.polys(), elimination_order(full.vars()), options);
}

/// Finds r free of x1, y1 with `which` + r in the ideal, read off the elimination basis.
/// The result lives in the presentation's own ring.
inline PolyF2 eliminate(Dependent which, const Presentation& p, const ReducedGB& elim_gb) {
  auto target = Monomial::variable(elim_gb.vars().require(name_of(which)));
  for (const auto& g : elim_gb.basis) {
    if (!(g.leading() == target)) continue;
    auto tail = g + PolyF2::monomial(g.ring(), target);
    if (!detail::free_of_dependents(tail)) break;
    return tail.in_ring(p.ring);
  }
  throw InternalError(std::string("elimination failed: no basis element of the form ") + name_of(which) +
                      " + (polynomial in a, b, c, x2, y2, T)");
}

inline PolyF2 eliminate(Dependent which, const Presentation& p, const BuchbergerOptions& options = {}) {
  return eliminate(which, p, elimination_basis(p, options));
}

/// The presentation with x1, y1 replaced by their eliminated expressions and
/// the two defining relations dropped, over the six remaining generators.
inline std::vector<PolyF2> substituted_relations(const Presentation& p, const PolyF2& x1_expr, const PolyF2& y1_expr) {
  auto full = forget_v(p);
  auto vars = full.vars().without("x1").without("y1");
  auto ring = make_ring(vars, default_order(vars));
  std::map<std::string, PolyF2> assign{{"x1", x1_expr.in_ring(full.ring)}, {"y1", y1_expr.in_ring(full.ring)}};
  std::vector<PolyF2> out;
  for (const auto& r : full.relations) {
    if (r.name == "def_x1" || r.name == "def_y1") continue;
    auto q = r.poly.substitute(assign);
    if (!q.is_zero()) out.push_back(q.remap(ring));
  }
  return out;
}

}  // namespace kbg
