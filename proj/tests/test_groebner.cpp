#include "kbg/groebner.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "support/random_poly.hpp"

namespace kbg {
namespace {

RingPtr xy_ring() { return make_ring(VarTable({"x", "y"}, {1, 1}, -1)); }

std::vector<PolyF2> parse_all(std::initializer_list<const char*> texts, const RingPtr& ring) {
  std::vector<PolyF2> out;
  for (auto t : texts) out.push_back(parse_poly(t, ring));
  return out;
}

TEST(NormalForm, Examples) {
  auto r = xy_ring();
  auto gb = buchberger(parse_all({"x^2", "x*y + y^2", "y^3"}, r), r->order);
  EXPECT_TRUE(normal_form(parse_poly("x*y^2", r), gb).is_zero());
  EXPECT_EQ(normal_form(parse_poly("x*y + x", r), gb), parse_poly("y^2 + x", r));
  EXPECT_TRUE(member(parse_poly("x^3 + y^3", r), gb));
  EXPECT_FALSE(member(parse_poly("y^2", r), gb));
}

TEST(NormalForm, ForgetsV) {
  auto r = xy_ring();
  auto gb = buchberger(parse_all({"x^2", "y^2"}, r), r->order);
  EXPECT_TRUE(normal_form(parse_poly("v^3*x^2", r), gb).is_zero());
  EXPECT_EQ(normal_form(parse_poly("v*x*y", r), gb), parse_poly("x*y", r));
}

TEST(Buchberger, Example) {
  auto r = xy_ring();
  auto gb = buchberger(parse_all({"x^2", "x*y + y^2"}, r), r->order);
  // S(x^2, xy + y^2) reduces to y^3.
  // Ascending by leading monomial: xy < x^2 < y^3.
  ASSERT_EQ(gb.basis.size(), 3u);
  EXPECT_EQ(gb.basis[0], parse_poly("x*y + y^2", r));
  EXPECT_EQ(gb.basis[1], parse_poly("x^2", r));
  EXPECT_EQ(gb.basis[2], parse_poly("y^3", r));
  EXPECT_EQ(dimension(gb), 4u);
}

TEST(Buchberger, UnitIdeal) {
  auto r = xy_ring();
  auto gb = buchberger(parse_all({"x + 1", "x"}, r), r->order);
  ASSERT_EQ(gb.basis.size(), 1u);
  EXPECT_TRUE(gb.basis[0].is_one());
  EXPECT_EQ(dimension(gb), 0u);
}

TEST(Buchberger, RejectsV) {
  auto r = xy_ring();
  EXPECT_THROW(buchberger(parse_all({"v*x"}, r), r->order), UsageError);
  EXPECT_THROW(buchberger(std::vector<PolyF2>{}, r->order), UsageError);
}

TEST(Buchberger, BudgetRaisesResourceError) {
  auto r = make_ring(VarTable({"a", "b", "c", "d"}, {1, 1, 1, 1}, -1));
  BuchbergerOptions tight;
  tight.max_basis = 3;
  auto rel = parse_all({"a^2 + b*c", "b^2 + c*d", "c^2 + a*d", "d^3 + a*b"}, r);
  EXPECT_THROW(buchberger(rel, r->order, tight), ResourceError);
}

TEST(Staircase, Examples) {
  auto r = xy_ring();
  auto gb = buchberger(parse_all({"x^2", "x*y + y^2", "y^3"}, r), r->order);
  auto st = staircase(gb, 10);
  EXPECT_TRUE(st.finite());
  EXPECT_EQ(st.monomials.size(), 4u);
  EXPECT_EQ(st.explored_degree, 3u);

  auto open = buchberger(parse_all({"x^2"}, r), r->order);
  EXPECT_EQ(staircase(open, 6).status, Staircase::Status::possibly_infinite);
  EXPECT_THROW(dimension(open, 6), InfiniteQuotientError);
  EXPECT_THROW(dimension(open), InfiniteQuotientError);

  auto deep = buchberger(parse_all({"x^9", "y^9"}, r), r->order);
  EXPECT_EQ(staircase(deep, 4).status, Staircase::Status::indeterminate);
  EXPECT_THROW(dimension(deep, 4), IndeterminateError);
  EXPECT_EQ(dimension(deep), 81u);
}

TEST(Oracle, Examples) {
  auto r = xy_ring();
  EXPECT_EQ(dimension_oracle(parse_all({"x^2", "x*y + y^2", "y^3"}, r), 4), 4u);
  EXPECT_EQ(dimension_oracle(parse_all({"x^3", "y^2"}, r), 4), 6u);
  EXPECT_THROW(dimension_oracle(parse_all({"x^3"}, r), 3), IndeterminateError);
  auto elim = make_ring(r->vars, MonomialOrder::elimination({0, 1}, {0}));
  EXPECT_THROW(dimension_oracle(parse_all({"x^3"}, elim), 3), UsageError);
}

/// Random zero-dimensional ideals: x_i^{d_i} plus noise of lower degree for every
/// variable, then a few arbitrary generators. Standard monomials have degree
/// at most sum (d_i - 1), reported through `bound`.
std::vector<PolyF2> random_ideal(std::mt19937_64& rng, const RingPtr& ring, unsigned* bound = nullptr) {
  std::vector<PolyF2> out;
  std::uniform_int_distribution<int> power(2, 4);
  if (bound) *bound = 0;
  for (std::size_t i = 0; i < ring->vars.size(); ++i) {
    auto d = static_cast<unsigned>(power(rng));
    auto p = PolyF2::variable(ring, ring->vars.name(i), static_cast<Exponent>(d));
    out.push_back(p + testing::random_poly(rng, ring, 3, d - 1));
    if (bound) *bound += d - 1;
  }
  std::uniform_int_distribution<int> extra(0, 3);
  for (int k = extra(rng); k > 0; --k) out.push_back(testing::random_poly(rng, ring, 4, 4));
  return out;
}

RingPtr ring_with(std::size_t n) {
  static const char* names[] = {"p", "q", "r", "s"};
  return make_ring(VarTable({names, names + n}, std::vector<int>(n, 1), -1));
}

TEST(GroebnerProperties, NormalFormIsIdempotentAndLinear) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    auto ring = ring_with(3);
    auto gb = buchberger(random_ideal(rng, ring), ring->order);
    for (int k = 0; k < 10; ++k) {
      auto p = testing::random_poly(rng, ring, 6, 5);
      auto q = testing::random_poly(rng, ring, 6, 5);
      auto np = normal_form(p, gb);
      EXPECT_EQ(normal_form(np, gb), np);
      EXPECT_EQ(normal_form(p + q, gb), np + normal_form(q, gb));
      for (const auto& g : gb.basis) EXPECT_TRUE(member(g * p, gb));
    }
  }
}

TEST(GroebnerProperties, BasisIsReducedAndClosedUnderSPairs) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 25; ++trial) {
    auto ring = ring_with(1 + trial % 4);
    auto gens = random_ideal(rng, ring);
    auto gb = buchberger(gens, ring->order);
    for (const auto& f : gens) EXPECT_TRUE(member(f, gb));
    for (std::size_t i = 0; i < gb.basis.size(); ++i) {
      for (std::size_t j = i + 1; j < gb.basis.size(); ++j)
        EXPECT_TRUE(member(s_polynomial(gb.basis[i], gb.basis[j]), gb));
      // No term of g is divisible by another basis element's leading monomial.
      for (std::size_t k = 0; k < gb.basis.size(); ++k) {
        if (k == i) continue;
        for (const auto& t : gb.basis[i].terms()) EXPECT_FALSE(gb.basis[k].leading().divides(t));
      }
    }
  }
}

TEST(GroebnerProperties, ShuffleAndScheduleDeterminism) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    auto ring = ring_with(3);
    auto gens = random_ideal(rng, ring);
    auto reference = buchberger(gens, ring->order);
    for (int k = 0; k < 5; ++k) {
      std::shuffle(gens.begin(), gens.end(), rng);
      BuchbergerOptions opts;
      opts.schedule_seed = rng();
      EXPECT_EQ(buchberger(gens, ring->order, opts), reference);
      EXPECT_EQ(buchberger(gens, ring->order), reference);
    }
  }
}

TEST(GroebnerProperties, DimensionMatchesOracle) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    auto ring = ring_with(1 + trial % 4);
    unsigned bound = 0;
    auto gens = random_ideal(rng, ring, &bound);
    auto gb = buchberger(gens, ring->order);
    // The x_i^{d_i} generators are already a basis, so span degree bound + 4 reaches
    // every ideal element of degree <= bound.
    EXPECT_EQ(dimension_oracle(gens, bound, 4), dimension(gb)) << "trial " << trial;
  }
}

}  // namespace
}  // namespace kbg
