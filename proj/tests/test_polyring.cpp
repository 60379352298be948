#include "kbg/polyring.hpp"

#include <gtest/gtest.h>

#include <random>

#include "support/random_poly.hpp"

namespace kbg {
namespace {

RingPtr abc_ring() { return make_ring(VarTable({"a", "b", "c"}, {1, 1, 1}, -1)); }
RingPtr xy_ring() { return make_ring(VarTable({"x", "y"}, {1, 1}, -1)); }

PolyF2 P(const char* text, const RingPtr& ring) { return parse_poly(text, ring); }

int sign(std::strong_ordering c) { return c < 0 ? -1 : (c > 0 ? 1 : 0); }

TEST(VarTable, RejectsBadNames) {
  EXPECT_THROW(VarTable({"a", "a"}, {1, 1}, 0), UsageError);
  EXPECT_THROW(VarTable({"1a"}, {1}, 0), UsageError);
  EXPECT_THROW(VarTable({"v"}, {1}, 0), UsageError);
  EXPECT_THROW(VarTable({"a"}, {0}, 0), UsageError);
  EXPECT_THROW(VarTable({"a", "b"}, {1}, 0), UsageError);
  EXPECT_NO_THROW(VarTable({"_x9", "T"}, {1, 2}, -3));
}

TEST(Add, CharacteristicTwo) {
  auto r = abc_ring();
  auto p = P("a^2*b + c + 1", r);
  EXPECT_TRUE((p + p).is_zero());
  EXPECT_EQ(p + PolyF2::zero(r), p);
  EXPECT_EQ(P("a + b", r) + P("b + c", r), P("a + c", r));
}

TEST(Add, MismatchedRingsIsUsageError) {
  EXPECT_THROW(P("a", abc_ring()) + P("x", xy_ring()), UsageError);
}

TEST(Mul, Examples) {
  auto r = xy_ring();
  auto s = P("x + y", r);
  EXPECT_EQ(s * s, P("x^2 + y^2", r));
  EXPECT_EQ(s * PolyF2::one(r), s);
  auto ab = abc_ring();
  auto t = P("a + b", ab);
  EXPECT_EQ(t * t * t, P("a^3 + a^2*b + a*b^2 + b^3", ab));
}

TEST(Mul, ExponentOverflowIsFatal) {
  auto r = xy_ring();
  auto big = PolyF2::variable(r, "x", 40000);
  EXPECT_THROW(big * big, ArithmeticOverflow);
}

TEST(Parse, Examples) {
  auto vars = VarTable({"a", "b", "c", "T"}, {1, 1, 1, 2}, -1);
  auto r = make_ring(vars);
  auto ct = P("c*T", r);
  ASSERT_EQ(ct.size(), 1u);
  EXPECT_EQ(ct.leading(), Monomial::variable(2) * Monomial::variable(3));
  EXPECT_TRUE(P("0", r).is_zero());
  auto two = P("v^-1*a^3 + b", r);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two.terms()[0].v_exp, -1);
  EXPECT_EQ(two.terms()[0].exps[0], 3);
  EXPECT_EQ(two.terms()[1].v_exp, 0);
  EXPECT_EQ(P("  a *b+  b*a ", r), PolyF2::zero(r));
}

TEST(Parse, ErrorsCarryPosition) {
  auto r = abc_ring();
  EXPECT_THROW(P("", r), ParseError);
  EXPECT_THROW(P("   ", r), ParseError);
  EXPECT_THROW(P("a^", r), ParseError);
  EXPECT_THROW(P("a^-2", r), ParseError);
  EXPECT_THROW(P("a + ", r), ParseError);
  EXPECT_THROW(P("a b", r), ParseError);
  try {
    P("a + zz", r);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
}

TEST(Print, DescendingAndGrammarConformant) {
  auto r = abc_ring();
  EXPECT_EQ(P("1 + c + a^2", r).str(), "a^2 + c + 1");
  EXPECT_EQ(P("v^2*a*b", r).str(), "v^2*a*b");
  EXPECT_EQ(PolyF2::zero(r).str(), "0");
}

TEST(Compare, Examples) {
  auto ord = MonomialOrder::degrevlex({0, 1});
  auto x2 = Monomial::variable(0, 2);
  auto xy = Monomial::variable(0) * Monomial::variable(1);
  EXPECT_EQ(sign(ord.compare(x2, xy)), 1);
  EXPECT_EQ(sign(ord.compare(xy, xy)), 0);
  auto elim = MonomialOrder::elimination({0, 1}, {0});
  EXPECT_EQ(sign(elim.compare(Monomial::variable(0), Monomial::variable(1, 3))), 1);
  // Degrevlex: ties broken by the last variable, smaller exponent wins.
  auto ord3 = MonomialOrder::degrevlex({0, 1, 2});
  auto a_c = Monomial::variable(0) * Monomial::variable(2);
  auto b2 = Monomial::variable(1, 2);
  EXPECT_EQ(sign(ord3.compare(b2, a_c)), 1);
  // Precedence permutes which variable counts as last.
  auto rev = MonomialOrder::degrevlex({2, 1, 0});
  EXPECT_EQ(sign(rev.compare(Monomial::variable(2), Monomial::variable(0))), 1);
}

TEST(Compare, IgnoresV) {
  auto ord = MonomialOrder::degrevlex({0, 1});
  Monomial a = Monomial::variable(0);
  Monomial b = a;
  b.v_exp = 5;
  EXPECT_EQ(sign(ord.compare(a, b)), 0);
}

TEST(Compare, SpecRoundTrip) {
  VarTable vars({"x1", "y1", "T"}, {1, 1, 2}, -1);
  auto ord = MonomialOrder::elimination({0, 1, 2}, {0, 1});
  EXPECT_EQ(ord.spec(vars), "elim:x1,y1|T");
  EXPECT_EQ(MonomialOrder::from_spec(ord.spec(vars), vars), ord);
  auto d = MonomialOrder::degrevlex({2, 0, 1});
  EXPECT_EQ(MonomialOrder::from_spec(d.spec(vars), vars), d);
  EXPECT_THROW(MonomialOrder::from_spec("lex:x1", vars), UsageError);
  EXPECT_THROW(MonomialOrder::degrevlex({0, 0, 1}), UsageError);
}

TEST(HalvedDegree, Examples) {
  auto vars = VarTable({"b", "c", "x2", "a", "T"}, {1, 1, 2, 1, 2}, -3);
  auto r = make_ring(vars);
  auto ct = P("c*T", r).halved_degree();
  EXPECT_EQ(ct.status, WeightedDegree::Status::homogeneous);
  EXPECT_EQ(ct.degree, 3);
  // s = 2: v (bc)^2 + b has weight -3 + 4 = 1 on both terms.
  auto mixed = P("v*b^2*c^2 + b", r).halved_degree();
  EXPECT_TRUE(mixed.homogeneous());
  EXPECT_EQ(mixed.degree, 1);
  auto bad = P("a + x2", r).halved_degree();
  EXPECT_EQ(bad.status, WeightedDegree::Status::inhomogeneous);
  EXPECT_EQ(std::min(bad.degree, bad.other_degree), 1);
  EXPECT_EQ(std::max(bad.degree, bad.other_degree), 2);
}

TEST(Substitute, Examples) {
  auto vars = VarTable({"b", "c", "x1", "x2", "T", "a"}, {1, 1, 1, 2, 2, 1}, -1);
  auto r = make_ring(vars);
  EXPECT_TRUE(P("c*T", r).substitute({{"c", PolyF2::zero(r)}}).is_zero());
  EXPECT_TRUE(P("a + c", r).substitute({{"c", P("a", r)}}).is_zero());
  EXPECT_EQ(P("x1 + x2*x1", r).substitute({{"x1", P("b", r)}}), P("b + x2*b", r));
  // Simultaneous, not sequential.
  EXPECT_EQ(P("b + c", r).substitute({{"b", P("c", r)}, {"c", P("b", r)}}), P("b + c", r));
}

TEST(ForgetV, MergesOnlyWhenAsked) {
  auto r = xy_ring();
  bool collided = true;
  EXPECT_EQ(P("v*x + y", r).forget_v(&collided), P("x + y", r));
  EXPECT_FALSE(collided);
  P("v*x + x", r).forget_v(&collided);
  EXPECT_TRUE(collided);
}

// Property tests over random polynomials in three variables.
class PolyProperties : public ::testing::Test {
 protected:
  std::mt19937_64 rng{20240611};
  RingPtr ring = abc_ring();
  PolyF2 random(bool with_v = false) { return testing::random_poly(rng, ring, 6, 4, with_v); }
};

TEST_F(PolyProperties, AdditionIsAVectorSpace) {
  for (int trial = 0; trial < 200; ++trial) {
    auto p = random(true), q = random(true), s = random(true);
    EXPECT_EQ((p + q) + s, p + (q + s));
    EXPECT_EQ(p + q, q + p);
    EXPECT_TRUE((p + p).is_zero());
    EXPECT_EQ(p + PolyF2::zero(ring), p);
  }
}

TEST_F(PolyProperties, MultiplicationIsACommutativeRing) {
  for (int trial = 0; trial < 100; ++trial) {
    auto p = random(true), q = random(true), s = random(true);
    EXPECT_EQ((p * q) * s, p * (q * s));
    EXPECT_EQ(p * q, q * p);
    EXPECT_EQ(p * (q + s), p * q + p * s);
    EXPECT_TRUE((p * PolyF2::zero(ring)).is_zero());
  }
}

TEST_F(PolyProperties, Frobenius) {
  for (int trial = 0; trial < 100; ++trial) {
    auto p = random(), q = random();
    EXPECT_EQ((p + q).pow(2), p.pow(2) + q.pow(2));
  }
}

TEST_F(PolyProperties, ParsePrintRoundTrip) {
  for (int trial = 0; trial < 200; ++trial) {
    auto p = random(true);
    EXPECT_EQ(parse_poly(p.str(), ring), p) << p.str();
    for (std::size_t i = 1; i < p.size(); ++i) {
      auto c = p.order().compare(p.terms()[i - 1], p.terms()[i]);
      EXPECT_TRUE(c > 0 || (c == 0 && p.terms()[i - 1].v_exp > p.terms()[i].v_exp));
    }
  }
}

TEST_F(PolyProperties, OrdersAreTotalMultiplicativeWithOneMinimal) {
  std::vector<MonomialOrder> orders = {MonomialOrder::degrevlex({0, 1, 2}), MonomialOrder::degrevlex({2, 0, 1}),
                                       MonomialOrder::elimination({0, 1, 2}, {0}),
                                       MonomialOrder::elimination({1, 2, 0}, {1, 2})};
  for (const auto& ord : orders) {
    for (int trial = 0; trial < 300; ++trial) {
      auto m1 = testing::random_monomial(rng, 3, 5);
      auto m2 = testing::random_monomial(rng, 3, 5);
      auto m3 = testing::random_monomial(rng, 3, 5);
      auto n = testing::random_monomial(rng, 3, 3);
      auto c12 = ord.compare(m1, m2);
      EXPECT_EQ(c12 == 0, m1 == m2);
      EXPECT_EQ(sign(ord.compare(m2, m1)), -sign(c12));
      if (c12 < 0 && ord.compare(m2, m3) < 0) {
        EXPECT_EQ(sign(ord.compare(m1, m3)), -1);
      }
      EXPECT_EQ(sign(ord.compare(m1 * n, m2 * n)), sign(c12));
      EXPECT_GE(sign(ord.compare(m1, Monomial{})), 0);
    }
  }
}

TEST_F(PolyProperties, HalvedDegreeIsAdditive) {
  auto graded = make_ring(VarTable({"a", "b", "c"}, {1, 2, 3}, -2));
  for (int trial = 0; trial < 200; ++trial) {
    auto m1 = testing::random_monomial(rng, 3, 4);
    auto m2 = testing::random_monomial(rng, 3, 4);
    m1.v_exp = trial % 3;
    auto p = PolyF2::monomial(graded, m1);
    auto q = PolyF2::monomial(graded, m2);
    auto pd = p.halved_degree();
    auto qd = q.halved_degree();
    auto prod = (p * q).halved_degree();
    ASSERT_TRUE(prod.homogeneous());
    EXPECT_EQ(prod.degree, pd.degree + qd.degree);
  }
}

}  // namespace
}  // namespace kbg
