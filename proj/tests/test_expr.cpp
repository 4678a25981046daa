// SPDX-License-Identifier: MIT
#include "drh/expr.hpp"

#include <gtest/gtest.h>

using namespace drh;

namespace {

RingPtr two() { return Ring::make(2); }

Poly P(const std::string& s, const RingPtr& r) { return parse_expr(s, r); }

}  // namespace

TEST(Rational, RatioIsCanonical) {
  Q a = ratio(2, 24);
  EXPECT_EQ(a, Q(1, 12));
  EXPECT_EQ(to_string(a), "1/12");
  EXPECT_EQ(parse_rational("-6/4"), ratio(-3, 2));
}

TEST(Parse, CubicTerm) {
  auto r = two();
  Poly p = P("1/2*u[1,0]^2*u[2,0]", r);
  ASSERT_EQ(p.size(), 1u);
  const auto& [m, c] = *p.terms().begin();
  EXPECT_EQ(c, Q(1, 2));
  EXPECT_EQ(m.exp2(1, 0), 4);
  EXPECT_EQ(m.exp2(2, 0), 2);
  EXPECT_EQ(m.eps, 0);
}

TEST(Parse, ZeroIsEmpty) { EXPECT_TRUE(P("0", two()).terms().empty()); }

TEST(Parse, EpsilonTerm) {
  Poly p = P("eps^2*(1/48*u[2,0]^2*u[2,2])", two());
  ASSERT_EQ(p.size(), 1u);
  const Mono& m = p.terms().begin()->first;
  EXPECT_EQ(m.eps, 2);
  EXPECT_EQ(m.ddeg(), 2);
  EXPECT_TRUE(has_graded_degree(p, 0));
}

TEST(Parse, RoundTripThroughPrint) {
  auto r = Ring::make(2, {Param{"q", 0, 3, false}});
  for (std::string s : {"1/2*u[1,0]^2*u[2,0] - 3*q^2*eps^2*u[2,1]^2", "7", "-u[1,3]*u[2,0]^3 + 1/5*q*u[1,0]"}) {
    Poly p = P(s, r);
    EXPECT_EQ(P(print(p), r), p) << s;
  }
}

TEST(Parse, RejectsGarbage) {
  EXPECT_THROW(P("u[1,0", two()), ParseError);
  EXPECT_THROW(P("u[3,0]", two()), ParseError);
  EXPECT_THROW(P("1/0", two()), ParseError);
  EXPECT_THROW(P("u[1,0] +* 2", two()), ParseError);
}

TEST(Dx, ProductRule) {
  auto r = Ring::make(1);
  EXPECT_EQ(dx(P("u[1,0]^2", r)), P("2*u[1,0]*u[1,1]", r));
  EXPECT_TRUE(dx(Poly(r, Q(1))).is_zero());
  EXPECT_EQ(dx(P("u[1,0]*u[1,2]", r)), P("u[1,1]*u[1,2] + u[1,0]*u[1,3]", r));
  EXPECT_EQ(dx(P("u[1,0]^3", r), 2), P("6*u[1,0]*u[1,1]^2 + 3*u[1,0]^2*u[1,2]", r));
}

TEST(Partial, JetAndParameter) {
  auto r = Ring::make(2, {Param{"q", 0, 4, false}});
  EXPECT_EQ(partial(P("u[1,0]^2*u[1,1]", r), 1, 1), P("u[1,0]^2", r));
  EXPECT_TRUE(partial(P("u[1,0]^2", r), 2, 0).is_zero());
  EXPECT_EQ(param_partial(P("q^2*u[2,0]", r), 0), P("2*q^2*u[2,0]", r));
}

TEST(EulerD, Weights) {
  auto r = two();
  EXPECT_EQ(euler_D(P("u[1,0]^3", r)), P("3*u[1,0]^3", r));
  EXPECT_EQ(euler_D(P("u[1,1]^2", r)), P("4*u[1,1]^2", r));
  EXPECT_EQ(euler_D(P("u[2,0]*u[2,1]^2", r)), P("5*u[2,0]*u[2,1]^2", r));
}

TEST(EulerD, InverseShift) {
  auto r = two();
  Poly f = P("u[1,0]^3 + u[2,0]*u[2,1]^2", r);
  Poly g = scale_by_dweight(f, Q(-2), true);
  EXPECT_EQ(euler_D(g) - g * Q(2), f);
}

TEST(Substitute, NormalCoordinateImage) {
  auto r = Ring::make(3, {}, 4, kNoCap);
  std::vector<Poly> phi = {P("u[1,0] + 1/96*eps^2*u[3,2]", r), P("u[2,0]", r), P("u[3,0]", r)};
  EXPECT_EQ(substitute(P("u[1,0]", r), phi), phi[0]);
  EXPECT_EQ(substitute(P("u[1,1]", r), phi), P("u[1,1] + 1/96*eps^2*u[3,3]", r));
  std::vector<Poly> id = {P("u[1,0]", r), P("u[2,0]", r), P("u[3,0]", r)};
  Poly f = P("u[1,0]*u[2,1]^2 + eps^2*u[3,2]", r);
  EXPECT_EQ(substitute(f, id), f);
}

TEST(Caps, EpsilonTruncation) {
  auto r = Ring::make(1, {}, 2, kNoCap);
  Poly a = P("u[1,0] + eps*u[1,1]", r);
  Poly sq = a * a * a;
  EXPECT_EQ(sq.max_eps(), 2);
  EXPECT_EQ(sq.eps_truncate(1), P("u[1,0]^3 + 3*eps*u[1,0]^2*u[1,1]", r));
}

TEST(Caps, UDegreeTruncation) {
  auto r = Ring::make(1, {}, kNoCap, 3);
  Poly a = P("u[1,0] + u[1,0]^2", r);
  EXPECT_EQ(a * a, P("u[1,0]^2 + 2*u[1,0]^3", r));
}

TEST(Caps, ParameterWindow) {
  auto r = Ring::make(1, {Param{"q", 0, 2, false}});
  Poly q = Poly::param(r, 0);
  EXPECT_TRUE((q * q * q).is_zero());
  EXPECT_FALSE((q * q).is_zero());
}

TEST(HalfPowers, SquareRoot) {
  auto base = Ring::make(2);
  auto r = std::make_shared<Ring>(*base);
  r->half_powers = true;
  RingPtr hr = r;
  Poly h = P("u[2,0]^(1/2)", hr);
  EXPECT_EQ(h * h, P("u[2,0]", hr));
  EXPECT_EQ(dx(h), P("1/2*u[2,0]^(-1/2)*u[2,1]", hr));
}

TEST(Shift, ConstantShift) {
  auto r = Ring::make(1, {Param{"s", 0, 4, false}});
  Poly f = P("u[1,0]^2*u[1,1]", r);
  EXPECT_EQ(shift_var(f, 1, Poly::param(r, 0)), P("(u[1,0] + s)^2*u[1,1]", r));
  EXPECT_EQ(set_var_zero(P("u[1,0]*u[1,1] + 3*u[1,1]", r), 1), Poly(r));
}
