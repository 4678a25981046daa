#include "drh/catalog.hpp"

#include <gtest/gtest.h>

using namespace drh;

namespace {

Poly P(const std::string& s, const RingPtr& r) { return parse_expr(s, r); }

FrobeniusData trivial(int eps = 2) {
  auto r = Ring::make(1, {}, eps, kNoCap);
  return FrobeniusData(P("1/6*u[1,0]^3", r), {{Q(1)}});
}

}  // namespace

TEST(Frobenius, UnitAxiom) {
  auto r = Ring::make(2);
  EXPECT_NO_THROW(FrobeniusData(P("1/2*u[1,0]^2*u[2,0] + 1/72*u[2,0]^4", r), {{Q(0), Q(1)}, {Q(1), Q(0)}}));
  EXPECT_ANY_THROW(FrobeniusData(P("1/6*u[1,0]^3 + u[2,0]^3", r), {{Q(0), Q(1)}, {Q(1), Q(0)}}));
}

TEST(Frobenius, ThirdDerivatives) {
  auto r = Ring::make(2);
  FrobeniusData F(P("1/2*u[1,0]^2*u[2,0] + 1/72*u[2,0]^4", r), {{Q(0), Q(1)}, {Q(1), Q(0)}});
  EXPECT_EQ(F.c3(2, 2, 2), P("1/3*u[2,0]", r));
  EXPECT_EQ(F.c3(1, 1, 2), Poly(r, Q(1)));
  EXPECT_EQ(F.c4(2, 2, 2, 2), Poly(r, Q(1, 3)));
  EXPECT_EQ(F.c3_up(1, 2, 2), P("1/3*u[2,0]", r));
}

TEST(Principal, TrivialDensities) {
  FrobeniusData F = trivial(0);
  TauHierarchy h = principal_genus0(F, 4);
  Q fact = 2;
  for (int p = 0; p <= 4; ++p) {
    fact *= p + 2;
    // g_{1,p} = u^{p+2}/(p+2)!
    EXPECT_EQ(h.g(1, p), Poly::var(h.ring, 1, 0, p + 2) * (2 / fact)) << p;
  }
}

TEST(Principal, CP1Primary) {
  CohFTSpec s = builtin("cp1");
  RingPtr r0 = with_caps(s.ring, 0, s.ring->udeg_cap);
  TauHierarchy h = principal_genus0(FrobeniusData(s.genus0.rebind(r0), s.eta), 1);
  Poly want = P("1/2*u[1,0]^2", r0) + Poly::param(r0, 0) * exp_series(Poly::var(r0, 2), 2);
  EXPECT_TRUE(functionals_equal(h.ham(2, 0), Functional(want)));
}

TEST(Genus1, TrivialCorrection) {
  FrobeniusData F = trivial();
  Genus1Correction c = dr_genus1(F, principal_genus0(F, 2));
  EXPECT_EQ(normal_form(c.gbar2), normal_form(P("-1/48*eps^2*u[1,1]^2", c.gbar2.ring())));
  EXPECT_EQ(normal_form(g11_from_primary(c.gbar2)), normal_form(P("1/24*eps^2*u[1,0]*u[1,2]", c.gbar2.ring())));
}

TEST(Genus1, ClosedFormMatchesRecursion) {
  for (int k : {4, 6}) {
    CohFTSpec s = i2_theory(k);
    FrobeniusData F(s.genus0, s.eta);
    TauHierarchy h1 = genus1_hierarchy(F, 3);
    Poly gbar = s.genus0.rebind(h1.ring) + dr_genus1(F, principal_genus0(F, 1)).gbar2.rebind(h1.ring);
    TauHierarchy hb = build_from_primary(gbar, s.eta, 3);
    for (int a = 1; a <= 2; ++a)
      for (int p = 0; p <= 3; ++p)
        EXPECT_TRUE(functionals_equal(h1.ham(a, p), hb.ham(a, p))) << "k=" << k << " " << a << "," << p;
  }
}

TEST(Genus1, ThreeSpinAgreesWithCatalog) {
  CohFTSpec s = builtin("3spin");
  FrobeniusData F(s.genus0, s.eta);
  Genus1Correction c = dr_genus1(F, principal_genus0(F, 1));
  Poly printed = s.primary.eps_part(2).rebind(c.gbar2.ring());
  EXPECT_TRUE(normal_form(c.gbar2 - printed).is_zero()) << print(normal_form(c.gbar2 - printed));
}

TEST(DZ, ThreeSpinOperatorAndHamiltonians) {
  CohFTSpec s = builtin("3spin");
  RingPtr r = with_caps(s.ring, 2, s.ring->udeg_cap);
  FrobeniusData F(s.genus0.rebind(r), s.eta);
  DZGenus1 dz = dz_genus1(F, principal_genus0(F, 2));
  EXPECT_EQ(transform_operator(dz.K, dz.to_u), eta_dx(s.eta, r));
  TauHierarchy h1 = genus1_hierarchy(F, 2);
  MiuraMap back = invert_miura(dz.to_u);
  for (int a = 1; a <= 2; ++a)
    for (int p = 0; p <= 2; ++p)
      EXPECT_TRUE(functionals_equal(Functional(substitute(dz.dens.at({a, p}), back.images())), h1.ham(a, p)));
}

TEST(DZ, TrivialTheoryOperatorIsFlat) {
  FrobeniusData F = trivial();
  DZGenus1 dz = dz_genus1(F, principal_genus0(F, 2));
  EXPECT_EQ(transform_operator(dz.K, dz.to_u), eta_dx({{Q(1)}}, F.ring()));
  EXPECT_TRUE(op_constant_term(dz.K)[0][0].is_zero());
}

TEST(NonpositiveC1, Quintic) {
  CohFTSpec s = builtin("quintic");
  FrobeniusData F(s.genus0, s.eta);
  Poly p = nonpositive_c1_primary(Q(-200), F);
  EXPECT_EQ(normal_form(p.eps_part(2)), P("25/6*eps^2*u[1,1]^2", p.ring()));
  TauHierarchy h = nonpositive_c1_hierarchy(Q(-200), F, 2);
  EXPECT_TRUE(verify_commutativity(h, pairs_upto(4, 2)).ok());
  EXPECT_TRUE(verify_tau_symmetry(h, pairs_upto(4, 2)).ok());
}

TEST(NonpositiveC1, ZeroEulerCharacteristic) {
  CohFTSpec s = builtin("quintic-singularity");
  FrobeniusData F(s.genus0, s.eta);
  Poly p = nonpositive_c1_primary(Q(0), F);
  EXPECT_EQ(p, s.genus0.rebind(p.ring()));
}

TEST(Homogeneity, HamiltoniansOfThreeSpin) {
  CohFTSpec s = builtin("3spin");
  TauHierarchy h = build_from_primary(s.primary, s.eta, 3);
  FrobeniusData F(s.genus0.rebind(h.ring), s.eta, s.euler);
  EXPECT_TRUE(verify_hamiltonian_homogeneity(h, F, 2).ok());
}

TEST(Homogeneity, BrokenByWrongDimension) {
  CohFTSpec s = builtin("3spin");
  TauHierarchy h = build_from_primary(s.primary, s.eta, 2);
  EulerData e = *s.euler;
  e.delta += 1;
  FrobeniusData F(s.genus0.rebind(h.ring), s.eta, e);
  EXPECT_FALSE(verify_hamiltonian_homogeneity(h, F, 1).ok());
}
