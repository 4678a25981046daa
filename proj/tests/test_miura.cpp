#include "drh/catalog.hpp"

#include <gtest/gtest.h>

using namespace drh;

namespace {

Poly P(const std::string& s, const RingPtr& r) { return parse_expr(s, r); }

}  // namespace

TEST(Miura, InverseOfSecondOrderShift) {
  auto r = Ring::make(1, {}, 3, kNoCap);
  MiuraMap phi({P("u[1,0] + 5/7*eps^2*u[1,2]", r)});
  MiuraMap inv = invert_miura(phi);
  EXPECT_EQ(inv.image(1), P("u[1,0] - 5/7*eps^2*u[1,2]", r));
}

TEST(Miura, IdentityInverse) {
  auto r = Ring::make(2, {}, 4, kNoCap);
  EXPECT_TRUE(invert_miura(MiuraMap::identity(r)).is_identity());
}

TEST(Miura, FourSpinNormalMap) {
  auto r = Ring::make(3, {}, 4, kNoCap);
  MiuraMap phi({P("u[1,0] + 1/96*eps^2*u[3,2]", r), P("u[2,0]", r), P("u[3,0]", r)});
  MiuraMap inv = invert_miura(phi);
  EXPECT_EQ(inv.image(1), P("u[1,0] - 1/96*eps^2*u[3,2]", r));
  EXPECT_TRUE(compose(phi, inv).is_identity());
  EXPECT_EQ(pull_back(P("u[1,1]", r), phi), P("u[1,1] + 1/96*eps^2*u[3,3]", r));
}

TEST(Miura, NonlinearInverse) {
  auto r = Ring::make(1, {}, 4, kNoCap);
  MiuraMap phi({P("u[1,0] + eps*u[1,0]*u[1,1] + eps^2*u[1,1]^2", r)});
  EXPECT_TRUE(compose(invert_miura(phi), phi).is_identity());
  EXPECT_TRUE(compose(phi, invert_miura(phi)).is_identity());
}

TEST(Miura, DegreeCondition) {
  auto r = Ring::make(1, {}, 4, kNoCap);
  EXPECT_TRUE(MiuraMap({P("u[1,0] + eps*u[1,1] + eps^2*u[1,0]*u[1,2]", r)}).satisfies_degree_condition());
  EXPECT_FALSE(MiuraMap({P("u[1,0] + eps*u[1,2]", r)}).satisfies_degree_condition());
  EXPECT_TRUE(MiuraMap({P("u[1,0] + eps*u[1,1]", r)}).close_to_identity());
}

TEST(Miura, CompositionOrder) {
  auto r = Ring::make(1, {}, 4, kNoCap);
  MiuraMap a({P("u[1,0] + eps*u[1,1]", r)});
  MiuraMap b({P("u[1,0] + eps^2*u[1,0]*u[1,2]", r)});
  // a(b(u)) = b(u) + eps dx b(u)
  Poly want = P("u[1,0] + eps^2*u[1,0]*u[1,2] + eps*u[1,1] + eps^3*(u[1,1]*u[1,2] + u[1,0]*u[1,3])", r);
  EXPECT_EQ(compose(a, b).image(1), want);
  EXPECT_FALSE(maps_equal(compose(a, b), compose(b, a)));
}

TEST(NormalCoordinates, Catalog) {
  EXPECT_TRUE(normal_coordinates(build_from_primary(builtin("kdv").primary, {{Q(1)}}, 2)).is_identity());
  CohFTSpec s = builtin("4spin");
  TauHierarchy h = build_from_primary(s.primary, s.eta, 2);
  MiuraMap nc = normal_coordinates(h);
  EXPECT_EQ(nc.image(1), P("u[1,0] + 1/96*eps^2*u[3,2]", h.ring));
  EXPECT_EQ(nc.image(2), P("u[2,0]", h.ring));
  // minus the identity, the map is dx^2-exact
  Poly d = nc.image(1) - P("u[1,0]", h.ring);
  EXPECT_EQ(dx(anti_dx(anti_dx(d)), 2), d);
}

TEST(NormalCoordinates, TauDensitiesAreEtaTimesNormal) {
  CohFTSpec s = builtin("4spin");
  TauHierarchy h = build_from_primary(s.primary, s.eta, 1);
  MiuraMap nc = normal_coordinates(h);
  for (int a = 1; a <= 3; ++a) {
    Poly sum(h.ring);
    for (int m = 1; m <= 3; ++m) sum += nc.image(m) * s.eta[a - 1][m - 1];
    EXPECT_EQ(h.h(a, -1), sum) << a;
  }
}

TEST(NormalMiura, ZeroGenerator) {
  CohFTSpec s = builtin("kdv");
  TauHierarchy h = build_from_primary(s.primary, s.eta, 2);
  TauHierarchy z = normal_miura(h, Poly(h.ring));
  for (const auto& [k, g] : h.dens) EXPECT_TRUE(functionals_equal(Functional(g), z.ham(k.first, k.second)));
  EXPECT_EQ(z.K, h.K);
}

TEST(NormalMiura, KeepsTauSymmetry) {
  CohFTSpec s = builtin("kdv");
  TauHierarchy h = build_from_primary(s.primary, s.eta, 3);
  TauHierarchy z = normal_miura(h, Poly::eps(h.ring, 2) * P("u[1,0]^3", h.ring));
  auto pairs = pairs_upto(1, 3);
  EXPECT_TRUE(verify_tau_symmetry(z, pairs).ok());
  EXPECT_TRUE(verify_commutativity(z, pairs).ok());
}
