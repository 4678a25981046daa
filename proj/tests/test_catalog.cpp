#include "drh/catalog.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace drh;

TEST(Catalog, Names) {
  auto names = builtin_names();
  for (std::string n : {"kdv", "hodge", "cp1", "3spin", "4spin", "5spin", "b2-i", "b2-t", "quintic",
                        "quintic-singularity"})
    EXPECT_NE(std::find(names.begin(), names.end(), n), names.end()) << n;
  EXPECT_THROW(builtin("no-such-theory"), SpecError);
  EXPECT_THROW(resolve_cohft("no-such-theory"), SpecError);
}

TEST(Catalog, EveryBuiltinValidates) {
  for (const auto& n : builtin_names()) {
    CohFTSpec s = builtin(n);
    EXPECT_NO_THROW(validate(s)) << n;
    EXPECT_EQ(s.eta.size(), std::size_t(s.n())) << n;
  }
}

TEST(Catalog, ManifestRoundTrip) {
  for (const auto& n : builtin_names()) {
    CohFTSpec s = builtin(n);
    std::string text = save_manifest(s);
    CohFTSpec t = load_manifest_text(text);
    EXPECT_EQ(save_manifest(t), text) << n;
    EXPECT_EQ(t.primary, s.primary) << n;
    EXPECT_EQ(t.printed.size(), s.printed.size()) << n;
    EXPECT_EQ(t.eps_exact, s.eps_exact) << n;
  }
}

TEST(Manifest, SchemaErrors) {
  EXPECT_THROW(load_manifest_text("{not json"), SpecError);
  EXPECT_THROW(load_manifest_text(R"({"name": "x"})"), SpecError);
  // singular metric
  EXPECT_THROW(load_manifest_text(R"({"name": "x", "variables": ["1", "2"],
      "eta": [["1", "1"], ["1", "1"]], "genus0": "1/2*u[1,0]^2*u[2,0]"})"),
               SpecError);
  // unit axiom
  EXPECT_THROW(load_manifest_text(R"({"name": "x", "variables": ["1"], "eta": [["1"]], "genus0": "u[1,0]^3"})"),
               SpecError);
  // bad expression
  EXPECT_THROW(load_manifest_text(R"({"name": "x", "variables": ["1"], "eta": [["1"]], "genus0": "u[1,0"})"),
               SpecError);
}

TEST(Manifest, MinimalTheory) {
  CohFTSpec s = load_manifest_text(
      R"({"name": "mine", "variables": ["1"], "eta": [["1"]], "genus0": "1/6*u[1,0]^3",
          "primary": "1/6*u[1,0]^3 + 1/48*eps^2*u[1,0]*u[1,2]", "eps_order": 2, "caps": {"eps": 2}})");
  EXPECT_EQ(s.name, "mine");
  TauHierarchy h = build_from_primary(s.primary, s.eta, 2);
  EXPECT_TRUE(verify_commutativity(h, pairs_upto(1, 2)).ok());
}

TEST(Catalog, PrimaryAtCaps) {
  EXPECT_EQ(builtin("kdv").primary_at(4).ring()->eps_cap, 4);
  EXPECT_THROW(builtin("b2-i").primary_at(4), SpecError);
  EXPECT_EQ(builtin("hodge").primary_at(2).max_eps(), 2);
}

TEST(Catalog, Series) {
  auto r = Ring::make(1, {}, kNoCap, 4);
  Poly x = Poly::var(r, 1);
  EXPECT_EQ(exp_series(x, 2), parse_expr("1/2*u[1,0]^2 + 1/6*u[1,0]^3 + 1/24*u[1,0]^4", r));
  EXPECT_EQ(bernoulli_abs(0), Q(1));
  EXPECT_EQ(bernoulli_abs(2), Q(1, 6));
  EXPECT_EQ(bernoulli_abs(4), Q(1, 30));
  EXPECT_EQ(bernoulli_abs(10), Q(5, 66));
}

TEST(Catalog, SOperator) {
  auto r = Ring::make(1, {}, 4, kNoCap);
  EXPECT_EQ(s_operator(r, 1), parse_expr("u[1,0] + 1/24*eps^2*u[1,2] + 1/1920*eps^4*u[1,4]", r));
}

TEST(Displays, MatchForSmallTheories) {
  for (std::string n : {"kdv", "hodge", "cp1", "3spin", "4spin", "b2-i", "b2-t"}) {
    CohFTSpec s = builtin(n);
    TauHierarchy h = build_from_primary(s.primary, s.eta, 3);
    Report r = compare_displays(s, h);
    EXPECT_TRUE(r.ok()) << r.text();
  }
}

TEST(Displays, QuinticFirstTermIsReported) {
  CohFTSpec s = builtin("quintic");
  TauHierarchy h = build_from_primary(s.primary, s.eta, 3);
  Report r = compare_displays(s, h);
  bool g1_failed = false;
  for (const auto& e : r.entries)
    if (e.name.rfind("g_{1,", 0) == 0 && !e.pass) {
      g1_failed = true;
      EXPECT_NE(e.witness.find("u^4"), std::string::npos);
    }
  EXPECT_TRUE(g1_failed);
}

TEST(Displays, MutatedDisplayFails) {
  CohFTSpec s = builtin("4spin");
  for (auto& d : s.printed)
    if (d.key == "normal^1") d.value += Poly::eps(d.value.ring(), 2) * Poly::var(d.value.ring(), 3, 2) * Q(1, 96);
  TauHierarchy h = build_from_primary(s.primary, s.eta, 2);
  EXPECT_FALSE(compare_displays(s, h).ok());
}

TEST(Theories, I2Grading) {
  CohFTSpec s = i2_theory(5);
  EXPECT_EQ(s.name, "i2-4");
  ASSERT_TRUE(s.euler.has_value());
  EXPECT_EQ(s.euler->delta, Q(1, 2));
  EXPECT_THROW(i2_theory(2), SpecError);
}
