// Acceptance run: one PASS/FAIL line per criterion.  Exit status 1 if any fails.
//
//   acceptance            all criteria
//   acceptance 3 7 12     a subset

#include "drh/catalog.hpp"
#include "property_suite.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace drh;

namespace {

struct Outcome {
  bool pass = true;
  int checked = 0;
  std::ostringstream log;  // printed under the verdict line when non-empty

  void require(bool ok, const std::string& what) {
    ++checked;
    if (!ok) {
      pass = false;
      log << "    FAIL " << what << "\n";
    }
  }
  void require(const Report& r) {
    checked += int(r.entries.size());
    if (r.entries.empty()) {
      pass = false;
      log << "    FAIL " << r.title << ": empty report\n";
    }
    if (r.ok()) return;
    pass = false;
    for (const auto& e : r.entries)
      if (!e.pass) log << "    FAIL " << r.title << ": " << e.name << "  " << e.witness << "\n";
  }
  void note(const std::string& s) { log << "    " << s << "\n"; }
};

std::map<std::string, TauHierarchy>& hierarchy_cache() {
  static std::map<std::string, TauHierarchy> c;
  return c;
}

const TauHierarchy& catalog_hierarchy(const std::string& name) {
  auto& c = hierarchy_cache();
  auto it = c.find(name);
  if (it != c.end()) return it->second;
  CohFTSpec s = builtin(name);
  return c.emplace(name, build_from_primary(s.primary, s.eta, 4)).first->second;
}

// terms free of every parameter
Poly params_to_zero(const Poly& f) {
  PolyBuilder b(f.ring(), f.prec2());
  for (const auto& [m, c] : f.terms()) {
    bool free = true;
    for (auto e : m.par) free = free && e == 0;
    if (free) b.add(m, c);
  }
  return b.finish();
}

// rank over Q of the functionals represented by `fs`
int functional_rank(const std::vector<Poly>& fs) {
  std::map<Mono, int> col;
  std::vector<std::vector<Q>> rows;
  std::vector<Poly> nfs;
  for (const auto& f : fs) {
    nfs.push_back(normal_form(f));
    for (const auto& [m, c] : nfs.back().terms()) col.emplace(m, int(col.size()));
  }
  for (const auto& nf : nfs) {
    std::vector<Q> row(col.size());
    for (const auto& [m, c] : nf.terms()) row[col[m]] = c;
    rows.push_back(row);
  }
  int rank = 0;
  for (std::size_t j = 0; j < col.size() && rank < int(rows.size()); ++j) {
    int piv = -1;
    for (int i = rank; i < int(rows.size()); ++i)
      if (rows[i][j] != 0) piv = i;
    if (piv < 0) continue;
    std::swap(rows[piv], rows[rank]);
    for (int i = 0; i < int(rows.size()); ++i) {
      if (i == rank || rows[i][j] == 0) continue;
      Q f = rows[i][j] / rows[rank][j];
      for (std::size_t k = 0; k < col.size(); ++k) rows[i][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

int var(const CohFTSpec& s, const std::string& label) { return s.ring->var_index(label); }

// ---------------------------------------------------------------- 1-3

const std::vector<std::string> kCatalog = {"kdv",     "hodge",   "cp1",     "3spin",
                                           "4spin",   "5spin",   "b2-i",    "b2-t",
                                           "quintic", "quintic-singularity", "quintic-singularity-aut"};

void commute_and_tau(Outcome& o) {
  for (const auto& name : kCatalog) {
    auto t0 = std::chrono::steady_clock::now();
    const TauHierarchy& h = catalog_hierarchy(name);
    auto pairs = pairs_upto(h.n(), 4);
    Report c = verify_commutativity(h, pairs);
    Report t = verify_tau_symmetry(h, pairs);
    o.require(c);
    o.require(t);
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.note(name + ": " + std::to_string(pairs.size()) + " pairs, eps^" + std::to_string(h.ring->eps_cap) + ", " +
           std::to_string(int(sec + 0.5)) + " s");
  }
}

void string_relation(Outcome& o) {
  for (const auto& name : kCatalog) o.require(verify_string(catalog_hierarchy(name), 4));
}

void normal_coordinates_match(Outcome& o) {
  for (std::string name : {"kdv", "hodge", "cp1", "3spin"}) {
    MiuraMap nc = normal_coordinates(catalog_hierarchy(name));
    o.require(nc.is_identity(), name + ": normal coordinates are not the identity: " + nc.str());
  }
  struct Expect {
    std::string name;
    std::vector<std::string> images;
  };
  for (const Expect& e : {Expect{"4spin", {"u[1,0] + 1/96*eps^2*u[3,2]", "u[2,0]", "u[3,0]"}},
                          Expect{"5spin",
                                 {"u[1,0] + 1/60*eps^2*u[3,2]", "u[2,0] + 1/60*eps^2*u[4,2]", "u[3,0]", "u[4,0]"}}}) {
    const TauHierarchy& h = catalog_hierarchy(e.name);
    MiuraMap nc = normal_coordinates(h);
    for (int a = 1; a <= h.n(); ++a) {
      Poly want = parse_expr(e.images[a - 1], h.ring);
      o.require(nc.image(a) == want, e.name + ": normal^" + std::to_string(a) + " = " + print(nc.image(a)));
    }
  }
}

// ---------------------------------------------------------------- 4-5

void genus1_builder(Outcome& o) {
  for (int k = 4; k <= 10; ++k) {
    CohFTSpec s = i2_theory(k);
    FrobeniusData F(s.genus0, s.eta);
    Genus1Correction c = dr_genus1(F, principal_genus0(F, 1));
    Q coef = ratio((k - 2) * (k - 1) * k, 36);
    Poly want = parse_expr("-1/48*eps^2*(2*u[1,1]^2 + " + to_string(coef) + "*u[2,0]^" + std::to_string(k - 3) +
                               "*u[2,1]^2)",
                           c.gbar2.ring());
    o.require(normal_form(c.gbar2 - want).is_zero(), "k = " + std::to_string(k) + ": " + print(c.gbar2));
  }
  CohFTSpec kdv = builtin("kdv");
  RingPtr r = with_caps(kdv.ring, 2, kNoCap);
  FrobeniusData F(kdv.genus0.rebind(r), kdv.eta);
  Genus1Correction c = dr_genus1(F, principal_genus0(F, 1));
  Poly g11 = normal_form(g11_from_primary(c.gbar2));
  o.require(g11 == normal_form(parse_expr("1/24*eps^2*u[1,0]*u[1,2]", g11.ring())), "trivial gbar^[2]_{1,1} = " + print(g11));
  // the l^0 part of the Hodge display at eps^2
  CohFTSpec hodge = builtin("hodge");
  Poly shown = params_to_zero(hodge.find("gbar_{1,1}")->value.eps_part(2));
  o.require(shown == parse_expr("1/24*eps^2*u[1,0]*u[1,2]", shown.ring()), "Hodge l^0 coefficient " + print(shown));
}

void ansatz(Outcome& o) {
  for (int k = 5; k <= 7; ++k) {
    CohFTSpec s = i2_theory(k);
    Grading g{{Q(k - 1), Q(2)}, Q(0), Q(1), Q(2 * k), k % 2 == 0};
    AnsatzResult a = ansatz_solve(s.genus0, s.eta, g, 2);
    std::string tag = "I2(" + std::to_string(k - 1) + ")";
    o.require(a.solutions.size() == 2, tag + ": dimension " + std::to_string(a.solutions.size()));
    if (a.solutions.empty()) continue;
    const RingPtr& r = a.solutions.front().ring();
    std::string half = k % 2 ? std::to_string((k - 3) / 2) : "(" + std::to_string(k - 3) + "/2)";
    Poly a0 = parse_expr("eps^2*(1/2*u[1,1]^2 + " + to_string(ratio((k - 2) * (k - 1) * k, 144)) + "*u[2,0]^" +
                             std::to_string(k - 3) + "*u[2,1]^2)",
                         r);
    Poly a1 = parse_expr("eps^2*" + to_string(ratio(2, k + 1)) + "*u[2,0]^" + half + "*u[1,1]*u[2,1]", r);
    std::vector<Poly> all = a.solutions;
    all.push_back(a0);
    all.push_back(a1);
    o.require(functional_rank(a.solutions) == 2 && functional_rank({a0, a1}) == 2 && functional_rank(all) == 2,
              tag + ": solution span differs from the a0/a1 family");
  }
  {
    CohFTSpec s = builtin("kdv");
    AnsatzResult a = ansatz_solve(s.genus0, s.eta, Grading{{Q(2)}, Q(0), Q(1), Q(6), false}, 2);
    o.require(a.solutions.size() == 1, "trivial: dimension " + std::to_string(a.solutions.size()));
    if (a.solutions.size() == 1) {
      Poly ux2 = parse_expr("eps^2*u[1,1]^2", a.solutions[0].ring());
      o.require(functional_rank({a.solutions[0], ux2}) == 1, "trivial: ray is not int u_x^2");
    }
  }
  // 3-spin: which quartic coefficient of the genus-0 potential does the printed eps^2 part fit?
  CohFTSpec s = builtin("3spin");
  Grading g{{Q(3), Q(2)}, Q(0), Q(1), Q(8), false};
  std::vector<std::string> fits;
  for (std::string c : {"1/72", "1/36"}) {
    Poly f = parse_expr("1/2*u[1,0]^2*u[2,0] + " + c + "*u[2,0]^4", s.ring);
    AnsatzResult a = ansatz_solve(f, s.eta, g, 2);
    o.require(a.solutions.size() == 1, "3-spin (" + c + "): dimension " + std::to_string(a.solutions.size()));
    if (a.solutions.size() != 1) continue;
    Poly printed = s.primary.eps_part(2).rebind(with_caps(s.ring, 2, s.ring->udeg_cap));
    bool fit = functional_rank({a.solutions[0], printed.rebind(a.solutions[0].ring())}) == 1;
    o.note("3-spin with (u^2)^4 coefficient " + c + ": ray " + print(normal_form(a.solutions[0])) +
           (fit ? "  (proportional to the catalog eps^2 part)" : "  (not proportional)"));
    if (fit) fits.push_back(c);
  }
  o.require(fits.size() == 1 && fits[0] == "1/72", "3-spin adjudication is not the 1/72 normalization");
  if (fits.size() == 1) o.note("adjudicated quartic coefficient: " + fits[0]);
}

// ---------------------------------------------------------------- 6-9

std::map<std::string, PotentialSeries>& potential_cache() {
  static std::map<std::string, PotentialSeries> c;
  return c;
}

const SeriesCaps kGenus2{2, 9, 6};

const PotentialSeries& genus2_potential(const std::string& name) {
  auto& c = potential_cache();
  auto it = c.find(name);
  if (it != c.end()) return it->second;
  CohFTSpec s = builtin(name);
  TauHierarchy h = build_from_primary(s.primary_at(4), s.eta, kGenus2.dsum + 1);
  return c.emplace(name, dr_potential(h, kGenus2)).first->second;
}

void potential_properties(Outcome& o) {
  for (std::string name : {"kdv", "3spin"}) {
    CohFTSpec s = builtin(name);
    const PotentialSeries& F = genus2_potential(name);
    o.require(check_string(F, s.eta));
    o.require(check_dilaton(F));
    o.require(check_vanishing(F));
    o.require(check_one_point(F));
    o.note(name + ": " + std::to_string(F.series().size()) + " terms");
  }
}

TauHierarchy genus1_built(const CohFTSpec& s, int pmax) {
  return build_from_primary(s.primary_at(2), s.eta, pmax);
}

void divisor(Outcome& o) {
  CohFTSpec s = builtin("cp1");
  TauHierarchy h = genus1_built(s, 5);
  PotentialSeries F = dr_potential(h, SeriesCaps{1, 4, 4});
  FrobeniusData fr(s.genus0.rebind(h.ring), s.eta, s.euler);
  o.require(check_divisor(F, fr, *s.divisor));
}

void homogeneity(Outcome& o) {
  for (std::string name : {"3spin", "i2-5"}) {
    CohFTSpec s = builtin(name);
    TauHierarchy h = genus1_built(s, 5);
    PotentialSeries F = dr_potential(h, SeriesCaps{1, 4, 4});
    FrobeniusData fr(s.genus0.rebind(h.ring), s.eta, s.euler);
    o.require(check_homogeneity(F, fr, s.param_weight));
    o.require(verify_hamiltonian_homogeneity(h, fr, 3));
  }
}

void strong_dr_dz(Outcome& o) {
  CohFTSpec s = builtin("kdv");
  SeriesCaps in = kGenus2;
  in.points += 2 * kGenus2.genus;
  PotentialSeries W = wk_correlators(in);
  RingPtr wring = with_caps(s.ring, 2 * kGenus2.genus, s.ring->udeg_cap);
  ReducedPotential red = reduced_potential(W, s.eta, wring, kGenus2);
  std::string w;
  o.require(same_on(red.Fred, genus2_potential("kdv"), kGenus2, &w), "F^red != F^DR: " + w);
  o.note("P = " + print(red.P));
}

// ---------------------------------------------------------------- 10-12

void genus1_dz_dr(Outcome& o) {
  for (std::string name : {"3spin", "i2-5"}) {
    CohFTSpec s = builtin(name);
    RingPtr r = with_caps(s.ring, 2, s.ring->udeg_cap);
    FrobeniusData F(s.genus0.rebind(r), s.eta);
    TauHierarchy h0 = principal_genus0(F, 3);
    TauHierarchy h1 = genus1_hierarchy(F, 3);
    DZGenus1 dz = dz_genus1(F, h0);
    HamOperator Ku = transform_operator(dz.K, dz.to_u);
    o.require(Ku == eta_dx(s.eta, Ku.ring), name + ": transformed operator is " + Ku.str());
    MiuraMap back = invert_miura(dz.to_u);
    for (int a = 1; a <= s.n(); ++a)
      for (int p = 0; p <= 3; ++p) {
        Poly in_u = substitute(dz.dens.at({a, p}), back.images());
        o.require(functionals_equal(Functional(in_u), h1.ham(a, p)),
                  name + ": DZ and DR Hamiltonians differ at (" + std::to_string(a) + "," + std::to_string(p) + "): " +
                      print(normal_form(in_u - h1.g(a, p))));
      }
  }
}

void b2_summary(Outcome& o) {
  for (std::string name : {"b2-i", "b2-t"}) {
    CohFTSpec s = builtin(name);
    TauHierarchy h = build_from_primary(s.primary, s.eta, 1);
    int u1 = var(s, "1"), u3 = var(s, "3");
    Poly d3 = var_deriv(h.g(u3, 0), u3);
    o.require(d3 == s.find("dgbar_{3,0}/du^3")->value.rebind(h.ring),
              name + ": dgbar_{3,0}/du^3 = " + print(d3));
    const Poly& omega = s.find("Omega^DZ_{3,0;3,0}")->value;
    if (name == "b2-i") {
      Poly rhs = d3 + Poly::eps(h.ring, 2) * dx(var_deriv(h.g(u3, 0), u1), 2) * Q(1, 96);
      Poly rem = omega.rebind(h.ring) - rhs;
      o.require(rem.is_zero(), "b2-i: Omega^DZ - (delta_3 + eps^2/96 dx^2 delta_1) = " + print(rem));
      o.require(two_point(h, u3, 0, u3, 0) == omega.rebind(h.ring), "b2-i: Omega^DR != printed Omega^DZ");
    } else {
      TauHierarchy dz = normal_miura(h, *s.g_function * Poly::eps(s.ring, 2));
      o.require(two_point(dz, u3, 0, u3, 0) == omega.rebind(dz.ring), "b2-t: normal Miura image of Omega^DR");
    }
  }
}

// printed g_{alpha,p} of the quintic after restoring u^4 in the first term of
// g_{1,p}; the display uses the full exponential, so instanton terms of
// degree <= 1 in u^2 are not compared
bool quintic_display_fits(const Poly& diff, int alpha, int p, std::string* w) {
  const RingPtr& r = diff.ring();
  Poly rest = diff;
  if (alpha == 1) {
    Q f = 1;
    for (int i = 2; i <= p + 1; ++i) f *= i;
    Poly first = Poly::var(r, 1).pow(p + 1) * (1 / f);
    rest -= first * Poly::var(r, 4) - first;
  }
  for (const auto& [m, c] : rest.terms()) {
    bool instanton = m.par[0] > 0;
    if (!instanton || m.exp2(2, 0) > 2 || m.max_jet() > 0) {
      *w = print(rest);
      return false;
    }
  }
  return true;
}

void closed_form(Outcome& o) {
  CohFTSpec quintic = builtin("quintic");
  FrobeniusData fq(quintic.genus0, quintic.eta);
  Poly pq = nonpositive_c1_primary(Q(-200), fq);
  Poly eps2 = normal_form(pq.eps_part(2));
  o.require(eps2 == parse_expr("25/6*eps^2*u[1,1]^2", pq.ring()), "chi = -200: eps^2 part " + print(eps2));
  o.require(normal_form(pq - quintic.find("gbar")->value.rebind(pq.ring())).is_zero(), "chi = -200: gbar display");
  TauHierarchy hq = nonpositive_c1_hierarchy(Q(-200), fq, 3);
  for (int a = 1; a <= 4; ++a)
    for (int p = 1; p <= 3; ++p) {
      std::string key = "g_{" + std::to_string(a) + "," + std::to_string(p) + "}";
      std::string w;
      Poly diff = hq.g(a, p) - quintic.find(key)->value.rebind(hq.ring);
      o.require(quintic_display_fits(diff, a, p, &w), "quintic " + key + ": " + w);
    }
  for (std::string name : {"quintic-singularity", "quintic-singularity-aut"}) {
    CohFTSpec s = builtin(name);
    FrobeniusData f(s.genus0, s.eta);
    Poly p = nonpositive_c1_primary(*s.chi, f);
    o.require(normal_form(p - s.find("gbar")->value.rebind(p.ring())).is_zero(),
              name + ": chi = " + to_string(*s.chi) + " gbar display");
    if (*s.chi == 1075)
      o.require(normal_form(p.eps_part(2)) == parse_expr("-1075/48*eps^2*u[1,1]^2", p.ring()),
                "chi = 1075: eps^2 part " + print(normal_form(p.eps_part(2))));
  }
  Poly p0 = nonpositive_c1_primary(Q(0), fq);
  o.require(p0 == quintic.genus0.rebind(p0.ring()), "chi = 0: gbar != gbar^[0]");
  TauHierarchy h0 = nonpositive_c1_hierarchy(Q(0), fq, 3);
  TauHierarchy pr = principal_genus0(fq, 3);
  for (const auto& [k, g] : pr.dens)
    o.require(h0.g(k.first, k.second) == g.rebind(h0.ring), "chi = 0: density differs at level " + std::to_string(k.second));
}

// ---------------------------------------------------------------- 13

void properties(Outcome& o) {
  int total = 0;
  for (const auto& t : props::run_properties(20261015, 100)) {
    total += t.cases;
    o.require(t.failures == 0, t.name + ": " + std::to_string(t.failures) + " failures, e.g. " + t.witness);
  }
  o.note(std::to_string(total) + " cases");
  o.require(total >= 1000, "fewer than 1000 cases");
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"catalog commutativity and tau-symmetry, p+q <= 4", commute_and_tau},
      {"string relation for built Hamiltonians, d <= 4", string_relation},
      {"normal coordinates", normal_coordinates_match},
      {"genus-one builder on I2(k-1), k = 4..10, and the trivial theory", genus1_builder},
      {"genus-one ansatz dimensions and 3-spin adjudication", ansatz},
      {"DR potential properties for KdV and 3-spin, genus 2, degree 6", potential_properties},
      {"divisor equation for CP1, genus 1", divisor},
      {"homogeneity for 3-spin and I2(5), genus 1", homogeneity},
      {"reduced potential of the Witten-Kontsevich series equals F^DR", strong_dr_dz},
      {"genus-one DZ and DR hierarchies related by the connecting Miura map", genus1_dz_dr},
      {"B2 summary displays", b2_summary},
      {"closed-form hierarchies for non-positive c1", closed_form},
      {"randomized algebra properties", properties},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoi(argv[i]));

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    int id = int(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.log << "    exception: " << e.what() << "\n";
    }
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream t;
    t.precision(1);
    t << std::fixed << sec;
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << "  ("
              << o.checked << " checks, " << t.str() << " s)\n"
              << o.log.str() << std::flush;
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
