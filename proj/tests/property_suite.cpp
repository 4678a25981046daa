#include "property_suite.hpp"

#include <functional>

namespace drh::props {

Q Gen::coeff() {
  int p = 0;
  while (p == 0) p = uniform(-5, 5);
  return ratio(p, uniform(1, 4));
}

Poly Gen::poly(const RingPtr& r, int terms, int max_eps, bool constants) {
  Poly out(r);
  int k = uniform(1, terms);
  for (int t = 0; t < k; ++t) {
    std::vector<Factor> fs;
    int nf = uniform(constants ? 0 : 1, 3);
    for (int i = 0; i < nf; ++i) fs.push_back({uniform(1, r->n_vars), uniform(0, 2), 2 * uniform(1, 2)});
    out += Poly::from_mono(r, Mono::from_factors(fs, uniform(0, max_eps)), coeff());
  }
  return out;
}

Poly Gen::graded(const RingPtr& r, int d, int terms) {
  Poly out(r);
  int k = uniform(1, terms);
  for (int t = 0; t < k; ++t) {
    std::vector<Factor> fs;
    for (int left = d; left > 0;) {
      int j = uniform(1, left);
      fs.push_back({uniform(1, r->n_vars), j, 2});
      left -= j;
    }
    for (int i = uniform(0, 2); i > 0; --i) fs.push_back({uniform(1, r->n_vars), 0, 2});
    out += Poly::from_mono(r, Mono::from_factors(fs), coeff());
  }
  return out;
}

MiuraMap Gen::miura(const RingPtr& r, int max_k) {
  std::vector<Poly> im;
  for (int a = 1; a <= r->n_vars; ++a) {
    Poly p = Poly::var(r, a);
    for (int k = 1; k <= max_k; ++k) p += Poly::eps(r, k) * graded(r, k);
    im.push_back(p);
  }
  return MiuraMap(im);
}

namespace {

using Check = std::function<std::string(Gen&)>;  // empty string on success

std::string same(const Poly& a, const Poly& b) {
  if (a == b) return {};
  return "difference " + print(a - b);
}

std::string null_functional(const Poly& f) {
  Poly nf = normal_form(f);
  return nf.is_zero() ? std::string() : "residual " + print(nf);
}

QMatrix antidiag2() { return {{Q(0), Q(1)}, {Q(1), Q(0)}}; }

std::vector<std::pair<std::string, Check>> properties() {
  RingPtr r2 = Ring::make(2, {}, 4, kNoCap);
  RingPtr r1 = Ring::make(1, {}, 4, kNoCap);
  RingPtr m2 = Ring::make(2, {}, 3, kNoCap);  // Miura checks at eps^3
  std::vector<std::pair<std::string, Check>> out;

  out.push_back({"ring: associativity", [=](Gen& g) {
                   Poly a = g.poly(r2, 3, 2, true), b = g.poly(r2, 3, 2, true), c = g.poly(r2, 3, 2, true);
                   std::string w = same((a * b) * c, a * (b * c));
                   return w.empty() ? same((a + b) + c, a + (b + c)) : w;
                 }});
  out.push_back({"ring: distributivity", [=](Gen& g) {
                   Poly a = g.poly(r2, 3, 2, true), b = g.poly(r2, 3, 2, true), c = g.poly(r2, 3, 2, true);
                   return same(a * (b + c), a * b + a * c);
                 }});
  out.push_back({"ring: commutativity", [=](Gen& g) {
                   Poly a = g.poly(r2, 4, 2, true), b = g.poly(r2, 4, 2, true);
                   std::string w = same(a * b, b * a);
                   return w.empty() ? same(a + b, b + a) : w;
                 }});
  out.push_back({"dx: Leibniz rule", [=](Gen& g) {
                   Poly a = g.poly(r2), b = g.poly(r2);
                   return same(dx(a * b), dx(a) * b + a * dx(b));
                 }});
  out.push_back({"dx: commutator with partial", [=](Gen& g) {
                   Poly f = g.poly(r2, 4);
                   int a = g.uniform(1, 2), k = g.uniform(0, 3);
                   Poly lower = k > 0 ? partial(f, a, k - 1) : Poly(r2);
                   return same(partial(dx(f), a, k) - dx(partial(f, a, k)), lower);
                 }});
  out.push_back({"delta: kills total derivatives", [=](Gen& g) {
                   Poly f = dx(g.poly(r2, 4));
                   for (int a = 1; a <= 2; ++a) {
                     Poly d = var_deriv(f, a);
                     if (!d.is_zero()) return "delta_" + std::to_string(a) + " = " + print(d);
                   }
                   return std::string();
                 }});
  out.push_back({"anti_dx: round trip", [=](Gen& g) {
                   Poly f = g.poly(r2, 4);
                   std::string w = same(anti_dx(dx(f)), f);
                   if (!w.empty()) return w;
                   Poly e = dx(f);
                   return same(dx(anti_dx(e)), e);
                 }});
  out.push_back({"normal form: invariant under dx", [=](Gen& g) {
                   Poly f = g.poly(r2, 3), h = g.poly(r2, 3);
                   return same(normal_form(f + dx(h)), normal_form(f));
                 }});
  out.push_back({"bracket: antisymmetry", [=](Gen& g) {
                   HamOperator k = eta_dx(antidiag2(), r2);
                   Functional f(g.poly(r2, 3, 0)), h(g.poly(r2, 3, 0));
                   return null_functional(bracket_ff(f, h, k).rep() + bracket_ff(h, f, k).rep());
                 }});
  out.push_back({"bracket: Jacobi", [=](Gen& g) {
                   HamOperator k = eta_dx(antidiag2(), r2);
                   Functional a(g.poly(r2, 2, 0)), b(g.poly(r2, 2, 0)), c(g.poly(r2, 2, 0));
                   Poly s = bracket_ff(a, bracket_ff(b, c, k), k).rep() + bracket_ff(b, bracket_ff(c, a, k), k).rep() +
                            bracket_ff(c, bracket_ff(a, b, k), k).rep();
                   return null_functional(s);
                 }});
  out.push_back({"miura: inverse", [=](Gen& g) {
                   MiuraMap phi = g.miura(m2);
                   MiuraMap id = MiuraMap::identity(m2);
                   if (!maps_equal(compose(phi, invert_miura(phi)), id)) return "phi o phi^-1 != id for " + phi.str();
                   if (!maps_equal(compose(invert_miura(phi), phi), id)) return "phi^-1 o phi != id for " + phi.str();
                   return std::string();
                 }});
  out.push_back({"miura: associativity", [=](Gen& g) {
                   MiuraMap a = g.miura(m2), b = g.miura(m2), c = g.miura(m2);
                   if (maps_equal(compose(compose(a, b), c), compose(a, compose(b, c)))) return std::string();
                   return "fails for " + a.str() + "; " + b.str() + "; " + c.str();
                 }});
  out.push_back({"miura: operator transform is functorial", [=](Gen& g) {
                   HamOperator k = eta_dx({{Q(1)}}, Ring::make(1, {}, 3, kNoCap));
                   MiuraMap phi = g.miura(k.ring), psi = g.miura(k.ring);
                   HamOperator twice = transform_operator(transform_operator(k, psi), phi);
                   if (twice == transform_operator(k, compose(phi, psi))) return std::string();
                   return "fails for " + phi.str() + "; " + psi.str();
                 }});
  out.push_back({"miura: constant term stays zero", [=](Gen& g) {
                   // u~ = u + dx r with r of degree -1
                   std::vector<Poly> im;
                   for (int a = 1; a <= 2; ++a) {
                     Poly rr = Poly::eps(m2) * g.graded(m2, 0) + Poly::eps(m2, 2) * g.graded(m2, 1) +
                               Poly::eps(m2, 3) * g.graded(m2, 2);
                     im.push_back(Poly::var(m2, a) + dx(rr));
                   }
                   HamOperator kt = transform_operator(eta_dx(antidiag2(), m2), MiuraMap(im));
                   for (const auto& row : op_constant_term(kt))
                     for (const auto& c : row)
                       if (!c.is_zero()) return "constant term " + print(c);
                   return std::string();
                 }});
  out.push_back({"string: dx of a rank-one flow", [=](Gen& g) {
                   // {u^1, int u^2/2} is the translation flow
                   HamOperator k = eta_dx({{Q(1)}}, r1);
                   Poly f = g.poly(r1, 3);
                   Poly h = Poly::var(r1, 1).pow(2) * Q(1, 2);
                   return same(bracket_pf(f, Functional(h), k), dx(f));
                 }});
  return out;
}

}  // namespace

std::vector<Tally> run_properties(std::uint64_t seed, int cases) {
  std::vector<Tally> out;
  auto props = properties();
  for (std::size_t i = 0; i < props.size(); ++i) {
    Gen g(seed + 7919 * i);
    Tally t;
    t.name = props[i].first;
    for (int c = 0; c < cases; ++c) {
      std::string w;
      try {
        w = props[i].second(g);
      } catch (const std::exception& e) {
        w = std::string("exception: ") + e.what();
      }
      ++t.cases;
      if (!w.empty()) {
        if (t.failures++ == 0) t.witness = w.size() > 300 ? w.substr(0, 300) + " ..." : w;
      }
    }
    out.push_back(t);
  }
  return out;
}

}  // namespace drh::props
