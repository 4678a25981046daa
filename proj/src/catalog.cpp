#include "drh/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace drh {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Printed: return "printed";
    case Provenance::Oracle: return "oracle";
    case Provenance::UserFile: return "user";
  }
  return "user";
}

FrobeniusData CohFTSpec::frobenius() const { return FrobeniusData(genus0, eta, euler); }

Poly CohFTSpec::primary_at(int eps) const {
  if (eps > ring->eps_cap && !eps_exact)
    throw SpecError(name + ": primary Hamiltonian is only known through eps^" + std::to_string(ring->eps_cap));
  return primary.eps_truncate(eps).rebind(with_caps(ring, eps, ring->udeg_cap));
}

const PrintedDisplay* CohFTSpec::find(const std::string& key) const {
  for (const auto& p : printed)
    if (p.key == key) return &p;
  return nullptr;
}

std::vector<const PrintedDisplay*> CohFTSpec::find_prefix(const std::string& prefix) const {
  std::vector<const PrintedDisplay*> out;
  for (const auto& p : printed)
    if (p.key.compare(0, prefix.size(), prefix) == 0) out.push_back(&p);
  return out;
}

// ---------------------------------------------------------------- series helpers

Q bernoulli_abs(int two_g) {
  std::vector<Q> B(two_g + 1);
  B[0] = 1;
  for (int m = 1; m <= two_g; ++m) {
    Q s = 0;
    mpz_class binom = 1;  // C(m+1, k)
    for (int k = 0; k < m; ++k) {
      s += Q(binom) * B[k];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    B[m] = -s / (m + 1);
  }
  return abs(B[two_g]);
}

Poly exp_series(const Poly& x, int low) {
  if (x.constant_term() != 0) throw std::invalid_argument("exp_series: argument has a constant term");
  const RingPtr& r = x.ring();
  Poly out(r), power(r, Q(1));
  Q fact = 1;
  for (int k = 0;; ++k) {
    if (k > 0) {
      power = power * x;
      fact *= k;
    }
    if (power.is_zero()) break;
    if (k >= low) out += power * (1 / fact);
    if (k > 4 * 64) throw CapOverflow("exp_series: no udeg cap on the ring");
  }
  return out;
}

Poly s_operator(const RingPtr& r, int var) {
  // S(z) = sum z^{2k} / (4^k (2k+1)!)
  Poly out(r);
  Q fact = 1, four = 1;
  for (int k = 0; 2 * k <= std::min(r->eps_cap, 64); ++k) {
    if (k > 0) {
      fact *= (2 * k) * (2 * k + 1);
      four *= 4;
    }
    out += Poly::eps(r, 2 * k) * Poly::var(r, var, 2 * k) * (1 / (four * fact));
  }
  return out;
}

namespace {

RingPtr make_ring(std::vector<std::string> labels, std::vector<Param> params, int eps_cap, int udeg_cap) {
  auto r = std::make_shared<Ring>();
  r->n_vars = int(labels.size());
  r->labels = std::move(labels);
  r->params = std::move(params);
  r->eps_cap = eps_cap;
  r->udeg_cap = udeg_cap;
  return r;
}

QMatrix antidiagonal(int n) {
  QMatrix m(n, std::vector<Q>(n, Q(0)));
  for (int i = 0; i < n; ++i) m[i][n - 1 - i] = 1;
  return m;
}

Poly drop_low_degree(const Poly& f) {
  // genus-0 terms of u-degree < 3 and all constants
  PolyBuilder b(f.ring());
  for (const auto& [m, c] : f.terms()) {
    if (m.udeg2() == 0) continue;
    if (m.eps == 0 && m.udeg2() < 6) continue;
    if (m.udeg2() == 2 && m.max_jet() > 0) continue;  // total derivative
    b.add(m, c);
  }
  return b.finish();
}

struct Builder {
  CohFTSpec s;

  Poly P(const std::string& text) const { return parse_expr(text, s.ring); }

  void print(std::string key, std::string text, int eps_order, std::string note = {}) {
    PrintedDisplay d;
    d.key = std::move(key);
    d.value = parse_expr(text, s.ring);
    d.text = std::move(text);
    d.eps_order = eps_order;
    d.note = std::move(note);
    s.printed.push_back(std::move(d));
  }
  void print_value(std::string key, std::string text, Poly value, int eps_order, std::string note = {}) {
    PrintedDisplay d;
    d.key = std::move(key);
    d.text = std::move(text);
    d.value = std::move(value);
    d.eps_order = eps_order;
    d.note = std::move(note);
    s.printed.push_back(std::move(d));
  }
  void euler(std::vector<Q> a, std::vector<std::string> b, Q delta) {
    EulerData e;
    e.a = std::move(a);
    for (const auto& t : b) e.b.push_back(P(t));
    e.delta = delta;
    s.euler = std::move(e);
    s.param_weight.assign(s.ring->params.size(), Q(0));
  }
  void identity_normal() {
    for (int a = 1; a <= s.n(); ++a) {
      std::string lab = s.ring->label(a);
      print("normal^" + lab, "u[" + lab + ",0]", s.eps_order);
    }
  }
};


Q spin_weight(int r, int alpha) { return ratio(r + 1 - alpha, r); }

CohFTSpec kdv() {
  Builder b;
  b.s.name = "kdv";
  b.s.summary = "trivial CohFT; the DR hierarchy is KdV";
  b.s.ring = make_ring({"1"}, {}, 2, kNoCap);
  b.s.eta = {{Q(1)}};
  b.s.genus0 = b.P("1/6*u[1,0]^3");
  b.s.eps_order = 2;
  b.print("gbar_{1,1}", "1/6*u[1,0]^3 + 1/24*eps^2*u[1,0]*u[1,2]", 2);
  b.print("gbar_{1,0}", "1/2*u[1,0]^2", 2);
  b.print("h_{1,-1}", "u[1,0]", 2);
  b.s.primary = primary_from_g11(b.s.find("gbar_{1,1}")->value);
  b.s.origin = "(D-2)^{-1} of the printed gbar_{1,1}";
  b.s.eps_exact = true;
  b.identity_normal();
  b.euler({Q(1)}, {"0"}, Q(0));
  return b.s;
}

CohFTSpec hodge() {
  Builder b;
  b.s.name = "hodge";
  b.s.summary = "full Chern class of the Hodge bundle, formal parameter l";
  b.s.ring = make_ring({"1"}, {{"l", 0, 3, false}}, 8, kNoCap);
  b.s.eta = {{Q(1)}};
  b.s.genus0 = b.P("1/6*u[1,0]^3");
  b.s.eps_order = 8;
  const RingPtr& r = b.s.ring;
  Poly g11 = b.P("1/6*u[1,0]^3");
  std::string text = "1/6*u[1,0]^3";
  for (int g = 1; 2 * g <= r->eps_cap; ++g) {
    Q fact = 1;
    for (int i = 2; i <= 2 * g; ++i) fact *= i;
    Q c = bernoulli_abs(2 * g) / (2 * fact);
    g11 += Poly::eps(r, 2 * g) * Poly::param(r, 0, g - 1) * Poly::var(r, 1, 0) * Poly::var(r, 1, 2 * g) * c;
  }
  b.print_value("gbar_{1,1}", "u^3/6 + sum_g eps^{2g} l^{g-1} |B_{2g}|/(2(2g)!) u u_{2g}", g11, 8);
  b.print("h_{1,-1}", "u[1,0]", 8);
  Poly Qs(r);
  for (int g = 1; 2 * g <= r->eps_cap; ++g) {
    Q fact = 1;
    for (int i = 2; i <= 2 * g; ++i) fact *= i;
    Q p = Q(1) << (2 * g - 1);
    Q c = (p - 1) / p * bernoulli_abs(2 * g) / fact;
    Qs += Poly::eps(r, 2 * g) * Poly::param(r, 0, g) * Poly::var(r, 1, 2 * g - 2) * c;
  }
  b.print_value("tau-shift", "sum_g eps^{2g} (2^{2g-1}-1)/2^{2g-1} |B_{2g}|/(2g)! l^g u_{2g-2}", Qs, 8);
  b.s.primary = primary_from_g11(g11);
  b.s.origin = "(D-2)^{-1} of the printed gbar_{1,1}";
  b.identity_normal();
  return b.s;
}

CohFTSpec cp1() {
  Builder b;
  b.s.name = "cp1";
  b.s.summary = "Gromov-Witten theory of CP^1, Novikov parameter q, basis (1, w)";
  b.s.ring = make_ring({"1", "w"}, {{"q", 0, 2, false}}, 4, 8);
  b.s.eta = antidiagonal(2);
  const RingPtr& r = b.s.ring;
  Poly q = Poly::param(r, 0);
  b.s.genus0 = b.P("1/2*u[1,0]^2*u[w,0]") + q * exp_series(Poly::var(r, 2), 2);
  b.s.eps_order = r->eps_cap;
  Poly S = s_operator(r, 2);
  // u^1 log S(eps dx) u^1, with log S(z) = sum_k B_{2k} z^{2k} / (2k (2k)!)
  Poly logS(r);
  for (int k = 1; 2 * k <= r->eps_cap; ++k) {
    Q fact = 1;
    for (int i = 2; i <= 2 * k; ++i) fact *= i;
    Q B = bernoulli_abs(2 * k) * (k % 2 ? 1 : -1);
    logS += Poly::eps(r, 2 * k) * Poly::var(r, 1) * Poly::var(r, 1, 2 * k) * (B / (2 * k * fact));
  }
  b.s.primary = b.P("1/2*u[1,0]^2*u[w,0]") + q * exp_series(S, 2) + logS;
  b.s.origin =
      "u^w-part from gbar_{w,0}; the u^1 log S(eps dx) u^1 term is the part invisible to d/du_0, "
      "fixed by dx-exactness of the recursion";
  b.print("gbar_{1,0}", "u[1,0]*u[w,0]", r->eps_cap);
  b.print_value("gbar_{w,0}", "(u^1)^2/2 + q (e^{S(eps dx) u^w} - u^w)",
                b.P("1/2*u[1,0]^2") + q * (exp_series(S, 2) + S - Poly::var(r, 2)), r->eps_cap);
  b.print("h_{1,-1}", "u[w,0]", r->eps_cap);
  b.print("h_{w,-1}", "u[1,0]", r->eps_cap);
  Poly Qs(r);
  for (int g = 1; 2 * g <= r->eps_cap; ++g) {
    Q fact = 1;
    for (int i = 2; i <= 2 * g; ++i) fact *= i;
    Q p = Q(1) << (2 * g - 1);
    Q B = bernoulli_abs(2 * g) * (g % 2 ? 1 : -1);  // signed B_{2g}
    Qs += Poly::eps(r, 2 * g) * Poly::var(r, 2, 2 * g - 2) * ((1 - p) / p * B / fact);
  }
  b.print_value("tau-shift", "sum_g eps^{2g} (1-2^{2g-1})/2^{2g-1} B_{2g}/(2g)! u^w_{2g-2}", Qs, r->eps_cap);
  b.identity_normal();
  b.euler({Q(1), Q(0)}, {"0", "0"}, Q(1));
  b.s.param_weight = {Q(2)};  // deg q = <c_1, [CP^1]>
  DivisorData div;
  div.gamma = 2;
  div.param_pairing = {Q(1)};
  b.s.divisor = div;
  return b.s;
}

CohFTSpec spin3() {
  Builder b;
  b.s.name = "3spin";
  b.s.summary = "Witten's 3-spin classes";
  b.s.ring = make_ring({"1", "2"}, {}, 4, kNoCap);
  b.s.eta = antidiagonal(2);
  b.s.genus0 = b.P("1/2*u[1,0]^2*u[2,0] + 1/72*u[2,0]^4");
  b.s.eps_order = 4;
  b.print("gbar_{1,1}",
          "1/2*u[1,0]^2*u[2,0] + 1/36*u[2,0]^4 + eps^2*(1/48*u[2,0]^2*u[2,2] + 1/12*u[1,0]*u[1,2])"
          " + 1/432*eps^4*u[2,0]*u[2,4]",
          4,
          "the quartic term is (D-2) of (u^2)^4/72; the genus-0 potential is f = (u^1)^2 u^2/2 + (u^2)^4/72");
  b.print("dgbar_{1,1}/du^1", "u[1,0]*u[2,0] + 1/6*eps^2*u[1,2]", 4);
  b.s.primary = primary_from_g11(b.s.find("gbar_{1,1}")->value);
  b.s.origin = "(D-2)^{-1} of the printed gbar_{1,1}";
  b.identity_normal();
  b.euler({spin_weight(3, 1), spin_weight(3, 2)}, {"0", "0"}, ratio(1, 3));
  return b.s;
}

CohFTSpec spin4() {
  Builder b;
  b.s.name = "4spin";
  b.s.summary = "Witten's 4-spin classes";
  b.s.ring = make_ring({"1", "2", "3"}, {}, 6, kNoCap);
  b.s.eta = antidiagonal(3);
  b.s.eps_order = 6;
  b.print("gbar_{1,1}",
          "1/2*u[1,0]^2*u[3,0] + 1/2*u[1,0]*u[2,0]^2 + 1/8*u[2,0]^2*u[3,0]^2 + 1/320*u[3,0]^5"
          " + eps^2*(1/8*u[1,0]*u[1,2] + 1/64*u[3,2]*u[2,0]^2 + 1/16*u[3,0]*u[2,0]*u[2,2]"
          " + 1/64*u[1,2]*u[3,0]^2 + 1/192*u[3,0]^3*u[3,2])"
          " + eps^4*(1/160*u[2,0]*u[2,4] + 5/4096*u[3,0]^2*u[3,4] + 3/640*u[1,0]*u[3,4])"
          " + 1/8192*eps^6*u[3,0]*u[3,6]",
          6);
  b.print("dgbar_{1,1}/du^1",
          "u[1,0]*u[3,0] + 1/2*u[2,0]^2 + eps^2*(1/4*u[1,2] + 1/64*(2*u[3,0]*u[3,2] + 2*u[3,1]^2))"
          " + 3/640*eps^4*u[3,4]",
          6);
  b.s.primary = primary_from_g11(b.s.find("gbar_{1,1}")->value);
  b.s.genus0 = b.s.primary.eps_part(0);
  b.s.origin = "(D-2)^{-1} of the printed gbar_{1,1}";
  b.print("normal^1", "u[1,0] + 1/96*eps^2*u[3,2]", 6);
  b.print("normal^2", "u[2,0]", 6);
  b.print("normal^3", "u[3,0]", 6);
  b.euler({spin_weight(4, 1), spin_weight(4, 2), spin_weight(4, 3)}, {"0", "0", "0"}, Q(1, 2));
  return b.s;
}

CohFTSpec spin5() {
  Builder b;
  b.s.name = "5spin";
  b.s.summary = "Witten's 5-spin classes";
  b.s.ring = make_ring({"1", "2", "3", "4"}, {}, 8, kNoCap);
  b.s.eta = antidiagonal(4);
  b.s.eps_order = 8;
  b.print("gbar_{1,1}",
          "1/2*u[1,0]^2*u[4,0] + u[1,0]*u[2,0]*u[3,0] + 1/6*u[2,0]^3 + 1/30*u[3,0]^4"
          " + 1/5*u[2,0]*u[3,0]^2*u[4,0] + 1/10*u[2,0]^2*u[4,0]^2 + 1/50*u[3,0]^2*u[4,0]^3"
          " + 1/3750*u[4,0]^6"
          " + eps^2*(1/6*u[1,0]*u[1,2] + 3/20*u[2,0]*u[3,0]*u[3,2] + 1/10*u[2,0]*u[3,1]^2"
          " + 1/20*u[1,2]*u[3,0]*u[4,0] + 1/10*u[2,0]*u[2,2]*u[4,0] + 1/40*u[2,1]^2*u[4,0]"
          " + 1/50*u[2,0]*u[4,0]*u[4,1]^2 + 1/75*u[2,0]*u[4,0]^2*u[4,2]"
          " + 1/75*u[3,0]^2*u[4,0]*u[4,2] + 1/50*u[3,0]*u[3,2]*u[4,0]^2 + 1/1200*u[4,0]^4*u[4,2])"
          " + eps^4*(7/600*u[2,0]*u[2,4] + 11/900*u[1,0]*u[3,4] + 7/1200*u[2,0]*u[4,0]*u[4,4]"
          " + 17/1200*u[2,0]*u[4,1]*u[4,3] + 71/7200*u[2,0]*u[4,2]^2 + 31/3600*u[3,0]*u[3,4]*u[4,0]"
          " + 7/450*u[3,1]*u[3,3]*u[4,0] + 91/7200*u[3,2]^2*u[4,0] + 13/12000*u[4,2]^2*u[4,0]^2"
          " + 3/4000*u[4,2]*u[4,1]^2*u[4,0])"
          " + eps^6*(53/108000*u[3,0]*u[3,6] + 11/18000*u[2,0]*u[4,6] + 1397/6480000*u[4,3]^2*u[4,0]"
          " + 617/1620000*u[4,4]*u[4,2]*u[4,0])"
          " + 107/10800000*eps^8*u[4,0]*u[4,8]",
          8);
  b.print("dgbar_{1,1}/du^1",
          "u[1,0]*u[4,0] + u[2,0]*u[3,0] + eps^2*(1/3*u[1,2]"
          " + 1/20*(u[3,2]*u[4,0] + 2*u[3,1]*u[4,1] + u[3,0]*u[4,2])) + 11/900*eps^4*u[3,4]",
          8);
  b.s.primary = primary_from_g11(b.s.find("gbar_{1,1}")->value);
  b.s.genus0 = b.s.primary.eps_part(0);
  b.s.origin = "(D-2)^{-1} of the printed gbar_{1,1}";
  b.print("normal^1", "u[1,0] + 1/60*eps^2*u[3,2]", 8);
  b.print("normal^2", "u[2,0] + 1/60*eps^2*u[4,2]", 8);
  b.print("normal^3", "u[3,0]", 8);
  b.print("normal^4", "u[4,0]", 8);
  b.euler({spin_weight(5, 1), spin_weight(5, 2), spin_weight(5, 3), spin_weight(5, 4)}, {"0", "0", "0", "0"},
          Q(3, 5));
  return b.s;
}

// ---------------------------------------------------------------- B2

constexpr int kB2Udeg = 8;

RingPtr b2_ring() {
  return make_ring({"1", "3"}, {{"s", -(kB2Udeg + 6), kB2Udeg + 6, true}}, 2, kB2Udeg);
}

// (w^3 + s)^{-n} expanded in w^3
Poly b2_inverse_power(const RingPtr& r, int n) {
  Poly out(r);
  Poly w = Poly::var(r, 2);
  Q binom = 1;  // C(n+k-1, k)
  for (int k = 0; k <= r->udeg_cap; ++k) {
    if (k > 0) binom = binom * (n + k - 1) / k;
    out += w.pow(k) * Poly::param(r, 0, -n - k) * (k % 2 ? -binom : binom);
  }
  return out;
}

void b2_common(Builder& b) {
  b.s.ring = b2_ring();
  b.s.eta = antidiagonal(2);
  b.s.genus0 = b.P("1/2*u[1,0]^2*u[3,0] + 1/960*(u[3,0]^5 + 5*s*u[3,0]^4 + 10*s^2*u[3,0]^3)");
  b.s.eps_order = 2;
  b.euler({Q(1), Q(1, 2)}, {"0", "1/2*s"}, Q(1, 2));
}

CohFTSpec b2_invariant() {
  Builder b;
  b.s.name = "b2-i";
  b.s.summary = "B2 as the Z/2-invariant part of the shifted 4-spin theory (partial CohFT)";
  b2_common(b);
  const RingPtr& r = b.s.ring;
  // shifted 4-spin primary restricted to u^2 = 0
  CohFTSpec s4 = spin4();
  Poly base = s4.primary.eps_truncate(2);
  auto r4 = with_caps(s4.ring, 2, kNoCap);
  base = base.rebind(r4);
  auto r3 = std::make_shared<Ring>(*r);
  r3->n_vars = 3;
  r3->labels = {"1", "2", "3"};
  RingPtr r3p = r3;
  Poly lifted = parse_expr(print(base), r3p);  // gains the parameter s
  lifted = set_var_zero(lifted, 2);
  lifted = shift_var(lifted, 3, Poly::param(r3p, 0));
  std::vector<Poly> images{Poly::var(r, 1), Poly(r), Poly::var(r, 2)};
  b.s.primary = drop_low_degree(substitute(lifted, images));
  b.s.origin = "4-spin primary at u^2 = 0 with u^3 -> u^3 + s";
  b.print("gbar_{3,0}|s=0",
          "1/2*u[1,0]^2 + 1/192*u[3,0]^4 + 1/4*eps^2*(1/64*u[3,0]^2*u[3,2] + 1/24*u[3,0]*u[1,2])", 2);
  b.print("gbar_{3,0}",
          "1/2*u[1,0]^2 + 1/192*u[3,0]^4 + 1/48*s*u[3,0]^3 + 1/32*s^2*u[3,0]^2"
          " + 1/4*eps^2*(1/64*(u[3,0] + s)^2*u[3,2] + 1/24*u[3,0]*u[1,2])",
          2);
  b.print("dgbar_{3,0}/du^3",
          "1/48*u[3,0]^3 + 1/16*s*u[3,0]^2 + 1/16*s^2*u[3,0]"
          " + 1/4*eps^2*(1/32*u[3,1]^2 + 1/16*u[3,2]*(u[3,0] + s) + 1/24*u[1,2])",
          2);
  b.print("dgbar_{3,0}/du^1", "u[1,0] + 1/4*eps^2*1/24*u[3,2]", 2);
  b.print("Omega^DZ_{3,0;3,0}",
          "1/48*u[3,0]^3 + 1/16*s*u[3,0]^2 + 1/16*s^2*u[3,0]"
          " + 1/4*eps^2*(1/32*u[3,1]^2 + 1/16*u[3,2]*(u[3,0] + s) + 1/12*u[1,2])",
          2, "displayed in the DZ normal coordinates w");
  b.print("A-term", "1/4*eps^2*1/32*s*u[3,1]^2", 2,
          "the sign of the displayed shift term is opposite to the (u^3+s)^2 u^3_2 term of gbar_{3,0}");
  auto corr = [&](int g, std::vector<Index> pts, const std::string& v) {
    b.s.correlators.push_back({g, std::move(pts), b.P(v), Provenance::Printed});
  };
  corr(1, {{1, 2}, {2, 0}, {2, 0}}, "1/48");
  corr(1, {{2, 2}, {2, 0}, {2, 0}}, "1/64*s");
  corr(1, {{2, 1}, {2, 1}, {2, 0}, {2, 0}}, "1/64");
  corr(1, {{2, 0}}, "0");
  corr(1, {{2, 0}, {2, 0}}, "0");
  corr(1, {{2, 0}, {2, 0}, {2, 1}}, "0");
  return b.s;
}

CohFTSpec b2_teleman() {
  Builder b;
  b.s.name = "b2-t";
  b.s.summary = "B2 as the semisimple CohFT reconstructed at s != 0";
  b2_common(b);
  const RingPtr& r = b.s.ring;
  FrobeniusData fr(b.s.genus0, b.s.eta, b.s.euler);
  TauHierarchy h0 = principal_genus0(fr, 1);
  Genus1Correction c = dr_genus1(fr, h0);
  b.s.primary = b.s.genus0 + c.gbar2.rebind(r);
  b.s.origin = "genus-0 potential plus the closed-form genus-1 correction";
  // G = -1/48 log(1 + u^3/s)
  Poly G(r);
  Poly w = Poly::var(r, 2);
  for (int k = 1; k <= r->udeg_cap; ++k)
    G += w.pow(k) * Poly::param(r, 0, -k) * ratio(k % 2 ? -1 : 1, 48 * k);
  b.s.g_function = G;
  b.print("gbar_{3,0}",
          "1/2*u[1,0]^2 + 1/32*s^2*u[3,0]^2 + 1/48*s*u[3,0]^3 + 1/192*u[3,0]^4"
          " - 1/192*eps^2*u[3,1]^2*(u[3,0] + s)",
          2);
  b.print("dgbar_{3,0}/du^3",
          "1/48*u[3,0]^3 + 1/16*s*u[3,0]^2 + 1/16*s^2*u[3,0]"
          " + 1/4*eps^2*(1/48*u[3,1]^2 + 1/24*u[3,2]*(u[3,0] + s))",
          2);
  Poly omega = b.P("1/48*u[3,0]^3 + 1/16*s*u[3,0]^2 + 1/16*s^2*u[3,0]"
                   " + 1/4*eps^2*(1/192*u[3,1]^2 + 1/24*u[3,2]*(u[3,0] + s))") +
               Poly::eps(r, 2) * Q(1, 48) * Poly::var(r, 1, 1, 2) * b2_inverse_power(r, 2);
  b.print_value("Omega^DZ_{3,0;3,0}",
                "(w^3)^3/48 + s (w^3)^2/16 + s^2 w^3/16 + eps^2/4 ((w^3_1)^2/192 + w^3_2 (w^3+s)/24"
                " + (w^1_1)^2/(12 (w^3+s)^2))",
                omega, 2, "displayed in the DZ normal coordinates w; (w^3+s)^{-2} expanded in w^3");
  auto corr = [&](int g, std::vector<Index> pts, const std::string& v) {
    b.s.correlators.push_back({g, std::move(pts), b.P(v), Provenance::Printed});
  };
  corr(1, {{2, 0}}, "-1/48*s^-1");
  corr(1, {{2, 0}, {2, 0}}, "1/48*s^-2");
  corr(1, {{1, 2}, {2, 0}, {2, 0}}, "0");
  corr(1, {{2, 1}, {2, 0}, {2, 0}}, "0");
  corr(1, {{2, 1}, {2, 1}, {2, 0}, {2, 0}}, "1/96");
  corr(1, {{2, 2}, {2, 0}, {2, 0}}, "7/768*s");
  corr(0, {{1, 0}, {1, 0}, {2, 0}}, "1");
  corr(0, {{2, 0}, {2, 0}, {2, 0}, {2, 0}, {2, 0}}, "1/8");
  corr(0, {{2, 0}, {2, 0}, {2, 0}, {2, 0}}, "1/8*s");
  corr(0, {{2, 0}, {2, 0}, {2, 0}}, "1/16*s^2");
  return b.s;
}

// ---------------------------------------------------------------- non-positive c1

void nonpositive_common(Builder& b, const Q& chi) {
  b.s.eta = {{0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}};
  b.s.chi = chi;
  b.s.eps_order = 2;
  b.s.primary = b.s.genus0 + Poly::eps(b.s.ring, 2) * Poly::var(b.s.ring, 1) * Poly::var(b.s.ring, 1, 2) * (chi / 48);
  b.s.origin = "genus-0 potential plus eps^2 chi/48 u^1 u^1_xx";
  b.s.eps_exact = true;
}

CohFTSpec quintic() {
  Builder b;
  b.s.name = "quintic";
  b.s.summary = "even cohomology of the quintic threefold; c_d kept formal";
  b.s.ring = make_ring({"1", "2", "3", "4"}, {{"q", 0, 2, false}, {"c1", 0, 2, false}, {"c2", 0, 1, false}}, 2, 8);
  const RingPtr& r = b.s.ring;
  Poly inst(r), inst_g1(r), inst_g2(r);
  for (int d = 1; d <= 2; ++d) {
    Poly cq = Poly::param(r, d) * Poly::param(r, 0, d);
    Poly x = Poly::var(r, 2) * Q(d);
    inst += cq * exp_series(x, 3);
  }
  b.s.genus0 = b.P("1/2*u[1,0]^2*u[4,0] + 5/6*u[2,0]^3 + u[1,0]*u[2,0]*u[3,0]") + inst;
  nonpositive_common(b, Q(-200));
  b.print_value("gbar",
                "(u^1)^2 u^4/2 + 5/6 (u^2)^3 + u^1 u^2 u^3 + sum_d c_d q^d e^{d u^2} + 25 eps^2/6 (u^1_x)^2",
                b.P("1/2*u[1,0]^2*u[4,0] + 5/6*u[2,0]^3 + u[1,0]*u[2,0]*u[3,0] + 25/6*eps^2*u[1,1]^2") + inst, 2);
  // the g_{alpha,p} displays, transcribed for p = 1..3
  auto u = [&](int a, int j = 0) { return Poly::var(r, a, j); };
  for (int p = 1; p <= 3; ++p) {
    Q fp1 = 1, fp = 1, fm1 = 1, fp2 = 1;
    for (int i = 2; i <= p + 1; ++i) fp1 *= i;
    for (int i = 2; i <= p; ++i) fp *= i;
    for (int i = 2; i <= p - 1; ++i) fm1 *= i;
    fp2 = fp1 * (p + 2);
    Poly e1(r), e2(r);
    for (int d = 1; d <= 2; ++d) {
      Poly cq = Poly::param(r, d) * Poly::param(r, 0, d);
      Poly ex = exp_series(u(2) * Q(d), 0);
      e1 += cq * (u(2) * Q(d) - Poly(r, Q(2))) * ex;
      e2 += cq * ex * Q(d);
    }
    std::string ps = std::to_string(p);
    Poly g1 = u(1).pow(p + 1) * (1 / fp1) + u(1).pow(p - 1) * u(2).pow(3) * (Q(5, 6) / fm1) +
              u(1).pow(p) * u(2) * u(3) * (1 / fp) + e1 * u(1).pow(p - 1) * (1 / fm1) -
              Poly::eps(r, 2) * u(1).pow(p) * u(1, 2) * (Q(25, 3) / fp);
    b.print_value("g_{1," + ps + "}",
                  "(u^1)^{p+1}/(p+1)! + 5/6 (u^1)^{p-1}/(p-1)! (u^2)^3 + (u^1)^p/p! u^2 u^3"
                  " + sum_d c_d (d u^2 - 2) e^{d u^2} (u^1)^{p-1}/(p-1)! - 25 eps^2/3 (u^1)^p/p! u^1_xx",
                  g1, 2, "the first term lacks the factor u^4");
    Poly g2 = u(1).pow(p + 1) * u(3) * (1 / fp1) + u(1).pow(p) * u(2).pow(2) * (Q(5, 2) / fp) +
              e2 * u(1).pow(p) * (1 / fp);
    b.print_value("g_{2," + ps + "}",
                  "(u^1)^{p+1} u^3/(p+1)! + 5/2 (u^1)^p/p! (u^2)^2 + sum_d c_d d e^{d u^2} (u^1)^p/p!", g2, 2);
    b.print_value("g_{3," + ps + "}", "(u^1)^{p+1}/(p+1)! u^2", u(1).pow(p + 1) * u(2) * (1 / fp1), 2);
    b.print_value("g_{4," + ps + "}", "(u^1)^{p+2}/(p+2)!", u(1).pow(p + 2) * (1 / fp2), 2);
  }
  return b.s;
}

CohFTSpec quintic_singularity(bool aut) {
  Builder b;
  b.s.name = aut ? "quintic-singularity-aut" : "quintic-singularity";
  b.s.summary = aut ? "quintic singularity with the Aut(W)-invariant restriction (chi = 1075)"
                    : "FJRW theory of the quintic singularity with <j> (chi = -200)";
  b.s.ring = make_ring({"1", "2", "3", "4"}, {{"n8", 0, 1, false}}, 2, 9);
  b.s.genus0 = b.P("1/2*u[1,0]^2*u[4,0] + 1/6*u[2,0]^3 + u[1,0]*u[2,0]*u[3,0] + 1/40320*n8*u[2,0]^8");
  nonpositive_common(b, aut ? Q(1075) : Q(-200));
  std::string tail = aut ? " - 1075/48*eps^2*u[1,1]^2" : " + 25/6*eps^2*u[1,1]^2";
  b.print("gbar", "1/2*u[1,0]^2*u[4,0] + 1/6*u[2,0]^3 + u[1,0]*u[2,0]*u[3,0] + 1/40320*n8*u[2,0]^8" + tail, 2);
  return b.s;
}

}  // namespace

// ---------------------------------------------------------------- I_2

CohFTSpec i2_theory(int k) {
  if (k < 3) throw SpecError("I2: need k >= 3");
  Builder b;
  b.s.name = "i2-" + std::to_string(k - 1);
  b.s.summary = "I_2(" + std::to_string(k - 1) + ") Frobenius manifold, k = " + std::to_string(k);
  b.s.ring = make_ring({"1", "2"}, {}, 2, kNoCap);
  b.s.eta = antidiagonal(2);
  b.s.genus0 = b.P("1/2*u[1,0]^2*u[2,0] + 1/72*u[2,0]^" + std::to_string(k));
  b.s.eps_order = 2;
  b.euler({Q(1), ratio(2, k - 1)}, {"0", "0"}, ratio(k - 3, k - 1));
  FrobeniusData fr(b.s.genus0, b.s.eta, b.s.euler);
  TauHierarchy h0 = principal_genus0(fr, 1);
  b.s.primary = b.s.genus0 + dr_genus1(fr, h0).gbar2.rebind(b.s.ring);
  b.s.origin = "genus-0 potential plus the closed-form genus-1 correction";
  Q c = ratio((k - 2) * (k - 1) * k, 36);
  std::string vpow = k >= 4 ? "*u[2,0]^" + std::to_string(k - 3) : "";
  b.print("gbar^[2]", "-1/48*eps^2*(2*u[1,1]^2 + " + to_string(c) + vpow + "*u[2,1]^2)", 2);
  return b.s;
}

// ---------------------------------------------------------------- registry

std::vector<std::string> builtin_names() {
  return {"kdv",     "hodge", "cp1",     "3spin",   "4spin",   "5spin",          "b2-i",
          "b2-t",    "quintic", "quintic-singularity", "quintic-singularity-aut", "i2-4", "i2-5", "i2-6"};
}

CohFTSpec builtin(const std::string& name) {
  CohFTSpec s;
  if (name == "kdv" || name == "trivial") s = kdv();
  else if (name == "hodge") s = hodge();
  else if (name == "cp1") s = cp1();
  else if (name == "3spin") s = spin3();
  else if (name == "4spin") s = spin4();
  else if (name == "5spin") s = spin5();
  else if (name == "b2-i") s = b2_invariant();
  else if (name == "b2-t") s = b2_teleman();
  else if (name == "quintic") s = quintic();
  else if (name == "quintic-singularity") s = quintic_singularity(false);
  else if (name == "quintic-singularity-aut") s = quintic_singularity(true);
  else if (name.rfind("i2-", 0) == 0) {
    int m = 0;
    try {
      m = std::stoi(name.substr(3));
    } catch (const std::exception&) {
      throw SpecError("unknown theory '" + name + "'");
    }
    s = i2_theory(m + 1);
  } else {
    throw SpecError("unknown theory '" + name + "'");
  }
  validate(s);
  return s;
}

void validate(const CohFTSpec& s) {
  const int N = s.n();
  if (int(s.eta.size()) != N) throw SpecError(s.name + ": metric has the wrong size");
  for (int a = 0; a < N; ++a) {
    if (int(s.eta[a].size()) != N) throw SpecError(s.name + ": metric has the wrong size");
    for (int b = 0; b < N; ++b)
      if (s.eta[a][b] != s.eta[b][a]) throw SpecError(s.name + ": metric is not symmetric");
  }
  try {
    invert(s.eta);
  } catch (const std::domain_error&) {
    throw SpecError(s.name + ": metric is singular");
  }
  try {
    FrobeniusData fr = s.frobenius();
    (void)fr;
  } catch (const std::exception& e) {
    throw SpecError(s.name + ": " + e.what());
  }
  if (!has_graded_degree(s.primary, 0)) throw SpecError(s.name + ": primary Hamiltonian is not of degree 0");
  if (s.primary.eps_part(0) != s.genus0)
    throw SpecError(s.name + ": genus-0 part of the primary Hamiltonian differs from the potential: " +
                    print(s.primary.eps_part(0) - s.genus0));
  if (s.euler && (int(s.euler->a.size()) != N || int(s.euler->b.size()) != N))
    throw SpecError(s.name + ": Euler data has the wrong size");
  if (s.euler && s.euler->a[0] != 1) throw SpecError(s.name + ": Euler weight of the unit must be 1");
}

CohFTSpec resolve_cohft(const std::string& name) {
  auto names = builtin_names();
  if (std::find(names.begin(), names.end(), name) != names.end() || name == "trivial" ||
      (name.rfind("i2-", 0) == 0 && name.find('.') == std::string::npos))
    return builtin(name);
  return load_manifest(name);
}

}  // namespace drh
