#include "drh/genus.hpp"

#include <sstream>

namespace drh {

namespace {

Poly linear_seed(const RingPtr& r, const QMatrix& eta, int alpha) {
  Poly s(r);
  for (int mu = 1; mu <= r->n_vars; ++mu)
    if (eta[alpha - 1][mu - 1] != 0) s += Poly::var(r, mu) * eta[alpha - 1][mu - 1];
  return s;
}

RingPtr genus1_ring(const RingPtr& r) {
  return with_caps(r, 2, r->udeg_cap);
}

Poly first_partial(const Poly& f, int var) { return partial(f, var, 0); }

}  // namespace

FrobeniusData::FrobeniusData(const Poly& potential, QMatrix eta, std::optional<EulerData> euler)
    : ring_(potential.ring()), f_(potential), eta_(std::move(eta)), euler_(std::move(euler)) {
  const int N = ring_->n_vars;
  if (int(eta_.size()) != N) throw std::invalid_argument("FrobeniusData: metric has wrong size");
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      if (eta_[a][b] != eta_[b][a]) throw std::invalid_argument("FrobeniusData: metric not symmetric");
  eta_inv_ = invert(eta_);
  for (const auto& [m, c] : f_.terms())
    if (m.max_jet() > 0) throw std::invalid_argument("FrobeniusData: potential depends on jets");

  std::vector<Poly> d1, d2(N * N);
  for (int a = 1; a <= N; ++a) d1.push_back(first_partial(f_, a));
  for (int a = 1; a <= N; ++a)
    for (int b = a; b <= N; ++b) d2[(a - 1) * N + b - 1] = first_partial(d1[a - 1], b);
  c3_.resize(N * N * N);
  for (int a = 1; a <= N; ++a)
    for (int b = a; b <= N; ++b)
      for (int c = b; c <= N; ++c) {
        Poly v = first_partial(d2[(a - 1) * N + b - 1], c);
        int perm[6][3] = {{a, b, c}, {a, c, b}, {b, a, c}, {b, c, a}, {c, a, b}, {c, b, a}};
        for (auto& p : perm) c3_[((p[0] - 1) * N + p[1] - 1) * N + p[2] - 1] = v;
      }

  // unit axiom
  for (int a = 1; a <= N; ++a)
    for (int b = 1; b <= N; ++b) {
      Poly res = c3(1, a, b) - Poly(ring_, eta_[a - 1][b - 1]);
      if (!res.is_zero())
        throw std::invalid_argument("FrobeniusData: unit axiom fails at (" + ring_->label(a) + "," +
                                    ring_->label(b) + "): " + print(res));
    }
  if (euler_) {
    if (int(euler_->a.size()) != N || (!euler_->b.empty() && int(euler_->b.size()) != N))
      throw std::invalid_argument("EulerData: wrong length");
    if (euler_->a[0] != 1) throw std::invalid_argument("EulerData: a_1 must be 1");
    if (euler_->b.empty()) euler_->b.assign(N, Poly(ring_));
    for (auto& b : euler_->b) b = b.rebind(ring_);
  }

  tr3_.assign(N, Poly(ring_));
  for (int a = 1; a <= N; ++a)
    for (int m = 1; m <= N; ++m)
      for (int b = 1; b <= N; ++b)
        if (eta_inv_[m - 1][b - 1] != 0) tr3_[a - 1] += c3(a, m, b) * eta_inv_[m - 1][b - 1];
  tr4_.assign(N, std::vector<Poly>(N, Poly(ring_)));
  for (int a = 1; a <= N; ++a)
    for (int b = a; b <= N; ++b) {
      Poly acc(ring_);
      for (int r = 1; r <= N; ++r)
        for (int s = 1; s <= N; ++s)
          if (eta_inv_[r - 1][s - 1] != 0) acc += c4(r, s, a, b) * eta_inv_[r - 1][s - 1];
      tr4_[a - 1][b - 1] = acc;
      tr4_[b - 1][a - 1] = acc;
    }
}

const Poly& FrobeniusData::c3(int a, int b, int c) const {
  const int N = n();
  return c3_[((a - 1) * N + b - 1) * N + c - 1];
}

Poly FrobeniusData::c4(int a, int b, int c, int d) const { return first_partial(c3(a, b, c), d); }

Poly FrobeniusData::c3_up(int mu, int a, int b) const {
  Poly acc(ring_);
  for (int k = 1; k <= n(); ++k)
    if (eta_inv_[mu - 1][k - 1] != 0) acc += c3(k, a, b) * eta_inv_[mu - 1][k - 1];
  return acc;
}

Poly FrobeniusData::theta(int a, int b, int c) const { return c3(a, b, c).constant_part(); }

Poly FrobeniusData::theta_up(int mu, int a, int b) const { return c3_up(mu, a, b).constant_part(); }

Poly FrobeniusData::T(int a, int b) const {
  Poly acc(ring_);
  for (int e = 1; e <= n(); ++e) acc += c3_up(e, a, b) * trace3(e);
  return acc;
}

TauHierarchy principal_genus0(const FrobeniusData& F, int pmax) {
  RingPtr r0 = with_caps(F.ring(), 0, F.ring()->udeg_cap);
  return build_from_primary(F.potential().rebind(r0), F.eta(), pmax);
}

Genus1Correction dr_genus1(const FrobeniusData& F, const TauHierarchy& h0) {
  const int N = F.n();
  RingPtr r = genus1_ring(F.ring());
  const QMatrix& ei = F.eta_inv();
  Poly e2 = Poly::eps(r, 2);
  auto ux = [&](int a) { return Poly::var(r, a, 1); };

  std::vector<std::vector<Poly>> T(N, std::vector<Poly>(N));
  for (int a = 1; a <= N; ++a)
    for (int b = a; b <= N; ++b) T[a - 1][b - 1] = T[b - 1][a - 1] = F.T(a, b).rebind(r);

  Genus1Correction out;
  out.gbar2 = Poly(r);
  for (int a = 1; a <= N; ++a)
    for (int b = 1; b <= N; ++b) out.gbar2 += T[a - 1][b - 1] * ux(a) * ux(b);
  out.gbar2 = out.gbar2 * e2 * Q(-1, 48);

  // dT[z][a][b] = eta^{z s} d_s T_ab ;  S[z][a][b] = c^z_{ds} c^d_{ab} c^{s mu}_mu
  std::vector<Poly> trup(N, Poly(r));
  for (int s = 1; s <= N; ++s)
    for (int a = 1; a <= N; ++a)
      if (ei[s - 1][a - 1] != 0) trup[s - 1] += F.trace3(a).rebind(r) * ei[s - 1][a - 1];
  std::vector<std::vector<std::vector<Poly>>> dT(N, std::vector<std::vector<Poly>>(N, std::vector<Poly>(N, Poly(r))));
  auto S = dT;
  std::vector<std::vector<std::vector<Poly>>> cup(N, std::vector<std::vector<Poly>>(N, std::vector<Poly>(N)));
  for (int z = 1; z <= N; ++z)
    for (int a = 1; a <= N; ++a)
      for (int b = 1; b <= N; ++b) cup[z - 1][a - 1][b - 1] = F.c3_up(z, a, b).rebind(r);
  for (int z = 1; z <= N; ++z)
    for (int a = 1; a <= N; ++a)
      for (int b = a; b <= N; ++b) {
        Poly d(r), s(r);
        for (int k = 1; k <= N; ++k)
          if (ei[z - 1][k - 1] != 0) d += partial(T[a - 1][b - 1], k, 0) * ei[z - 1][k - 1];
        for (int dd = 1; dd <= N; ++dd)
          for (int ss = 1; ss <= N; ++ss)
            s += cup[z - 1][dd - 1][ss - 1] * cup[dd - 1][a - 1][b - 1] * trup[ss - 1];
        dT[z - 1][a - 1][b - 1] = dT[z - 1][b - 1][a - 1] = d;
        S[z - 1][a - 1][b - 1] = S[z - 1][b - 1][a - 1] = s;
      }

  auto g0 = [&](int gamma, int p) -> Poly {
    if (p < -1) return Poly(r);
    if (p == -1) return linear_seed(r, F.eta(), gamma);
    return h0.g(gamma, p).rebind(r);
  };
  for (int gamma = 1; gamma <= N; ++gamma)
    for (int p = 0; p <= h0.pmax; ++p) {
      Poly A = g0(gamma, p - 1), B = g0(gamma, p - 2);
      std::vector<Poly> dA, dB;
      for (int z = 1; z <= N; ++z) {
        dA.push_back(partial(A, z, 0));
        dB.push_back(partial(B, z, 0));
      }
      Poly acc(r);
      for (int a = 1; a <= N; ++a)
        for (int b = 1; b <= N; ++b) {
          Poly coef(r);
          for (int z = 1; z <= N; ++z) {
            coef += dA[z - 1] * dT[z - 1][a - 1][b - 1] * Q(1, 2);
            coef += dB[z - 1] * S[z - 1][a - 1][b - 1];
          }
          acc += coef * ux(a) * ux(b);
        }
      out.dens2.emplace(Index{gamma, p}, acc * e2 * Q(-1, 24));
    }
  return out;
}

TauHierarchy genus1_hierarchy(const FrobeniusData& F, int pmax) {
  TauHierarchy h0 = principal_genus0(F, pmax);
  Genus1Correction c = dr_genus1(F, h0);
  RingPtr r = c.gbar2.ring();
  TauHierarchy h;
  h.ring = r;
  h.eta = F.eta();
  h.eta_inv = F.eta_inv();
  h.K = eta_dx(F.eta(), r);
  h.pmax = pmax;
  for (int a = 1; a <= F.n(); ++a) {
    h.dens.emplace(Index{a, -1}, linear_seed(r, F.eta(), a));
    for (int p = 0; p <= pmax; ++p)
      h.dens.emplace(Index{a, p}, h0.g(a, p).rebind(r) + c.dens2.at({a, p}));
  }
  tau_densities_of(h);
  return h;
}

DZGenus1 dz_genus1(const FrobeniusData& F, const TauHierarchy& h0, const Poly& G) {
  const int N = F.n();
  RingPtr r = genus1_ring(F.ring());
  const QMatrix& ei = F.eta_inv();
  Poly e2 = Poly::eps(r, 2);
  Q k24(1, 24);

  // C^{ab} = eta^{a i} eta^{b j} trace4_ij
  std::vector<std::vector<Poly>> C(N, std::vector<Poly>(N, Poly(r)));
  for (int a = 1; a <= N; ++a)
    for (int b = 1; b <= N; ++b)
      for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j)
          if (ei[a - 1][i - 1] != 0 && ei[b - 1][j - 1] != 0)
            C[a - 1][b - 1] += F.trace4(i, j).rebind(r) * (ei[a - 1][i - 1] * ei[b - 1][j - 1]);

  DZGenus1 out;
  out.K = eta_dx(F.eta(), r);
  Poly one(r, Q(1));
  for (int a = 1; a <= N; ++a)
    for (int b = 1; b <= N; ++b) {
      const Poly& c = C[a - 1][b - 1];
      if (c.is_zero()) continue;
      Poly c2 = dx(c, 2);
      Op corr = op_add(Op{{3, c}}, op_compose(Op{{3, one}}, Op{{0, c}}));
      corr = op_add(corr, Op{{1, -c2}});
      corr = op_add(corr, Op{{1, -c2}, {0, -dx(c2)}});  // dx o c2 = c2 dx + c2'
      for (auto& [k, v] : corr) v = v * e2 * k24;
      out.K.at(a, b) = op_add(out.K.at(a, b), corr);
    }

  // tensors for the Hamiltonian correction
  auto cup = [&](int z, int a, int b) { return F.c3_up(z, a, b).rebind(r); };
  auto c4up = [&](int z, int m, int n, int a) {
    Poly acc(r);
    for (int k = 1; k <= N; ++k)
      if (ei[z - 1][k - 1] != 0) acc += F.c4(k, m, n, a).rebind(r) * ei[z - 1][k - 1];
    return acc;
  };
  auto c_upup = [&](int m, int n, int g) {  // c^{mn}_g
    Poly acc(r);
    for (int a = 1; a <= N; ++a)
      for (int b = 1; b <= N; ++b)
        if (ei[m - 1][a - 1] != 0 && ei[n - 1][b - 1] != 0)
          acc += F.c3(a, b, g).rebind(r) * (ei[m - 1][a - 1] * ei[n - 1][b - 1]);
    return acc;
  };
  auto X = [&](int nu, int a) {  // c^{mu nu}_{a mu}
    Poly acc(r);
    for (int b = 1; b <= N; ++b)
      if (ei[nu - 1][b - 1] != 0) acc += F.trace4(b, a).rebind(r) * ei[nu - 1][b - 1];
    return acc;
  };
  using T3 = std::vector<std::vector<std::vector<Poly>>>;
  T3 P(N, std::vector<std::vector<Poly>>(N, std::vector<Poly>(N, Poly(r)))), R = P;
  for (int z = 1; z <= N; ++z)
    for (int a = 1; a <= N; ++a)
      for (int g = 1; g <= N; ++g) {
        Poly p(r), q(r);
        for (int nu = 1; nu <= N; ++nu) p += cup(z, nu, g) * X(nu, a);
        for (int m = 1; m <= N; ++m)
          for (int nu = 1; nu <= N; ++nu) p -= c4up(z, m, nu, a) * c_upup(m, nu, g);
        for (int d = 1; d <= N; ++d)
          for (int s = 1; s <= N; ++s)
            for (int m = 1; m <= N; ++m) q += cup(z, d, s) * c_upup(s, m, g) * cup(d, a, m);
        P[z - 1][a - 1][g - 1] = p;
        R[z - 1][a - 1][g - 1] = q;
      }
  auto g0 = [&](int beta, int p) -> Poly {
    if (p < -1) return Poly(r);
    if (p == -1) return linear_seed(r, F.eta(), beta);
    return h0.g(beta, p).rebind(r);
  };
  for (int beta = 1; beta <= N; ++beta) {
    out.dens.emplace(Index{beta, -1}, linear_seed(r, F.eta(), beta));
    for (int p = 0; p <= h0.pmax; ++p) {
      Poly A = g0(beta, p - 1), B = g0(beta, p - 2);
      Poly acc(r);
      for (int a = 1; a <= N; ++a)
        for (int g = 1; g <= N; ++g) {
          Poly coef(r);
          for (int z = 1; z <= N; ++z) {
            coef += partial(A, z, 0) * P[z - 1][a - 1][g - 1];
            coef -= partial(B, z, 0) * R[z - 1][a - 1][g - 1];
          }
          acc += coef * Poly::var(r, a, 1) * Poly::var(r, g, 1);
        }
      out.dens.emplace(Index{beta, p}, g0(beta, p) + acc * e2 * k24);
    }
  }

  std::vector<Poly> im;
  for (int a = 1; a <= N; ++a) {
    Poly trup(r);
    for (int k = 1; k <= N; ++k)
      if (ei[a - 1][k - 1] != 0) trup += F.trace3(k).rebind(r) * ei[a - 1][k - 1];
    im.push_back(Poly::var(r, a) - dx(trup, 2) * e2 * k24);
  }
  out.to_u = MiuraMap(std::move(im));
  out.G = G.ring() ? G.rebind(r) * e2 : Poly(r);
  return out;
}

Poly nonpositive_c1_primary(const Q& chi, const FrobeniusData& genus0) {
  RingPtr r = genus1_ring(genus0.ring());
  Poly ux = Poly::var(r, 1, 1);
  return genus0.potential().rebind(r) - Poly::eps(r, 2) * ux * ux * (chi / 48);
}

TauHierarchy nonpositive_c1_hierarchy(const Q& chi, const FrobeniusData& genus0, int pmax) {
  TauHierarchy h0 = principal_genus0(genus0, pmax);
  RingPtr r = genus1_ring(genus0.ring());
  TauHierarchy h;
  h.ring = r;
  h.eta = genus0.eta();
  h.eta_inv = genus0.eta_inv();
  h.K = eta_dx(h.eta, r);
  h.pmax = pmax;
  Poly u = Poly::var(r, 1), uxx = Poly::var(r, 1, 2);
  for (int a = 1; a <= genus0.n(); ++a) {
    h.dens.emplace(Index{a, -1}, linear_seed(r, h.eta, a));
    Q fact = 1;
    for (int p = 0; p <= pmax; ++p) {
      if (p > 0) fact *= p;
      Poly d = h0.g(a, p).rebind(r);
      if (a == 1) d += Poly::eps(r, 2) * u.pow(p) * uxx * (chi / 24 / fact);
      h.dens.emplace(Index{a, p}, d);
    }
  }
  tau_densities_of(h);
  return h;
}

namespace {

// eps, u and parameter weights of the Euler operator, applied termwise
Poly euler_weight(const Poly& f, const EulerData& e, const std::vector<Q>& param_weight) {
  PolyBuilder b(f.ring(), f.prec2());
  Q half_eps = (1 - e.delta) / 2;
  for (const auto& [m, c] : f.terms()) {
    Q w = half_eps * m.eps;
    for (auto p : m.factors()) {
      Q ex(Mono::exp2_of(p), 2);
      ex.canonicalize();
      w += e.a[Mono::var_of(p) - 1] * ex;
    }
    for (int i = 0; i < int(param_weight.size()) && i < kMaxParams; ++i) w += param_weight[i] * int(m.par[i]);
    if (w != 0) b.add(m, c * w);
  }
  return b.finish();
}

}  // namespace

Report verify_hamiltonian_homogeneity(const TauHierarchy& h, const FrobeniusData& F, int dmax) {
  Report rep;
  rep.title = "homogeneity of the Hamiltonians";
  if (!F.euler()) throw std::invalid_argument("homogeneity: missing Euler data");
  const EulerData& e = *F.euler();
  const int N = F.n();
  std::vector<Q> pw(h.ring->params.size(), Q(0));
  int cap = h.ring->udeg_cap;
  for (int a = 1; a <= N; ++a)
    for (int d = 0; d <= std::min(dmax, h.pmax); ++d) {
      const Poly& g = h.g(a, d);
      Poly lhs = euler_weight(g, e, pw);
      for (int c = 1; c <= N; ++c)
        if (!e.b[c - 1].is_zero()) lhs += partial(g, c, 0) * e.b[c - 1].rebind(h.ring);
      Poly rhs = g * (3 - e.delta + d - e.a[a - 1]);
      for (int c = 1; c <= N; ++c) {
        if (e.b[c - 1].is_zero()) continue;
        for (int mu = 1; mu <= N; ++mu) {
          Poly th = F.theta_up(mu, a, c).rebind(h.ring);
          if (th.is_zero()) continue;
          rhs += h.g(mu, d - 1) * th * e.b[c - 1].rebind(h.ring);
        }
      }
      Poly nf = normal_form(lhs - rhs);
      if (cap < kNoCap) {
        PolyBuilder keep(nf.ring());
        for (const auto& [m, c] : nf.terms())
          if (m.udeg2() < 2 * (cap - 1)) keep.add(m, c);
        nf = keep.finish();
      }
      std::ostringstream name;
      name << "E g(" << a << "," << d << ")";
      rep.add(name.str(), nf.is_zero(), nf.is_zero() ? "" : print(nf));
    }
  return rep;
}

}  // namespace drh
