// SPDX-License-Identifier: MIT
#include "drh/hierarchy.hpp"

#include <functional>
#include <sstream>

namespace drh {

namespace {

std::string short_witness(const Poly& p) {
  std::string s = print(p);
  if (s.size() > 400) s = s.substr(0, 400) + " ...";
  return s;
}

std::string idx(const Index& i) {
  return "(" + std::to_string(i.first) + "," + std::to_string(i.second) + ")";
}

}  // namespace

// ---------------------------------------------------------------- reports

bool Report::ok() const { return failures() == 0; }

int Report::failures() const {
  int n = 0;
  for (const auto& e : entries) n += !e.pass;
  return n;
}

void Report::add(std::string name, bool pass, std::string witness) {
  entries.push_back({std::move(name), pass, std::move(witness)});
}

void Report::merge(const Report& o) {
  for (const auto& e : o.entries) entries.push_back(e);
}

std::string Report::text() const {
  std::ostringstream os;
  if (!title.empty()) os << "# " << title << "\n";
  for (const auto& e : entries) {
    os << (e.pass ? "PASS " : "FAIL ") << e.name;
    if (!e.pass && !e.witness.empty()) os << "  witness: " << e.witness;
    os << "\n";
  }
  os << (ok() ? "PASS" : "FAIL") << " (" << entries.size() - failures() << "/" << entries.size()
     << ")\n";
  return os.str();
}

// ---------------------------------------------------------------- hierarchy data

const Poly& TauHierarchy::g(int alpha, int d) const {
  auto it = dens.find({alpha, d});
  if (it == dens.end())
    throw std::out_of_range("Hamiltonian density g" + idx({alpha, d}) + " not built");
  return it->second;
}

const Poly& TauHierarchy::h(int alpha, int p) const {
  auto it = tau.find({alpha, p});
  if (it == tau.end()) throw std::out_of_range("tau-density h" + idx({alpha, p}) + " not built");
  return it->second;
}

FlowDerivation& FlowCache::flow(int beta, int q) {
  auto it = cache_.find({beta, q});
  if (it != cache_.end()) return *it->second;
  auto d = std::make_unique<FlowDerivation>(h_.ham(beta, q), h_.K);
  return *cache_.emplace(Index{beta, q}, std::move(d)).first->second;
}

Poly primary_from_g11(const Poly& g11) {
  for (const auto& [m, c] : g11.terms())
    if (m.dweight2() == 4)
      throw RecursionObstruction("D-weight 2 term cannot be inverted by (D-2)", Poly::from_mono(g11.ring(), m, c));
  return scale_by_dweight(g11.without_constant(), Q(-2), true);
}

Poly g11_from_primary(const Poly& gbar) { return scale_by_dweight(gbar, Q(-2), false); }

namespace {

Poly linear_seed(const RingPtr& r, const QMatrix& eta, int alpha) {
  Poly s(r);
  for (int mu = 1; mu <= r->n_vars; ++mu)
    if (eta[alpha - 1][mu - 1] != 0) s += Poly::var(r, mu) * eta[alpha - 1][mu - 1];
  return s;
}

// one recursion step; residuals are reported through the callback instead of thrown when given
using ResidualSink = std::function<void(int, const Poly&)>;

Poly recursion_step(FlowDerivation& rec, const Poly& prev, int step, const ResidualSink& on_residual) {
  Poly rhs = rec(prev);
  Peel pl = peel(rhs);
  if (!pl.residual.is_zero() || pl.constant != 0) {
    if (!on_residual) throw RecursionObstruction("recursion right-hand side is not dx-exact", pl.residual);
    on_residual(2 * step, pl.residual);
  }
  Poly A = pl.primitive;
  PolyBuilder bad(A.ring(), A.prec2());
  for (const auto& [m, c] : A.terms())
    if (m.dweight2() == 2) bad.add(m, c);
  Poly b = bad.finish();
  if (!b.is_zero()) {
    if (!on_residual) throw RecursionObstruction("D-weight 1 term in the recursion", b);
    on_residual(2 * step + 1, b);
    A -= b;
  }
  return scale_by_dweight(A, Q(-1), true);
}

TauHierarchy build_impl(const Poly& gbar, const QMatrix& eta, int pmax, const ResidualSink& on_residual) {
  const RingPtr& r = gbar.ring();
  TauHierarchy h;
  h.ring = r;
  h.eta = eta;
  h.eta_inv = invert(eta);
  h.K = eta_dx(eta, r);
  h.pmax = pmax;
  FlowDerivation rec(Functional(g11_from_primary(gbar)), h.K);
  for (int a = 1; a <= r->n_vars; ++a) {
    Poly prev = linear_seed(r, eta, a);
    h.dens.emplace(Index{a, -1}, prev);
    for (int p = 0; p <= pmax; ++p) {
      prev = recursion_step(rec, prev, (a - 1) * (pmax + 1) + p, on_residual);
      h.dens.emplace(Index{a, p}, prev);
    }
  }
  return h;
}

}  // namespace

TauHierarchy build_from_primary(const Poly& gbar, const QMatrix& eta, int pmax) {
  TauHierarchy h = build_impl(gbar, eta, pmax, nullptr);
  tau_densities_of(h);
  return h;
}

void tau_densities_of(TauHierarchy& h) {
  h.tau.clear();
  for (int a = 1; a <= h.n(); ++a)
    for (int p = -1; p + 1 <= h.pmax; ++p) h.tau.emplace(Index{a, p}, var_deriv(h.g(a, p + 1), 1));
}

void tau_structure_normal(TauHierarchy& h) {
  h.tau.clear();
  for (int a = 1; a <= h.n(); ++a) {
    h.tau.emplace(Index{a, -1}, linear_seed(h.ring, h.eta, a));
    for (int p = 0; p + 1 <= h.pmax; ++p) {
      std::vector<Poly> flow = h.K.apply(var_grad(h.ham(a, p + 1)));
      Poly acc(h.ring);
      for (int mu = 1; mu <= h.n(); ++mu)
        if (h.eta[0][mu - 1] != 0) acc += flow[mu - 1] * h.eta[0][mu - 1];
      h.tau.emplace(Index{a, p}, anti_dx(acc));
    }
  }
}

Poly flow_rhs(const TauHierarchy& h, int alpha, int beta, int q) {
  return h.K.apply(var_grad(h.ham(beta, q)))[alpha - 1];
}

Poly two_point(const TauHierarchy& h, FlowCache& fc, int alpha, int p, int beta, int q) {
  return anti_dx(fc.apply(beta, q, h.h(alpha, p - 1)));
}

std::vector<std::pair<Index, Index>> pairs_upto(int n, int total) {
  std::vector<Index> all;
  for (int a = 1; a <= n; ++a)
    for (int p = 0; p <= total; ++p) all.push_back({a, p});
  std::vector<std::pair<Index, Index>> out;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (all[i].second + all[j].second <= total) out.push_back({all[i], all[j]});
  return out;
}

Report verify_commutativity(const TauHierarchy& h, const std::vector<std::pair<Index, Index>>& pairs) {
  Report rep;
  rep.title = "commutativity";
  std::map<Index, std::vector<Poly>> grads;
  auto grad = [&](const Index& i) -> const std::vector<Poly>& {
    auto it = grads.find(i);
    if (it == grads.end()) it = grads.emplace(i, var_grad(h.ham(i.first, i.second))).first;
    return it->second;
  };
  for (const auto& [a, b] : pairs) {
    const auto& da = grad(a);
    std::vector<Poly> kb = h.K.apply(grad(b));
    Poly acc(h.ring);
    for (int m = 0; m < h.n(); ++m) acc += da[m] * kb[m];
    Poly nf = normal_form(acc);
    rep.add("{g" + idx(a) + ", g" + idx(b) + "}", nf.is_zero(), nf.is_zero() ? "" : short_witness(nf));
  }
  return rep;
}

Report verify_tau_symmetry(const TauHierarchy& h, const std::vector<std::pair<Index, Index>>& pairs) {
  Report rep;
  rep.title = "tau-symmetry";
  FlowCache fc(h);
  for (const auto& [a, b] : pairs) {
    Poly l = fc.apply(b.first, b.second, h.h(a.first, a.second - 1));
    Poly r = fc.apply(a.first, a.second, h.h(b.first, b.second - 1));
    Poly d = l - r;
    rep.add("{h" + idx({a.first, a.second - 1}) + ", g" + idx(b) + "} = {h" +
                idx({b.first, b.second - 1}) + ", g" + idx(a) + "}",
            d.is_zero(), d.is_zero() ? "" : short_witness(d));
  }
  return rep;
}

Report verify_string(const TauHierarchy& h, int dmax) {
  Report rep;
  rep.title = "string relation for Hamiltonians";
  for (int a = 1; a <= h.n(); ++a)
    for (int d = 0; d <= std::min(dmax, h.pmax); ++d) {
      Poly lhs = partial(h.g(a, d), 1, 0);
      Poly nf = normal_form(lhs - h.g(a, d - 1));
      rep.add("d g(" + std::to_string(a) + "," + std::to_string(d) + ")/du1 = g(" +
                  std::to_string(a) + "," + std::to_string(d - 1) + ")",
              nf.is_zero(), nf.is_zero() ? "" : short_witness(nf));
    }
  return rep;
}

MiuraMap normal_coordinates(const TauHierarchy& h) {
  std::vector<Poly> im;
  for (int a = 1; a <= h.n(); ++a) {
    Poly acc(h.ring);
    for (int m = 1; m <= h.n(); ++m)
      if (h.eta_inv[a - 1][m - 1] != 0) acc += h.h(m, -1) * h.eta_inv[a - 1][m - 1];
    im.push_back(std::move(acc));
  }
  return MiuraMap(std::move(im));
}

TauHierarchy change_coordinates(const TauHierarchy& h, const MiuraMap& phi) {
  if (phi.is_identity()) return h;
  MiuraMap inv = invert_miura(phi);
  TauHierarchy out = h;
  out.K = transform_operator(h.K, phi);
  for (auto& kv : out.dens) kv.second = substitute(kv.second, inv.images());
  for (auto& kv : out.tau) kv.second = substitute(kv.second, inv.images());
  return out;
}

TauHierarchy normal_miura(const TauHierarchy& h, const Poly& F) {
  if (!has_graded_degree(F, -2)) throw std::invalid_argument("normal_miura: generator must have degree -2");
  if (F.is_zero()) return h;
  FlowCache fc(h);
  TauHierarchy t = h;
  for (auto& [key, dens] : t.tau) {
    if (key.second + 1 > h.pmax) continue;
    dens += dx(fc.apply(key.first, key.second + 1, F));
  }
  for (auto it = t.tau.begin(); it != t.tau.end();)
    it = it->first.second + 1 > h.pmax ? t.tau.erase(it) : std::next(it);
  std::vector<Poly> im;
  std::vector<Poly> shifts;
  for (int m = 1; m <= h.n(); ++m) shifts.push_back(dx(fc.apply(m, 0, F)));
  for (int a = 1; a <= h.n(); ++a) {
    Poly acc = Poly::var(h.ring, a);
    for (int m = 1; m <= h.n(); ++m)
      if (h.eta_inv[a - 1][m - 1] != 0) acc += shifts[m - 1] * h.eta_inv[a - 1][m - 1];
    im.push_back(std::move(acc));
  }
  return change_coordinates(t, MiuraMap(std::move(im)));
}

// ---------------------------------------------------------------- ansatz

namespace {

// coordinates of a polynomial in a shared monomial index
struct Coords {
  std::map<Mono, int> index;
  std::vector<std::pair<int, Q>> vec(const Poly& p) {
    std::vector<std::pair<int, Q>> v;
    for (const auto& [m, c] : p.terms()) {
      auto it = index.find(m);
      if (it == index.end()) it = index.emplace(m, int(index.size())).first;
      v.push_back({it->second, c});
    }
    return v;
  }
};

// returns basis of the nullspace of the matrix whose columns are given as sparse vectors
std::vector<std::vector<Q>> nullspace(const std::vector<std::vector<std::pair<int, Q>>>& cols, int nrows) {
  int n = int(cols.size());
  std::vector<std::vector<Q>> M(nrows, std::vector<Q>(n, Q(0)));
  for (int j = 0; j < n; ++j)
    for (const auto& [i, c] : cols[j]) M[i][j] += c;
  std::vector<int> pivcol;
  int row = 0;
  for (int c = 0; c < n && row < nrows; ++c) {
    int piv = -1;
    for (int r = row; r < nrows; ++r)
      if (M[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(M[row], M[piv]);
    Q p = M[row][c];
    for (int j = 0; j < n; ++j) M[row][j] /= p;
    for (int r = 0; r < nrows; ++r) {
      if (r == row || M[r][c] == 0) continue;
      Q f = M[r][c];
      for (int j = 0; j < n; ++j) M[r][j] -= f * M[row][j];
    }
    pivcol.push_back(c);
    ++row;
  }
  std::vector<std::vector<Q>> basis;
  std::vector<bool> is_piv(n, false);
  for (int c : pivcol) is_piv[c] = true;
  for (int free = 0; free < n; ++free) {
    if (is_piv[free]) continue;
    std::vector<Q> v(n, Q(0));
    v[free] = 1;
    for (std::size_t k = 0; k < pivcol.size(); ++k) v[pivcol[k]] = -M[k][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

void enumerate_monomials(const Grading& gr, int var, const Q& remaining, Mono cur,
                         const RingPtr& r, std::vector<Mono>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  if (remaining < 0 || var > r->n_vars) return;
  const Q& w = gr.var_weight[var - 1];
  if (w <= 0) throw std::invalid_argument("ansatz: grading weights must be positive");
  int step2 = gr.half_powers ? 1 : 2;  // exponent step, doubled
  for (int e2 = 0;; e2 += step2) {
    Q used = w * e2 / 2;
    if (used > remaining) break;
    Mono m = cur;
    m.mul_factor(var, 0, e2);
    enumerate_monomials(gr, var + 1, remaining - used, m, r, out);
  }
}

}  // namespace

AnsatzResult ansatz_solve(const Poly& genus0, const QMatrix& eta, const Grading& gr, int pmax) {
  auto base = genus0.ring();
  auto rr = std::make_shared<Ring>(*base);
  rr->eps_cap = 2;
  rr->half_powers = gr.half_powers;
  RingPtr r = rr;
  Poly f = genus0.rebind(r);
  int n = r->n_vars;

  // candidate densities eps^2 * (order-0 monomial) * (u_x u_x or u_xx)
  std::vector<Poly> raw;
  Q rest0 = gr.total - 2 * gr.eps_weight - 2 * gr.jet_weight;
  for (int a = 1; a <= n; ++a) {
    for (int b = a; b <= n; ++b) {
      Q rem = rest0 - gr.var_weight[a - 1] - gr.var_weight[b - 1];
      std::vector<Mono> ms;
      enumerate_monomials(gr, 1, rem, Mono{}, r, ms);
      for (auto m : ms) {
        m.eps = 2;
        m.mul_factor(a, 1, 2);
        m.mul_factor(b, 1, 2);
        raw.push_back(Poly::from_mono(r, m, 1));
      }
    }
    Q rem = rest0 - gr.var_weight[a - 1];
    std::vector<Mono> ms;
    enumerate_monomials(gr, 1, rem, Mono{}, r, ms);
    for (auto m : ms) {
      m.eps = 2;
      m.mul_factor(a, 2, 2);
      raw.push_back(Poly::from_mono(r, m, 1));
    }
  }
  // independent classes modulo total derivatives
  AnsatzResult res;
  {
    Coords co;
    std::vector<std::vector<std::pair<int, Q>>> cols;
    std::vector<Poly> nfs;
    for (const auto& p : raw) {
      Poly nf = normal_form(p);
      if (nf.is_zero()) continue;
      auto trial = cols;
      trial.push_back(co.vec(nf));
      if (nullspace(trial, int(co.index.size())).empty()) {
        cols = std::move(trial);
        res.candidates.push_back(nf);
      }
    }
  }
  int nc = int(res.candidates.size());
  if (nc == 0) return res;

  // per-candidate linearised data: constraint vectors
  Coords co;
  std::vector<std::vector<std::pair<int, Q>>> cols(nc);
  auto push = [&](int i, int t, const Poly& p) {
    // tag constraints from different sources apart by a tag factor in eps power
    for (const auto& [m, c] : p.terms()) {
      Mono k = m;
      k.eps = 1000 + t;  // keeps constraint families apart
      auto it = co.index.find(k);
      if (it == co.index.end()) it = co.index.emplace(k, int(co.index.size())).first;
      cols[i].push_back({it->second, c});
    }
  };
  for (int i = 0; i < nc; ++i) {
    Poly gbar = f + res.candidates[i];
    TauHierarchy hi = build_impl(gbar, eta, pmax, [&](int step, const Poly& w) { push(i, step, w.eps_part(2)); });
    // (D-2) consistency of g_{1,1}
    if (pmax >= 1) push(i, 99999, normal_form((hi.g(1, 1) - g11_from_primary(gbar)).eps_part(2)));
    // commutativity at eps^2
    int t = 100000;
    for (int a = 1; a <= n; ++a)
      for (int b = a; b <= n; ++b)
        for (int p = 0; p <= pmax; ++p)
          for (int q = 0; q <= pmax; ++q) {
            if (a == b && q <= p) continue;
            Poly br = bracket_ff(hi.ham(a, p), hi.ham(b, q), hi.K).rep();
            push(i, t++, normal_form(br.eps_part(2)));
          }
  }
  res.equations = int(co.index.size());
  res.basis = nullspace(cols, int(co.index.size()));
  for (const auto& v : res.basis) {
    Poly s(r);
    for (int i = 0; i < nc; ++i)
      if (v[i] != 0) s += res.candidates[i] * v[i];
    res.solutions.push_back(s);
  }
  return res;
}

}  // namespace drh
