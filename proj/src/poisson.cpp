#include "drh/poisson.hpp"

#include "drh/miura.hpp"

#include <sstream>

namespace drh {

QMatrix invert(const QMatrix& m) {
  int n = int(m.size());
  QMatrix a = m, inv(n, std::vector<Q>(n, Q(0)));
  for (int i = 0; i < n; ++i) inv[i][i] = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (a[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::domain_error("singular matrix");
    std::swap(a[c], a[piv]);
    std::swap(inv[c], inv[piv]);
    Q p = a[c][c];
    for (int j = 0; j < n; ++j) {
      a[c][j] /= p;
      inv[c][j] /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Q f = a[r][c];
      for (int j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

// ---------------------------------------------------------------- scalar operators

namespace {

void op_accumulate(Op& out, int power, const Poly& c) {
  if (c.is_zero() && c.exact()) return;
  auto it = out.find(power);
  if (it == out.end())
    out.emplace(power, c);
  else
    it->second += c;
}

void op_clean(Op& o) {
  for (auto it = o.begin(); it != o.end();)
    it = (it->second.is_zero() && it->second.exact()) ? o.erase(it) : std::next(it);
}

Q binom(int n, int k) {
  Q r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

Op op_compose(const Op& a, const Op& b) {
  // a_i d^i o b_j d^j = sum_k C(i,k) a_i dx^k(b_j) d^{i-k+j}
  Op out;
  for (const auto& [i, ai] : a) {
    for (const auto& [j, bj] : b) {
      Poly d = bj;
      for (int k = 0; k <= i; ++k) {
        if (k > 0) d = dx(d);
        if (d.is_zero() && d.exact()) break;
        op_accumulate(out, i - k + j, ai * d * binom(i, k));
      }
    }
  }
  op_clean(out);
  return out;
}

Op op_adjoint(const Op& a) {
  // (a_j d^j)^* = (-d)^j o a_j
  Op out;
  for (const auto& [j, aj] : a) {
    Op dj;
    dj.emplace(j, Poly(aj.ring(), Q((j % 2) ? -1 : 1)));
    Op m;
    m.emplace(0, aj);
    Op t = op_compose(dj, m);
    for (auto& kv : t) op_accumulate(out, kv.first, kv.second);
  }
  op_clean(out);
  return out;
}

Op op_add(const Op& a, const Op& b) {
  Op out = a;
  for (const auto& kv : b) op_accumulate(out, kv.first, kv.second);
  op_clean(out);
  return out;
}

Poly op_apply(const Op& a, const Poly& f) {
  Poly out(f.ring());
  Poly d = f;
  int cur = 0;
  for (const auto& [j, aj] : a) {
    while (cur < j) {
      d = dx(d);
      ++cur;
    }
    out += aj * d;
  }
  return out;
}

bool op_equal(const Op& a, const Op& b) {
  Op d = a;
  for (const auto& kv : b) op_accumulate(d, kv.first, -kv.second);
  for (const auto& kv : d)
    if (!kv.second.is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------- matrix operators

std::vector<Poly> HamOperator::apply(const std::vector<Poly>& x) const {
  std::vector<Poly> out;
  for (int mu = 1; mu <= n(); ++mu) {
    Poly acc(ring);
    for (int nu = 1; nu <= n(); ++nu)
      if (!at(mu, nu).empty()) acc += op_apply(at(mu, nu), x[nu - 1]);
    out.push_back(std::move(acc));
  }
  return out;
}

bool HamOperator::operator==(const HamOperator& o) const {
  if (n() != o.n()) return false;
  for (int a = 1; a <= n(); ++a)
    for (int b = 1; b <= n(); ++b)
      if (!op_equal(at(a, b), o.at(a, b))) return false;
  return true;
}

std::string HamOperator::str() const {
  std::ostringstream os;
  for (int a = 1; a <= n(); ++a)
    for (int b = 1; b <= n(); ++b) {
      if (at(a, b).empty()) continue;
      os << "K[" << ring->label(a) << "," << ring->label(b) << "] =";
      for (const auto& [j, c] : at(a, b)) os << " (" << print(c) << ")*dx^" << j;
      os << "\n";
    }
  return os.str();
}

HamOperator zero_operator(RingPtr ring) {
  HamOperator k;
  k.ring = ring;
  k.entries.assign(ring->n_vars, std::vector<Op>(ring->n_vars));
  return k;
}

HamOperator eta_dx(const QMatrix& eta_lower, RingPtr ring) {
  for (std::size_t i = 0; i < eta_lower.size(); ++i)
    for (std::size_t j = 0; j < eta_lower.size(); ++j)
      if (eta_lower[i][j] != eta_lower[j][i]) throw std::domain_error("eta is not symmetric");
  QMatrix up = invert(eta_lower);
  HamOperator k = zero_operator(ring);
  for (int a = 0; a < ring->n_vars; ++a)
    for (int b = 0; b < ring->n_vars; ++b)
      if (up[a][b] != 0) k.entries[a][b].emplace(1, Poly(ring, up[a][b]));
  return k;
}

std::vector<std::vector<Poly>> op_constant_term(const HamOperator& k) {
  std::vector<std::vector<Poly>> out(k.n(), std::vector<Poly>(k.n(), Poly(k.ring)));
  for (int a = 1; a <= k.n(); ++a)
    for (int b = 1; b <= k.n(); ++b) {
      auto it = k.at(a, b).find(0);
      if (it != k.at(a, b).end()) out[a - 1][b - 1] = it->second;
    }
  return out;
}

HamOperator truncate_eps(const HamOperator& k, int max_eps) {
  HamOperator out = k;
  for (auto& row : out.entries)
    for (auto& op : row) {
      for (auto& kv : op) kv.second = kv.second.eps_truncate(max_eps);
      op_clean(op);
    }
  return out;
}

Functional bracket_ff(const Functional& f, const Functional& g, const HamOperator& k) {
  std::vector<Poly> df = var_grad(f), kg = k.apply(var_grad(g));
  Poly acc(f.ring());
  for (std::size_t a = 0; a < df.size(); ++a) acc += df[a] * kg[a];
  return Functional(acc);
}

FlowDerivation::FlowDerivation(const Functional& g, const HamOperator& k) {
  for (auto& p : k.apply(var_grad(g))) rhs_.push_back({std::move(p)});
}

const Poly& FlowDerivation::rhs(int var, int jet) {
  auto& v = rhs_.at(var - 1);
  while (int(v.size()) <= jet) v.push_back(dx(v.back()));
  return v[jet];
}

Poly FlowDerivation::operator()(const Poly& f) {
  Poly out(f.ring());
  out.set_prec2(f.prec2());
  // group by (var,jet): sum over factors of d f/d u^var_jet * dx^jet X^var
  std::map<std::pair<int, int>, PolyBuilder> parts;
  for (const auto& [m, c] : f.terms()) {
    for (auto p : m.factors()) {
      int v = Mono::var_of(p), j = Mono::jet_of(p), e2 = Mono::exp2_of(p);
      Mono n = m;
      n.mul_factor(v, j, -2);
      Q k = c * e2;
      k /= 2;
      auto it = parts.find({v, j});
      if (it == parts.end())
        it = parts.emplace(std::make_pair(v, j), PolyBuilder(f.ring(), f.prec2() >= kNoCap ? kNoCap : f.prec2() - 2)).first;
      it->second.add(std::move(n), std::move(k));
    }
  }
  for (auto& [key, b] : parts) out += b.finish() * rhs(key.first, key.second);
  return out;
}

Poly bracket_pf(const Poly& f, const Functional& g, const HamOperator& k) {
  FlowDerivation d(g, k);
  return d(f);
}

// ---------------------------------------------------------------- change of variables

HamOperator transform_operator(const HamOperator& k, const MiuraMap& phi) {
  int n = k.n();
  // L^a_m = sum_p d new^a / d u^m_p dx^p
  std::vector<std::vector<Op>> L(n, std::vector<Op>(n));
  for (int a = 1; a <= n; ++a) {
    const Poly& img = phi.image(a);
    int top = img.max_jet();
    for (int m = 1; m <= n; ++m)
      for (int p = 0; p <= top; ++p) {
        Poly d = partial(img, m, p);
        if (!d.is_zero()) L[a - 1][m - 1].emplace(p, std::move(d));
      }
  }
  std::vector<std::vector<Op>> Lstar(n, std::vector<Op>(n));
  for (int a = 0; a < n; ++a)
    for (int m = 0; m < n; ++m) Lstar[a][m] = op_adjoint(L[a][m]);
  // K~ = L K L^*
  std::vector<std::vector<Op>> LK(n, std::vector<Op>(n));
  for (int a = 0; a < n; ++a)
    for (int nu = 0; nu < n; ++nu)
      for (int m = 0; m < n; ++m)
        if (!L[a][m].empty() && !k.entries[m][nu].empty())
          LK[a][nu] = op_add(LK[a][nu], op_compose(L[a][m], k.entries[m][nu]));
  MiuraMap inv = invert_miura(phi);
  HamOperator out = zero_operator(k.ring);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Op acc;
      for (int nu = 0; nu < n; ++nu)
        if (!LK[a][nu].empty() && !Lstar[b][nu].empty())
          acc = op_add(acc, op_compose(LK[a][nu], Lstar[b][nu]));
      for (auto& kv : acc) kv.second = substitute(kv.second, inv.images());
      op_clean(acc);
      out.entries[a][b] = std::move(acc);
    }
  return out;
}

}  // namespace drh
