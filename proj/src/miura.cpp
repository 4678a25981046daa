// SPDX-License-Identifier: MIT
#include "drh/miura.hpp"

#include <sstream>

namespace drh {

MiuraMap::MiuraMap(std::vector<Poly> images) : images_(std::move(images)) {
  if (images_.empty()) throw std::invalid_argument("MiuraMap: no images");
  if (int(images_.size()) != images_.front().ring()->n_vars)
    throw std::invalid_argument("MiuraMap: image count differs from variable count");
}

MiuraMap MiuraMap::identity(RingPtr ring) {
  std::vector<Poly> im;
  for (int a = 1; a <= ring->n_vars; ++a) im.push_back(Poly::var(ring, a));
  return MiuraMap(std::move(im));
}

QMatrix MiuraMap::linear_part() const {
  QMatrix m(n(), std::vector<Q>(n(), Q(0)));
  for (int a = 0; a < n(); ++a)
    for (const auto& [mono, c] : images_[a].terms()) {
      if (mono.eps != 0 || mono.udeg2() != 2 || mono.max_jet() != 0) continue;
      bool plain = true;
      for (int i = 0; i < kMaxParams; ++i) plain = plain && mono.par[i] == 0;
      if (!plain) continue;
      m[a][Mono::var_of(mono.factors()[0]) - 1] += c;
    }
  return m;
}

bool MiuraMap::close_to_identity() const {
  for (int a = 0; a < n(); ++a)
    if (images_[a].eps_part(0) != Poly::var(ring(), a + 1)) return false;
  return true;
}

bool MiuraMap::satisfies_degree_condition() const {
  for (const auto& img : images_)
    for (const auto& [m, c] : img.terms())
      if (m.ddeg2() != 2 * m.eps) return false;
  return true;
}

bool MiuraMap::is_identity() const {
  for (int a = 0; a < n(); ++a)
    if (images_[a] != Poly::var(ring(), a + 1)) return false;
  return true;
}

std::string MiuraMap::str() const {
  std::ostringstream os;
  for (int a = 0; a < n(); ++a)
    os << "new[" << ring()->label(a + 1) << "] = " << print(images_[a]) << "\n";
  return os.str();
}

MiuraMap compose(const MiuraMap& outer, const MiuraMap& inner) {
  std::vector<Poly> im;
  for (const auto& p : outer.images()) im.push_back(substitute(p, inner.images()));
  return MiuraMap(std::move(im));
}

MiuraMap invert_miura(const MiuraMap& phi) {
  const RingPtr& r = phi.ring();
  int n = phi.n();
  QMatrix A = phi.linear_part();
  QMatrix Ainv = invert(A);
  // phi(u) = A u + R(u)
  std::vector<Poly> rest;
  bool nonlinear_eps0 = false;
  for (int a = 0; a < n; ++a) {
    Poly ra = phi.images()[a];
    for (int b = 0; b < n; ++b)
      if (A[a][b] != 0) ra -= Poly::var(r, b + 1) * A[a][b];
    for (const auto& [m, c] : ra.terms())
      if (m.eps == 0) nonlinear_eps0 = true;
    rest.push_back(std::move(ra));
  }
  if (nonlinear_eps0 && r->udeg_cap >= kNoCap)
    throw std::domain_error("invert_miura: nonlinear leading term needs a u-degree cap");
  auto apply_ainv = [&](const std::vector<Poly>& v) {
    std::vector<Poly> out;
    for (int a = 0; a < n; ++a) {
      Poly acc(r);
      for (int b = 0; b < n; ++b)
        if (Ainv[a][b] != 0) acc += v[b] * Ainv[a][b];
      out.push_back(std::move(acc));
    }
    return out;
  };
  std::vector<Poly> id;
  for (int a = 1; a <= n; ++a) id.push_back(Poly::var(r, a));
  std::vector<Poly> cur = apply_ainv(id);
  int max_iter = 4 + (r->eps_cap < kNoCap ? r->eps_cap : 64) +
                 (r->udeg_cap < kNoCap ? r->udeg_cap : 0);
  for (int it = 0; it < max_iter; ++it) {
    std::vector<Poly> nxt;
    for (int a = 0; a < n; ++a) nxt.push_back(id[a] - substitute(rest[a], cur));
    nxt = apply_ainv(nxt);
    bool same = true;
    for (int a = 0; a < n && same; ++a) same = nxt[a] == cur[a] && nxt[a].prec2() == cur[a].prec2();
    cur = std::move(nxt);
    if (same) return MiuraMap(std::move(cur));
  }
  throw std::domain_error("invert_miura: iteration did not stabilize (set an eps cap)");
}

bool maps_equal(const MiuraMap& a, const MiuraMap& b) {
  if (a.n() != b.n()) return false;
  for (int i = 0; i < a.n(); ++i)
    if (a.images()[i] != b.images()[i]) return false;
  return true;
}

}  // namespace drh
