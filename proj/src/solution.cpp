#include "drh/solution.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <sstream>

namespace drh {

namespace {

constexpr int8_t kParMin = INT8_MIN;

bool same_t_part(const Mono& a, const Mono& b) { return a.eps == b.eps && a.factors() == b.factors(); }

std::vector<Index> points_of(const Mono& m) {
  std::vector<Index> pts;
  for (auto p : m.factors())
    for (int k = 0; k < Mono::exp2_of(p) / 2; ++k) pts.push_back({Mono::var_of(p), Mono::jet_of(p)});
  std::sort(pts.begin(), pts.end());
  return pts;
}

std::string print_time(const Poly& p) {
  std::string s = print(p);
  for (std::size_t i = 0; (i = s.find("u[", i)) != std::string::npos; ++i) s[i] = 't';
  if (s.size() > 400) s = s.substr(0, 400) + " ...";
  return s;
}

Poly in_region(const Poly& f, int points, int dsum, int eps) {
  PolyBuilder b(f.ring());
  for (const auto& [m, c] : f.terms())
    if (m.udeg2() <= 2 * points && m.ddeg() <= dsum && m.eps <= eps) b.add(m, c);
  return b.finish();
}

Poly t_var(const RingPtr& r, int alpha, int d) { return Poly::var(r, alpha, d); }

Poly eps_times_deriv(const Poly& f) {
  PolyBuilder b(f.ring(), f.prec2());
  for (const auto& [m, c] : f.terms())
    if (m.eps) b.add(m, c * m.eps);
  return b.finish();
}

// per-genus PASS/FAIL entries for a residual on a region
void report_residual(Report& rep, const std::string& what, const Poly& res, int max_genus) {
  for (int g = 0; g <= max_genus; ++g) {
    Poly part = res.eps_part(2 * g);
    rep.add(what + ", genus " + std::to_string(g), part.is_zero(), part.is_zero() ? "" : print_time(part));
  }
}

// all (alpha, d) in decreasing order
std::vector<Index> descending_indices(int n, int dmax) {
  std::vector<Index> out;
  for (int d = dmax; d >= 0; --d)
    for (int a = n; a >= 1; --a) out.push_back({a, d});
  return out;
}

// terms that cannot reach the evaluation point within the remaining flows
Poly prune(const Poly& f, int remaining, int eps_cap) {
  PolyBuilder b(f.ring(), f.prec2());
  for (const auto& [m, c] : f.terms()) {
    int deg2 = m.ddeg2() - 2 * m.eps;
    if (m.udeg2() <= deg2 + 2 * (remaining + eps_cap)) b.add(m, c);
  }
  return b.finish();
}

// value at u^1_1 = 1, all other jets zero: only powers of u^1_1 survive
Poly at_string_point(const Poly& f) {
  PolyBuilder b(f.ring());
  for (const auto& [m, c] : f.terms()) {
    const auto& fs = m.factors();
    if (fs.size() > 1) continue;
    if (fs.size() == 1 && (Mono::var_of(fs[0]) != 1 || Mono::jet_of(fs[0]) != 1)) continue;
    Mono k;
    k.eps = m.eps;
    k.par = m.par;
    b.add(k, c);
  }
  return b.finish();
}

// adds value(eps, params) * t-monomial / |Aut| to out
void deposit(Poly& out, const Poly& value, const std::vector<Index>& pts, int min_genus_for_n2) {
  Q aut = automorphism_factor(pts);
  for (const auto& [m, c] : value.terms()) {
    if (m.eps % 2) throw std::domain_error("odd power of eps in a correlator");
    int g = m.eps / 2;
    if (pts.size() == 2 && g < min_genus_for_n2) continue;
    Mono tm = time_monomial(g, pts);
    tm.par = m.par;
    out.add_term(tm, c / aut);
  }
}

/// Depth-first walk over non-increasing sequences of flows.
class FlowWalker {
public:
  FlowWalker(const TauHierarchy& h, FlowCache& fc, const SeriesCaps& caps)
      : h_(h), fc_(fc), caps_(caps), order_(descending_indices(h.n(), std::min(caps.dsum, h.pmax))) {}

  const std::vector<Index>& order() const { return order_; }

  using Visit = std::function<void(const Poly&, const std::vector<Index>&)>;

  void walk(const Poly& node, std::size_t from, std::vector<Index>& path, int dsum, const Visit& visit) {
    visit(node, path);
    if (int(path.size()) >= caps_.points) return;
    for (std::size_t i = from; i < order_.size(); ++i) {
      const Index& e = order_[i];
      if (dsum + e.second > caps_.dsum) continue;
      path.push_back(e);
      int remaining = caps_.points - int(path.size());
      Poly next = prune(fc_.apply(e.first, e.second, node), remaining, 2 * caps_.genus);
      walk(next, i, path, dsum + e.second, visit);
      path.pop_back();
    }
  }

private:
  const TauHierarchy& h_;
  FlowCache& fc_;
  SeriesCaps caps_;
  std::vector<Index> order_;
};

RingPtr hierarchy_ring_for(const TauHierarchy& h, const SeriesCaps& caps) {
  if (h.ring->eps_cap < 2 * caps.genus)
    throw std::invalid_argument("hierarchy eps cap " + std::to_string(h.ring->eps_cap) +
                                " below twice the requested genus");
  return h.ring;
}

}  // namespace

// ---------------------------------------------------------------- series

RingPtr time_ring(const RingPtr& base, const SeriesCaps& caps) {
  auto r = std::make_shared<Ring>(*base);
  r->eps_cap = 2 * caps.genus;
  r->udeg_cap = caps.points;
  r->ddeg_cap = caps.dsum;
  r->strict = false;
  r->half_powers = false;
  return r;
}

Mono time_monomial(int genus, const std::vector<Index>& points) {
  std::vector<Factor> fs;
  for (const auto& [a, d] : points) fs.push_back({a, d, 2});
  return Mono::from_factors(fs, 2 * genus);
}

Q automorphism_factor(const std::vector<Index>& points) {
  std::map<Index, int> mult;
  for (const auto& p : points) ++mult[p];
  Q f = 1;
  for (const auto& kv : mult)
    for (int k = 2; k <= kv.second; ++k) f *= k;
  return f;
}

PotentialSeries::PotentialSeries(RingPtr base, SeriesCaps caps)
    : F_(time_ring(base, caps)), caps_(caps) {}

Poly PotentialSeries::correlator(int genus, std::vector<Index> points) const {
  std::sort(points.begin(), points.end());
  Mono key = time_monomial(genus, points);
  key.par.fill(kParMin);
  Poly out(ring());
  Q aut = automorphism_factor(points);
  for (auto it = F_.terms().lower_bound(key); it != F_.terms().end() && same_t_part(it->first, key); ++it) {
    Mono pm;
    pm.par = it->first.par;
    out.add_term(pm, it->second * aut);
  }
  return out;
}

void PotentialSeries::add_correlator(int genus, std::vector<Index> points, const Poly& value) {
  std::sort(points.begin(), points.end());
  Mono tm = time_monomial(genus, points);
  Q aut = automorphism_factor(points);
  for (const auto& [m, c] : value.terms()) {
    if (!m.is_constant_in_u() || m.eps) throw std::invalid_argument("correlator value must be u- and eps-free");
    Mono k = tm;
    k.par = m.par;
    F_.add_term(k, c / aut);
  }
}

std::vector<PotentialSeries::Entry> PotentialSeries::entries() const {
  std::vector<Entry> out;
  const auto& t = F_.terms();
  for (auto it = t.begin(); it != t.end();) {
    Entry e{it->first.eps / 2, points_of(it->first), Poly(ring())};
    Q aut = automorphism_factor(e.points);
    auto jt = it;
    for (; jt != t.end() && same_t_part(jt->first, it->first); ++jt) {
      Mono pm;
      pm.par = jt->first.par;
      e.value.add_term(pm, jt->second * aut);
    }
    out.push_back(std::move(e));
    it = jt;
  }
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.genus, a.points) < std::tie(b.genus, b.points);
  });
  return out;
}

PotentialSeries PotentialSeries::restricted(const SeriesCaps& c) const {
  PotentialSeries out(ring(), c);
  out.F_ = in_region(F_, c.points, c.dsum, 2 * c.genus).rebind(out.ring());
  return out;
}

bool same_on(const PotentialSeries& a, const PotentialSeries& b, const SeriesCaps& region, std::string* witness) {
  RingPtr r = time_ring(a.ring(), region);
  Poly d = in_region(a.series(), region.points, region.dsum, 2 * region.genus).rebind(r) -
           in_region(b.series(), region.points, region.dsum, 2 * region.genus).rebind(r);
  if (witness) *witness = d.is_zero() ? "" : print_time(d);
  return d.is_zero();
}

bool equal_up_to_tau_ambiguity(const PotentialSeries& a, const PotentialSeries& b, const SeriesCaps& region) {
  RingPtr r = time_ring(a.ring(), region);
  Poly d = in_region(a.series(), region.points, region.dsum, 2 * region.genus).rebind(r) -
           in_region(b.series(), region.points, region.dsum, 2 * region.genus).rebind(r);
  for (const auto& [m, c] : d.terms())
    if (!(m.eps >= 2 && m.udeg2() <= 2)) return false;
  return true;
}

// ---------------------------------------------------------------- string solution

FormalSolution solve_string(const TauHierarchy& h, const SeriesCaps& caps, int xdeg) {
  RingPtr hr = hierarchy_ring_for(h, caps);
  RingPtr tr = time_ring(hr, caps);
  FlowCache fc(h);
  FlowWalker walker(h, fc, caps);
  FormalSolution sol;
  sol.caps = caps;
  sol.xdeg = xdeg;
  sol.jets.assign(h.n(), std::vector<Poly>(xdeg + 1, Poly(tr)));
  for (int a = 1; a <= h.n(); ++a)
    for (int n = 0; n <= xdeg; ++n) {
      Poly& out = sol.jets[a - 1][n];
      std::vector<Index> path;
      walker.walk(Poly::var(hr, a, n), 0, path, 0, [&](const Poly& node, const std::vector<Index>& pts) {
        deposit(out, at_string_point(node), pts, 0);
      });
    }
  return sol;
}

Report check_solution_string(const FormalSolution& sol) {
  Report rep;
  rep.title = "string property of the string solution";
  for (std::size_t a = 0; a < sol.jets.size(); ++a)
    for (std::size_t n = 0; n < sol.jets[a].size(); ++n) {
      const Poly& u = sol.jets[a][n];
      const RingPtr& r = u.ring();
      Poly res = partial(u, 1, 0);
      for (int b = 1; b <= r->n_vars; ++b)
        for (int d = 0; d < sol.caps.dsum; ++d) res -= t_var(r, b, d + 1) * partial(u, b, d);
      if (a == 0 && n == 0) res -= Poly(r, Q(1));
      res = in_region(res, sol.caps.points - 1, sol.caps.dsum, 2 * sol.caps.genus);
      rep.add("O u[" + r->label(int(a) + 1) + "," + std::to_string(n) + "]", res.is_zero(),
              res.is_zero() ? "" : print_time(res));
    }
  return rep;
}

// ---------------------------------------------------------------- DR potential

PotentialSeries dr_potential(const TauHierarchy& h, const SeriesCaps& caps) {
  RingPtr hr = hierarchy_ring_for(h, caps);
  if (h.pmax < caps.dsum + 1 || h.pmax < 2)
    throw std::invalid_argument("dr_potential: hierarchy must be built to level " +
                                std::to_string(std::max(2, caps.dsum + 1)));
  PotentialSeries F(hr, caps);
  Poly& out = F.series();
  FlowCache fc(h);
  FlowWalker walker(h, fc, caps);
  const auto& order = walker.order();

  // n >= 2: Omega of the two largest insertions, then the remaining flows
  if (caps.points >= 2)
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t j = i; j < order.size(); ++j) {
        const Index &e1 = order[i], &e2 = order[j];
        if (e1.second + e2.second > caps.dsum) continue;
        Poly om = prune(two_point(h, fc, e1.first, e1.second, e2.first, e2.second), caps.points - 2,
                        2 * caps.genus);
        std::vector<Index> path{e1, e2};
        walker.walk(om, j, path, e1.second + e2.second, [&](const Poly& node, const std::vector<Index>& pts) {
          deposit(out, at_string_point(node), pts, 1);
        });
      }
  // n = 1, genus >= 1
  if (caps.points >= 1)
    for (int a = 1; a <= h.n(); ++a)
      for (int d = 0; d <= caps.dsum; ++d) {
        Poly v = at_string_point(h.h(a, d));
        PolyBuilder keep(hr);
        for (const auto& [m, c] : v.terms())
          if (m.eps >= 2) keep.add(m, c);
        deposit(out, keep.finish(), {{a, d}}, 0);
      }
  // n = 0, genus >= 2
  Poly v = at_string_point(h.h(1, 1));
  for (const auto& [m, c] : v.terms()) {
    int g = m.eps / 2;
    if (g < 2 || m.eps % 2) continue;
    Mono k;
    k.eps = m.eps;
    k.par = m.par;
    out.add_term(k, c / (2 * g - 2));
  }
  return F;
}

// ---------------------------------------------------------------- identities

Report check_string(const PotentialSeries& Fs, const QMatrix& eta) {
  const Poly& F = Fs.series();
  const RingPtr& r = F.ring();
  const SeriesCaps& c = Fs.caps();
  Poly res = partial(F, 1, 0);
  for (int a = 1; a <= r->n_vars; ++a)
    for (int d = 0; d < c.dsum; ++d) res -= t_var(r, a, d + 1) * partial(F, a, d);
  for (int a = 1; a <= r->n_vars; ++a)
    for (int b = 1; b <= r->n_vars; ++b)
      if (eta[a - 1][b - 1] != 0) res -= t_var(r, a, 0) * t_var(r, b, 0) * (eta[a - 1][b - 1] / 2);
  res = in_region(res, c.points - 1, c.dsum, 2 * c.genus);
  Report rep;
  rep.title = "string equation";
  report_residual(rep, "string", res, c.genus);
  return rep;
}

Report check_dilaton(const PotentialSeries& Fs) {
  const Poly& F = Fs.series();
  const RingPtr& r = F.ring();
  const SeriesCaps& c = Fs.caps();
  Poly res = partial(F, 1, 1) - eps_times_deriv(F);
  PolyBuilder b(r);
  for (const auto& [m, k] : F.terms()) {
    Q w = m.udeg2() / 2 - 2;
    if (w != 0) b.add(m, k * w);
  }
  res -= b.finish();
  res -= Poly::eps(r, 2) * ratio(r->n_vars, 24);
  res = in_region(res, c.points - 1, c.dsum - 1, 2 * c.genus);
  Report rep;
  rep.title = "dilaton equation";
  report_residual(rep, "dilaton", res, c.genus);
  return rep;
}

Report check_divisor(const PotentialSeries& Fs, const FrobeniusData& frob, const DivisorData& div) {
  const Poly& F = Fs.series();
  const RingPtr& r = F.ring();
  const SeriesCaps& c = Fs.caps();
  const int N = r->n_vars;
  Poly res = partial(F, div.gamma, 0);
  for (std::size_t i = 0; i < div.param_pairing.size(); ++i)
    if (div.param_pairing[i] != 0) res -= param_partial(F, int(i)) * div.param_pairing[i];
  for (int mu = 1; mu <= N; ++mu)
    for (int nu = 1; nu <= N; ++nu) {
      Poly th = frob.theta_up(mu, div.gamma, nu).rebind(r);
      if (th.is_zero()) continue;
      for (int d = 0; d < c.dsum; ++d) res -= th * t_var(r, nu, d + 1) * partial(F, mu, d);
    }
  for (int a = 1; a <= N; ++a)
    for (int b = 1; b <= N; ++b) {
      Poly th = frob.theta(div.gamma, a, b).rebind(r);
      if (!th.is_zero()) res -= th * t_var(r, a, 0) * t_var(r, b, 0) * Q(1, 2);
    }
  res = in_region(res, c.points - 1, c.dsum, 2 * c.genus);
  Report rep;
  rep.title = "divisor equation";
  report_residual(rep, "divisor", res, c.genus);
  return rep;
}

Report check_homogeneity(const PotentialSeries& Fs, const FrobeniusData& frob, const std::vector<Q>& param_weight) {
  if (!frob.euler()) throw std::invalid_argument("homogeneity: missing Euler data");
  const EulerData& e = *frob.euler();
  const Poly& F = Fs.series();
  const RingPtr& r = F.ring();
  const SeriesCaps& c = Fs.caps();
  const int N = r->n_vars;
  PolyBuilder b(r);
  for (const auto& [m, k] : F.terms()) {
    Q w = (3 - e.delta) / 2 * m.eps - (3 - e.delta);
    for (auto p : m.factors()) w += (e.a[Mono::var_of(p) - 1] - Mono::jet_of(p)) * (Mono::exp2_of(p) / 2);
    for (std::size_t i = 0; i < param_weight.size(); ++i) w += param_weight[i] * int(m.par[i]);
    if (w != 0) b.add(m, k * w);
  }
  Poly res = b.finish();
  bool shifted = false;
  for (int g = 1; g <= N; ++g) {
    Poly bg = e.b[g - 1].rebind(r);
    if (bg.is_zero()) continue;
    shifted = true;
    res += bg * partial(F, g, 0);
    for (int mu = 1; mu <= N; ++mu)
      for (int nu = 1; nu <= N; ++nu) {
        Poly th = frob.theta_up(mu, g, nu).rebind(r);
        if (th.is_zero()) continue;
        for (int d = 0; d < c.dsum; ++d) res -= bg * th * t_var(r, nu, d + 1) * partial(F, mu, d);
      }
    for (int a = 1; a <= N; ++a)
      for (int bb = 1; bb <= N; ++bb) {
        Poly th = frob.theta(a, bb, g).rebind(r);
        if (!th.is_zero()) res -= bg * th * t_var(r, a, 0) * t_var(r, bb, 0) * Q(1, 2);
      }
  }
  res = in_region(res, shifted ? c.points - 1 : c.points, c.dsum, 2 * c.genus);
  Report rep;
  rep.title = "homogeneity";
  report_residual(rep, "homogeneity", res, c.genus);
  return rep;
}

Report check_vanishing(const PotentialSeries& F) {
  Report rep;
  rep.title = "vanishing";
  int high = 0, low = 0, one = 0, empty = 0;
  std::string wh, wl, wo, we;
  auto describe = [&](const PotentialSeries::Entry& e) {
    std::ostringstream os;
    os << "<";
    for (const auto& [a, d] : e.points) os << " tau" << d << "(e" << F.ring()->label(a) << ")";
    os << " >_" << e.genus << " = " << print(e.value);
    return os.str();
  };
  for (const auto& e : F.entries()) {
    if (e.value.is_zero()) continue;
    int g = e.genus, n = int(e.points.size()), s = 0;
    for (const auto& p : e.points) s += p.second;
    if (2 * g - 2 + n > 0 && s > 3 * g - 3 + n && !high++) wh = describe(e);
    if (2 * g - 2 + n > 0 && s <= 2 * g - 2 && !low++) wl = describe(e);
    if (n == 1 && s < 2 * g - 1 && !one++) wo = describe(e);
    if (n == 0 && g >= 2 && !empty++) we = describe(e);
  }
  rep.add("high degree vanishing (" + std::to_string(high) + " violations)", high == 0, wh);
  rep.add("low degree vanishing (" + std::to_string(low) + " violations)", low == 0, wl);
  rep.add("one-point vanishing (" + std::to_string(one) + " violations)", one == 0, wo);
  rep.add("empty correlators vanish (" + std::to_string(empty) + " violations)", empty == 0, we);
  return rep;
}

Report check_one_point(const PotentialSeries& F) {
  Report rep;
  rep.title = "genus-one dilaton value";
  Poly v = F.correlator(1, {{1, 1}});
  Poly expect(F.ring(), ratio(F.n(), 24));
  rep.add("<tau1(e1)>_1 = N/24", v == expect, v == expect ? "" : print(v));
  return rep;
}

// ---------------------------------------------------------------- tau shifts

Poly evaluate_on_jets(const Poly& q, const std::vector<std::vector<Poly>>& jets, const RingPtr& target) {
  std::map<std::tuple<int, int, int>, Poly> pw;
  auto power = [&](int v, int j, int e) -> const Poly& {
    auto key = std::make_tuple(v, j, e);
    auto it = pw.find(key);
    if (it != pw.end()) return it->second;
    if (v - 1 >= int(jets.size()) || j >= int(jets[v - 1].size()))
      throw std::out_of_range("evaluate_on_jets: jet u[" + std::to_string(v) + "," + std::to_string(j) +
                              "] not available");
    Poly base = jets[v - 1][j].rebind(target);
    Poly p = base;
    for (int k = 1; k < e; ++k) p = p * base;
    return pw.emplace(key, std::move(p)).first->second;
  };
  Poly out(target);
  for (const auto& [m, c] : q.terms()) {
    Mono k;
    k.eps = m.eps;
    k.par = m.par;
    Poly t = Poly::from_mono(target, k, c);
    for (auto p : m.factors()) {
      int e2 = Mono::exp2_of(p);
      if (e2 <= 0 || e2 % 2) throw std::domain_error("evaluate_on_jets: non-polynomial exponent");
      t = t * power(Mono::var_of(p), Mono::jet_of(p), e2 / 2);
      if (t.is_zero()) break;
    }
    out += t;
  }
  return out;
}

PotentialSeries apply_tau_shift(const PotentialSeries& F, const Poly& q, const FormalSolution& sol) {
  if (!q.is_zero() && !has_graded_degree(q, -2)) throw std::invalid_argument("tau shift must have degree -2");
  PotentialSeries out = F;
  out.series() += evaluate_on_jets(q, sol.jets, F.ring());
  return out;
}

// ---------------------------------------------------------------- reduced potential

ReducedPotential reduced_potential(const PotentialSeries& F, const QMatrix& eta, const RingPtr& wring,
                                   const SeriesCaps& out) {
  const SeriesCaps& in = F.caps();
  const int N = F.n();
  const int G = out.genus;
  const int jmax = std::max(1, 2 * G - 2);
  if (in.points < out.points + jmax + 2 || in.dsum < out.dsum || in.genus < G)
    throw std::invalid_argument("reduced_potential: input caps too small for the requested output");
  QMatrix eta_inv = invert(eta);
  RingPtr tr = time_ring(F.ring(), out);

  // w^alpha_n at x = 0
  std::vector<std::vector<Poly>> wjets(N, std::vector<Poly>(jmax + 1, Poly(tr)));
  for (int mu = 1; mu <= N; ++mu) {
    Poly d = partial(F.series(), mu, 0);
    for (int n = 0; n <= jmax; ++n) {
      d = partial(d, 1, 0);
      Poly dt = d.rebind(tr);
      for (int a = 1; a <= N; ++a)
        if (eta_inv[a - 1][mu - 1] != 0) wjets[a - 1][n] += dt * eta_inv[a - 1][mu - 1];
    }
  }

  auto wr = std::make_shared<Ring>(*wring);
  wr->eps_cap = 2 * G;
  wr->udeg_cap = kNoCap;
  wr->ddeg_cap = kNoCap;
  RingPtr wrp = wr;
  ReducedPotential res{PotentialSeries(F.ring(), out), Poly(wrp)};
  Poly& cur = res.Fred.series();
  cur = in_region(F.series(), out.points, out.dsum, 2 * G).rebind(tr);

  auto stage = [&](int j, int dsum, int w11_power, bool with_constant) {
    Poly term(wrp);
    for (const auto& [m, c] : cur.terms()) {
      if (m.eps != 2 * j || m.ddeg() != dsum) continue;
      if (!with_constant && m.is_constant_in_u()) continue;
      term.add_term(m, c);
    }
    if (term.is_zero()) return;
    if (w11_power > 0) term = term * Poly::var(wrp, 1, 1, w11_power);
    res.P -= term;
    cur -= evaluate_on_jets(term, wjets, tr);
  };
  for (int j = 1; j <= G; ++j) {
    stage(j, 0, 2 * j - 2, j > 1);  // F^{(j,0)}
    for (int k = 0; k < 2 * j - 2; ++k) stage(j, k + 1, 2 * j - 2 - k - 1, true);
  }
  return res;
}

// ---------------------------------------------------------------- serialization

std::string potential_to_json(const PotentialSeries& F) {
  nlohmann::ordered_json j;
  j["caps"] = {{"genus", F.caps().genus}, {"points", F.caps().points}, {"dsum", F.caps().dsum}};
  j["variables"] = F.ring()->labels;
  auto& arr = j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : F.entries()) {
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (const auto& [a, d] : e.points) pts.push_back({F.ring()->label(a), d});
    arr.push_back({{"genus", e.genus}, {"points", pts}, {"value", print(e.value)}});
  }
  return j.dump(1);
}

PotentialSeries potential_from_json(const std::string& text, const RingPtr& base) {
  nlohmann::json j = nlohmann::json::parse(text);
  SeriesCaps caps{j.at("caps").at("genus").get<int>(), j.at("caps").at("points").get<int>(),
                  j.at("caps").at("dsum").get<int>()};
  PotentialSeries F(base, caps);
  for (const auto& e : j.at("entries")) {
    std::vector<Index> pts;
    for (const auto& p : e.at("points")) {
      int a = base->var_index(p.at(0).get<std::string>());
      if (a < 0) throw std::invalid_argument("potential file: unknown variable " + p.at(0).get<std::string>());
      pts.push_back({a, p.at(1).get<int>()});
    }
    F.add_correlator(e.at("genus").get<int>(), pts, parse_expr(e.at("value").get<std::string>(), F.ring()));
  }
  return F;
}

}  // namespace drh
