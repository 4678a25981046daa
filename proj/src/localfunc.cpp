#include "drh/localfunc.hpp"

namespace drh {

Poly var_deriv(const Poly& f, int var) {
  int K = f.max_jet();
  Poly acc(f.ring());
  acc.set_prec2(f.prec2() >= kNoCap ? kNoCap : f.prec2() - 2);
  // Horner in (-dx): sum_i (-dx)^i d f/d u_i
  for (int i = K; i >= 0; --i) {
    acc = -dx(acc);
    acc += partial(f, var, i);
  }
  return acc;
}

std::vector<Poly> var_grad(const Functional& h) {
  std::vector<Poly> out;
  for (int v = 1; v <= h.ring()->n_vars; ++v) out.push_back(var_deriv(h, v));
  return out;
}

Peel peel(const Poly& f) {
  const RingPtr& r = f.ring();
  Peel out{Poly(r), Poly(r), f.constant_term()};
  out.primitive.set_prec2(f.prec2());
  out.residual.set_prec2(f.prec2());
  Poly cur = f.without_constant();
  for (int K = cur.max_jet(); K >= 1; --K) {
    PolyBuilder g(r, cur.prec2());
    for (const auto& [m, c] : cur.terms()) {
      if (m.max_jet() != K) continue;
      int top_var = 0, top_count = 0, d2 = 0;
      for (auto p : m.factors()) {
        int j = Mono::jet_of(p);
        if (j == K) {
          top_var = Mono::var_of(p);
          top_count += Mono::exp2_of(p);
        } else if (j == K - 1) {
          d2 += Mono::exp2_of(p);
        }
      }
      if (top_count != 2) continue;  // not linear in the top jet
      Q denom(d2 + 2, 2);
      denom.canonicalize();
      Mono n = m;
      n.mul_factor(top_var, K, -2);
      n.mul_factor(top_var, K - 1, 2);
      g.add(n, c / denom);
    }
    Poly gk = g.finish();
    if (!gk.is_zero()) {
      cur -= dx(gk);
      out.primitive += gk;
    }
    PolyBuilder rest(r, cur.prec2()), res(r, cur.prec2());
    for (const auto& [m, c] : cur.terms()) {
      if (m.max_jet() == K)
        res.add(m, c);
      else
        rest.add(m, c);
    }
    Poly rk = res.finish();
    if (!rk.is_zero()) out.residual += rk;
    cur = rest.finish();
  }
  out.constant += cur.constant_term();
  out.residual += cur.without_constant();
  return out;
}

Poly anti_dx(const Poly& f) {
  Peel p = peel(f);
  if (!p.residual.is_zero()) {
    for (int v = 1; v <= f.ring()->n_vars; ++v) {
      Poly w = var_deriv(p.residual, v);
      if (!w.is_zero())
        throw NotExact("anti_dx: not a total derivative (delta/delta u[" + f.ring()->label(v) + "] nonzero)", w);
    }
    throw NotExact("anti_dx: not a total derivative", p.residual);
  }
  if (p.constant != 0) throw NotExact("anti_dx: nonzero constant term", Poly(f.ring(), p.constant));
  return p.primitive.without_constant();
}

Poly normal_form(const Poly& f) { return peel(f).residual; }

bool is_null(const Functional& f) { return normal_form(f.rep()).is_zero(); }

bool functionals_equal(const Functional& a, const Functional& b) {
  return normal_form(a.rep() - b.rep()).is_zero();
}

}  // namespace drh
