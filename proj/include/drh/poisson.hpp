#ifndef DRH_POISSON_HPP
#define DRH_POISSON_HPP

#include "drh/localfunc.hpp"

#include <map>
#include <vector>

namespace drh {

using QMatrix = std::vector<std::vector<Q>>;

QMatrix invert(const QMatrix& m);  // throws std::domain_error when singular

/// Scalar differential operator sum_j a_j dx^j.
using Op = std::map<int, Poly>;

Op op_compose(const Op& a, const Op& b);
Op op_adjoint(const Op& a);
Op op_add(const Op& a, const Op& b);
Poly op_apply(const Op& a, const Poly& f);
bool op_equal(const Op& a, const Op& b);

/// Matrix differential operator K^{mu nu}.
struct HamOperator {
  RingPtr ring;
  std::vector<std::vector<Op>> entries;  // [mu-1][nu-1]

  int n() const { return int(entries.size()); }
  const Op& at(int mu, int nu) const { return entries[mu - 1][nu - 1]; }
  Op& at(int mu, int nu) { return entries[mu - 1][nu - 1]; }
  std::vector<Poly> apply(const std::vector<Poly>& x) const;
  bool operator==(const HamOperator& o) const;
  std::string str() const;
};

HamOperator zero_operator(RingPtr ring);
HamOperator eta_dx(const QMatrix& eta_lower, RingPtr ring);
std::vector<std::vector<Poly>> op_constant_term(const HamOperator& k);
HamOperator truncate_eps(const HamOperator& k, int max_eps);

Functional bracket_ff(const Functional& f, const Functional& g, const HamOperator& k);
Poly bracket_pf(const Poly& f, const Functional& g, const HamOperator& k);

/// The derivation f -> {f, g}_K with cached x-derivatives of K delta g.
class FlowDerivation {
public:
  FlowDerivation(const Functional& g, const HamOperator& k);
  explicit FlowDerivation(std::vector<Poly> rhs) : rhs_{} {
    for (auto& p : rhs) rhs_.push_back({std::move(p)});
  }
  Poly operator()(const Poly& f);
  const Poly& rhs(int var, int jet = 0);  // dx^jet of the flow of u^var

private:
  std::vector<std::vector<Poly>> rhs_;
};

class MiuraMap;
HamOperator transform_operator(const HamOperator& k, const MiuraMap& phi);

}  // namespace drh

#endif
