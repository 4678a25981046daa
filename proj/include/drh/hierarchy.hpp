// SPDX-License-Identifier: MIT
#ifndef DRH_HIERARCHY_HPP
#define DRH_HIERARCHY_HPP

#include "drh/miura.hpp"

#include <functional>
#include <map>
#include <memory>
#include <utility>

namespace drh {

class RecursionObstruction : public std::runtime_error {
public:
  RecursionObstruction(const std::string& msg, Poly witness)
      : std::runtime_error(msg), witness(std::move(witness)) {}
  Poly witness;
};

struct ReportEntry {
  std::string name;
  bool pass;
  std::string witness;  // empty on pass
};

struct Report {
  std::string title;
  std::vector<ReportEntry> entries;
  bool ok() const;
  int failures() const;
  void add(std::string name, bool pass, std::string witness = {});
  void merge(const Report& o);
  std::string text() const;
};

using Index = std::pair<int, int>;  // (alpha, level)

/// Hamiltonian hierarchy with a tau-structure.
struct TauHierarchy {
  RingPtr ring;
  QMatrix eta;      // eta_{alpha beta}
  QMatrix eta_inv;  // eta^{alpha beta}
  HamOperator K;
  int pmax = 0;
  std::map<Index, Poly> dens;  // Hamiltonian densities g_{alpha,d}, d >= -1
  std::map<Index, Poly> tau;   // tau-densities h_{alpha,p}, p >= -1

  int n() const { return ring->n_vars; }
  const Poly& g(int alpha, int d) const;
  Functional ham(int alpha, int d) const { return Functional(g(alpha, d)); }
  const Poly& h(int alpha, int p) const;
  bool has_tau(int alpha, int p) const { return tau.count({alpha, p}) > 0; }
};

/// Flows of a hierarchy with their x-derivatives cached.
class FlowCache {
public:
  explicit FlowCache(const TauHierarchy& h) : h_(h) {}
  FlowDerivation& flow(int beta, int q);
  Poly apply(int beta, int q, const Poly& f) { return flow(beta, q)(f); }

private:
  const TauHierarchy& h_;
  std::map<Index, std::unique_ptr<FlowDerivation>> cache_;
};

Poly primary_from_g11(const Poly& g11);  // (D-2)^{-1}
Poly g11_from_primary(const Poly& gbar);  // (D-2)

TauHierarchy build_from_primary(const Poly& gbar, const QMatrix& eta, int pmax);
void tau_densities_of(TauHierarchy& h);
void tau_structure_normal(TauHierarchy& h);  // from the Hamiltonians, in normal coordinates

Poly flow_rhs(const TauHierarchy& h, int alpha, int beta, int q);
Poly two_point(const TauHierarchy& h, FlowCache& fc, int alpha, int p, int beta, int q);
inline Poly two_point(const TauHierarchy& h, int alpha, int p, int beta, int q) {
  FlowCache fc(h);
  return two_point(h, fc, alpha, p, beta, q);
}

std::vector<std::pair<Index, Index>> pairs_upto(int n, int total);
Report verify_commutativity(const TauHierarchy& h, const std::vector<std::pair<Index, Index>>& pairs);
Report verify_tau_symmetry(const TauHierarchy& h, const std::vector<std::pair<Index, Index>>& pairs);
Report verify_string(const TauHierarchy& h, int dmax);  // d ghat_{a,d}/d u^1 = ghat_{a,d-1}

MiuraMap normal_coordinates(const TauHierarchy& h);
TauHierarchy change_coordinates(const TauHierarchy& h, const MiuraMap& phi);
TauHierarchy normal_miura(const TauHierarchy& h, const Poly& F);

/// Basis of genus-1 deformations solving the recursion and commutativity.
struct AnsatzResult {
  std::vector<Poly> candidates;      // independent functionals of the right degree
  std::vector<std::vector<Q>> basis;  // solution vectors over the candidates
  std::vector<Poly> solutions;        // the corresponding densities
  int equations = 0;
};

struct Grading {
  std::vector<Q> var_weight;  // weight of u^alpha (any jet order)
  Q jet_weight = 0;           // extra weight per x-derivative
  Q eps_weight = 0;
  Q total = 0;                // weight of the density
  bool half_powers = false;
};

AnsatzResult ansatz_solve(const Poly& genus0, const QMatrix& eta, const Grading& grading,
                          int pmax = 2);

}  // namespace drh

#endif
