#ifndef DRH_GENUS_HPP
#define DRH_GENUS_HPP

#include "drh/hierarchy.hpp"

#include <optional>

namespace drh {

/// Euler vector field sum (a_alpha t^alpha + b^alpha) d/dt^alpha and conformal dimension.
struct EulerData {
  std::vector<Q> a;
  std::vector<Poly> b;  // u-free, may carry parameters
  Q delta;
};

/// Genus-0 potential with its flat metric.
class FrobeniusData {
public:
  FrobeniusData(const Poly& potential, QMatrix eta, std::optional<EulerData> euler = {});

  int n() const { return ring_->n_vars; }
  const RingPtr& ring() const { return ring_; }
  const Poly& potential() const { return f_; }
  const QMatrix& eta() const { return eta_; }
  const QMatrix& eta_inv() const { return eta_inv_; }
  const std::optional<EulerData>& euler() const { return euler_; }

  const Poly& c3(int a, int b, int c) const;           // third derivatives
  Poly c4(int a, int b, int c, int d) const;           // fourth derivatives
  Poly c3_up(int mu, int a, int b) const;              // first index raised
  Poly theta(int a, int b, int c) const;               // c3 at u = 0
  Poly theta_up(int mu, int a, int b) const;
  const Poly& trace3(int a) const { return tr3_[a - 1]; }   // c_{a mu}^{mu}
  const Poly& trace4(int a, int b) const { return tr4_[a - 1][b - 1]; }  // eta^{rs} c_{rsab}
  Poly T(int a, int b) const;  // c^e_{ab} c_{e mu}^{mu}

private:
  RingPtr ring_;
  Poly f_;
  QMatrix eta_, eta_inv_;
  std::optional<EulerData> euler_;
  std::vector<Poly> c3_;  // flattened N^3
  std::vector<Poly> tr3_;
  std::vector<std::vector<Poly>> tr4_;
};

TauHierarchy principal_genus0(const FrobeniusData& F, int pmax);

struct Genus1Correction {
  Poly gbar2;                    // eps^2 part of the primary Hamiltonian
  std::map<Index, Poly> dens2;   // eps^2 parts of g_{gamma,p}
};

/// Genus-1 correction of the DR hierarchy in closed form.  The result lives in
/// a ring with eps cap at least 2.
Genus1Correction dr_genus1(const FrobeniusData& F, const TauHierarchy& h0);

/// Genus-0 hierarchy plus the closed-form genus-1 correction, tau-structure included.
TauHierarchy genus1_hierarchy(const FrobeniusData& F, int pmax);

struct DZGenus1 {
  HamOperator K;                 // deformed operator in the intermediate coordinates
  std::map<Index, Poly> dens;    // Hamiltonian densities in the intermediate coordinates
  MiuraMap to_u;                 // intermediate -> DR coordinates
  Poly G;                        // eps^2 G, the generator of the remaining normal Miura step
};

DZGenus1 dz_genus1(const FrobeniusData& F, const TauHierarchy& h0, const Poly& G = Poly());

/// Closed-form hierarchy for a target with non-positive first Chern class.
TauHierarchy nonpositive_c1_hierarchy(const Q& chi, const FrobeniusData& genus0, int pmax);
Poly nonpositive_c1_primary(const Q& chi, const FrobeniusData& genus0);

/// Residual of the homogeneity relation for the primary Hamiltonians.
Report verify_hamiltonian_homogeneity(const TauHierarchy& h, const FrobeniusData& F, int dmax);

}  // namespace drh

#endif
