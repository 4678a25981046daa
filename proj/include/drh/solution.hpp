#ifndef DRH_SOLUTION_HPP
#define DRH_SOLUTION_HPP

#include "drh/genus.hpp"

#include <iosfwd>

namespace drh {

/// Region of the (genus, t-monomial) lattice that a series is exact on.
struct SeriesCaps {
  int genus = 1;   // max genus
  int points = 4;  // max number of insertions
  int dsum = 4;    // max total descendant degree
};

/// Ring whose jet variable u^alpha_d stands for the time t^alpha_d and whose
/// eps exponent is twice the genus.
RingPtr time_ring(const RingPtr& base, const SeriesCaps& caps);

/// F(t, eps) = sum eps^{2g} <prod tau_{d_i}(e_{alpha_i})>_g prod t / |Aut|.
class PotentialSeries {
public:
  PotentialSeries() = default;
  PotentialSeries(RingPtr base, SeriesCaps caps);

  struct Entry {
    int genus;
    std::vector<Index> points;  // sorted
    Poly value;                 // u-free; may carry parameters
  };

  const Poly& series() const { return F_; }
  Poly& series() { return F_; }
  const SeriesCaps& caps() const { return caps_; }
  const RingPtr& ring() const { return F_.ring(); }
  int n() const { return ring()->n_vars; }

  Poly correlator(int genus, std::vector<Index> points) const;
  void add_correlator(int genus, std::vector<Index> points, const Poly& value);
  void add_correlator(int genus, std::vector<Index> points, const Q& value) {
    add_correlator(genus, std::move(points), Poly(ring(), value));
  }
  std::vector<Entry> entries() const;  // canonical order by (genus, points)

  PotentialSeries restricted(const SeriesCaps& c) const;

private:
  Poly F_;
  SeriesCaps caps_;
};

/// Monomial t^{alpha_1}_{d_1}...t^{alpha_n}_{d_n} with eps^{2g}.
Mono time_monomial(int genus, const std::vector<Index>& points);
Q automorphism_factor(const std::vector<Index>& points);  // prod of multiplicity factorials

bool same_on(const PotentialSeries& a, const PotentialSeries& b, const SeriesCaps& region,
             std::string* witness = nullptr);
/// Equal up to sum a_g eps^{2g} + sum b eps^{2g} t, g >= 1.
bool equal_up_to_tau_ambiguity(const PotentialSeries& a, const PotentialSeries& b, const SeriesCaps& region);

/// Jets of u^str at x = 0 as series in the times.
struct FormalSolution {
  std::vector<std::vector<Poly>> jets;  // [alpha-1][n] = d_x^n u^alpha |_{x=0}
  SeriesCaps caps;
  int xdeg = 0;
  const Poly& jet(int alpha, int n) const { return jets.at(alpha - 1).at(n); }
};

FormalSolution solve_string(const TauHierarchy& h, const SeriesCaps& caps, int xdeg);

/// Residual of the string property of u^str on the trusted region.
Report check_solution_string(const FormalSolution& sol);

PotentialSeries dr_potential(const TauHierarchy& h, const SeriesCaps& caps);

Report check_string(const PotentialSeries& F, const QMatrix& eta);
Report check_dilaton(const PotentialSeries& F);
struct DivisorData {
  int gamma;                       // divisor class index
  std::vector<Q> param_pairing;    // <e_gamma, beta> per parameter (q d/dq weight)
};
Report check_divisor(const PotentialSeries& F, const FrobeniusData& frob, const DivisorData& div);
Report check_homogeneity(const PotentialSeries& F, const FrobeniusData& frob,
                         const std::vector<Q>& param_weight = {});
Report check_vanishing(const PotentialSeries& F);
Report check_one_point(const PotentialSeries& F);  // <tau_1(e_1)>_1 = N/24

/// Evaluate Q(u^str, u^str_x, ...) at x = 0 as a time series.
Poly evaluate_on_jets(const Poly& q, const std::vector<std::vector<Poly>>& jets, const RingPtr& target);
PotentialSeries apply_tau_shift(const PotentialSeries& F, const Poly& q, const FormalSolution& sol);

struct ReducedPotential {
  PotentialSeries Fred;
  Poly P;  // differential polynomial of degree -2 in the w variables
};

/// F must satisfy the string and dilaton equations; its caps must exceed the
/// requested output caps by the jets needed for w^top (2 * genus points).
ReducedPotential reduced_potential(const PotentialSeries& F, const QMatrix& eta, const RingPtr& wring,
                                   const SeriesCaps& out);

/// Witten-Kontsevich intersection numbers through the DVV recursion.
PotentialSeries wk_correlators(const SeriesCaps& caps);
Q wk_number(int genus, std::vector<int> d);

// serialization: records {genus, points: [[alpha, d], ...], value}
std::string potential_to_json(const PotentialSeries& F);
PotentialSeries potential_from_json(const std::string& text, const RingPtr& base);

}  // namespace drh

#endif
