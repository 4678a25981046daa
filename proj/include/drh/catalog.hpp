#ifndef DRH_CATALOG_HPP
#define DRH_CATALOG_HPP

#include "drh/solution.hpp"

#include <optional>

namespace drh {

/// A display copied from the literature, kept verbatim next to its parsed value.
struct PrintedDisplay {
  std::string key;      // e.g. "gbar_{1,1}", "normal^1", "Omega^DZ_{3,0;3,0}"
  std::string text;     // grammar string of the display
  Poly value;
  int eps_order = 0;    // displayed through eps^eps_order
  bool as_printed = true;
  std::string note;     // known discrepancy, if any
};

enum class Provenance { Printed, Oracle, UserFile };
std::string to_string(Provenance p);

struct CorrelatorRecord {
  int genus;
  std::vector<Index> points;
  Poly value;
  Provenance source;
};

struct CohFTSpec {
  std::string name;
  std::string summary;
  RingPtr ring;           // variables, parameters and caps of the Hamiltonians
  QMatrix eta;
  Poly genus0;            // Frobenius potential in u^alpha_0
  Poly primary;           // full primary Hamiltonian density, through eps^eps_order
  int eps_order = 0;
  bool eps_exact = false;  // primary has no terms beyond eps^eps_order
  std::string origin;     // how `primary` was obtained
  std::optional<EulerData> euler;
  std::vector<Q> param_weight;  // degrees of the parameters for homogeneity
  std::optional<DivisorData> divisor;
  std::optional<Poly> g_function;  // genus-one G, for the DZ side
  std::optional<Q> chi;
  std::vector<PrintedDisplay> printed;
  std::vector<CorrelatorRecord> correlators;

  int n() const { return ring->n_vars; }
  /// Primary in a ring with eps cap `eps`; raising the cap needs eps_exact.
  Poly primary_at(int eps) const;
  FrobeniusData frobenius() const;
  const PrintedDisplay* find(const std::string& key) const;
  std::vector<const PrintedDisplay*> find_prefix(const std::string& prefix) const;
};

class SpecError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Throws SpecError on a singular metric, a failed unit axiom or a grading violation.
void validate(const CohFTSpec& spec);

std::vector<std::string> builtin_names();
CohFTSpec builtin(const std::string& name);

/// Name of a builtin, or a path to a manifest.
CohFTSpec resolve_cohft(const std::string& name_or_path);

// manifests: UTF-8 JSON, rationals as "p/q" strings, polynomials as grammar strings
std::string save_manifest(const CohFTSpec& spec);
CohFTSpec load_manifest_text(const std::string& text);
CohFTSpec load_manifest(const std::string& path);

/// e^{x} - sum_{k < low} x^k / k!, truncated by the ring of x.
Poly exp_series(const Poly& x, int low = 0);
/// S(eps d/dx) u^var with S(z) = (e^{z/2} - e^{-z/2}) / z.
Poly s_operator(const RingPtr& r, int var);
/// |B_{2g}| for g >= 0
Q bernoulli_abs(int two_g);

/// Compares the printed displays of `spec` with the built hierarchy.  Keys
/// without a rule (DZ-side data, notes) are appended to `skipped`.
Report compare_displays(const CohFTSpec& spec, const TauHierarchy& h,
                        std::vector<std::string>* skipped = nullptr);

/// I_2(k-1) genus-0 potential u^2 v / 2 + v^k / 72 with its grading.
CohFTSpec i2_theory(int k);

}  // namespace drh

#endif
