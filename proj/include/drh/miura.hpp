// SPDX-License-Identifier: MIT
#ifndef DRH_MIURA_HPP
#define DRH_MIURA_HPP

#include "drh/poisson.hpp"

namespace drh {

/// Change of variables u -> new^alpha(u).
class MiuraMap {
public:
  MiuraMap() = default;
  explicit MiuraMap(std::vector<Poly> images);
  static MiuraMap identity(RingPtr ring);

  const std::vector<Poly>& images() const { return images_; }
  const Poly& image(int var) const { return images_.at(var - 1); }
  const RingPtr& ring() const { return images_.front().ring(); }
  int n() const { return int(images_.size()); }

  QMatrix linear_part() const;
  bool close_to_identity() const;
  bool satisfies_degree_condition() const;  // eps^k part has differential degree k
  bool is_identity() const;
  std::string str() const;

private:
  std::vector<Poly> images_;
};

/// (outer o inner)(u) = outer(inner(u)).
MiuraMap compose(const MiuraMap& outer, const MiuraMap& inner);
MiuraMap invert_miura(const MiuraMap& phi);
bool maps_equal(const MiuraMap& a, const MiuraMap& b);

/// f(new) rewritten in the old variables.
inline Poly pull_back(const Poly& f, const MiuraMap& phi) { return substitute(f, phi.images()); }

}  // namespace drh

#endif
