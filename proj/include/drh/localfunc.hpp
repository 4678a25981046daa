#ifndef DRH_LOCALFUNC_HPP
#define DRH_LOCALFUNC_HPP

#include "drh/expr.hpp"

namespace drh {

/// \int f dx, stored through a representative without constant term.
class Functional {
public:
  Functional() = default;
  explicit Functional(const Poly& f) : rep_(f.without_constant()) {}
  const Poly& rep() const { return rep_; }
  const RingPtr& ring() const { return rep_.ring(); }
  std::string str() const { return "int( " + print(rep_) + " ) dx"; }

private:
  Poly rep_;
};

inline Functional integral(const Poly& f) { return Functional(f); }

Poly var_deriv(const Poly& density, int var);
inline Poly var_deriv(const Functional& h, int var) { return var_deriv(h.rep(), var); }
std::vector<Poly> var_grad(const Functional& h);

class NotExact : public std::runtime_error {
public:
  NotExact(const std::string& msg, Poly witness)
      : std::runtime_error(msg), witness(std::move(witness)) {}
  Poly witness;
};

/// Result of peeling total derivatives off f:  f = dx(primitive) + residual + constant.
struct Peel {
  Poly primitive;
  Poly residual;
  Q constant;
};

/// Linear in f; residual depends only on the class of f modulo dx and constants.
Peel peel(const Poly& f);

/// Unique G with dx(G) = f and G|_{u=0} = 0.
Poly anti_dx(const Poly& f);

/// Canonical representative of the functional class (the peel residual).
Poly normal_form(const Poly& f);

bool is_null(const Functional& f);
bool functionals_equal(const Functional& a, const Functional& b);

}  // namespace drh

#endif
