// SPDX-License-Identifier: MIT
#ifndef DRH_EXPR_HPP
#define DRH_EXPR_HPP

#include <gmpxx.h>

#include <array>
#include <climits>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace drh {

using Q = mpq_class;

std::string to_string(const Q& q);
Q parse_rational(const std::string& s);
/// num/den in lowest terms (mpq_class(a, b) does not reduce)
inline Q ratio(long num, long den) {
  Q q(num, den);
  q.canonicalize();
  return q;
}

constexpr int kMaxParams = 6;
constexpr int kNoCap = INT_MAX / 4;

class CapOverflow : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), pos(pos) {}
  std::size_t pos;
};

struct Param {
  std::string name;
  int min_exp = 0;
  int max_exp = kNoCap;
  bool localized = false;
};

/// Variables, parameters and truncation policy shared by a family of polynomials.
struct Ring {
  int n_vars = 1;
  std::vector<std::string> labels;  // printed index of each variable
  std::vector<Param> params;
  int eps_cap = kNoCap;
  int udeg_cap = kNoCap;  // total u-exponent
  int ddeg_cap = kNoCap;  // differential degree
  bool strict = false;    // throw instead of truncating
  bool half_powers = false;

  static std::shared_ptr<const Ring> make(int n_vars, std::vector<Param> params = {},
                                          int eps_cap = kNoCap, int udeg_cap = kNoCap);
  int var_index(const std::string& label) const;  // -1 if unknown
  int param_index(const std::string& name) const;
  std::string label(int var) const;
  bool same_shape(const Ring& o) const;
};
using RingPtr = std::shared_ptr<const Ring>;

RingPtr with_caps(const RingPtr& r, int eps_cap, int udeg_cap);

/// One factor u^var_jet raised to exp2/2.
struct Factor {
  int var, jet, exp2;
};

/// eps^e * params * product of jet variables.  Exponents of jet variables are
/// stored doubled so that half-integer powers of order-0 variables fit.
class Mono {
public:
  using Packed = boost::container::small_vector<uint32_t, 4>;

  int eps = 0;
  std::array<int8_t, kMaxParams> par{};

  static uint32_t pack(int var, int jet, int exp2) {
    return (uint32_t(var) << 24) | (uint32_t(jet) << 16) | uint16_t(int16_t(exp2));
  }
  static int var_of(uint32_t p) { return int(p >> 24); }
  static int jet_of(uint32_t p) { return int((p >> 16) & 0xff); }
  static int exp2_of(uint32_t p) { return int16_t(uint16_t(p & 0xffff)); }
  static uint32_t key_of(uint32_t p) { return p & 0xffff0000u; }

  const Packed& factors() const { return f_; }
  int ddeg() const { return ddeg2_ / 2; }
  int ddeg2() const { return ddeg2_; }
  int udeg2() const { return udeg2_; }
  bool is_constant_in_u() const { return f_.empty(); }

  /// exponent (doubled) of u^var_jet, 0 if absent
  int exp2(int var, int jet) const;
  int max_jet() const;
  int dweight2() const;  // D-weight, doubled

  void mul_factor(int var, int jet, int exp2);
  Mono times(const Mono& o) const;
  bool operator<(const Mono& o) const;
  bool operator==(const Mono& o) const;

  // builds from an unordered factor list
  static Mono from_factors(const std::vector<Factor>& fs, int eps = 0);
  void set_factors(Packed f);

private:
  void recompute();
  Packed f_;
  int ddeg2_ = 0;
  int udeg2_ = 0;
};

class Poly;

/// Assignment of polynomial images to each (var, jet) symbol, used by substitution.
using JetImage = std::vector<std::vector<Poly>>;

/// Element of the extended ring of differential polynomials.
class Poly {
public:
  using Terms = std::map<Mono, Q>;

  Poly() = default;
  explicit Poly(RingPtr r) : ring_(std::move(r)) {}
  Poly(RingPtr r, const Q& c);

  static Poly var(RingPtr r, int var, int jet = 0, int exp = 1);
  static Poly eps(RingPtr r, int power = 1);
  static Poly param(RingPtr r, int idx, int power = 1);
  static Poly from_mono(RingPtr r, const Mono& m, const Q& c);

  const RingPtr& ring() const { return ring_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const;  // up to precision
  std::size_t size() const { return terms_.size(); }
  int prec2() const { return prec2_; }
  void set_prec2(int p);
  bool exact() const { return prec2_ >= kNoCap; }

  void add_term(const Mono& m, const Q& c);
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Q& c);
  Poly operator-() const;
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Q& c) { return a *= c; }
  friend Poly operator*(const Q& c, Poly a) { return a *= c; }
  bool operator==(const Poly& o) const;  // compared up to the lower precision
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly pow(int e) const;

  int max_eps() const;
  int min_udeg2() const;  // kNoCap for zero
  int max_jet() const;    // -1 for constants

  // parts
  Poly eps_part(int e) const;              // coefficient of eps^e, kept with eps^e
  Poly eps_truncate(int max_eps) const;    // drop eps^k, k > max_eps
  Poly udeg_part(int udeg) const;
  Poly without_constant() const;
  Poly constant_part() const;
  Q constant_term() const;                 // coefficient of the pure number
  Poly filter(bool (*pred)(const Mono&)) const;

  // rebind to another ring with the same variables/params (caps may differ)
  Poly rebind(RingPtr r) const;

  std::string str() const;

private:
  friend class PolyBuilder;
  bool admissible(const Mono& m) const;
  void insert(Mono&& m, Q&& c);
  RingPtr ring_;
  Terms terms_;
  int prec2_ = kNoCap;
};

/// Collects terms efficiently; truncates by caps.
class PolyBuilder {
public:
  explicit PolyBuilder(RingPtr r, int prec2 = kNoCap) : p_(std::move(r)) { p_.prec2_ = prec2; }
  void add(const Mono& m, const Q& c);
  void add(Mono&& m, Q&& c);
  void add_scaled(const Poly& p, const Q& c);
  void set_prec2(int p) { p_.prec2_ = std::min(p_.prec2_, p); }
  Poly finish();

private:
  Poly p_;
};

// calculus
Poly dx(const Poly& f);
Poly dx(const Poly& f, int n);
Poly partial(const Poly& f, int var, int jet);
Poly param_partial(const Poly& f, int param);  // q d/dq
Poly euler_D(const Poly& f);
Poly scale_by_dweight(const Poly& f, const Q& shift, bool divide);  // (D+shift) or its inverse
Poly substitute(const Poly& f, const std::vector<Poly>& images);    // images in target ring
Poly substitute_jets(const Poly& f, const std::vector<Poly>& images, int max_jet);
Poly eval_point(const Poly& f, const std::vector<std::vector<Q>>& point);  // u-free result
Poly shift_var(const Poly& f, int var, const Poly& shift);  // f(u^var + shift), shift u-free
Poly set_var_zero(const Poly& f, int var);

// parsing / printing
Poly parse_expr(const std::string& text, RingPtr r);
std::string print(const Poly& f);

// graded degree: returns true if every term has ddeg - eps == d
bool has_graded_degree(const Poly& f, int d);

}  // namespace drh

#endif
