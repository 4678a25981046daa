// SPDX-License-Identifier: MIT
#include "drh/expr.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>

namespace drh {

std::string to_string(const Q& q) { return q.get_str(); }

Q parse_rational(const std::string& s) {
  Q q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  q.canonicalize();
  return q;
}

namespace {
int sat_add(int a, int b) {
  long long s = (long long)a + b;
  return s >= kNoCap ? kNoCap : int(s);
}
}  // namespace

// ---------------------------------------------------------------- Ring

RingPtr Ring::make(int n_vars, std::vector<Param> params, int eps_cap, int udeg_cap) {
  auto r = std::make_shared<Ring>();
  r->n_vars = n_vars;
  for (int i = 1; i <= n_vars; ++i) r->labels.push_back(std::to_string(i));
  if (params.size() > std::size_t(kMaxParams)) throw std::invalid_argument("too many parameters");
  r->params = std::move(params);
  r->eps_cap = eps_cap;
  r->udeg_cap = udeg_cap;
  return r;
}

int Ring::var_index(const std::string& label) const {
  for (int i = 0; i < n_vars; ++i)
    if (labels[i] == label) return i + 1;
  return -1;
}

int Ring::param_index(const std::string& name) const {
  for (std::size_t i = 0; i < params.size(); ++i)
    if (params[i].name == name) return int(i);
  return -1;
}

std::string Ring::label(int var) const { return labels.at(var - 1); }

bool Ring::same_shape(const Ring& o) const {
  if (n_vars != o.n_vars || params.size() != o.params.size()) return false;
  for (std::size_t i = 0; i < params.size(); ++i)
    if (params[i].name != o.params[i].name) return false;
  return true;
}

RingPtr with_caps(const RingPtr& r, int eps_cap, int udeg_cap) {
  auto n = std::make_shared<Ring>(*r);
  n->eps_cap = eps_cap;
  n->udeg_cap = udeg_cap;
  return n;
}

// ---------------------------------------------------------------- Mono

int Mono::exp2(int var, int jet) const {
  uint32_t key = pack(var, jet, 0);
  for (auto p : f_)
    if (key_of(p) == key) return exp2_of(p);
  return 0;
}

int Mono::max_jet() const {
  int m = -1;
  for (auto p : f_) m = std::max(m, jet_of(p));
  return m;
}

int Mono::dweight2() const {
  int w = 0;
  for (auto p : f_) w += (jet_of(p) + 1) * exp2_of(p);
  return w;
}

void Mono::recompute() {
  ddeg2_ = 0;
  udeg2_ = 0;
  for (auto p : f_) {
    ddeg2_ += jet_of(p) * exp2_of(p);
    udeg2_ += exp2_of(p);
  }
}

void Mono::set_factors(Packed f) {
  f_ = std::move(f);
  recompute();
}

void Mono::mul_factor(int var, int jet, int e2) {
  if (e2 == 0) return;
  uint32_t key = pack(var, jet, 0);
  auto it = std::lower_bound(f_.begin(), f_.end(), key,
                             [](uint32_t a, uint32_t k) { return key_of(a) < k; });
  if (it != f_.end() && key_of(*it) == key) {
    int ne = exp2_of(*it) + e2;
    if (ne == 0)
      f_.erase(it);
    else
      *it = pack(var, jet, ne);
  } else {
    f_.insert(it, pack(var, jet, e2));
  }
  ddeg2_ += jet * e2;
  udeg2_ += e2;
}

Mono Mono::times(const Mono& o) const {
  Mono r;
  r.eps = eps + o.eps;
  for (int i = 0; i < kMaxParams; ++i) r.par[i] = int8_t(par[i] + o.par[i]);
  // merge sorted factor lists
  auto a = f_.begin(), ae = f_.end();
  auto b = o.f_.begin(), be = o.f_.end();
  r.f_.reserve(f_.size() + o.f_.size());
  while (a != ae || b != be) {
    if (b == be || (a != ae && key_of(*a) < key_of(*b))) {
      r.f_.push_back(*a++);
    } else if (a == ae || key_of(*b) < key_of(*a)) {
      r.f_.push_back(*b++);
    } else {
      int e = exp2_of(*a) + exp2_of(*b);
      if (e != 0) r.f_.push_back(pack(var_of(*a), jet_of(*a), e));
      ++a;
      ++b;
    }
  }
  r.ddeg2_ = ddeg2_ + o.ddeg2_;
  r.udeg2_ = udeg2_ + o.udeg2_;
  return r;
}

bool Mono::operator<(const Mono& o) const {
  if (eps != o.eps) return eps < o.eps;
  if (ddeg2_ != o.ddeg2_) return ddeg2_ < o.ddeg2_;
  if (f_.size() != o.f_.size()) return f_.size() < o.f_.size();
  for (std::size_t i = 0; i < f_.size(); ++i)
    if (f_[i] != o.f_[i]) return f_[i] < o.f_[i];
  return par < o.par;
}

bool Mono::operator==(const Mono& o) const {
  return eps == o.eps && par == o.par && f_ == o.f_;
}

Mono Mono::from_factors(const std::vector<Factor>& fs, int eps) {
  Mono m;
  m.eps = eps;
  for (const auto& f : fs) m.mul_factor(f.var, f.jet, f.exp2);
  return m;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(RingPtr r, const Q& c) : ring_(std::move(r)) {
  if (c != 0) terms_.emplace(Mono{}, c);
}

Poly Poly::var(RingPtr r, int v, int jet, int exp) {
  if (v < 1 || v > r->n_vars) throw std::out_of_range("variable index");
  Mono m;
  m.mul_factor(v, jet, 2 * exp);
  return from_mono(std::move(r), m, 1);
}

Poly Poly::eps(RingPtr r, int power) {
  Mono m;
  m.eps = power;
  return from_mono(std::move(r), m, 1);
}

Poly Poly::param(RingPtr r, int idx, int power) {
  Mono m;
  m.par[idx] = int8_t(power);
  return from_mono(std::move(r), m, 1);
}

Poly Poly::from_mono(RingPtr r, const Mono& m, const Q& c) {
  PolyBuilder b(std::move(r));
  b.add(m, c);
  return b.finish();
}

bool Poly::admissible(const Mono& m) const {
  const Ring& r = *ring_;
  if (m.eps > r.eps_cap) return false;
  if (m.udeg2() > 2 * std::min(r.udeg_cap, kNoCap / 2)) return false;
  if (m.ddeg() > r.ddeg_cap) return false;
  for (std::size_t i = 0; i < r.params.size(); ++i) {
    if (m.par[i] > r.params[i].max_exp) return false;
    if (m.par[i] < r.params[i].min_exp) return false;
  }
  return true;
}

void Poly::set_prec2(int p) {
  if (p >= prec2_) return;
  prec2_ = p;
  for (auto it = terms_.begin(); it != terms_.end();)
    it = it->first.udeg2() > prec2_ ? terms_.erase(it) : std::next(it);
}

bool Poly::is_zero() const { return terms_.empty(); }

void Poly::add_term(const Mono& m, const Q& c) {
  Mono mm = m;
  Q cc = c;
  insert(std::move(mm), std::move(cc));
}

void Poly::insert(Mono&& m, Q&& c) {
  if (c == 0) return;
  if (m.udeg2() > prec2_) return;
  if (!admissible(m)) {
    if (ring_->strict) throw CapOverflow("term exceeds computation caps: " + std::to_string(m.udeg2() / 2));
    if (m.udeg2() > 2 * std::min(ring_->udeg_cap, kNoCap / 2)) set_prec2(2 * ring_->udeg_cap);
    return;
  }
  auto [it, ins] = terms_.try_emplace(std::move(m), std::move(c));
  if (!ins) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  if (!ring_) ring_ = o.ring_;
  if (o.prec2_ < prec2_) set_prec2(o.prec2_);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (!ring_) ring_ = o.ring_;
  if (o.prec2_ < prec2_) set_prec2(o.prec2_);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Q& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& kv : terms_) kv.second *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& kv : r.terms_) kv.second = -kv.second;
  return r;
}

int Poly::min_udeg2() const {
  int m = kNoCap;
  for (const auto& kv : terms_) m = std::min(m, kv.first.udeg2());
  return m;
}

Poly operator*(const Poly& a, const Poly& b) {
  const RingPtr& r = a.ring_ ? a.ring_ : b.ring_;
  int prec = std::min(sat_add(a.prec2_, b.min_udeg2()), sat_add(b.prec2_, a.min_udeg2()));
  if (a.terms_.empty() && a.exact()) prec = kNoCap;
  if (b.terms_.empty() && b.exact()) prec = kNoCap;
  PolyBuilder out(r, prec);
  if (a.terms_.empty() || b.terms_.empty()) return out.finish();
  const Ring& R = *r;
  int ucap2 = std::min(2 * std::min(R.udeg_cap, kNoCap / 2), prec);
  for (const auto& [ma, ca] : a.terms_) {
    if (ma.eps > R.eps_cap) continue;
    for (const auto& [mb, cb] : b.terms_) {
      if (ma.eps + mb.eps > R.eps_cap) continue;
      if (ma.udeg2() + mb.udeg2() > ucap2) {
        if (R.strict && ma.udeg2() + mb.udeg2() <= prec)
          throw CapOverflow("product exceeds u-degree cap");
        continue;
      }
      out.add(ma.times(mb), ca * cb);
    }
  }
  if (R.udeg_cap < kNoCap / 2) out.set_prec2(2 * R.udeg_cap);
  return out.finish();
}

bool Poly::operator==(const Poly& o) const {
  int p = std::min(prec2_, o.prec2_);
  auto a = terms_.begin(), b = o.terms_.begin();
  auto skip = [p](auto& it, auto end) {
    while (it != end && it->first.udeg2() > p) ++it;
  };
  for (;;) {
    skip(a, terms_.end());
    skip(b, o.terms_.end());
    if (a == terms_.end() || b == o.terms_.end()) return a == terms_.end() && b == o.terms_.end();
    if (!(a->first == b->first) || a->second != b->second) return false;
    ++a;
    ++b;
  }
}

Poly Poly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative power of a polynomial");
  Poly r(ring_, Q(1));
  Poly base = *this;
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

int Poly::max_eps() const {
  int m = -1;
  for (const auto& kv : terms_) m = std::max(m, kv.first.eps);
  return m;
}

int Poly::max_jet() const {
  int m = -1;
  for (const auto& kv : terms_) m = std::max(m, kv.first.max_jet());
  return m;
}

Poly Poly::eps_part(int e) const {
  Poly r(ring_);
  r.prec2_ = prec2_;
  for (const auto& kv : terms_)
    if (kv.first.eps == e) r.terms_.insert(kv);
  return r;
}

Poly Poly::eps_truncate(int max_eps) const {
  Poly r(ring_);
  r.prec2_ = prec2_;
  for (const auto& kv : terms_)
    if (kv.first.eps <= max_eps) r.terms_.insert(kv);
  return r;
}

Poly Poly::udeg_part(int udeg) const {
  Poly r(ring_);
  r.prec2_ = prec2_;
  for (const auto& kv : terms_)
    if (kv.first.udeg2() == 2 * udeg) r.terms_.insert(kv);
  return r;
}

Poly Poly::without_constant() const {
  Poly r(ring_);
  r.prec2_ = prec2_;
  for (const auto& kv : terms_)
    if (!kv.first.is_constant_in_u()) r.terms_.insert(kv);
  return r;
}

Poly Poly::constant_part() const {
  Poly r(ring_);
  r.prec2_ = prec2_;
  for (const auto& kv : terms_)
    if (kv.first.is_constant_in_u()) r.terms_.insert(kv);
  return r;
}

Q Poly::constant_term() const {
  auto it = terms_.find(Mono{});
  return it == terms_.end() ? Q(0) : it->second;
}

Poly Poly::filter(bool (*pred)(const Mono&)) const {
  Poly r(ring_);
  r.prec2_ = prec2_;
  for (const auto& kv : terms_)
    if (pred(kv.first)) r.terms_.insert(kv);
  return r;
}

Poly Poly::rebind(RingPtr r) const {
  if (!ring_->same_shape(*r)) throw std::invalid_argument("rebind: ring shape mismatch");
  PolyBuilder b(std::move(r), prec2_);
  for (const auto& kv : terms_) b.add(kv.first, kv.second);
  return b.finish();
}

std::string Poly::str() const { return print(*this); }

// ---------------------------------------------------------------- builder

void PolyBuilder::add(const Mono& m, const Q& c) { p_.add_term(m, c); }

void PolyBuilder::add(Mono&& m, Q&& c) { p_.insert(std::move(m), std::move(c)); }

void PolyBuilder::add_scaled(const Poly& p, const Q& c) {
  if (p.prec2() < p_.prec2_) p_.set_prec2(p.prec2());
  for (const auto& [m, k] : p.terms()) add(m, k * c);
}

Poly PolyBuilder::finish() {
  Poly r = std::move(p_);
  r.set_prec2(r.prec2_);
  return r;
}

// ---------------------------------------------------------------- calculus

Poly dx(const Poly& f) {
  PolyBuilder b(f.ring(), f.prec2());
  for (const auto& [m, c] : f.terms()) {
    for (auto p : m.factors()) {
      int v = Mono::var_of(p), j = Mono::jet_of(p), e2 = Mono::exp2_of(p);
      Mono n = m;
      n.mul_factor(v, j, -2);
      n.mul_factor(v, j + 1, 2);
      Q k = c * e2;
      k /= 2;
      b.add(std::move(n), std::move(k));
    }
  }
  return b.finish();
}

Poly dx(const Poly& f, int n) {
  Poly r = f;
  for (int i = 0; i < n; ++i) r = dx(r);
  return r;
}

Poly partial(const Poly& f, int var, int jet) {
  PolyBuilder b(f.ring(), f.prec2() >= kNoCap ? kNoCap : f.prec2() - 2);
  for (const auto& [m, c] : f.terms()) {
    int e2 = m.exp2(var, jet);
    if (e2 == 0) continue;
    Mono n = m;
    n.mul_factor(var, jet, -2);
    Q k = c * e2;
    k /= 2;
    b.add(std::move(n), std::move(k));
  }
  return b.finish();
}

Poly param_partial(const Poly& f, int param) {
  PolyBuilder b(f.ring(), f.prec2());
  for (const auto& [m, c] : f.terms())
    if (m.par[param] != 0) b.add(m, c * m.par[param]);
  return b.finish();
}

Poly euler_D(const Poly& f) {
  PolyBuilder b(f.ring(), f.prec2());
  for (const auto& [m, c] : f.terms()) {
    Q k = c * m.dweight2();
    k /= 2;
    b.add(m, k);
  }
  return b.finish();
}

Poly scale_by_dweight(const Poly& f, const Q& shift, bool divide) {
  PolyBuilder b(f.ring(), f.prec2());
  for (const auto& [m, c] : f.terms()) {
    Q w(m.dweight2(), 2);
    w.canonicalize();
    w += shift;
    if (divide) {
      if (w == 0) throw std::domain_error("division by zero D-weight");
      b.add(m, c / w);
    } else {
      b.add(m, c * w);
    }
  }
  return b.finish();
}

namespace {

struct PowerCache {
  // images[var-1][jet] and their integer powers
  const std::vector<Poly>* base;
  std::map<std::pair<int, int>, std::vector<Poly>> cache;  // (var,jet) -> powers
  std::map<std::pair<int, int>, Poly> jets;

  const Poly& jet_image(int var, int jet) {
    auto key = std::make_pair(var, jet);
    auto it = jets.find(key);
    if (it != jets.end()) return it->second;
    Poly p = jet == 0 ? (*base)[var - 1] : dx(jet_image(var, jet - 1));
    return jets.emplace(key, std::move(p)).first->second;
  }

  const Poly& power(int var, int jet, int e) {
    auto& v = cache[{var, jet}];
    if (v.empty()) {
      const Poly& b = jet_image(var, jet);
      v.push_back(Poly(b.ring(), Q(1)));
    }
    while (int(v.size()) <= e) {
      Poly nxt = v.back() * jet_image(var, jet);
      v.push_back(std::move(nxt));
    }
    return v[e];
  }
};

}  // namespace

Poly substitute(const Poly& f, const std::vector<Poly>& images) {
  return substitute_jets(f, images, -1);
}

Poly substitute_jets(const Poly& f, const std::vector<Poly>& images, int) {
  if (int(images.size()) != f.ring()->n_vars)
    throw std::invalid_argument("substitute: image count mismatch");
  RingPtr target = images.empty() ? f.ring() : images.front().ring();
  PowerCache pc{&images, {}, {}};
  Poly out(target);
  out.set_prec2(f.prec2());
  for (const auto& [m, c] : f.terms()) {
    Mono scal;
    scal.eps = m.eps;
    scal.par = m.par;
    Poly t = Poly::from_mono(target, scal, c);
    for (auto p : m.factors()) {
      int e2 = Mono::exp2_of(p);
      if (e2 < 0 || e2 % 2) throw std::domain_error("substitute: non-integer exponent");
      t = t * pc.power(Mono::var_of(p), Mono::jet_of(p), e2 / 2);
      if (t.is_zero() && t.exact()) break;
    }
    out += t;
  }
  return out;
}

Poly eval_point(const Poly& f, const std::vector<std::vector<Q>>& point) {
  PolyBuilder b(f.ring(), f.prec2());
  for (const auto& [m, c] : f.terms()) {
    Q val = c;
    for (auto p : m.factors()) {
      int v = Mono::var_of(p), j = Mono::jet_of(p), e2 = Mono::exp2_of(p);
      Q x = 0;
      if (v - 1 < int(point.size()) && j < int(point[v - 1].size())) x = point[v - 1][j];
      if (x == 0) {
        if (e2 < 0) throw std::domain_error("eval_point: negative power at zero");
        val = 0;
        break;
      }
      if (e2 % 2) throw std::domain_error("eval_point: half-integer power");
      Q pw = 1;
      for (int i = 0; i < std::abs(e2 / 2); ++i) pw *= x;
      if (e2 < 0) pw = 1 / pw;
      val *= pw;
    }
    if (val == 0) continue;
    Mono n;
    n.eps = m.eps;
    n.par = m.par;
    b.add(n, val);
  }
  return b.finish();
}

Poly shift_var(const Poly& f, int var, const Poly& shift) {
  std::vector<Poly> pw{Poly(f.ring(), Q(1))};
  Poly out(f.ring());
  out.set_prec2(f.prec2());
  for (const auto& [m, c] : f.terms()) {
    int e2 = m.exp2(var, 0);
    if (e2 % 2 || e2 < 0) throw std::domain_error("shift_var: non-integer exponent");
    int e = e2 / 2;
    while (int(pw.size()) <= e) pw.push_back(pw.back() * shift);
    Mono rest = m;
    rest.mul_factor(var, 0, -e2);
    Q binom = 1;
    for (int k = 0; k <= e; ++k) {
      // C(e,k) u^{e-k} shift^k
      Mono mk = rest;
      mk.mul_factor(var, 0, 2 * (e - k));
      out += Poly::from_mono(f.ring(), mk, c * binom) * pw[k];
      binom = binom * (e - k) / (k + 1);
    }
  }
  return out;
}

Poly set_var_zero(const Poly& f, int var) {
  PolyBuilder b(f.ring(), f.prec2());
  for (const auto& [m, c] : f.terms()) {
    bool has = false;
    for (auto p : m.factors())
      if (Mono::var_of(p) == var) has = true;
    if (!has) b.add(m, c);
  }
  return b.finish();
}

bool has_graded_degree(const Poly& f, int d) {
  for (const auto& kv : f.terms()) {
    if (kv.first.ddeg2() % 2) return false;
    if (kv.first.ddeg() - kv.first.eps != d) return false;
  }
  return true;
}

// ---------------------------------------------------------------- printing

namespace {

std::string exp_suffix(int e2) {
  if (e2 == 2) return "";
  if (e2 % 2 == 0) return "^" + std::to_string(e2 / 2);
  return "^(" + std::to_string(e2) + "/2)";
}

}  // namespace

std::string print(const Poly& f) {
  if (f.terms().empty()) return "0";
  const Ring& r = *f.ring();
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    std::vector<std::string> fac;
    for (std::size_t i = 0; i < r.params.size(); ++i)
      if (m.par[i] != 0)
        fac.push_back(r.params[i].name + (m.par[i] == 1 ? "" : "^" + std::to_string(int(m.par[i]))));
    if (m.eps) fac.push_back(m.eps == 1 ? "eps" : "eps^" + std::to_string(m.eps));
    for (auto p : m.factors())
      fac.push_back("u[" + r.label(Mono::var_of(p)) + "," + std::to_string(Mono::jet_of(p)) + "]" +
                    exp_suffix(Mono::exp2_of(p)));
    Q a = abs(c);
    bool neg = c < 0;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    bool unit = (a == 1) && !fac.empty();
    if (!unit) os << a.get_str();
    for (std::size_t i = 0; i < fac.size(); ++i) os << ((i == 0 && unit) ? "" : "*") << fac[i];
  }
  return os.str();
}

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
public:
  Parser(const std::string& s, RingPtr r) : s_(s), r_(std::move(r)) {}

  Poly parse() {
    Poly p = expr();
    ws();
    if (i_ != s_.size()) fail("unexpected character");
    return p;
  }

private:
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, i_); }
  void ws() {
    while (i_ < s_.size() && std::isspace((unsigned char)s_[i_])) ++i_;
  }
  bool peek(char c) {
    ws();
    return i_ < s_.size() && s_[i_] == c;
  }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++i_;
  }

  Poly expr() {
    Poly acc(r_);
    bool neg = false;
    if (peek('-')) {
      ++i_;
      neg = true;
    } else if (peek('+')) {
      ++i_;
    }
    Poly t = term();
    acc += neg ? -t : t;
    while (peek('+') || peek('-')) {
      bool minus = s_[i_] == '-';
      ++i_;
      Poly t2 = term();
      if (minus)
        acc -= t2;
      else
        acc += t2;
    }
    return acc;
  }

  Poly term() {
    Poly p = factor();
    while (peek('*')) {
      ++i_;
      p = p * factor();
    }
    return p;
  }

  std::string integer() {
    ws();
    std::size_t st = i_;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
    while (i_ < s_.size() && std::isdigit((unsigned char)s_[i_])) ++i_;
    if (i_ == st || (i_ == st + 1 && !std::isdigit((unsigned char)s_[st]))) {
      i_ = st;
      fail("expected integer");
    }
    return s_.substr(st, i_ - st);
  }

  // returns exponent doubled
  int exponent() {
    if (peek('(')) {
      ++i_;
      int num = std::stoi(integer());
      int den = 1;
      if (peek('/')) {
        ++i_;
        den = std::stoi(integer());
      }
      expect(')');
      if (den == 1) return 2 * num;
      if (den == 2) return num;
      fail("only half-integer fractional exponents are supported");
    }
    return 2 * std::stoi(integer());
  }

  Poly factor() {
    ws();
    std::size_t start = i_;
    // atom kinds decide how the exponent applies
    if (peek('(')) {
      ++i_;
      Poly p = expr();
      expect(')');
      if (peek('^')) {
        ++i_;
        int e2 = exponent();
        if (e2 < 0 || e2 % 2) {
          i_ = start;
          fail("negative or fractional power of a compound expression");
        }
        return p.pow(e2 / 2);
      }
      return p;
    }
    if (i_ < s_.size() && std::isdigit((unsigned char)s_[i_])) {
      std::string num = integer();
      if (peek('/')) {
        ++i_;
        std::string den = integer();
        if (std::stoll(den) == 0) fail("zero denominator");
        num += "/" + den;
      }
      Q q = parse_rational(num);
      if (peek('^')) {
        ++i_;
        int e2 = exponent();
        if (e2 % 2) fail("fractional power of a number");
        Q r = 1;
        for (int k = 0; k < std::abs(e2 / 2); ++k) r *= q;
        if (e2 < 0) r = 1 / r;
        q = r;
      }
      return Poly(r_, q);
    }
    if (i_ < s_.size() && (std::isalpha((unsigned char)s_[i_]) || s_[i_] == '_')) {
      std::size_t st = i_;
      while (i_ < s_.size() && (std::isalnum((unsigned char)s_[i_]) || s_[i_] == '_')) ++i_;
      std::string id = s_.substr(st, i_ - st);
      if (id == "u" && peek('[')) {
        ++i_;
        ws();
        std::size_t ls = i_;
        while (i_ < s_.size() && s_[i_] != ',' && !std::isspace((unsigned char)s_[i_])) ++i_;
        std::string label = s_.substr(ls, i_ - ls);
        int v = r_->var_index(label);
        if (v < 0) {
          i_ = ls;
          fail("undeclared variable '" + label + "'");
        }
        expect(',');
        int jet = std::stoi(integer());
        if (jet < 0 || jet > 250) fail("bad jet order");
        expect(']');
        int e2 = 2;
        if (peek('^')) {
          ++i_;
          e2 = exponent();
          if (e2 % 2 && (!r_->half_powers || jet != 0)) fail("fractional exponent not allowed");
          if (e2 < 0 && (!r_->half_powers || jet != 0)) fail("negative exponent of a jet variable");
        }
        Mono m;
        m.mul_factor(v, jet, e2);
        return Poly::from_mono(r_, m, 1);
      }
      int e2 = 2;
      if (peek('^')) {
        ++i_;
        e2 = exponent();
        if (e2 % 2) fail("fractional exponent of " + id);
      }
      Mono m;
      if (id == "eps") {
        if (e2 < 0) fail("negative power of eps");
        m.eps = e2 / 2;
      } else {
        int pi = r_->param_index(id);
        if (pi < 0) {
          i_ = st;
          fail("undeclared parameter '" + id + "'");
        }
        if (e2 < 0 && !r_->params[pi].localized) fail("negative power of non-localized parameter");
        m.par[pi] = int8_t(e2 / 2);
      }
      return Poly::from_mono(r_, m, 1);
    }
    fail("expected atom");
  }

  const std::string& s_;
  RingPtr r_;
  std::size_t i_ = 0;
};

}  // namespace

Poly parse_expr(const std::string& text, RingPtr r) { return Parser(text, std::move(r)).parse(); }

}  // namespace drh
