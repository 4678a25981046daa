#include "drh/catalog.hpp"

#include <regex>

namespace drh {

namespace {

Poly cut(const Poly& p, int e) { return p.eps_truncate(e); }

// parameter `idx` set to zero; throws when a negative power is present
Poly param_to_zero(const Poly& f, int idx) {
  PolyBuilder b(f.ring(), f.prec2());
  for (const auto& [m, c] : f.terms()) {
    if (m.par[idx] < 0) throw std::invalid_argument("param_to_zero: negative power");
    if (m.par[idx] == 0) b.add(m, c);
  }
  return b.finish();
}

std::string diff_text(const Poly& d) {
  std::string s = print(d);
  return s.size() > 240 ? s.substr(0, 240) + " ..." : s;
}

int label_index(const RingPtr& r, const std::string& s) {
  int v = r->var_index(s);
  if (v < 0) throw SpecError("display refers to unknown variable '" + s + "'");
  return v;
}

}  // namespace

Report compare_displays(const CohFTSpec& spec, const TauHierarchy& h, std::vector<std::string>* skipped) {
  Report rep;
  rep.title = "printed displays (" + spec.name + ")";
  const RingPtr& r = h.ring;
  static const std::regex gbar_re(R"(gbar_\{(\w+),(-?\d+)\}(\|(\w+)=0)?)");
  static const std::regex dg_re(R"(dgbar_\{(\w+),(\d+)\}/du\^(\w+))");
  static const std::regex g_re(R"(g_\{(\w+),(\d+)\})");
  static const std::regex h_re(R"(h_\{(\w+),(-?\d+)\})");
  static const std::regex n_re(R"(normal\^(\w+))");
  std::optional<MiuraMap> normal;

  for (const auto& d : spec.printed) {
    const int e = std::min(d.eps_order, r->eps_cap);
    Poly shown = cut(d.value.rebind(r), e);
    std::smatch m;
    auto record = [&](bool ok, const Poly& diff) {
      std::string w;
      if (!ok) w = diff_text(diff) + (d.note.empty() ? "" : "  [note: " + d.note + "]");
      rep.add(d.key, ok, w);
    };
    try {
      if (std::regex_match(d.key, m, gbar_re)) {
        Poly mine = cut(h.g(label_index(r, m[1]), std::stoi(m[2])), e);
        if (m[4].matched) {
          int pi = r->param_index(m[4]);
          mine = param_to_zero(mine, pi);
          shown = param_to_zero(shown, pi);
        }
        Poly diff = normal_form(mine - shown);
        record(diff.is_zero(), diff);
      } else if (d.key == "gbar") {
        Poly diff = normal_form(cut(spec.primary.rebind(r), e) - shown);
        record(diff.is_zero(), diff);
      } else if (std::regex_match(d.key, m, dg_re)) {
        Poly mine = cut(var_deriv(h.g(label_index(r, m[1]), std::stoi(m[2])), label_index(r, m[3])), e);
        Poly diff = mine - shown;
        record(diff.is_zero(), diff);
      } else if (std::regex_match(d.key, m, g_re)) {
        // densities are compared as local functionals
        Poly diff = normal_form(cut(h.g(label_index(r, m[1]), std::stoi(m[2])), e) - shown);
        record(diff.is_zero(), diff);
      } else if (std::regex_match(d.key, m, h_re)) {
        Poly diff = cut(h.h(label_index(r, m[1]), std::stoi(m[2])), e) - shown;
        record(diff.is_zero(), diff);
      } else if (std::regex_match(d.key, m, n_re)) {
        if (!normal) normal = normal_coordinates(h);
        Poly diff = cut(normal->image(label_index(r, m[1])), e) - shown;
        record(diff.is_zero(), diff);
      } else if (skipped) {
        skipped->push_back(d.key);
      }
    } catch (const std::out_of_range&) {
      if (skipped) skipped->push_back(d.key + " (beyond pmax)");
    }
  }
  return rep;
}

}  // namespace drh
