// drh: command-line front end for the DR hierarchy toolkit.
//
// Exit status: 0 when every requested check passes, 1 when a check fails,
// 2 on usage or data errors.

#include "drh/catalog.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace drh;
using nlohmann::json;

namespace {

struct Options {
  std::string cohft = "kdv";
  int eps = -1;
  int pmax = 4;
  int tdeg = 4;
  int udeg = -1;
  int genus = 1;
  int points = -1;
  std::string out;
  std::string format = "text";
  bool strict_caps = false;
  std::string suite = "commute,tau,string";
  std::string correlators = "wk";
  std::string compare;
  std::vector<std::string> weights;
  std::string eps_weight, total;
  bool half_powers = false;
  std::string name;
};

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

json report_json(const Report& r) {
  json e = json::array();
  for (const auto& x : r.entries) {
    json j{{"name", x.name}, {"status", x.pass ? "PASS" : "FAIL"}};
    if (!x.pass) j["witness"] = x.witness;
    e.push_back(j);
  }
  return {{"title", r.title}, {"status", r.ok() ? "PASS" : "FAIL"}, {"entries", e}};
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw UsageError("cannot write '" + o.out + "'");
  f << text;
}

int emit_reports(const Options& o, const std::vector<Report>& reps) {
  bool ok = true;
  std::string body;
  if (o.format == "json") {
    json a = json::array();
    for (const auto& r : reps) a.push_back(report_json(r));
    body = a.dump(2) + "\n";
  } else {
    for (const auto& r : reps) body += r.text();
  }
  for (const auto& r : reps) ok = ok && r.ok();
  emit(o, body);
  return ok ? 0 : 1;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string t;
  while (std::getline(ss, t, ','))
    if (!t.empty()) out.push_back(t);
  return out;
}

// Effective eps cap.  Requests beyond the known order are clamped, or refused
// under --strict-caps.
int effective_eps(const Options& o, const CohFTSpec& s, int wanted) {
  if (wanted <= s.ring->eps_cap || s.eps_exact) return wanted;
  if (o.strict_caps)
    throw SpecError(s.name + ": eps^" + std::to_string(wanted) + " requested, data known through eps^" +
                    std::to_string(s.ring->eps_cap));
  std::cerr << "note: " << s.name << " is known through eps^" << s.ring->eps_cap << "; using that\n";
  return s.ring->eps_cap;
}

Poly primary_for(const Options& o, const CohFTSpec& s, int eps) {
  Poly p = s.primary_at(effective_eps(o, s, eps));
  if (o.udeg < 0) return p;
  if (o.udeg > s.ring->udeg_cap && o.strict_caps)
    throw SpecError(s.name + ": u-degree cap " + std::to_string(o.udeg) + " exceeds the construction cap " +
                    std::to_string(s.ring->udeg_cap));
  return p.rebind(with_caps(p.ring(), p.ring()->eps_cap, std::min(o.udeg, s.ring->udeg_cap)));
}

TauHierarchy build_for(const Options& o, const CohFTSpec& s, int pmax) {
  int eps = o.eps >= 0 ? o.eps : s.eps_order;
  return build_from_primary(primary_for(o, s, eps), s.eta, pmax);
}

std::string densities_text(const TauHierarchy& h) {
  std::ostringstream os;
  for (const auto& [k, g] : h.dens)
    os << "g_{" << h.ring->label(k.first) << "," << k.second << "} = " << print(g) << "\n";
  return os.str();
}

json densities_json(const TauHierarchy& h) {
  json a = json::array();
  for (const auto& [k, g] : h.dens)
    a.push_back({{"alpha", h.ring->label(k.first)}, {"level", k.second}, {"density", print(g)}});
  return a;
}

SeriesCaps caps_of(const Options& o) {
  SeriesCaps c;
  c.genus = o.genus;
  c.dsum = o.tdeg;
  c.points = o.points > 0 ? o.points : o.tdeg + 3;
  return c;
}

// ---------------------------------------------------------------- verbs

int cmd_verify(const Options& o) {
  CohFTSpec s = resolve_cohft(o.cohft);
  auto suites = split(o.suite);
  TauHierarchy h = build_for(o, s, o.pmax);
  auto pairs = pairs_upto(h.n(), o.pmax);
  std::vector<Report> reps;
  for (const auto& name : suites) {
    if (name == "commute") {
      reps.push_back(verify_commutativity(h, pairs));
    } else if (name == "tau") {
      reps.push_back(verify_tau_symmetry(h, pairs));
    } else if (name == "string") {
      reps.push_back(verify_string(h, o.pmax));
    } else if (name == "displays") {
      std::vector<std::string> skipped;
      reps.push_back(compare_displays(s, h, &skipped));
      if (!skipped.empty() && o.format == "text") {
        std::cerr << "not compared:";
        for (const auto& k : skipped) std::cerr << " " << k;
        std::cerr << "\n";
      }
    } else if (name == "homogeneity") {
      if (!s.euler) throw SpecError(s.name + ": no Euler data");
      FrobeniusData fr(s.genus0.rebind(h.ring), s.eta, s.euler);
      reps.push_back(verify_hamiltonian_homogeneity(h, fr, o.pmax - 1));
    } else {
      throw UsageError("unknown suite '" + name + "' (commute, tau, string, displays, homogeneity)");
    }
  }
  return emit_reports(o, reps);
}

int cmd_build(const Options& o) {
  CohFTSpec s = resolve_cohft(o.cohft);
  TauHierarchy h = build_for(o, s, o.pmax);
  if (o.format == "json")
    emit(o, json{{"cohft", s.name}, {"eps", h.ring->eps_cap}, {"densities", densities_json(h)}}.dump(2) + "\n");
  else
    emit(o, densities_text(h));
  return 0;
}

int cmd_potential(const Options& o) {
  CohFTSpec s = resolve_cohft(o.cohft);
  SeriesCaps c = caps_of(o);
  Options oo = o;
  if (oo.eps < 0) oo.eps = 2 * c.genus;
  TauHierarchy h = build_for(oo, s, c.dsum + 1);
  PotentialSeries F = dr_potential(h, c);
  emit(o, potential_to_json(F));
  return 0;
}

PotentialSeries read_potential(const std::string& path, const RingPtr& base) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return potential_from_json(ss.str(), base);
}

int cmd_reduce(const Options& o) {
  CohFTSpec s = resolve_cohft(o.cohft);
  SeriesCaps out = caps_of(o);
  // extra insertions for the jets of w^top
  SeriesCaps in = out;
  in.points = out.points + std::max(1, 2 * out.genus - 2) + 2;
  PotentialSeries F;
  if (o.correlators == "wk") {
    if (s.n() != 1) throw UsageError("--correlators wk needs a rank-one theory");
    F = wk_correlators(in);
  } else {
    F = read_potential(o.correlators, s.ring);
  }
  RingPtr wring = with_caps(s.ring, 2 * out.genus, s.ring->udeg_cap);
  ReducedPotential red = reduced_potential(F, s.eta, wring, out);
  std::vector<Report> reps;
  Report info;
  info.title = "reduced potential";
  info.add("P = " + print(red.P), true);
  reps.push_back(info);
  if (!o.compare.empty()) {
    PotentialSeries G = read_potential(o.compare, s.ring);
    Report cmp;
    cmp.title = "F^red against " + o.compare;
    std::string w;
    bool same = same_on(red.Fred, G, out, &w);
    cmp.add("F^red = F", same, w);
    reps.push_back(cmp);
    return emit_reports(o, reps);
  }
  if (o.format == "json") {
    emit(o, potential_to_json(red.Fred));
    return 0;
  }
  return emit_reports(o, reps);
}

int cmd_genus1(const Options& o) {
  CohFTSpec s = resolve_cohft(o.cohft);
  RingPtr r = with_caps(s.ring, 2, s.ring->udeg_cap);
  FrobeniusData F(s.genus0.rebind(r), s.eta, s.euler);
  TauHierarchy h0 = principal_genus0(F, std::max(o.pmax, 1));
  Genus1Correction c = dr_genus1(F, h0);
  Report rep;
  rep.title = "genus-one correction (" + s.name + ")";
  rep.add("gbar^[2] = " + print(normal_form(c.gbar2)), true);
  if (s.eps_order >= 2) {
    Poly d = normal_form(c.gbar2 - s.primary.eps_part(2).rebind(c.gbar2.ring()));
    rep.add("agrees with the catalog primary at eps^2", d.is_zero(), print(d));
  }
  return emit_reports(o, {rep});
}

Grading grading_for(const Options& o, const CohFTSpec& s) {
  Grading g;
  g.half_powers = o.half_powers;
  if (!o.weights.empty()) {
    for (const auto& w : o.weights) g.var_weight.push_back(parse_rational(w));
    if (int(g.var_weight.size()) != s.n()) throw UsageError("--weights needs one weight per variable");
    g.eps_weight = parse_rational(o.eps_weight.empty() ? "1" : o.eps_weight);
    if (o.total.empty()) throw UsageError("--weights needs --total");
    g.total = parse_rational(o.total);
    return g;
  }
  if (!s.euler || !s.ring->params.empty())
    throw UsageError(s.name + ": no parameter-free Euler data; pass --weights and --total");
  for (const auto& b : s.euler->b)
    if (!b.is_zero()) throw UsageError(s.name + ": Euler field has a shift; pass --weights and --total");
  // weights a_alpha, eps (1 - delta)/2, density 3 - delta
  for (const auto& a : s.euler->a) g.var_weight.push_back(a);
  g.eps_weight = (1 - s.euler->delta) / 2;
  g.total = 3 - s.euler->delta;
  return g;
}

int cmd_ansatz(const Options& o) {
  CohFTSpec s = resolve_cohft(o.cohft);
  Grading g = grading_for(o, s);
  AnsatzResult a = ansatz_solve(s.genus0, s.eta, g, std::max(o.pmax, 2));
  if (o.format == "json") {
    json sol = json::array();
    for (const auto& p : a.solutions) sol.push_back(print(normal_form(p)));
    json cand = json::array();
    for (const auto& p : a.candidates) cand.push_back(print(p));
    emit(o, json{{"cohft", s.name}, {"dimension", a.solutions.size()}, {"equations", a.equations},
                 {"candidates", cand}, {"basis", sol}}
                    .dump(2) +
                "\n");
    return 0;
  }
  std::ostringstream os;
  os << "candidates: " << a.candidates.size() << ", equations: " << a.equations
     << ", dimension: " << a.solutions.size() << "\n";
  for (const auto& p : a.solutions) os << "  int( " << print(normal_form(p)) << " ) dx\n";
  emit(o, os.str());
  return 0;
}

int cmd_normal(const Options& o) {
  CohFTSpec s = resolve_cohft(o.cohft);
  TauHierarchy h = build_for(o, s, 0);
  MiuraMap m = normal_coordinates(h);
  std::ostringstream os;
  if (o.format == "json") {
    json j = json::object();
    for (int a = 1; a <= m.n(); ++a) j[s.ring->label(a)] = print(m.image(a));
    emit(o, j.dump(2) + "\n");
    return 0;
  }
  for (int a = 1; a <= m.n(); ++a) os << "~u^" << s.ring->label(a) << " = " << print(m.image(a)) << "\n";
  emit(o, os.str());
  return 0;
}

int cmd_wk(const Options& o) {
  SeriesCaps c = caps_of(o);
  PotentialSeries F = wk_correlators(c);
  if (o.format == "json") {
    emit(o, potential_to_json(F));
    return 0;
  }
  std::ostringstream os;
  for (const auto& e : F.entries()) {
    os << "<";
    for (const auto& p : e.points) os << " tau_" << p.second;
    os << " >_" << e.genus << " = " << print(e.value) << "\n";
  }
  emit(o, os.str());
  return 0;
}

int cmd_catalog_list(const Options& o) {
  std::ostringstream os;
  json a = json::array();
  for (const auto& n : builtin_names()) {
    CohFTSpec s = builtin(n);
    if (o.format == "json")
      a.push_back({{"name", n}, {"summary", s.summary}, {"rank", s.n()}, {"eps_order", s.eps_order}});
    else
      os << n << "  (N=" << s.n() << ", eps^" << s.eps_order << ")  " << s.summary << "\n";
  }
  emit(o, o.format == "json" ? a.dump(2) + "\n" : os.str());
  return 0;
}

int cmd_catalog_show(const Options& o) {
  CohFTSpec s = resolve_cohft(o.name.empty() ? o.cohft : o.name);
  if (o.format == "json") {
    emit(o, save_manifest(s));
    return 0;
  }
  std::ostringstream os;
  os << s.name << ": " << s.summary << "\n";
  os << "variables:";
  for (const auto& l : s.ring->labels) os << " " << l;
  os << "\nparameters:";
  for (const auto& p : s.ring->params)
    os << " " << p.name << "[" << p.min_exp << ".." << (p.max_exp >= kNoCap ? "inf" : std::to_string(p.max_exp))
       << "]";
  os << "\ngenus 0: " << print(s.genus0) << "\n";
  os << "primary (" << s.origin << "):\n  " << print(s.primary) << "\n";
  for (const auto& d : s.printed) {
    os << d.key << ": " << d.text << "\n";
    if (!d.note.empty()) os << "  note: " << d.note << "\n";
  }
  emit(o, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DR hierarchy toolkit"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c) {
    c->add_option("--cohft", o.cohft, "builtin name or manifest path");
    c->add_option("--eps", o.eps, "eps cap of the Hamiltonians");
    c->add_option("--pmax", o.pmax, "highest descendant level");
    c->add_option("--udeg", o.udeg, "u-degree cap");
    c->add_option("--out", o.out, "write the result to a file");
    c->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    c->add_flag("--strict-caps", o.strict_caps, "refuse requests beyond the known data");
  };
  auto series = [&](CLI::App* c) {
    c->add_option("--genus", o.genus, "genus cap");
    c->add_option("--tdeg", o.tdeg, "total descendant degree cap");
    c->add_option("--points", o.points, "insertion cap (default tdeg + 3)");
  };

  auto* verify = app.add_subcommand("verify", "run verification suites on a built hierarchy");
  common(verify);
  verify->add_option("--suite", o.suite, "comma list: commute,tau,string,displays,homogeneity");
  auto* build = app.add_subcommand("build", "print the Hamiltonian densities");
  common(build);
  auto* potential = app.add_subcommand("potential", "DR potential as correlator records");
  common(potential);
  series(potential);
  auto* reduce = app.add_subcommand("reduce", "reduced potential of a correlator table");
  common(reduce);
  series(reduce);
  reduce->add_option("--correlators", o.correlators, "'wk' or a potential JSON file");
  reduce->add_option("--compare", o.compare, "potential JSON file to compare with");
  auto* genus1 = app.add_subcommand("genus1", "closed-form genus-one correction");
  common(genus1);
  auto* ansatz = app.add_subcommand("ansatz", "homogeneous genus-one deformations");
  common(ansatz);
  ansatz->add_option("--weights", o.weights, "weights of the variables")->delimiter(',');
  ansatz->add_option("--eps-weight", o.eps_weight, "weight of eps");
  ansatz->add_option("--total", o.total, "weight of the density");
  ansatz->add_flag("--half-powers", o.half_powers, "allow half-integer powers of u^alpha_0");
  auto* normal = app.add_subcommand("normal-coords", "normal coordinates of the hierarchy");
  common(normal);
  auto* wk = app.add_subcommand("wk", "Witten-Kontsevich correlators");
  wk->add_option("--out", o.out, "write the result to a file");
  wk->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  series(wk);
  auto* catalog = app.add_subcommand("catalog", "builtin theories");
  catalog->require_subcommand(1);
  auto* list = catalog->add_subcommand("list", "list builtins");
  list->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));
  auto* show = catalog->add_subcommand("show", "show one theory (json: its manifest)");
  show->add_option("name", o.name, "builtin name or manifest path");
  common(show);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*verify) return cmd_verify(o);
    if (*build) return cmd_build(o);
    if (*potential) return cmd_potential(o);
    if (*reduce) return cmd_reduce(o);
    if (*genus1) return cmd_genus1(o);
    if (*ansatz) return cmd_ansatz(o);
    if (*normal) return cmd_normal(o);
    if (*wk) return cmd_wk(o);
    if (*list) return cmd_catalog_list(o);
    if (*show) return cmd_catalog_show(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const SpecError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const RecursionObstruction& e) {
    std::cerr << "recursion obstruction: " << e.what() << "\n  witness: " << print(e.witness) << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
