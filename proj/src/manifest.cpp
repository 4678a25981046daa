// SPDX-License-Identifier: MIT
#include "drh/catalog.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace drh {

using nlohmann::json;

namespace {

json qvec(const std::vector<Q>& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

std::vector<Q> read_qvec(const json& a) {
  std::vector<Q> v;
  for (const auto& x : a) v.push_back(parse_rational(x.get<std::string>()));
  return v;
}

json points_json(const RingPtr& r, const std::vector<Index>& pts) {
  json a = json::array();
  for (const auto& [alpha, d] : pts) a.push_back(json::array({r->label(alpha), d}));
  return a;
}

std::vector<Index> read_points(const RingPtr& r, const json& a) {
  std::vector<Index> pts;
  for (const auto& p : a) {
    std::string lab = p.at(0).is_string() ? p.at(0).get<std::string>() : std::to_string(p.at(0).get<int>());
    int v = r->var_index(lab);
    if (v < 0) throw SpecError("manifest: unknown variable '" + lab + "' in a correlator");
    pts.push_back({v, p.at(1).get<int>()});
  }
  return pts;
}

Provenance read_provenance(const std::string& s) {
  if (s == "printed") return Provenance::Printed;
  if (s == "oracle") return Provenance::Oracle;
  return Provenance::UserFile;
}

int read_cap(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return kNoCap;
  return j.at(key).get<int>();
}

}  // namespace

std::string save_manifest(const CohFTSpec& s) {
  const RingPtr& r = s.ring;
  json j;
  j["name"] = s.name;
  j["summary"] = s.summary;
  j["origin"] = s.origin;
  j["variables"] = r->labels;
  json params = json::array();
  for (const auto& p : r->params) {
    json q{{"name", p.name}, {"min", p.min_exp}, {"localized", p.localized}};
    q["max"] = p.max_exp >= kNoCap ? json(nullptr) : json(p.max_exp);
    params.push_back(q);
  }
  j["parameters"] = params;
  j["caps"] = {{"eps", r->eps_cap >= kNoCap ? json(nullptr) : json(r->eps_cap)},
               {"udeg", r->udeg_cap >= kNoCap ? json(nullptr) : json(r->udeg_cap)}};
  json eta = json::array();
  for (const auto& row : s.eta) eta.push_back(qvec(row));
  j["eta"] = eta;
  j["genus0"] = print(s.genus0);
  j["primary"] = print(s.primary);
  j["eps_order"] = s.eps_order;
  j["eps_exact"] = s.eps_exact;
  if (s.euler) {
    json b = json::array();
    for (const auto& p : s.euler->b) b.push_back(print(p));
    j["euler"] = {{"a", qvec(s.euler->a)}, {"b", b}, {"delta", to_string(s.euler->delta)}};
    j["param_weight"] = qvec(s.param_weight);
  }
  if (s.divisor) j["divisor"] = {{"gamma", r->label(s.divisor->gamma)}, {"param_pairing", qvec(s.divisor->param_pairing)}};
  if (s.g_function) j["g_function"] = print(*s.g_function);
  if (s.chi) j["chi"] = to_string(*s.chi);
  json printed = json::array();
  for (const auto& p : s.printed)
    printed.push_back({{"key", p.key},
                       {"text", p.text},
                       {"value", print(p.value)},
                       {"eps_order", p.eps_order},
                       {"as_printed", p.as_printed},
                       {"note", p.note}});
  j["printed"] = printed;
  json corr = json::array();
  for (const auto& c : s.correlators)
    corr.push_back({{"genus", c.genus},
                    {"points", points_json(r, c.points)},
                    {"value", print(c.value)},
                    {"source", to_string(c.source)}});
  j["correlators"] = corr;
  return j.dump(2) + "\n";
}

CohFTSpec load_manifest_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw SpecError(std::string("manifest: ") + e.what());
  }
  CohFTSpec s;
  try {
    s.name = j.at("name").get<std::string>();
    s.summary = j.value("summary", "");
    s.origin = j.value("origin", "");
    auto r = std::make_shared<Ring>();
    r->labels = j.at("variables").get<std::vector<std::string>>();
    r->n_vars = int(r->labels.size());
    if (r->n_vars == 0) throw SpecError("manifest: no variables");
    for (const auto& p : j.value("parameters", json::array())) {
      Param q;
      q.name = p.at("name").get<std::string>();
      q.min_exp = p.value("min", 0);
      q.max_exp = p.contains("max") && !p.at("max").is_null() ? p.at("max").get<int>() : kNoCap;
      q.localized = p.value("localized", false);
      if (q.min_exp < 0 && !q.localized) throw SpecError("manifest: negative window for non-localized parameter " + q.name);
      r->params.push_back(q);
    }
    if (r->params.size() > std::size_t(kMaxParams)) throw SpecError("manifest: too many parameters");
    json caps = j.value("caps", json::object());
    r->eps_cap = read_cap(caps, "eps");
    r->udeg_cap = read_cap(caps, "udeg");
    s.ring = r;
    for (const auto& row : j.at("eta")) s.eta.push_back(read_qvec(row));
    s.genus0 = parse_expr(j.at("genus0").get<std::string>(), s.ring);
    s.primary = j.contains("primary") ? parse_expr(j.at("primary").get<std::string>(), s.ring) : s.genus0;
    s.eps_order = j.value("eps_order", 0);
    s.eps_exact = j.value("eps_exact", false);
    if (j.contains("euler")) {
      EulerData e;
      e.a = read_qvec(j["euler"].at("a"));
      for (const auto& b : j["euler"].at("b")) e.b.push_back(parse_expr(b.get<std::string>(), s.ring));
      e.delta = parse_rational(j["euler"].at("delta").get<std::string>());
      s.euler = e;
      s.param_weight = j.contains("param_weight") ? read_qvec(j["param_weight"])
                                                  : std::vector<Q>(r->params.size(), Q(0));
    }
    if (j.contains("divisor")) {
      DivisorData d;
      d.gamma = r->var_index(j["divisor"].at("gamma").get<std::string>());
      if (d.gamma < 0) throw SpecError("manifest: unknown divisor variable");
      d.param_pairing = read_qvec(j["divisor"].at("param_pairing"));
      s.divisor = d;
    }
    if (j.contains("g_function")) s.g_function = parse_expr(j["g_function"].get<std::string>(), s.ring);
    if (j.contains("chi")) s.chi = parse_rational(j["chi"].get<std::string>());
    for (const auto& p : j.value("printed", json::array())) {
      PrintedDisplay d;
      d.key = p.at("key").get<std::string>();
      d.text = p.value("text", "");
      d.value = parse_expr(p.at("value").get<std::string>(), s.ring);
      d.eps_order = p.value("eps_order", s.eps_order);
      d.as_printed = p.value("as_printed", true);
      d.note = p.value("note", "");
      s.printed.push_back(std::move(d));
    }
    for (const auto& c : j.value("correlators", json::array()))
      s.correlators.push_back({c.at("genus").get<int>(), read_points(s.ring, c.at("points")),
                               parse_expr(c.at("value").get<std::string>(), s.ring),
                               read_provenance(c.value("source", "user"))});
  } catch (const json::exception& e) {
    throw SpecError(std::string("manifest schema: ") + e.what());
  } catch (const ParseError& e) {
    throw SpecError(std::string("manifest expression: ") + e.what());
  }
  validate(s);
  return s;
}

CohFTSpec load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open manifest '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_manifest_text(ss.str());
}

}  // namespace drh
