#pragma once

#include "criteria.hpp"
#include "groups.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rc {

using ojson = nlohmann::ordered_json;

struct BadInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---- group fixtures ------------------------------------------------------------

struct GroupSpec {
  std::string name;
  std::string kind;  // perm | matrix
  int size = 0;      // degree or dim
  int p = 0, m = 0;  // matrix only
  ojson generators = ojson::array();
  ojson quotient;                     // optional list of central elements
  ojson classes = ojson::object();    // optional name -> element
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BadInput("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline GroupSpec parse_group_spec(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const std::exception& e) {
    throw BadInput(std::string("malformed group fixture: ") + e.what());
  }
  GroupSpec s;
  try {
    s.name = j.at("name").get<std::string>();
    s.kind = j.at("kind").get<std::string>();
    if (s.kind == "perm") {
      s.size = j.at("degree").get<int>();
    } else if (s.kind == "matrix") {
      s.size = j.at("dim").get<int>();
      s.p = j.at("field").at("p").get<int>();
      s.m = j.at("field").at("m").get<int>();
    } else {
      throw BadInput("unknown group kind " + s.kind);
    }
    s.generators = j.at("generators");
    if (j.contains("quotient")) s.quotient = j.at("quotient");
    if (j.contains("classes")) s.classes = j.at("classes");
  } catch (const BadInput&) {
    throw;
  } catch (const std::exception& e) {
    throw BadInput(std::string("group fixture missing field: ") + e.what());
  }
  return s;
}

inline std::string render_group_spec(const GroupSpec& s) {
  ojson j;
  j["name"] = s.name;
  j["kind"] = s.kind;
  if (s.kind == "perm") {
    j["degree"] = s.size;
  } else {
    j["dim"] = s.size;
    j["field"] = {{"p", s.p}, {"m", s.m}};
  }
  j["generators"] = s.generators;
  if (!s.quotient.is_null()) j["quotient"] = s.quotient;
  if (!s.classes.empty()) j["classes"] = s.classes;
  return j.dump(2) + "\n";
}

inline std::shared_ptr<Domain> make_domain(const GroupSpec& s) {
  if (s.kind == "perm") return Domain::permutations(s.size);
  return Domain::matrices(s.size, s.p, s.m);
}

inline Element parse_element(const Domain& d, const ojson& j) {
  try {
    if (d.kind() == Domain::Kind::Perm) return d.normalize(perm_from_cycles(j.get<std::string>(), d.degree()));
    return d.from_entries(j.get<std::vector<std::vector<int>>>());
  } catch (const std::exception& e) {
    throw BadInput(std::string("bad element: ") + e.what());
  }
}

inline ojson element_to_json(const Domain& d, const Element& x) {
  if (d.kind() == Domain::Kind::Perm) return perm_to_cycles(x);
  return d.entries(x);
}

inline FiniteGroup build_group(const GroupSpec& s) {
  auto dom = make_domain(s);
  if (!s.quotient.is_null()) {
    std::vector<Element> zs;
    for (const auto& z : s.quotient) zs.push_back(parse_element(*dom, z));
    dom->set_central_quotient(zs);
  }
  std::vector<Element> gens;
  for (const auto& g : s.generators) gens.push_back(parse_element(*dom, g));
  return FiniteGroup(dom, gens, s.name);
}

inline FiniteGroup load_group(const std::string& path) { return build_group(parse_group_spec(read_file(path))); }

// ---- witnesses, certificates, reports -------------------------------------------

inline ojson witness_to_json(const Domain& d, const TypeWitness& w) {
  ojson j;
  j["kind"] = kind_name(w.kind);
  ojson sub = ojson::array(), el = ojson::array();
  for (const auto& x : w.subgroup) sub.push_back(element_to_json(d, x));
  for (const auto& x : w.elems) el.push_back(element_to_json(d, x));
  j["subgroup"] = sub;
  j["elements"] = el;
  if (w.kind == WitnessKind::Omega) j["orbit_size"] = w.orbit_size;
  if (w.affine) j["affine"] = {{"orders", w.affine->orders}, {"matrix", w.affine->matrix}};
  return j;
}

inline TypeWitness witness_from_json(const Domain& d, const ojson& j) {
  TypeWitness w;
  w.kind = kind_from_name(j.at("kind").get<std::string>());
  for (const auto& x : j.at("subgroup")) w.subgroup.push_back(parse_element(d, x));
  for (const auto& x : j.at("elements")) w.elems.push_back(parse_element(d, x));
  if (j.contains("orbit_size")) w.orbit_size = j.at("orbit_size").get<int>();
  if (j.contains("affine")) {
    AffineRackSpec s;
    s.orders = j.at("affine").at("orders").get<std::vector<int>>();
    s.matrix = j.at("affine").at("matrix").get<std::vector<std::vector<int>>>();
    w.affine = s;
  }
  return w;
}

struct Certificate {
  std::string class_id;
  std::string kind;
  ojson witness;
  bool verified = false;
  std::string search;  // exhaustive | budgeted

  bool operator==(const Certificate& o) const {
    return class_id == o.class_id && kind == o.kind && witness == o.witness && verified == o.verified &&
           search == o.search;
  }
};

inline ojson to_json(const Certificate& c) {
  return ojson{{"class_id", c.class_id}, {"kind", c.kind}, {"witness", c.witness}, {"verified", c.verified},
               {"search", c.search}};
}

inline Certificate certificate_from_json(const ojson& j) {
  return {j.at("class_id").get<std::string>(), j.at("kind").get<std::string>(), j.at("witness"),
          j.at("verified").get<bool>(), j.at("search").get<std::string>()};
}

struct DetectorOutcome {
  std::string detector;
  std::string status;
  std::size_t explored = 0;
  double millis = 0;
  std::string note;
  std::optional<Certificate> certificate;

  bool operator==(const DetectorOutcome& o) const {
    return detector == o.detector && status == o.status && explored == o.explored && millis == o.millis &&
           note == o.note && certificate == o.certificate;
  }
};

struct ClassReport {
  std::string group;
  std::string class_id;
  std::string representative;
  std::size_t class_size = 0;
  std::vector<DetectorOutcome> outcomes;
  bool kthulhu_within_budget = false;

  bool operator==(const ClassReport& o) const {
    return group == o.group && class_id == o.class_id && representative == o.representative &&
           class_size == o.class_size && outcomes == o.outcomes && kthulhu_within_budget == o.kthulhu_within_budget;
  }
};

inline ojson to_json(const ClassReport& r) {
  ojson j;
  j["group"] = r.group;
  j["class_id"] = r.class_id;
  j["representative"] = r.representative;
  j["class_size"] = r.class_size;
  ojson arr = ojson::array();
  for (const auto& o : r.outcomes) {
    ojson e;
    e["detector"] = o.detector;
    e["status"] = o.status;
    e["explored"] = o.explored;
    e["millis"] = o.millis;
    if (!o.note.empty()) e["note"] = o.note;
    if (o.certificate) e["certificate"] = to_json(*o.certificate);
    arr.push_back(e);
  }
  j["outcomes"] = arr;
  j["kthulhu_within_budget"] = r.kthulhu_within_budget;
  return j;
}

inline ClassReport report_from_json(const ojson& j) {
  ClassReport r;
  r.group = j.at("group").get<std::string>();
  r.class_id = j.at("class_id").get<std::string>();
  r.representative = j.at("representative").get<std::string>();
  r.class_size = j.at("class_size").get<std::size_t>();
  for (const auto& e : j.at("outcomes")) {
    DetectorOutcome o;
    o.detector = e.at("detector").get<std::string>();
    o.status = e.at("status").get<std::string>();
    o.explored = e.at("explored").get<std::size_t>();
    o.millis = e.at("millis").get<double>();
    if (e.contains("note")) o.note = e.at("note").get<std::string>();
    if (e.contains("certificate")) o.certificate = certificate_from_json(e.at("certificate"));
    r.outcomes.push_back(o);
  }
  r.kthulhu_within_budget = j.at("kthulhu_within_budget").get<bool>();
  return r;
}

inline std::string render_text(const ClassReport& r) {
  std::ostringstream os;
  os << r.group << " class " << r.class_id << " rep " << r.representative << " size " << r.class_size << "\n";
  for (const auto& o : r.outcomes) {
    os << "  " << o.detector << ": " << o.status;
    if (o.certificate) os << " (" << (o.certificate->verified ? "verified" : "NOT verified") << ")";
    if (!o.note.empty()) os << " [" << o.note << "]";
    os << "  " << o.explored << " candidates, " << o.millis << " ms\n";
  }
  if (r.kthulhu_within_budget) os << "  kthulhu within budget\n";
  return os.str();
}

// Runs the detectors in the given order on one class.
struct ClassifyOptions {
  SearchOptions search;
  std::vector<std::string> order{"D", "F", "C", "Omega", "RealOdd"};
  bool short_circuit = false;
};

inline ClassReport classify_class(const ConjClass& c, const std::string& class_id, const ClassifyOptions& opt = {}) {
  const auto& d = c.ambient.domain();
  ClassReport rep;
  rep.group = c.ambient.name();
  rep.class_id = class_id;
  rep.representative = d.to_string(c.representative);
  rep.class_size = c.size();
  bool all_exhausted = true, any_collapse = false;
  for (const auto& name : opt.order) {
    auto t0 = std::chrono::steady_clock::now();
    SearchResult r;
    std::string note;
    if (name == "D") {
      r = check_type_D(c, opt.search);
    } else if (name == "F") {
      r = check_type_F(c, opt.search);
    } else if (name == "C") {
      r = check_type_C(c, opt.search);
    } else if (name == "Omega") {
      auto o = check_type_Omega_detailed(c, opt.search);
      r = o.result;
      note = "route " + o.route;
    } else if (name == "RealOdd") {
      r = check_real_odd(c, opt.search);
      note = "informational, not counted as collapse";
    } else {
      throw BadInput("unknown detector " + name);
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    DetectorOutcome o{name, status_name(r.status), r.explored, ms, note, std::nullopt};
    if (r.witness) {
      Certificate cert{class_id, kind_name(r.witness->kind), witness_to_json(d, *r.witness),
                       verify::witness(c, *r.witness), "exhaustive"};
      o.certificate = cert;
      if (name != "RealOdd") any_collapse = true;
    }
    if (name != "RealOdd" && r.status == SearchStatus::BudgetExceeded) all_exhausted = false;
    rep.outcomes.push_back(o);
    if (opt.short_circuit && r.witness && name != "RealOdd") break;
  }
  bool ran_cdf = true;
  for (const char* k : {"C", "D", "F"})
    if (std::find(opt.order.begin(), opt.order.end(), k) == opt.order.end()) ran_cdf = false;
  rep.kthulhu_within_budget = ran_cdf && all_exhausted && !any_collapse;
  return rep;
}

}  // namespace rc
