#include "rackcollapse/tables.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#ifndef ATLAS_FIXTURE_DIR
#define ATLAS_FIXTURE_DIR "fixtures"
#endif

using namespace rc;

namespace {

enum Exit { kOk = 0, kMismatch = 1, kBadInput = 2, kBudget = 3, kInternal = 4 };

struct Common {
  std::size_t budget = 10'000'000;
  int workers = 1;
  std::string format = "text";
  bool slow = false;
  unsigned seed = 12345;
  std::string output;
  std::string fixtures = ATLAS_FIXTURE_DIR;
};

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      std::size_t pos;
      out.push_back(std::stoi(tok, &pos));
      if (tok.find_first_not_of(" \t", pos) != std::string::npos) throw BadInput("");
    } catch (const std::exception&) {
      throw BadInput("not an integer list: " + s);
    }
  }
  return out;
}

// "a,b;c,d" -> roots in simple-root coordinates
std::vector<Root> parse_roots(const std::string& s) {
  std::vector<Root> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ';'))
    if (!tok.empty()) out.push_back(parse_ints(tok));
  return out;
}

char parse_type(const std::string& s) {
  if (s.size() != 1 || std::string("ABCDEFG").find(s[0]) == std::string::npos) throw BadInput("unknown type " + s);
  return s[0];
}

void emit(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output);
  if (!out) throw BadInput("cannot write " + c.output);
  out << text;
}

// ---- classify-rack ----------------------------------------------------------------

struct ClassifyArgs {
  std::string group;
  std::string cls;
  std::string element;
  std::string order = "D,F,C,Omega,RealOdd";
  bool short_circuit = false;
  std::string dump;
};

// a path, or the name of a bundled group fixture
std::string resolve_group(const Common& c, const std::string& g) {
  if (g.find('/') == std::string::npos && g.find(".json") == std::string::npos) return c.fixtures + "/groups/" + g + ".json";
  return g;
}

int cmd_classify(const Common& c, const ClassifyArgs& a) {
  auto spec = parse_group_spec(read_file(resolve_group(c, a.group)));
  auto G = build_group(spec);
  if (G.order() > kDefaultEnumerationCap) throw CapExceeded("group larger than the enumeration cap");

  std::vector<std::pair<std::string, Element>> targets;
  if (!a.cls.empty()) {
    if (!spec.classes.contains(a.cls)) throw BadInput("fixture has no class named " + a.cls);
    targets.push_back({a.cls, parse_element(G.domain(), spec.classes.at(a.cls))});
  } else if (!a.element.empty()) {
    ojson e = a.element;
    if (G.domain().kind() == Domain::Kind::Matrix) {
      try {
        e = ojson::parse(a.element);
      } catch (const std::exception&) {
        throw BadInput("matrix element must be JSON rows, e.g. [[1,1],[0,1]]");
      }
    }
    targets.push_back({a.element, parse_element(G.domain(), e)});
  } else {
    int k = 0;
    for (const auto& g : class_representatives(G)) targets.push_back({"c" + std::to_string(k++), g});
  }

  ClassifyOptions opt;
  opt.search.budget = c.budget;
  opt.search.workers = c.workers;
  opt.short_circuit = a.short_circuit;
  opt.order.clear();
  std::stringstream ss(a.order);
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (tok != "D" && tok != "F" && tok != "C" && tok != "Omega" && tok != "RealOdd")
      throw BadInput("unknown detector " + tok);
    opt.order.push_back(tok);
  }

  std::vector<ClassReport> reports;
  for (const auto& [id, x] : targets) {
    auto cls = conjugacy_class(G, x);
    if (!a.dump.empty()) {
      std::ofstream out(a.dump);
      if (!out) throw BadInput("cannot write " + a.dump);
      out << dump(conjugation_rack(cls));
    }
    reports.push_back(classify_class(cls, id, opt));
  }

  bool budget_hit = false;
  for (const auto& r : reports)
    for (const auto& o : r.outcomes)
      if (o.status == status_name(SearchStatus::BudgetExceeded)) budget_hit = true;

  if (c.format == "json") {
    if (reports.size() == 1) {
      emit(c, to_json(reports[0]).dump(2) + "\n");
    } else {
      ojson arr = ojson::array();
      for (const auto& r : reports) arr.push_back(to_json(r));
      emit(c, arr.dump(2) + "\n");
    }
  } else {
    std::string text;
    for (const auto& r : reports) text += render_text(r);
    emit(c, text);
  }
  return budget_hit ? kBudget : kOk;
}

// ---- verify-tables ------------------------------------------------------------------

int cmd_verify_tables(const Common& c, const std::string& which) {
  auto path = [&](const std::string& name) { return c.fixtures + "/tables/" + name + ".json"; };
  TableResult t;
  if (which == "centers") {
    t = verify_centers(load_table(path(which)));
  } else if (which == "g2charpoly") {
    t = verify_g2charpoly(load_table(path(which)));
  } else if (which == "e8cuspidal") {
    t = verify_e8cuspidal(load_table(path(which)), c.slow);
  } else if (which == "affinelist") {
    t = verify_affinelist(load_table(path(which)));
  } else {
    throw BadInput("unknown table " + which);
  }
  emit(c, c.format == "json" ? to_json(t).dump(2) + "\n" : render_text(t));
  return t.all_pass() ? kOk : kMismatch;
}

// ---- torus -----------------------------------------------------------------------------

struct TorusArgs {
  std::string type;
  int rank = 0;
  int q = 0;
  std::string word;
  std::string partition;
  std::string label;
  bool has_word = false;
};

std::optional<TorusElement> find_regular(const RootSystem& R, const TorusFixedGroup& T, unsigned seed) {
  if (T.order <= 100'000) {
    for (const auto& x : T.elements())
      if (is_regular(R, x)) return x;
    return std::nullopt;
  }
  for (const auto& g : T.generators)
    if (is_regular(R, g)) return g;
  std::mt19937_64 rng(seed);
  for (int s = 0; s < 20'000; ++s) {
    TorusElement x = TorusElement::identity(R.rank(), T.q, T.N);
    for (size_t i = 0; i < T.generators.size(); ++i) {
      if (T.invariant_factors[i] == 1) continue;
      BigInt k = BigInt(rng()) % T.invariant_factors[i];
      x = x * T.generators[i].pow(k);
    }
    if (is_regular(R, x)) return x;
  }
  return std::nullopt;
}

int cmd_torus(const Common& c, TorusArgs a) {
  if (!a.label.empty()) {
    auto tab = load_table(c.fixtures + "/tables/torus.json");
    bool found = false;
    for (const auto& row : tab.at("rows"))
      if (row.at("label") == a.label) {
        a.type = row.at("type").get<std::string>();
        a.rank = row.at("rank").get<int>();
        std::string w;
        for (int i : row.at("word")) w += (w.empty() ? "" : ",") + std::to_string(i);
        a.word = w;
        a.has_word = true;
        found = true;
      }
    if (!found) throw BadInput("no torus fixture labelled " + a.label);
  }
  char type = parse_type(a.type);
  if (a.q < 2) throw BadInput("q must be a prime power");
  if (!is_prime_power(a.q)) throw BadInput("q must be a prime power");
  RootSystem R = RootSystem::build(type, a.rank);
  WeylElement w;
  if (!a.partition.empty()) {
    w = cuspidal_rep(type, a.rank, PartitionSpec{parse_ints(a.partition)}).w;
  } else if (a.has_word) {
    w = R.from_word(one_based_to_zero(parse_ints(a.word)));
  } else {
    throw BadInput("give --word, --partition or --label");
  }
  auto T = fixed_group(R, w, a.q);
  auto cp = cyclotomic_factorization(char_poly(R, w));
  auto reg = find_regular(R, T, c.seed);

  std::vector<std::string> factors;
  for (const auto& d : T.nontrivial_factors()) factors.push_back(d.str());
  if (c.format == "json") {
    ojson j;
    j["system"] = R.label();
    std::vector<int> word;
    for (int i : w.word) word.push_back(i + 1);
    j["word"] = word;
    j["q"] = a.q;
    j["order"] = T.order.str();
    j["invariant_factors"] = factors;
    j["charpoly"] = cp ? cyclotomic_label(*cp) : "?";
    j["regular_element"] = reg ? ojson(reg->to_string()) : ojson(nullptr);
    emit(c, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << R.label() << " q=" << a.q << " charpoly " << (cp ? cyclotomic_label(*cp) : "?") << "\n";
    os << "order " << T.order << "\n";
    os << "invariant factors (";
    for (size_t i = 0; i < factors.size(); ++i) os << (i ? "," : "") << factors[i];
    os << ")\n";
    os << "regular element " << (reg ? reg->to_string() : "none found") << "\n";
    emit(c, os.str());
  }
  return kOk;
}

// ---- qnw ---------------------------------------------------------------------------------

struct QnwArgs {
  std::string type;
  int rank = 0;
  int q = 0;
  std::string word;
  std::string base;
  std::string t;
};

int cmd_qnw(const Common& c, const QnwArgs& a) {
  char type = parse_type(a.type);
  if (!is_prime_power(a.q)) throw BadInput("q must be a prime power");
  RootSystem R = RootSystem::build(type, a.rank);
  auto w = R.from_word(one_based_to_zero(parse_ints(a.word)));
  auto base = parse_roots(a.base);
  for (const auto& b : base)
    if (static_cast<int>(b.size()) != R.rank() || !R.is_root(b)) throw BadInput("base vector is not a root");
  auto ex = parse_ints(a.t);
  if (static_cast<int>(ex.size()) != R.rank()) throw BadInput("t needs one exponent per simple coroot");
  std::vector<BigInt> e(ex.begin(), ex.end());
  auto t = TorusElement::from_exponents(e, a.q, R.order(w));
  auto rep = check_QNW_root_level(R, a.q, w, base, t);
  auto line = [](const char* name, Tri v) { return std::string(name) + " " + tri_name(v); };
  if (c.format == "json") {
    ojson j{{"subsystem", rep.phi_m}, {"Q", tri_name(rep.q)}, {"N", tri_name(rep.n)}, {"W", tri_name(rep.w)},
            {"evidence", rep.evidence}, {"all_hold", rep.all_hold()}};
    emit(c, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "subsystem " << rep.phi_m << ", t = " << t.to_string() << "\n";
    os << line("Q", rep.q) << "\n" << line("N", rep.n) << "\n" << line("W", rep.w) << "\n";
    for (const auto& s : rep.evidence) os << "  " << s << "\n";
    emit(c, os.str());
  }
  return rep.all_hold() ? kOk : kBudget;
}

// ---- cuspidal ------------------------------------------------------------------------------

int cmd_cuspidal(const Common& c, const std::string& type_s, int n) {
  char type = parse_type(type_s);
  if (type != 'B' && type != 'D') throw BadInput("cuspidal representatives are listed for types B and D");
  if (n < 2) throw BadInput("rank must be at least 2");
  RootSystem R = RootSystem::build(type, n);
  ojson arr = ojson::array();
  std::ostringstream os;
  for (const auto& lam : partitions_of(n)) {
    if (type == 'D' && lam.parts.size() % 2) continue;
    auto rep = cuspidal_rep(type, n, lam);
    auto cp = cyclotomic_factorization(char_poly(R, rep.w));
    std::vector<int> word;
    for (int i : rep.w.word) word.push_back(i + 1);
    std::vector<long long> ords;
    for (const auto& f : rep.factors) ords.push_back(R.order(f));
    ojson j{{"partition", lam.parts}, {"order", R.order(rep.w)}, {"charpoly", cp ? cyclotomic_label(*cp) : "?"},
            {"cuspidal", is_cuspidal(R, rep.w)}, {"factor_orders", ords}, {"word", word}};
    arr.push_back(j);
    os << lam.to_string() << " order " << R.order(rep.w) << " " << j["charpoly"].get<std::string>()
       << (is_cuspidal(R, rep.w) ? "" : " NOT cuspidal") << " word";
    for (int i : word) os << " " << i;
    os << "\n";
  }
  emit(c, c.format == "json" ? arr.dump(2) + "\n" : os.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"atlas: collapse detectors and table checks for racks from finite groups"};
  app.require_subcommand(1);
  Common c;
  auto add_common = [&](CLI::App* s) {
    s->add_option("--budget", c.budget, "search budget")->check(CLI::PositiveNumber);
    s->add_option("--workers", c.workers, "worker threads")->check(CLI::PositiveNumber);
    s->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json"}));
    s->add_flag("--slow", c.slow, "include slow rows");
    s->add_option("--seed", c.seed, "random seed");
    s->add_option("-o,--output", c.output, "write output here instead of stdout");
    s->add_option("--fixtures", c.fixtures, "fixture directory");
  };

  ClassifyArgs ca;
  auto* classify = app.add_subcommand("classify-rack", "run the detectors on conjugacy classes of a group fixture");
  classify->add_option("group", ca.group, "group fixture: a JSON path or a bundled name such as A5")->required();
  classify->add_option("--class", ca.cls, "class name from the fixture");
  classify->add_option("--element", ca.element, "class representative");
  classify->add_option("--order", ca.order, "detector order, comma separated");
  classify->add_flag("--short-circuit", ca.short_circuit, "stop at the first collapse certificate");
  classify->add_option("--dump", ca.dump, "write the conjugation rack table here");
  add_common(classify);

  std::string which;
  auto* tables = app.add_subcommand("verify-tables", "recompute a reference table and diff it against the fixture");
  tables->add_option("table", which, "centers|g2charpoly|e8cuspidal|affinelist")->required();
  add_common(tables);

  TorusArgs ta;
  auto* torus = app.add_subcommand("torus", "order and structure of a maximal torus T^{F_w}");
  torus->add_option("--type", ta.type, "root system type");
  torus->add_option("--rank", ta.rank, "rank");
  torus->add_option("--q", ta.q, "field size")->required();
  auto* wopt = torus->add_option("--word", ta.word, "reduced word, 1-based, comma separated");
  torus->add_option("--partition", ta.partition, "B/D partition label");
  torus->add_option("--label", ta.label, "named class from the torus fixture");
  add_common(torus);

  QnwArgs qa;
  auto* qnw = app.add_subcommand("qnw", "check conditions Q, N, W at root level");
  qnw->add_option("--type", qa.type, "root system type")->required();
  qnw->add_option("--rank", qa.rank, "rank")->required();
  qnw->add_option("--q", qa.q, "field size")->required();
  qnw->add_option("--word", qa.word, "Weyl element, 1-based word")->required();
  qnw->add_option("--base", qa.base, "subsystem base, roots separated by ';'")->required();
  qnw->add_option("--t", qa.t, "torus exponents modulo q^|w|-1")->required();
  add_common(qnw);

  std::string ctype;
  int crank = 0;
  auto* cusp = app.add_subcommand("cuspidal", "list cuspidal representatives in W(B_n) or W(D_n)");
  cusp->add_option("--type", ctype, "B or D")->required();
  cusp->add_option("--rank", crank, "rank")->required();
  add_common(cusp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kBadInput;
  }

  try {
    if (*classify) return cmd_classify(c, ca);
    if (*tables) return cmd_verify_tables(c, which);
    if (*torus) {
      ta.has_word = wopt->count() > 0;
      return cmd_torus(c, ta);
    }
    if (*qnw) return cmd_qnw(c, qa);
    if (*cusp) return cmd_cuspidal(c, ctype, crank);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const ElementNotInGroup& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const CapExceeded& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return kBudget;
  } catch (const SizeCapExceeded& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return kBudget;
  } catch (const SearchBudgetExceeded& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
