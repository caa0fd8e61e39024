// beauville: command-line front end for groups, triple censuses, character
// tables, d2 and Beauville structures.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "beauville/loader.hpp"
#include "beauville/powers.hpp"
#include "beauville/version.hpp"

#ifndef BEAUVILLE_DATA_DIR
#define BEAUVILLE_DATA_DIR "data"
#endif

using namespace beauville;

namespace {

enum Exit : int { kOk = 0, kNegative = 1, kCap = 2, kInput = 3, kInternal = 4 };

int exit_code(Errc e) {
  switch (e) {
    case Errc::CapExceeded:
      return kCap;
    case Errc::InvalidArgument:
    case Errc::NotPrime:
    case Errc::ParseError:
    case Errc::OrderMismatch:
    case Errc::TableInvalid:
    case Errc::RangeError:
    case Errc::NotCoprimeType:
    case Errc::NotSmooth:
    case Errc::NotHyperbolic:
    case Errc::NotGenerating:
    case Errc::NonIntegerGenus:
    case Errc::SpecMismatch:
    case Errc::DivisionByZero:
      return kInput;
    case Errc::NoIrreducibleFound:
    case Errc::NoGeneratingPair:
    case Errc::EquivalentTriples:
    case Errc::HypothesisFailed:
    case Errc::PoolExhausted:
    case Errc::TooFewTriples:
    case Errc::NoValidTraces:
    case Errc::NoValidW:
    case Errc::TrivialElement:
      return kNegative;
    default:
      return kInternal;
  }
}

struct Options {
  // group source
  std::string group_file;
  std::string family;
  std::uint64_t n = 0;
  std::uint64_t q = 0;
  // caps and reproducibility
  std::size_t group_cap = kDefaultGroupCap;
  std::size_t aut_cap = kDefaultAutCap;
  std::size_t search_cap = kSearchCap;
  std::uint64_t direct_cap = kDirectPowerCap;
  std::uint64_t enum_cap = kDefaultGroupCap;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string format = "json";
  std::string output;
  // census
  std::vector<std::string> types;
  bool orbits = false;
  bool frobenius = false;
  // beauville
  bool exhaustive = false;
  std::size_t power = 0;
  std::string method;
  std::string pairs;
  std::string type;
  // chartab
  std::string table_file;
  bool compute_table = false;
  std::string write_table;
  std::vector<std::string> class_triples;
  bool all_triples = false;
  // d2
  bool pair_orbits = false;
  std::string bounds_file;
  std::string order;
  std::string out_order = "1";
  std::string indices;
};

std::vector<std::uint64_t> parse_list(const std::string& s, char sep = ',') {
  std::vector<std::uint64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    require(!item.empty(), Errc::ParseError, "empty entry in list '" + s + "'");
    try {
      std::size_t used = 0;
      out.push_back(std::stoull(item, &used));
      require(used == item.size(), Errc::ParseError, "not an integer: '" + item + "'");
    } catch (const std::logic_error&) {
      fail(Errc::ParseError, "not an integer: '" + item + "'");
    }
  }
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::array<index_t, 3> parse_type(const std::string& s) {
  const auto v = parse_list(s);
  require(v.size() == 3, Errc::ParseError, "type must be l,m,n, got '" + s + "'");
  for (auto x : v) require(x >= 1 && x <= 1000000, Errc::InvalidArgument, "period out of range in '" + s + "'");
  return {index_t(v[0]), index_t(v[1]), index_t(v[2])};
}

BigInt parse_big(const std::string& s) {
  require(!s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(c); }), Errc::ParseError,
          "not a nonnegative integer: '" + s + "'");
  return BigInt(s);
}

std::string resolve_path(const std::string& p, const char* sub) {
  if (std::ifstream(p).good()) return p;
  const std::string alt = std::string(BEAUVILLE_DATA_DIR) + "/" + sub + "/" + p;
  if (std::ifstream(alt).good()) return alt;
  return p;
}

GroupPtr build_group(const Options& o) {
  require(o.group_file.empty() != o.family.empty(), Errc::InvalidArgument, "give exactly one of --group or --family");
  if (!o.group_file.empty()) return load_group(resolve_path(o.group_file, "groups"), o.group_cap).group;
  if (o.family == "cyclic") return make_cyclic(o.n, o.group_cap);
  if (o.family == "abelian-square") return make_abelian_square(o.n, o.group_cap);
  if (o.family == "alternating") return make_alternating(o.n, o.group_cap);
  if (o.family == "psl2") return make_psl2(o.q, o.group_cap);
  fail(Errc::InvalidArgument, "unknown family '" + o.family + "' (cyclic, abelian-square, alternating, psl2)");
}

json field_moduli(const FiniteGroup& g) {
  json out = json::array();
  if (const auto* mk = dynamic_cast<const MatrixKind*>(&g.kind())) {
    const auto& f = *mk->field();
    out.push_back(json{{"p", f.p()}, {"e", f.e()}, {"modulus", f.modulus()}});
  }
  return out;
}

json caps_json(const Options& o) {
  return json{{"group", o.group_cap},   {"aut", o.aut_cap},       {"search", o.search_cap},
              {"direct_power", o.direct_cap}, {"enumeration", o.enum_cap}, {"phi2", kPhi2Cap},
              {"dixon_classes", kDixonClassCap}};
}

json envelope(const std::string& command, const Options& o, const FiniteGroup* g) {
  json j{{"tool", "beauville"}, {"version", kVersion}, {"command", command}, {"seed", o.seed}, {"caps", caps_json(o)}};
  if (g) {
    j["group"] = g->provenance().to_json();
    j["group"]["order"] = g->order();
    j["field_moduli"] = field_moduli(*g);
  } else {
    j["group"] = nullptr;
    j["field_moduli"] = json::array();
  }
  return j;
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out,
             bool quote_ints) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out, quote_ints);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out, quote_ints);
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else if (j.is_number_integer() && quote_ints) {
    out.emplace_back(prefix, "\"" + j.dump() + "\"");
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

std::string csv_field(const std::string& s) {
  if (!s.empty() && s.front() == '"') return s;
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char c : s) r += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return r + "\"";
}

std::string render(const json& report, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    os << report.dump(2) << "\n";
  } else {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(report, "", rows, format == "csv");
    if (format == "csv") {
      os << "key,value\n";
      for (const auto& [k, v] : rows) os << csv_field(k) << "," << csv_field(v) << "\n";
    } else {
      for (const auto& [k, v] : rows) os << k << ": " << v << "\n";
    }
  }
  return os.str();
}

void emit(const json& report, const Options& o) {
  const std::string text = render(report, o.format);
  if (o.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(o.output);
    require(out.good(), Errc::InvalidArgument, "cannot write " + o.output);
    out << text;
  }
}

std::string label(const FiniteGroup& g, index_t c) { return g.classes().classes[c].label; }

// ---------------------------------------------------------------------------

int cmd_census(const Options& o) {
  require(!o.types.empty(), Errc::InvalidArgument, "census needs at least one --type");
  auto g = build_group(o);
  std::optional<AutGroup> aut;
  if (o.orbits) aut = automorphism_group(g, o.aut_cap);
  std::optional<CharacterTable> table;
  if (o.frobenius) table = dixon_character_table(*g, o.seed);
  json results = json::array();
  for (const auto& ts : o.types) {
    const auto ty = parse_type(ts);
    const auto c = phi_triples(*g, ty[0], ty[1], ty[2], aut ? &*aut : nullptr);
    json rows = json::array();
    for (const auto& r : c.rows) {
      json row{{"classes", {label(*g, r.x_class), label(*g, r.y_class), label(*g, r.z_class)}},
               {"nu", r.nu},
               {"phi", r.phi}};
      if (table) {
        const auto f = nu_frobenius(*table, r.x_class, r.y_class, r.z_class);
        require(f == r.nu, Errc::Internal, "Frobenius count differs from direct count");
        row["nu_frobenius"] = f;
      }
      rows.push_back(row);
    }
    json entry{{"type", ty}, {"nu", c.nu}, {"phi", c.nu_generating}, {"all_generating", c.nu == c.nu_generating}};
    if (c.aut_order) {
      entry["aut_order"] = *c.aut_order;
      entry["orbits"] = *c.orbit_count;
    }
    entry["rows"] = rows;
    results.push_back(entry);
  }
  json report = envelope("census", o, g.get());
  report["result"] = json{{"censuses", results}};
  emit(report, o);
  return kOk;
}

std::vector<GeneratingTriple> aut_classes(const GroupPtr& g, const std::array<index_t, 3>& ty) {
  const auto c = phi_triples(*g, ty[0], ty[1], ty[2]);
  auto reps = inequivalent_representatives(*g, c.representatives);
  require(!reps.empty(), Errc::NoGeneratingPair,
          "no generating triple of type (" + std::to_string(ty[0]) + "," + std::to_string(ty[1]) + "," +
              std::to_string(ty[2]) + ") in " + g->name());
  return reps;
}

int cmd_beauville(const Options& o) {
  if (o.exhaustive) {
    auto g = build_group(o);
    const auto r = exhaustive_beauville_search(*g, o.search_cap);
    json report = envelope("beauville", o, g.get());
    if (!r.certificate) {
      report["result"] = json{{"status", "ExhaustedNone"},
                              {"candidates", r.candidates},
                              {"pairs_examined", r.pairs_examined}};
      emit(report, o);
      return kNegative;
    }
    report["result"] = json{{"status", "certificate"}, {"certificate", r.certificate->to_json()}};
    emit(report, o);
    return kOk;
  }
  require(o.power >= 1, Errc::InvalidArgument, "give --exhaustive or --power k with --method");
  PowerCertificate cert;
  GroupPtr h;
  if (o.method == "macbeath") {
    require(o.power == 2, Errc::InvalidArgument, "the macbeath method builds k = 2 structures");
    require(o.family == "psl2" && o.group_file.empty(), Errc::InvalidArgument, "the macbeath method needs --family psl2");
    cert = macbeath_k2_construction(o.q, o.direct_cap, o.enum_cap);
    h = make_psl2(o.q, o.group_cap);
  } else if (o.method == "lemma4.2" || o.method == "lemma4.3") {
    h = build_group(o);
    require(!o.pairs.empty(), Errc::InvalidArgument, "--pairs l,m,n:l,m,n[;...] required");
    std::vector<PairSpec> pairs;
    std::vector<GeneratingTriple> pool;
    for (const auto& p : split(o.pairs, ';')) {
      const auto two = split(p, ':');
      require(two.size() == 2, Errc::ParseError, "pair must be l,m,n:l,m,n, got '" + p + "'");
      const auto r1 = aut_classes(h, parse_type(two[0]));
      const auto r2 = aut_classes(h, parse_type(two[1]));
      pairs.push_back({r1.front(), r2.front()});
      pool.insert(pool.end(), r1.begin() + 1, r1.end());
      pool.insert(pool.end(), r2.begin() + 1, r2.end());
    }
    cert = o.method == "lemma4.2" ? construct_lemma_4_2(h, pairs, o.power, pool, o.direct_cap, o.enum_cap)
                                  : construct_lemma_4_3(h, pairs, o.power, pool, o.direct_cap, o.enum_cap);
  } else if (o.method == "lemma4.4") {
    h = build_group(o);
    require(!o.type.empty(), Errc::InvalidArgument, "--type l,m,n required");
    const auto ty = parse_type(o.type);
    require(std::gcd(ty[0], ty[1]) == 1 && std::gcd(ty[1], ty[2]) == 1 && std::gcd(ty[0], ty[2]) == 1,
            Errc::NotCoprimeType, "type " + o.type + " does not have mutually coprime periods");
    cert = construct_lemma_4_4(h, aut_classes(h, ty), o.power, o.direct_cap, o.enum_cap);
  } else {
    fail(Errc::InvalidArgument, "unknown --method '" + o.method + "' (macbeath, lemma4.2, lemma4.3, lemma4.4)");
  }
  json report = envelope("beauville", o, h.get());
  report["result"] = json{{"status", "certificate"}, {"certificate", cert.to_json(*h)}};
  emit(report, o);
  return kOk;
}

int cmd_chartab(const Options& o) {
  GroupPtr g;
  if (!o.group_file.empty() || !o.family.empty()) g = build_group(o);
  CharacterTable t;
  std::string source;
  if (o.compute_table) {
    require(g != nullptr, Errc::InvalidArgument, "--compute needs a group");
    t = dixon_character_table(*g, o.seed);
    source = "dixon";
  } else {
    require(!o.table_file.empty(), Errc::InvalidArgument, "give --table FILE or --compute");
    const auto path = resolve_path(o.table_file, "tables");
    std::ifstream in(path);
    require(in.good(), Errc::ParseError, "cannot open " + path);
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw Error(Errc::ParseError, path + ": " + e.what());
    }
    t = CharacterTable::from_json(doc);
    source = path;
  }
  t.validate();
  if (g) check_table_matches(t, *g);
  if (!o.write_table.empty()) {
    std::ofstream out(o.write_table);
    require(out.good(), Errc::InvalidArgument, "cannot write " + o.write_table);
    out << t.to_json().dump(2) << "\n";
  }
  json evals = json::array();
  auto evaluate = [&](std::size_t a, std::size_t b, std::size_t c) {
    json e{{"classes", {t.classes[a].label, t.classes[b].label, t.classes[c].label}},
           {"nu", nu_frobenius(t, a, b, c)}};
    if (g) {
      const auto brute = nu_brute(*g, index_t(a), index_t(b), index_t(c));
      e["nu_brute"] = brute;
      e["agrees"] = brute == e["nu"].get<std::uint64_t>();
    }
    evals.push_back(e);
  };
  for (const auto& spec : o.class_triples) {
    const auto parts = split(spec, ',');
    require(parts.size() == 3, Errc::ParseError, "classes must be X,Y,Z, got '" + spec + "'");
    evaluate(t.class_index(parts[0]), t.class_index(parts[1]), t.class_index(parts[2]));
  }
  if (o.all_triples) {
    require(g != nullptr, Errc::InvalidArgument, "--all needs a group for the brute-force cross-check");
    const std::size_t r = t.classes.size();
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b)
        for (std::size_t c = 0; c < r; ++c) evaluate(a, b, c);
  }
  bool all_agree = true;
  for (const auto& e : evals)
    if (e.contains("agrees") && !e["agrees"].get<bool>()) all_agree = false;
  json report = envelope("chartab", o, g.get());
  report["result"] = json{{"table_source", source},
                          {"table_group", t.group},
                          {"valid", true},
                          {"degrees", t.degrees()},
                          {"evaluations", evals},
                          {"all_agree", all_agree}};
  emit(report, o);
  return all_agree ? kOk : kInternal;
}

int cmd_d2(const Options& o) {
  if (!o.bounds_file.empty() || !o.order.empty()) {
    BigInt order, out;
    std::vector<BigInt> idx;
    json prov = json::object();
    if (!o.bounds_file.empty()) {
      const auto path = resolve_path(o.bounds_file, "bounds");
      std::ifstream in(path);
      require(in.good(), Errc::ParseError, "cannot open " + path);
      try {
        const json doc = json::parse(in);
        order = parse_big(doc.at("order").get<std::string>());
        out = parse_big(doc.at("out_order").get<std::string>());
        for (const auto& v : doc.at("indices")) idx.push_back(parse_big(v.get<std::string>()));
        prov = json{{"name", doc.value("name", std::string())},
                    {"source", path},
                    {"notes", doc.value("provenance", std::string())}};
      } catch (const json::exception& e) {
        throw Error(Errc::ParseError, path + ": " + e.what());
      }
    } else {
      order = parse_big(o.order);
      out = parse_big(o.out_order);
      for (const auto& s : split(o.indices, ',')) idx.push_back(parse_big(s));
    }
    const auto b = d2_bounds(order, out, idx);
    auto rat = [](const BigRational& r) { return numerator(r).str() + "/" + denominator(r).str(); };
    json report = envelope("d2", o, nullptr);
    report["group"] = prov;
    report["result"] = json{{"order", order.str()},
                            {"out_order", out.str()},
                            {"index_count", idx.size()},
                            {"index_sum", rat(b.index_sum)},
                            {"upper", b.upper.str()},
                            {"lower", b.lower.str()},
                            {"upper_exact", rat(b.upper_exact)},
                            {"lower_exact", rat(b.lower_exact)}};
    emit(report, o);
    return kOk;
  }
  auto g = build_group(o);
  const auto aut = automorphism_group(g, o.aut_cap);
  const auto r = phi2_and_d2(*g, aut);
  json res{{"phi2", r.phi2}, {"aut_order", r.aut_order}, {"d2", r.d2}};
  if (o.pair_orbits) {
    const auto orbits = generating_pair_orbits(*g, aut);
    res["pair_orbits"] = orbits;
    res["orbits_agree"] = orbits == r.d2;
  }
  json report = envelope("d2", o, g.get());
  report["result"] = res;
  emit(report, o);
  return kOk;
}

int cmd_genus(const Options& o) {
  require(!o.order.empty() && !o.type.empty(), Errc::InvalidArgument, "genus needs --order N and --type l,m,n");
  const auto order = parse_big(o.order);
  const auto ty = parse_type(o.type);
  const auto gval = genus(order, ty[0], ty[1], ty[2]);
  json report = envelope("genus", o, nullptr);
  report["result"] = json{{"order", order.str()},
                          {"type", ty},
                          {"hyperbolic", is_hyperbolic(ty[0], ty[1], ty[2])},
                          {"genus", gval.str()}};
  emit(report, o);
  return kOk;
}

int cmd_aut(const Options& o) {
  auto g = build_group(o);
  const auto aut = automorphism_group(g, o.aut_cap);
  std::uint64_t center = 0;
  for (index_t x = 0; x < g->order(); ++x) {
    bool central = true;
    for (auto s : g->generators()) central = central && g->mul(x, s) == g->mul(s, x);
    center += central;
  }
  const std::uint64_t inn = g->order() / center;
  const auto [a, b] = aut.base_pair();
  json report = envelope("aut", o, g.get());
  report["result"] = json{{"aut_order", aut.order()},
                          {"inner_order", inn},
                          {"out_order", aut.order() / inn},
                          {"base_pair",
                           {{{"element", g->format(a)}, {"order", g->element_order(a)}},
                            {{"element", g->format(b)}, {"order", g->element_order(b)}}}},
                          {"blocks", aut.blocks().size()},
                          {"generators", aut.generator_maps().size()}};
  emit(report, o);
  return kOk;
}

void add_group_options(CLI::App* c, Options& o) {
  c->add_option("--group", o.group_file, "group definition JSON (path or name under data/groups)");
  c->add_option("--family", o.family, "cyclic | abelian-square | alternating | psl2");
  c->add_option("--n", o.n, "family parameter n");
  c->add_option("--q", o.q, "field size for psl2");
  c->add_option("--cap", o.group_cap, "maximum group order to enumerate")->check(CLI::Range(std::size_t(1), kMaxGroupCap));
  c->add_option("--aut-cap", o.aut_cap, "maximum |G| for automorphism computation")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Beauville structures on finite groups and their powers"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.add_option("--seed", o.seed, "seed for randomized steps (recorded in every report)");
  app.add_option("--threads", o.threads, "worker count; results do not depend on it")->check(CLI::PositiveNumber);
  app.add_option("--format", o.format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--output,-o", o.output, "write the report here instead of stdout");

  auto* census = app.add_subcommand("census", "count triples of given types");
  add_group_options(census, o);
  census->add_option("--type", o.types, "l,m,n (repeatable)");
  census->add_flag("--orbits", o.orbits, "compute Aut and orbit counts");
  census->add_flag("--frobenius", o.frobenius, "cross-check each row with the character formula");

  auto* bv = app.add_subcommand("beauville", "search for or construct Beauville structures");
  add_group_options(bv, o);
  bv->add_flag("--exhaustive", o.exhaustive, "exhaustive search over triples of the group");
  bv->add_option("--power", o.power, "k for structures on H^k");
  bv->add_option("--method", o.method, "macbeath | lemma4.2 | lemma4.3 | lemma4.4");
  bv->add_option("--pairs", o.pairs, "pairs of types l,m,n:l,m,n separated by ';'");
  bv->add_option("--type", o.type, "type l,m,n for lemma4.4");
  bv->add_option("--search-cap", o.search_cap, "maximum |G| for exhaustive search")->check(CLI::PositiveNumber);
  bv->add_option("--direct-cap", o.direct_cap, "maximum |H|^k for explicit verification")->check(CLI::PositiveNumber);
  bv->add_option("--enum-cap", o.enum_cap, "maximum |H|^k for verification in the enumerated power");

  auto* ct = app.add_subcommand("chartab", "validate and evaluate character tables");
  add_group_options(ct, o);
  ct->add_option("--table", o.table_file, "character table JSON (path or name under data/tables)");
  ct->add_flag("--compute", o.compute_table, "compute the table of the group by Dixon's method");
  ct->add_option("--write", o.write_table, "save the table as JSON");
  ct->add_option("--classes", o.class_triples, "X,Y,Z class labels (repeatable)");
  ct->add_flag("--all", o.all_triples, "evaluate every class triple against brute force");

  auto* d2 = app.add_subcommand("d2", "phi_2 and d_2, or the maximal-subgroup bounds on d_2");
  add_group_options(d2, o);
  d2->add_flag("--pair-orbits", o.pair_orbits, "count Aut-orbits of generating pairs independently");
  d2->add_option("--bounds", o.bounds_file, "bounds input JSON (path or name under data/bounds)");
  d2->add_option("--order", o.order, "|H| for the bounds");
  d2->add_option("--out", o.out_order, "|Out H| for the bounds");
  d2->add_option("--indices", o.indices, "comma-separated maximal subgroup indices");

  auto* gen = app.add_subcommand("genus", "Riemann-Hurwitz genus");
  gen->add_option("--order", o.order, "|G|")->required();
  gen->add_option("--type", o.type, "l,m,n")->required();

  auto* aut = app.add_subcommand("aut", "automorphism group order");
  add_group_options(aut, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  try {
    if (census->parsed()) return cmd_census(o);
    if (bv->parsed()) return cmd_beauville(o);
    if (ct->parsed()) return cmd_chartab(o);
    if (d2->parsed()) return cmd_d2(o);
    if (gen->parsed()) return cmd_genus(o);
    if (aut->parsed()) return cmd_aut(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
