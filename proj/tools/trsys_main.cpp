#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "trsys/errors.hpp"
#include "trsys/oracle.hpp"
#include "trsys/realizer.hpp"
#include "trsys/serialize.hpp"
#include "trsys/tightpair.hpp"

namespace ts = trsys;

namespace {

struct Args {
  std::string order;
  std::string edges;
  std::string set;
  std::string bezout;
  std::string policy = "canonical";
  std::string format = "json";
  std::string from;
  std::string out = "-";
  bool saturated_only = false;
  bool close = false;
  int cap = -1;
  uint64_t sample = 0;
  uint64_t seed = 1;
  int64_t j = 1;
  int64_t k = 1;
};

std::vector<int64_t> split_ints(const std::string& s, const char* what) {
  std::vector<int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      out.push_back(std::stoll(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      ts::fail(ts::ErrorKind::Domain,
               std::string(what) + " expects comma-separated integers, got \"" +
                   s + "\"");
    }
  }
  return out;
}

ts::CyclicOrder parse_order_tuple(const std::string& s) {
  const std::vector<int64_t> v = split_ints(s, "--order");
  if (v.size() != 4) {
    ts::fail(ts::ErrorKind::Domain, "--order expects the factored tuple p,n,q,m");
  }
  return ts::CyclicOrder(v[0], static_cast<int>(v[1]), v[2],
                         static_cast<int>(v[3]));
}

// The oracle also accepts a bare modulus; it is factored here so every other
// entry point still gets the explicit tuple.
ts::CyclicOrder parse_order_flexible(const std::string& s) {
  if (s.find(',') != std::string::npos) return parse_order_tuple(s);
  const std::vector<int64_t> v = split_ints(s, "--order");
  if (v.size() != 1 || v[0] < 1) {
    ts::fail(ts::ErrorKind::Domain, "--order expects p,n,q,m or a positive modulus");
  }
  int64_t rest = v[0];
  std::vector<std::pair<int64_t, int>> factors;
  for (int64_t d = 2; d * d <= rest; ++d) {
    if (rest % d != 0) continue;
    int e = 0;
    while (rest % d == 0) {
      rest /= d;
      ++e;
    }
    factors.emplace_back(d, e);
  }
  if (rest > 1) factors.emplace_back(rest, 1);
  if (factors.size() > 2) {
    ts::fail(ts::ErrorKind::Domain,
             "the modulus must have at most two distinct prime factors");
  }
  if (factors.size() == 2) {
    return ts::CyclicOrder(factors[0].first, factors[0].second,
                           factors[1].first, factors[1].second);
  }
  // Prime powers (and 1) are padded with an unused second prime.
  const int64_t p = factors.empty() ? 5 : factors[0].first;
  const int n = factors.empty() ? 0 : factors[0].second;
  return ts::CyclicOrder(p, n, p == 5 ? 7 : 5, 0);
}

std::string read_text(const std::string& path) {
  std::ostringstream os;
  if (path == "-") {
    os << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) ts::fail(ts::ErrorKind::Domain, "cannot open file: " + path);
    os << in.rdbuf();
  }
  return os.str();
}

ts::ordered_json parse_json(const std::string& text, const char* what) {
  ts::ordered_json j = ts::ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    ts::fail(ts::ErrorKind::Domain, std::string("invalid JSON in ") + what);
  }
  return j;
}

// Inline JSON (first non-blank character '[') or a file name; files may hold
// a bare edge array or any object with an "edges" field.
std::vector<ts::Edge> parse_edges_arg(const std::string& arg) {
  const size_t first = arg.find_first_not_of(" \t\r\n");
  std::string text = arg;
  if (first == std::string::npos || arg[first] != '[') text = read_text(arg);
  ts::ordered_json j = parse_json(text, "--edges");
  if (j.is_object()) {
    if (j.contains("system") && j["system"].is_object()) j = j["system"];
    if (j.is_object() && j.contains("edges")) j = j["edges"];
  }
  return ts::edges_from_json(j);
}

ts::TransferSystem build_system(const ts::CyclicOrder& ord,
                                const std::vector<ts::Edge>& edges,
                                bool close) {
  if (close) return ts::generate(ord, edges);
  auto result = ts::validate(ord, edges);
  if (const ts::Violation* v = std::get_if<ts::Violation>(&result)) {
    ts::fail(ts::ErrorKind::Domain,
             v->describe() + " (pass --close to take the closure instead)");
  }
  return std::get<ts::TransferSystem>(result);
}

std::string edge_text(const ts::Edge& e) {
  std::ostringstream os;
  os << "(" << e.src.a << "," << e.src.b << ")->(" << e.dst.a << "," << e.dst.b
     << ")";
  return os.str();
}

std::string edges_text(const std::vector<ts::Edge>& edges) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < edges.size(); ++i) {
    if (i) os << ", ";
    os << edge_text(edges[i]);
  }
  os << "]";
  return os.str();
}

std::string residues_text(const ts::IndexingSet& I) {
  std::ostringstream os;
  const std::vector<int64_t> xs = I.elements();
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) os << ",";
    os << xs[i];
  }
  return os.str();
}

void emit_json(const ts::ordered_json& doc) { std::cout << doc.dump(2) << "\n"; }

ts::ordered_json doc_head(const char* command, const ts::CyclicOrder& ord) {
  return ts::ordered_json{
      {"schema", 1}, {"command", command}, {"order", ts::order_to_json(ord)}};
}

int run_subgroups(const Args& a) {
  const ts::CyclicOrder ord = parse_order_tuple(a.order);
  const std::vector<ts::Subgroup> subs = ts::all_subgroups(ord);
  if (a.format == "text") {
    for (const ts::Subgroup& s : subs) {
      std::cout << "(" << s.a << "," << s.b << ")  index="
                << ts::subgroup_index(ord, s) << "  order="
                << ts::divisor(ord, s) << "  " << ts::divisor_label(ord, s)
                << "\n";
    }
    return 0;
  }
  ts::ordered_json doc = doc_head("subgroups", ord);
  doc["count"] = ts::subgroup_count(ord);
  ts::ordered_json list = ts::ordered_json::array();
  for (const ts::Subgroup& s : subs) {
    list.push_back(ts::ordered_json{{"coords", ts::subgroup_to_json(s)},
                                    {"index", ts::subgroup_index(ord, s)},
                                    {"order", ts::divisor(ord, s)},
                                    {"label", ts::divisor_label(ord, s)}});
  }
  doc["subgroups"] = std::move(list);
  emit_json(doc);
  return 0;
}

int run_enumerate(const Args& a) {
  const ts::CyclicOrder ord = parse_order_tuple(a.order);
  const std::vector<ts::TransferSystem> systems =
      ts::enumerate_all(ord, a.saturated_only);
  if (a.format == "text") {
    std::cout << systems.size() << " systems\n";
    for (size_t i = 0; i < systems.size(); ++i) {
      std::cout << i << ": edges=" << edges_text(systems[i].nonreflexive_edges())
                << (ts::is_saturated(systems[i]) ? "  saturated" : "") << "\n";
    }
    return 0;
  }
  ts::ordered_json doc = doc_head("enumerate", ord);
  doc["saturated_only"] = a.saturated_only;
  doc["count"] = systems.size();
  ts::ordered_json list = ts::ordered_json::array();
  for (const ts::TransferSystem& T : systems) {
    list.push_back(
        ts::ordered_json{{"edges", ts::edges_to_json(T.nonreflexive_edges())},
                         {"covers", ts::edges_to_json(T.cover_edges())},
                         {"saturated", ts::is_saturated(T)}});
  }
  doc["systems"] = std::move(list);
  emit_json(doc);
  return 0;
}

ts::RealizeOptions parse_realize_options(const Args& a,
                                         const ts::CyclicOrder& ord) {
  ts::RealizeOptions opts;
  if (!a.bezout.empty()) {
    const std::vector<int64_t> v = split_ints(a.bezout, "--bezout");
    if (v.size() != 2) ts::fail(ts::ErrorKind::Domain, "--bezout expects u,v");
    opts.bezout = ts::bezout_override(ord.p, ord.q, v[0], v[1]);
  }
  if (a.policy == "canonical") {
    opts.policy = ts::OffsetPolicy::Canonical;
  } else if (a.policy == "paper-c35") {
    opts.policy = ts::OffsetPolicy::PaperC35;
  } else {
    ts::fail(ts::ErrorKind::Domain,
             "--offset-policy must be canonical or paper-c35");
  }
  return opts;
}

int run_realize(const Args& a) {
  const ts::CyclicOrder ord = parse_order_tuple(a.order);
  const ts::TransferSystem T =
      build_system(ord, parse_edges_arg(a.edges), a.close);
  const ts::RealizeOptions opts = parse_realize_options(a, ord);
  const ts::RealizeResult result = ts::realize_with_trace(T, opts);

  const bool matches = ts::realized_system(result.set, ord) == T;
  const bool star = ts::star_holds(result.set, ord);
  const ts::BezoutChoice bez =
      opts.bezout ? *opts.bezout : ts::choose_bezout(ord.p, ord.q);

  if (a.format == "text") {
    std::cout << "set mod " << ord.N << ": " << residues_text(result.set)
              << "\n";
    for (const ts::GridCellTrace& cell : result.trace) {
      std::cout << "cell (" << cell.a << "," << cell.b << "): " << cell.method;
      if (cell.square) std::cout << " case " << ts::square_case_name(*cell.square);
      std::cout << ", " << cell.set_size << " residues\n";
    }
    std::cout << "universe: " << ts::describe_universe(result.set) << "\n";
    std::cout << (matches && star ? "verified" : "MISMATCH") << "\n";
    return matches && star ? 0 : 1;
  }

  ts::ordered_json doc = doc_head("realize", ord);
  doc["system"] = ts::system_to_json(T);
  doc["saturated"] = true;
  doc["bezout"] = ts::ordered_json{{"u", bez.u}, {"v", bez.v}};
  doc["offset_policy"] = a.policy;
  ts::ordered_json trace = ts::ordered_json::array();
  for (const ts::GridCellTrace& cell : result.trace) {
    ts::ordered_json entry{{"cell", ts::ordered_json::array({cell.a, cell.b})},
                           {"method", cell.method}};
    if (cell.square) {
      entry["case"] = ts::square_case_name(*cell.square);
    } else {
      entry["case"] = nullptr;
    }
    entry["size"] = cell.set_size;
    trace.push_back(std::move(entry));
  }
  doc["trace"] = std::move(trace);
  doc["set"] = ts::indexing_set_to_json(result.set);
  doc["universe"] = ts::describe_universe(result.set);
  doc["realized_matches"] = matches;
  doc["star"] = star;
  emit_json(doc);
  return matches && star ? 0 : 1;
}

int run_verify(const Args& a) {
  ts::CyclicOrder ord(5, 1, 7, 1);
  ts::ordered_json system_json;
  ts::ordered_json set_json;
  if (!a.from.empty()) {
    const ts::ordered_json doc = parse_json(read_text(a.from), "--from");
    if (!doc.is_object() || !doc.contains("order") || !doc.contains("set")) {
      ts::fail(ts::ErrorKind::Domain,
               "--from needs a document with order, edges/system and set");
    }
    ord = ts::order_from_json(doc["order"]);
    if (doc.contains("system")) {
      system_json = doc["system"];
    } else if (doc.contains("edges")) {
      system_json = ts::ordered_json{{"order", doc["order"]},
                                     {"edges", doc["edges"]}};
    } else {
      ts::fail(ts::ErrorKind::Domain, "--from document lacks edges");
    }
    set_json = doc["set"];
  } else {
    if (a.order.empty() || a.set.empty() || a.edges.empty()) {
      ts::fail(ts::ErrorKind::Domain,
               "verify needs --order, --set and --edges (or --from FILE)");
    }
    ord = parse_order_tuple(a.order);
    system_json = ts::ordered_json{
        {"order", ts::order_to_json(ord)},
        {"edges", ts::edges_to_json(parse_edges_arg(a.edges))}};
    ts::ordered_json members = ts::ordered_json::array();
    for (const int64_t x : split_ints(a.set, "--set")) members.push_back(x);
    set_json = ts::ordered_json{{"modulus", ord.N}, {"members", members}};
  }

  const ts::TransferSystem T = a.close
      ? ts::generate(ord, ts::edges_from_json(system_json["edges"]))
      : ts::system_from_json(system_json);
  const ts::IndexingSet I = ts::indexing_set_from_json(set_json);
  if (I.modulus() != ord.N) {
    ts::fail(ts::ErrorKind::Domain, "set modulus does not match the order");
  }

  const ts::TransferSystem realized = ts::realized_system(I, ord);
  const bool match = realized == T;

  if (a.format == "text") {
    std::cout << "realized: " << edges_text(realized.nonreflexive_edges())
              << "\n"
              << "expected: " << edges_text(T.nonreflexive_edges()) << "\n"
              << (match ? "match" : "MISMATCH") << "\n";
    return match ? 0 : 1;
  }
  ts::ordered_json doc = doc_head("verify", ord);
  doc["system"] = ts::system_to_json(T);
  doc["set"] = ts::indexing_set_to_json(I);
  doc["realized_edges"] = ts::edges_to_json(realized.nonreflexive_edges());
  doc["match"] = match;
  doc["saturated"] = ts::is_saturated(T);
  doc["star"] = ts::star_holds(I, ord);
  emit_json(doc);
  return match ? 0 : 1;
}

int run_oracle(const Args& a) {
  const ts::CyclicOrder ord = parse_order_flexible(a.order);
  const ts::Census census =
      a.sample > 0 ? ts::realizability_census_sampled(ord, a.sample, a.seed)
                   : ts::realizability_census(ord, a.cap);
  const std::vector<ts::TransferSystem> saturated = ts::enumerate_all(ord, true);

  std::vector<std::string> verdicts;
  ts::ordered_json missing = ts::ordered_json::array();
  uint64_t realizable = 0;
  for (const ts::TransferSystem& T : saturated) {
    const std::string edges = edges_text(T.nonreflexive_edges());
    if (census.has_key(T)) {
      ++realizable;
      verdicts.push_back("realizable: " + edges);
    } else if (census.exhaustive) {
      verdicts.push_back("UNREALIZABLE saturated system: " + edges);
      missing.push_back(ts::edges_to_json(T.nonreflexive_edges()));
    } else {
      verdicts.push_back("not seen in sample: " + edges);
    }
  }
  uint64_t unsaturated_keys = 0;
  for (const ts::TransferSystem& T : census.keys()) {
    if (!ts::is_saturated(T)) {
      ++unsaturated_keys;
      verdicts.push_back("unsaturated census key: " +
                         edges_text(T.nonreflexive_edges()));
    }
  }
  const bool pass = unsaturated_keys == 0 &&
                    (!census.exhaustive || missing.empty());

  if (a.format == "text") {
    for (const std::string& line : verdicts) std::cout << line << "\n";
    std::cout << (census.exhaustive ? "exhaustive" : "sampled") << " sweep of "
              << census.sets_swept << " sets; " << census.counts.size()
              << " realized systems; " << realizable << "/" << saturated.size()
              << " saturated realizable\n";
    return pass ? 0 : 1;
  }

  for (const std::string& line : verdicts) std::cerr << line << "\n";
  ts::ordered_json doc = doc_head("oracle", ord);
  const ts::ordered_json census_json = ts::census_to_json(census);
  doc["exhaustive"] = census_json["exhaustive"];
  doc["sets_swept"] = census_json["sets_swept"];
  doc["census"] = census_json["classes"];
  doc["saturated_total"] = saturated.size();
  doc["realizable_saturated"] = realizable;
  doc["unrealizable_saturated"] = std::move(missing);
  doc["unsaturated_keys"] = unsaturated_keys;
  doc["pass"] = pass;
  ts::ordered_json verdict_json = ts::ordered_json::array();
  for (const std::string& line : verdicts) verdict_json.push_back(line);
  doc["verdicts"] = std::move(verdict_json);
  emit_json(doc);
  return pass ? 0 : 1;
}

int run_compare(const Args& a) {
  const ts::CyclicOrder ord = parse_order_tuple(a.order);
  const ts::TransferSystem T =
      build_system(ord, parse_edges_arg(a.edges), a.close);
  ts::TightPair pair = [&] {
    if (ord.n == 1 && ord.m == 1) return ts::build_cpq_instance(ord, a.j, a.k);
    if (ord.n == 2 && ord.m == 0) return ts::build_cp2_instance(ord);
    ts::fail(ts::ErrorKind::Precondition,
             "comparison instances exist for n = m = 1 and (n, m) = (2, 0)");
  }();

  const ts::IndexingSet ours = ts::realize(T);
  const ts::IndexingSet tight = ts::macbrough_realize(pair, T);
  const bool equal = ours == tight;

  if (a.format == "text") {
    std::cout << "construction: " << residues_text(ours) << "\n"
              << "tight pair:   " << residues_text(tight) << "\n"
              << "both realize the system; sets are "
              << (equal ? "equal" : "different") << "\n";
    return 0;
  }
  ts::ordered_json doc = doc_head("compare-macbrough", ord);
  doc["system"] = ts::system_to_json(T);
  doc["construction_set"] = ts::indexing_set_to_json(ours);
  doc["tightpair_set"] = ts::indexing_set_to_json(tight);
  doc["construction_realizes"] = true;
  doc["tightpair_realizes"] = true;
  doc["sets_equal"] = equal;
  emit_json(doc);
  return 0;
}

int run_export_dot(const Args& a) {
  const ts::CyclicOrder ord = parse_order_tuple(a.order);
  const ts::TransferSystem T =
      build_system(ord, parse_edges_arg(a.edges), a.close);
  const std::string dot = ts::to_dot(T);
  if (a.out == "-") {
    std::cout << dot;
  } else {
    std::ofstream out(a.out);
    if (!out) ts::fail(ts::ErrorKind::Domain, "cannot open file: " + a.out);
    out << dot;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linear-isometries realization toolkit for saturated transfer "
               "systems on C_{p^n q^m}"};
  app.require_subcommand(1);
  Args a;

  const auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", a.format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
  };
  const auto add_edges = [&](CLI::App* sub) {
    sub->add_option("--edges", a.edges,
                    "edge list: inline JSON [[[a,b],[a',b']],...] or a file")
        ->required();
    sub->add_flag("--close", a.close,
                  "take the reflexive-transitive-restriction closure of the "
                  "edges instead of requiring them to be closed");
  };

  CLI::App* subgroups = app.add_subcommand("subgroups", "list the subgroup lattice");
  subgroups->add_option("--order", a.order, "factored order p,n,q,m")->required();
  add_format(subgroups);

  CLI::App* enumerate = app.add_subcommand("enumerate", "enumerate transfer systems");
  enumerate->add_option("--order", a.order, "factored order p,n,q,m")->required();
  enumerate->add_flag("--saturated", a.saturated_only, "saturated systems only");
  add_format(enumerate);

  CLI::App* realize = app.add_subcommand(
      "realize", "construct an indexing set realizing a saturated system");
  realize->add_option("--order", a.order, "factored order p,n,q,m")->required();
  add_edges(realize);
  realize->add_option("--bezout", a.bezout, "Bezout witness u,v with u*q+v*p=1");
  realize->add_option("--offset-policy", a.policy, "canonical or paper-c35");
  add_format(realize);

  CLI::App* verify = app.add_subcommand(
      "verify", "check that an indexing set realizes a transfer system");
  verify->add_option("--order", a.order, "factored order p,n,q,m");
  verify->add_option("--set", a.set, "comma-separated residues");
  verify->add_option("--edges", a.edges, "edge list (inline JSON or file)");
  verify->add_flag("--close", a.close, "close the edge list first");
  verify->add_option("--from", a.from,
                     "read order/system/set from a JSON document ('-' = stdin)");
  add_format(verify);

  CLI::App* oracle = app.add_subcommand(
      "oracle", "sweep indexing sets and tally the realized systems");
  oracle->add_option("--order", a.order, "factored order p,n,q,m or a modulus")
      ->required();
  oracle->add_option("--cap", a.cap,
                     "largest admitted sweep exponent (default: "
                     "TRSYS_ORACLE_CAP or 20)");
  CLI::Option* sample_opt =
      oracle->add_option("--sample", a.sample, "sample this many sets instead");
  oracle->add_option("--seed", a.seed, "sampling seed")->needs(sample_opt);
  add_format(oracle);

  CLI::App* compare = app.add_subcommand(
      "compare-macbrough", "realize via the tight-pair comparator as well");
  compare->add_option("--order", a.order, "factored order p,n,q,m")->required();
  add_edges(compare);
  compare->add_option("--j", a.j, "character choice 0 < j < p");
  compare->add_option("--k", a.k, "character choice 0 < k < q");
  add_format(compare);

  CLI::App* export_dot = app.add_subcommand(
      "export-dot", "draw a transfer system in DOT format");
  export_dot->add_option("--order", a.order, "factored order p,n,q,m")->required();
  add_edges(export_dot);
  export_dot->add_option("--out", a.out, "output file ('-' = stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(subgroups)) return run_subgroups(a);
    if (app.got_subcommand(enumerate)) return run_enumerate(a);
    if (app.got_subcommand(realize)) return run_realize(a);
    if (app.got_subcommand(verify)) return run_verify(a);
    if (app.got_subcommand(oracle)) return run_oracle(a);
    if (app.got_subcommand(compare)) return run_compare(a);
    if (app.got_subcommand(export_dot)) return run_export_dot(a);
  } catch (const ts::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
