#include "trsys/serialize.hpp"

#include <sstream>

#include "trsys/errors.hpp"

namespace trsys {

namespace {

int64_t get_int(const ordered_json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_number_integer()) {
    std::ostringstream os;
    os << "expected an integer field \"" << key << "\"";
    fail(ErrorKind::Domain, os.str());
  }
  return j[key].get<int64_t>();
}

}  // namespace

ordered_json order_to_json(const CyclicOrder& ord) {
  return ordered_json{{"p", ord.p}, {"n", ord.n}, {"q", ord.q}, {"m", ord.m}};
}

CyclicOrder order_from_json(const ordered_json& j) {
  return CyclicOrder(get_int(j, "p"), static_cast<int>(get_int(j, "n")),
                     get_int(j, "q"), static_cast<int>(get_int(j, "m")));
}

ordered_json subgroup_to_json(Subgroup s) {
  return ordered_json::array({s.a, s.b});
}

Subgroup subgroup_from_json(const ordered_json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
      !j[1].is_number_integer()) {
    fail(ErrorKind::Domain, "expected a subgroup as a two-element array [a, b]");
  }
  return Subgroup{j[0].get<int>(), j[1].get<int>()};
}

ordered_json edges_to_json(const std::vector<Edge>& edges) {
  ordered_json out = ordered_json::array();
  for (const Edge& e : edges) {
    out.push_back(ordered_json::array({subgroup_to_json(e.src), subgroup_to_json(e.dst)}));
  }
  return out;
}

std::vector<Edge> edges_from_json(const ordered_json& j) {
  if (!j.is_array()) {
    fail(ErrorKind::Domain, "expected an array of edges [[a,b],[a',b']]");
  }
  std::vector<Edge> out;
  out.reserve(j.size());
  for (const ordered_json& e : j) {
    if (!e.is_array() || e.size() != 2) {
      fail(ErrorKind::Domain, "expected an edge as a pair of subgroups");
    }
    out.push_back(Edge{subgroup_from_json(e[0]), subgroup_from_json(e[1])});
  }
  return out;
}

ordered_json system_to_json(const TransferSystem& T) {
  return ordered_json{{"order", order_to_json(T.order())},
                      {"edges", edges_to_json(T.nonreflexive_edges())}};
}

TransferSystem system_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("order") || !j.contains("edges")) {
    fail(ErrorKind::Domain, "expected {\"order\": ..., \"edges\": [...]}");
  }
  const CyclicOrder ord = order_from_json(j["order"]);
  const std::vector<Edge> edges = edges_from_json(j["edges"]);
  auto result = validate(ord, edges);
  if (const Violation* v = std::get_if<Violation>(&result)) {
    fail(ErrorKind::Domain, v->describe());
  }
  return std::get<TransferSystem>(result);
}

ordered_json indexing_set_to_json(const IndexingSet& I) {
  ordered_json members = ordered_json::array();
  for (const int64_t x : I.elements()) members.push_back(x);
  return ordered_json{{"modulus", I.modulus()}, {"members", members}};
}

IndexingSet indexing_set_from_json(const ordered_json& j) {
  const int64_t modulus = get_int(j, "modulus");
  if (!j.contains("members") || !j["members"].is_array()) {
    fail(ErrorKind::Domain, "expected an integer array field \"members\"");
  }
  std::vector<int64_t> members;
  for (const ordered_json& x : j["members"]) {
    if (!x.is_number_integer()) {
      fail(ErrorKind::Domain, "indexing set members must be integers");
    }
    members.push_back(x.get<int64_t>());
  }
  return IndexingSet(modulus, members);
}

ordered_json census_to_json(const Census& census) {
  ordered_json classes = ordered_json::array();
  for (const auto& [mask, count] : census.counts) {
    const TransferSystem T = system_from_edge_mask(census.order, mask);
    classes.push_back(ordered_json{{"edges", edges_to_json(T.nonreflexive_edges())},
                                   {"count", count},
                                   {"saturated", is_saturated(T)}});
  }
  return ordered_json{{"order", order_to_json(census.order)},
                      {"exhaustive", census.exhaustive},
                      {"sets_swept", census.sets_swept},
                      {"classes", classes}};
}

ordered_json theorem_report_to_json(const TheoremReport& report) {
  ordered_json missing = ordered_json::array();
  for (const TransferSystem& T : report.missing_saturated) {
    missing.push_back(edges_to_json(T.nonreflexive_edges()));
  }
  ordered_json unsat = ordered_json::array();
  for (const TransferSystem& T : report.unsaturated_keys) {
    unsat.push_back(edges_to_json(T.nonreflexive_edges()));
  }
  return ordered_json{{"pass", report.pass},
                      {"exhaustive", report.exhaustive},
                      {"sets_swept", report.sets_swept},
                      {"saturated_total", report.saturated_total},
                      {"realizable_saturated", report.realizable_saturated},
                      {"unrealizable_saturated", missing},
                      {"unsaturated_keys", unsat},
                      {"construction_agrees", report.construction_agrees},
                      {"summary", report.summary}};
}

std::string to_dot(const TransferSystem& T) {
  const CyclicOrder& ord = T.order();
  std::ostringstream os;
  os << "digraph transfer_system {\n";
  os << "  rankdir=BT;\n";
  os << "  node [shape=box, fontname=\"monospace\"];\n";
  for (const Subgroup& s : all_subgroups(ord)) {
    os << "  s" << s.a << "_" << s.b << " [label=\"" << divisor_label(ord, s)
       << "\"];\n";
  }
  for (const Edge& e : T.cover_edges()) {
    os << "  s" << e.src.a << "_" << e.src.b << " -> s" << e.dst.a << "_"
       << e.dst.b << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace trsys
