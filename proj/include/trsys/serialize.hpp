#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "trsys/indexing.hpp"
#include "trsys/oracle.hpp"
#include "trsys/transfer.hpp"

namespace trsys {

// Output always uses insertion-ordered JSON so identical inputs print
// byte-identically.
using ordered_json = nlohmann::ordered_json;

ordered_json order_to_json(const CyclicOrder& ord);
CyclicOrder order_from_json(const ordered_json& j);

ordered_json subgroup_to_json(Subgroup s);      // [a, b]
Subgroup subgroup_from_json(const ordered_json& j);

ordered_json edges_to_json(const std::vector<Edge>& edges);
std::vector<Edge> edges_from_json(const ordered_json& j);

// {"order": ..., "edges": [...]} with only the non-reflexive edges listed.
ordered_json system_to_json(const TransferSystem& T);
// Validates the edge list and fails with the violation text if it does not
// close up.
TransferSystem system_from_json(const ordered_json& j);

// {"modulus": N, "members": [ascending]}.
ordered_json indexing_set_to_json(const IndexingSet& I);
IndexingSet indexing_set_from_json(const ordered_json& j);

ordered_json census_to_json(const Census& census);
ordered_json theorem_report_to_json(const TheoremReport& report);

// Hasse-style drawing: subgroup nodes labeled by their order in factored
// form, cover edges of the relation as arrows, smaller subgroups at the
// bottom.
std::string to_dot(const TransferSystem& T);

}  // namespace trsys
