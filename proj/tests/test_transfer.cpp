#include <algorithm>
#include <set>
#include <variant>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "trsys/transfer.hpp"
#include "util.hpp"

using trsys::CyclicOrder;
using trsys::Edge;
using trsys::ErrorKind;
using trsys::Subgroup;
using trsys::TransferSystem;
using trsys::Violation;
using testutil::caught_kind;

namespace {

testoracle::EdgeSet to_edge_set(const TransferSystem& T) {
  testoracle::EdgeSet out;
  for (const Edge& e : T.nonreflexive_edges())
    out.insert({{e.src.a, e.src.b}, {e.dst.a, e.dst.b}});
  return out;
}

std::set<testoracle::EdgeSet> to_edge_sets(const std::vector<TransferSystem>& v) {
  std::set<testoracle::EdgeSet> out;
  for (const auto& T : v) out.insert(to_edge_set(T));
  return out;
}

}  // namespace

TEST_CASE("comparable_pairs fixes the lexicographic bit order") {
  const CyclicOrder ord(5, 1, 7, 1);
  const auto pairs = comparable_pairs(ord);
  REQUIRE(pairs.size() == 5);
  CHECK((pairs[0] == Edge{{0, 0}, {0, 1}}));
  CHECK((pairs[1] == Edge{{0, 0}, {1, 0}}));
  CHECK((pairs[2] == Edge{{0, 0}, {1, 1}}));
  CHECK((pairs[3] == Edge{{0, 1}, {1, 1}}));
  CHECK((pairs[4] == Edge{{1, 0}, {1, 1}}));

  CHECK(comparable_pairs(CyclicOrder(5, 2, 7, 1)).size() == 12);
  CHECK(comparable_pairs(CyclicOrder(5, 5, 7, 0)).size() == 15);
}

TEST_CASE("identities and full factories") {
  const CyclicOrder ord(5, 1, 7, 1);
  const auto ids = TransferSystem::identities(ord);
  CHECK(ids.nonreflexive_edges().empty());
  CHECK(ids.has(Subgroup{0, 1}, Subgroup{0, 1}));
  CHECK_FALSE(ids.has(Subgroup{0, 0}, Subgroup{0, 1}));

  const auto full = TransferSystem::full(ord);
  CHECK(full.nonreflexive_edges().size() == 5);
  CHECK(full.has(Subgroup{0, 0}, Subgroup{1, 1}));
  CHECK_FALSE(full.has(Subgroup{1, 0}, Subgroup{0, 1}));
  CHECK(is_saturated(ids));
  CHECK(is_saturated(full));
}

TEST_CASE("validate accepts a closed relation") {
  const CyclicOrder ord(5, 1, 7, 1);
  const std::vector<Edge> edges = {
      {{0, 0}, {0, 1}}, {{0, 0}, {1, 0}}, {{0, 0}, {1, 1}},
      {{0, 1}, {1, 1}}, {{1, 0}, {1, 1}}};
  const auto res = validate(ord, edges);
  REQUIRE(std::holds_alternative<TransferSystem>(res));
  CHECK(std::get<TransferSystem>(res) == TransferSystem::full(ord));
}

TEST_CASE("validate reports the first violation in scan order") {
  const CyclicOrder ord(5, 1, 7, 1);

  SUBCASE("orientation") {
    const auto res = validate(ord, {{{1, 0}, {0, 1}}});
    REQUIRE(std::holds_alternative<Violation>(res));
    const auto& v = std::get<Violation>(res);
    CHECK(v.axiom == Violation::Axiom::Orientation);
    CHECK(v.describe() ==
          "orientation violation: edge (1,0)->(0,1) does not respect the "
          "divisibility order");
  }

  SUBCASE("transitivity") {
    const auto res = validate(ord, {{{0, 0}, {1, 0}}, {{1, 0}, {1, 1}}});
    REQUIRE(std::holds_alternative<Violation>(res));
    const auto& v = std::get<Violation>(res);
    CHECK(v.axiom == Violation::Axiom::Transitivity);
    REQUIRE(v.witness.size() == 3);
    CHECK((v.witness[0] == Subgroup{0, 0}));
    CHECK((v.witness[1] == Subgroup{1, 0}));
    CHECK((v.witness[2] == Subgroup{1, 1}));
    CHECK(v.describe() ==
          "transitivity violation: witness ((0,0),(1,0),(1,1))");
  }

  SUBCASE("restriction") {
    const auto res = validate(ord, {{{0, 0}, {1, 1}}});
    REQUIRE(std::holds_alternative<Violation>(res));
    const auto& v = std::get<Violation>(res);
    CHECK(v.axiom == Violation::Axiom::Restriction);
    REQUIRE(v.witness.size() == 3);
    CHECK((v.witness[2] == Subgroup{0, 1}));
    CHECK(v.describe() ==
          "restriction violation: edge (0,0)->(1,1), witness w=(0,1)");
  }

  SUBCASE("edge outside the box") {
    CHECK(caught_kind([&] { validate(ord, {{{0, 0}, {2, 0}}}); }) ==
          ErrorKind::Domain);
  }
}

TEST_CASE("generate closes seeds under transitivity and restriction") {
  const CyclicOrder ord(5, 1, 7, 1);
  const auto T = generate(ord, {{{0, 0}, {1, 1}}});
  const auto edges = T.nonreflexive_edges();
  REQUIRE(edges.size() == 3);
  CHECK((edges[0] == Edge{{0, 0}, {0, 1}}));
  CHECK((edges[1] == Edge{{0, 0}, {1, 0}}));
  CHECK((edges[2] == Edge{{0, 0}, {1, 1}}));
  CHECK_FALSE(is_saturated(T));
  CHECK(T.cover_edges().size() == 3);

  CHECK(caught_kind([&] { generate(ord, {{{1, 0}, {0, 1}}}); }) ==
        ErrorKind::Domain);
  CHECK(caught_kind([&] { generate(ord, {{{0, 0}, {0, 2}}}); }) ==
        ErrorKind::Domain);
}

TEST_CASE("cover_edges of the full system drops the implied diagonal") {
  const auto covers =
      TransferSystem::full(CyclicOrder(5, 1, 7, 1)).cover_edges();
  REQUIRE(covers.size() == 4);
  CHECK((covers[0] == Edge{{0, 0}, {0, 1}}));
  CHECK((covers[1] == Edge{{0, 0}, {1, 0}}));
  CHECK((covers[2] == Edge{{0, 1}, {1, 1}}));
  CHECK((covers[3] == Edge{{1, 0}, {1, 1}}));
}

TEST_CASE("enumeration counts on chains follow the Catalan numbers") {
  auto count = [](int n, int m, bool sat) {
    return enumerate_all(CyclicOrder(5, n, 7, m), sat).size();
  };
  CHECK(count(1, 0, false) == 2);
  CHECK(count(1, 0, true) == 2);
  CHECK(count(2, 0, false) == 5);
  CHECK(count(2, 0, true) == 4);
  CHECK(count(3, 0, false) == 14);
  CHECK(count(3, 0, true) == 8);
  CHECK(count(4, 0, false) == 42);
  CHECK(count(4, 0, true) == 16);
  CHECK(count(1, 1, false) == 10);
  CHECK(count(1, 1, true) == 7);
}

TEST_CASE("enumeration matches the subset-sweep reference on small boxes") {
  for (const bool sat : {false, true}) {
    for (const auto& [n, m] : std::vector<std::pair<int, int>>{
             {1, 1}, {3, 0}, {2, 1}}) {
      const auto ours = enumerate_all(CyclicOrder(5, n, 7, m), sat);
      const auto ref = testoracle::all_relations(n, m, sat);
      CHECK(ours.size() == ref.size());
      CHECK(to_edge_sets(ours) ==
            std::set<testoracle::EdgeSet>(ref.begin(), ref.end()));
    }
  }
}

TEST_CASE("enumeration falls back to cover closure on wide chains") {
  // 15 comparable pairs exceeds the subset sweep threshold, so this order
  // exercises the incremental-closure path.
  const CyclicOrder ord(5, 5, 7, 0);
  const auto all = enumerate_all(ord, false);
  const auto sat = enumerate_all(ord, true);
  CHECK(all.size() == 132);
  CHECK(sat.size() == 32);
  const auto ref = testoracle::all_relations(5, 0, false);
  CHECK(to_edge_sets(all) ==
        std::set<testoracle::EdgeSet>(ref.begin(), ref.end()));
  for (const auto& T : sat) CHECK(is_saturated(T));
}

TEST_CASE("enumeration refuses oversized boxes") {
  CHECK(caught_kind([] { enumerate_all(CyclicOrder(5, 3, 7, 3), false); }) ==
        ErrorKind::Resource);
}

TEST_CASE("is_saturated agrees with the direct definition") {
  const CyclicOrder ord(5, 1, 7, 1);
  for (const auto& T : enumerate_all(ord, false)) {
    CHECK(is_saturated(T) == testoracle::relation_saturated(1, 1, to_edge_set(T)));
  }
}

TEST_CASE("restrict_box truncates to a sub-box") {
  const CyclicOrder big(5, 2, 7, 1);
  const CyclicOrder small(5, 1, 7, 1);
  CHECK(restrict_box(TransferSystem::full(big), 1, 1) ==
        TransferSystem::full(small));
  CHECK(restrict_box(TransferSystem::identities(big), 1, 1) ==
        TransferSystem::identities(small));
  const auto T = generate(big, {{{0, 0}, {0, 1}}});
  CHECK(restrict_box(T, 1, 1) == generate(small, {{{0, 0}, {0, 1}}}));
  CHECK(restrict_box(T, 2, 0) == TransferSystem::identities(CyclicOrder(5, 2, 7, 0)));
  CHECK(caught_kind([&] { restrict_box(T, 3, 1); }) == ErrorKind::Domain);
}

TEST_CASE("edge masks round-trip and order the enumeration") {
  const CyclicOrder ord(5, 1, 7, 1);
  const auto all = enumerate_all(ord, false);
  for (const auto& T : all) {
    CHECK(system_from_edge_mask(ord, T.edge_mask()) == T);
  }
  for (size_t i = 0; i + 1 < all.size(); ++i) {
    CHECK(trsys::mask_less(all[i].edge_mask(), all[i + 1].edge_mask()));
  }
  CHECK_FALSE(trsys::mask_less(all[0].edge_mask(), all[0].edge_mask()));
}
