#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "trsys/realizer.hpp"
#include "trsys/tightpair.hpp"
#include "util.hpp"

using trsys::CyclicOrder;
using trsys::Edge;
using trsys::ErrorKind;
using trsys::IndexingSet;
using trsys::ResidueSet;
using trsys::Subgroup;
using trsys::TransferSystem;
using testutil::caught_kind;

namespace {

const CyclicOrder kOrd35(5, 1, 7, 1);
const CyclicOrder kOrd25(5, 2, 7, 0);

}  // namespace

TEST_CASE("induce_characters builds the congruence fiber") {
  CHECK(induce_characters(5, 35, ResidueSet::of(5, {0})).elements() ==
        std::vector<int64_t>{0, 5, 10, 15, 20, 25, 30});
  CHECK(induce_characters(1, 7, ResidueSet::of(1, {0})).count() == 7);
  CHECK(induce_characters(5, 5, ResidueSet::of(5, {2})).elements() ==
        std::vector<int64_t>{2});

  CHECK(caught_kind([] {
          induce_characters(5, 21, ResidueSet::of(5, {0}));
        }) == ErrorKind::Precondition);
  CHECK(caught_kind([] {
          induce_characters(5, 35, ResidueSet::of(7, {0}));
        }) == ErrorKind::Precondition);
  CHECK(caught_kind([] {
          induce_characters(1, (int64_t(1) << 16) + 1, ResidueSet::of(1, {0}));
        }) == ErrorKind::Resource);
}

TEST_CASE("induce_characters matches the inner-product reference") {
  for (const int64_t N : {10, 25, 35}) {
    for (int64_t d = 1; d <= N; ++d) {
      if (N % d != 0) continue;
      for (int64_t e = d; e <= N; ++e) {
        if (N % e != 0 || e % d != 0) continue;
        for (int64_t j = 0; j < d; ++j) {
          const auto fiber = induce_characters(d, e, ResidueSet::of(d, {j}));
          for (int64_t k = 0; k < e; ++k) {
            const int mult = testoracle::induced_multiplicity(d, e, j, k);
            CHECK((mult == 0 || mult == 1));
            CHECK(fiber.contains(k) == (mult == 1));
          }
        }
      }
    }
  }
}

TEST_CASE("subinductor stores and applies singleton images") {
  trsys::Subinductor J(kOrd35);
  J.set_image({1, 0}, {1, 1}, 0, ResidueSet::of(35, {0}));
  J.set_image({1, 0}, {1, 1}, 1, ResidueSet::of(35, {21}));
  J.set_image({1, 0}, {1, 1}, 2, ResidueSet::of(35, {7}));

  CHECK(J.apply({1, 0}, {1, 1}, ResidueSet::of(5, {1, 2})).elements() ==
        std::vector<int64_t>{7, 21});
  // On the diagonal the map is the identity even without declared images.
  CHECK(J.apply({0, 1}, {0, 1}, ResidueSet::of(7, {3})).elements() ==
        std::vector<int64_t>{3});

  CHECK(caught_kind([&] {
          J.apply({0, 1}, {1, 1}, ResidueSet::of(7, {0}));
        }) == ErrorKind::Precondition);
  CHECK(caught_kind([&] {
          J.apply({1, 0}, {1, 1}, ResidueSet::of(5, {3}));
        }) == ErrorKind::Precondition);
  CHECK(caught_kind([&] {
          J.apply({1, 0}, {1, 1}, ResidueSet::of(7, {0}));
        }) == ErrorKind::Precondition);
  CHECK(caught_kind([&] {
          J.set_image({1, 0}, {0, 1}, 0, ResidueSet::of(7, {0}));
        }) == ErrorKind::Precondition);
  CHECK(caught_kind([&] {
          J.set_image({1, 0}, {1, 1}, 5, ResidueSet::of(35, {0}));
        }) == ErrorKind::Precondition);
  CHECK(caught_kind([&] {
          J.set_image({1, 0}, {1, 1}, 0, ResidueSet::of(5, {0}));
        }) == ErrorKind::Precondition);
}

TEST_CASE("two-prime instance data") {
  const auto pair = trsys::build_cpq_instance(kOrd35);
  const auto& D = pair.diagram;
  CHECK(D.at({0, 0}).elements() == std::vector<int64_t>{0});
  CHECK(D.at({1, 0}).elements() == std::vector<int64_t>{0, 2, 3});
  CHECK(D.at({0, 1}).elements() == std::vector<int64_t>{0, 2, 5});
  CHECK(D.at({1, 1}).elements() ==
        std::vector<int64_t>{0, 2, 5, 7, 12, 23, 28, 30, 33});

  // The diagram is coherent under restriction of characters.
  CHECK(reduce(D.at({1, 1}), 5) == D.at({1, 0}));
  CHECK(reduce(D.at({1, 1}), 7) == D.at({0, 1}));

  // Factor characters embed along the complementary idempotent.
  CHECK(pair.subinductor.apply({1, 0}, {1, 1}, ResidueSet::of(5, {1}))
            .elements() == std::vector<int64_t>{21});
  CHECK(pair.subinductor.apply({0, 1}, {1, 1}, ResidueSet::of(7, {1}))
            .elements() == std::vector<int64_t>{15});

  CHECK(caught_kind([] {
          trsys::build_cpq_instance(CyclicOrder(5, 2, 7, 1));
        }) == ErrorKind::Precondition);
  CHECK(caught_kind([] {
          trsys::build_cpq_instance(CyclicOrder(3, 1, 7, 1));
        }) == ErrorKind::UnsupportedPrime);
  CHECK(caught_kind([] { trsys::build_cpq_instance(kOrd35, 0, 1); }) ==
        ErrorKind::Domain);
  CHECK(caught_kind([] { trsys::build_cpq_instance(kOrd35, 1, 7); }) ==
        ErrorKind::Domain);
}

TEST_CASE("one-prime-square instance data") {
  const auto pair = trsys::build_cp2_instance(kOrd25);
  const auto& D = pair.diagram;
  CHECK(D.at({0, 0}).elements() == std::vector<int64_t>{0});
  CHECK(D.at({1, 0}).elements() == std::vector<int64_t>{0, 1, 4});
  CHECK(D.at({2, 0}).elements() == std::vector<int64_t>{0, 10, 15});
  CHECK(pair.subinductor.apply({1, 0}, {2, 0}, ResidueSet::of(5, {1}))
            .elements() == std::vector<int64_t>{1, 21});
  CHECK(pair.subinductor.apply({0, 0}, {2, 0}, ResidueSet::of(1, {0}))
            .elements() == std::vector<int64_t>{0, 20});

  CHECK(caught_kind([] {
          trsys::build_cp2_instance(CyclicOrder(5, 1, 7, 1));
        }) == ErrorKind::Precondition);
}

TEST_CASE("extension steps grow the diagram as expected") {
  const auto pair = trsys::build_cp2_instance(kOrd25);
  const auto T = generate(kOrd25, {Edge{{1, 0}, {2, 0}}});

  const auto after_transfer = extend_by_transfers(pair.diagram, T);
  CHECK(after_transfer.at({1, 0}) == pair.diagram.at({1, 0}));
  CHECK(after_transfer.at({2, 0}).elements() ==
        std::vector<int64_t>{0, 5, 10, 15, 20});

  const auto after_sub =
      extend_by_subinduction(pair.diagram, pair.subinductor);
  CHECK(after_sub.at({1, 0}).elements() == std::vector<int64_t>{0, 1, 4});
  CHECK(after_sub.at({2, 0}).elements() ==
        std::vector<int64_t>{0, 1, 4, 10, 15, 20, 21, 24});

  CHECK(caught_kind([&] {
          extend_by_transfers(pair.diagram, TransferSystem::full(kOrd35));
        }) == ErrorKind::Precondition);
}

TEST_CASE("comparator reproduces the published two-prime set") {
  const auto pair = trsys::build_cpq_instance(kOrd35);
  const auto T = generate(kOrd35, {Edge{{0, 0}, {1, 0}}});
  const auto I = trsys::macbrough_realize(pair, T);
  CHECK(I.elements() == std::vector<int64_t>{0, 2, 5, 7, 12, 14, 21, 23, 28,
                                             30, 33});
  CHECK(realized_system(I, kOrd35) == T);
}

TEST_CASE("comparator reproduces the published one-prime set") {
  const auto pair = trsys::build_cp2_instance(kOrd25);
  const auto T = generate(kOrd25, {Edge{{1, 0}, {2, 0}}});
  const auto I = trsys::macbrough_realize(pair, T);
  std::vector<int64_t> expect;
  for (int64_t x = 0; x < 25; ++x)
    if (x % 5 == 0 || x % 5 == 1 || x % 5 == 4) expect.push_back(x);
  CHECK(I.elements() == expect);
  CHECK(I == trsys::chain_realize(T, 5));
}

TEST_CASE("comparator handles every saturated system on the small box") {
  const auto pair = trsys::build_cpq_instance(kOrd35);
  for (const auto& T : enumerate_all(kOrd35, true)) {
    const auto I = trsys::macbrough_realize(pair, T);
    CHECK(realized_system(I, kOrd35) == T);
  }
  // With no transfers the diagram is already at its fixed point.
  const auto I0 =
      trsys::macbrough_realize(pair, TransferSystem::identities(kOrd35));
  CHECK(I0.elements() == std::vector<int64_t>{0, 2, 5, 7, 12, 23, 28, 30, 33});
  CHECK(trsys::macbrough_realize(pair, TransferSystem::full(kOrd35)) ==
        IndexingSet::full(35));
}

TEST_CASE("comparator and grid construction may pick different universes") {
  const auto T = generate(kOrd35, {Edge{{0, 0}, {1, 0}}});
  const auto ours = trsys::realize(T);
  const auto theirs =
      trsys::macbrough_realize(trsys::build_cpq_instance(kOrd35), T);
  CHECK(realized_system(ours, kOrd35) == realized_system(theirs, kOrd35));
  CHECK_FALSE(ours == theirs);
}

TEST_CASE("comparator rejects mismatched or unsaturated input") {
  const auto pair = trsys::build_cpq_instance(kOrd35);
  CHECK(caught_kind([&] {
          trsys::macbrough_realize(pair, TransferSystem::full(kOrd25));
        }) == ErrorKind::Precondition);
  CHECK(caught_kind([&] {
          trsys::macbrough_realize(pair,
                                   generate(kOrd35, {Edge{{0, 0}, {1, 1}}}));
        }) == ErrorKind::Precondition);
}
