#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "trsys/indexing.hpp"
#include "trsys/transfer.hpp"

namespace trsys {

// Character-set diagram: each subgroup H of the cyclic group carries a set
// of character indices, i.e. a subset of Z/d where d = |H|.  The characters
// of a subgroup C_d <= C_N are indexed so that restriction along C_d <= C_e
// is reduction of the index mod d, and induction sends an index to its full
// congruence fiber (see induce_characters).
struct Diagram {
  CyclicOrder order;
  std::map<Subgroup, ResidueSet> sets;

  explicit Diagram(const CyclicOrder& ord);
  ResidueSet& at(Subgroup H);
  const ResidueSet& at(Subgroup H) const;
  bool operator==(const Diagram&) const = default;
};

// Induction of characters along C_d <= C_e (d | e): an index j of C_d is
// sent to every index of C_e that reduces to j.  Applied to a set S this
// yields { x in Z/e : x mod d in S }.
ResidueSet induce_characters(int64_t d, int64_t e, const ResidueSet& S);

// Union-preserving maps P(Z/|K|) -> P(Z/|H|), one per comparable pair
// K <= H, each determined by its images of singletons.  Identity maps on
// the diagonal pairs are provided automatically.
class Subinductor {
 public:
  explicit Subinductor(const CyclicOrder& ord);

  const CyclicOrder& order() const { return ord_; }

  // Declares the image of the single character index `index` of K under
  // the map for K <= H.  All indices of K must be declared before apply().
  void set_image(Subgroup K, Subgroup H, int64_t index, ResidueSet image);

  ResidueSet apply(Subgroup K, Subgroup H, const ResidueSet& S) const;

 private:
  CyclicOrder ord_;
  // (K, H) -> per-index images; entry i is the image of index i.
  std::map<std::pair<Subgroup, Subgroup>, std::vector<ResidueSet>> images_;
};

struct TightPair {
  Diagram diagram;
  Subinductor subinductor;
};

// Tight pair for C_{pq} (n = m = 1 box) built as the tensor product of the
// standard one-prime pairs with character choices 0 < j < p and 0 < k < q.
// The top set has nine indices {0, +-jq, +-pk, +-(pk+jq), +-(pk-jq)}.
TightPair build_cpq_instance(const CyclicOrder& ord, int64_t j = 1,
                             int64_t k = 1);

// Tight pair for the chain C_{p^2} (n = 2, m = 0) with top set
// {0, 2p, p^2-2p} and subinduction i |-> {i, p^2-p+i} from C_p.
TightPair build_cp2_instance(const CyclicOrder& ord);

// One transfer sweep: each D(H) is closed under the fibers of its own
// restriction along every transfer edge K -> H, i.e.
//   D'(H) = D(H)  union  Ind^H_K(Res^H_K(D(H)))  over (K -> H) in T.
Diagram extend_by_transfers(const Diagram& D, const TransferSystem& T);

// One subinduction sweep: D'(H) is the union of the subinductor images of
// D(K) over all K <= H (the diagonal identity keeps D(H) itself).
Diagram extend_by_subinduction(const Diagram& D, const Subinductor& J);

// Alternates the two sweeps until the diagram stops growing, then returns
// the top set as an indexing set of Z/N.  Fails if the fixed point does not
// realize T; T must be saturated.
IndexingSet macbrough_realize(const TightPair& pair, const TransferSystem& T);

}  // namespace trsys
