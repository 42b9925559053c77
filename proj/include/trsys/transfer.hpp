#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "trsys/lattice.hpp"

namespace trsys {

struct Edge {
  Subgroup src;
  Subgroup dst;
  auto operator<=>(const Edge&) const = default;
};

// Comparable non-reflexive ordered pairs (x, y) with x <= y and x != y,
// lexicographic by (src, dst).  Fixes the bit positions used by edge masks.
std::vector<Edge> comparable_pairs(const CyclicOrder& ord);

// Edge set encoded as a little-endian bit vector over comparable_pairs.
using EdgeMask = std::vector<uint64_t>;

// Numeric order on equally sized masks (most significant word last).
bool mask_less(const EdgeMask& a, const EdgeMask& b);

// A transfer system: a reflexive, transitive relation refining divisibility
// and closed under restriction, meaning (x,y) in T and w <= y imply
// (meet(x,w), w) in T.  Instances are immutable; the factories below and the
// free functions in this header are the only ways to obtain one.
class TransferSystem {
 public:
  static TransferSystem identities(const CyclicOrder& ord);
  static TransferSystem full(const CyclicOrder& ord);
  // Adjacency taken as-is (library internal; callers must pass a closed
  // relation including the diagonal).
  static TransferSystem raw(const CyclicOrder& ord, std::vector<bool> adj);

  const CyclicOrder& order() const { return order_; }
  int size() const { return nsub_; }
  bool has_index(int x, int y) const {
    return adj_[static_cast<size_t>(x) * nsub_ + y];
  }
  bool has(Subgroup x, Subgroup y) const;

  // Non-reflexive edges, lexicographic.
  std::vector<Edge> nonreflexive_edges() const;
  // Edges not implied by transitivity through a third subgroup.
  std::vector<Edge> cover_edges() const;
  EdgeMask edge_mask() const;

  bool operator==(const TransferSystem& o) const {
    return order_ == o.order_ && adj_ == o.adj_;
  }

 private:
  TransferSystem(CyclicOrder ord, std::vector<bool> adj);

  CyclicOrder order_;
  int nsub_;
  std::vector<bool> adj_;  // nsub_ * nsub_, row = source
};

struct Violation {
  enum class Axiom { Orientation, Transitivity, Restriction };
  Axiom axiom;
  // Orientation: {src, dst}.  Transitivity: {x, y, z} with (x,y), (y,z)
  // present and (x,z) missing.  Restriction: {src, dst, w} with the image
  // edge (meet(src,w), w) missing.
  std::vector<Subgroup> witness;
  std::string describe() const;
};

// Checks the axioms on the candidate edge set (reflexive edges implicit) and
// returns either the system or the first violation in a fixed scan order.
std::variant<TransferSystem, Violation> validate(const CyclicOrder& ord,
                                                 const std::vector<Edge>& candidate);

// Smallest transfer system containing the seeds.  Seeds must respect leq.
TransferSystem generate(const CyclicOrder& ord, const std::vector<Edge>& seeds);

// Saturated: (x,z) in T and x <= y <= z imply (x,y) and (y,z) in T.
bool is_saturated(const TransferSystem& T);

// All transfer systems on the box, duplicate-free, sorted by edge mask.
// Boxes with at most 12 comparable non-reflexive pairs are filtered
// exhaustively; larger boxes (up to 12 subgroups) are generated recursively
// by closing one added cover at a time.
std::vector<TransferSystem> enumerate_all(const CyclicOrder& ord,
                                          bool saturated_only);

// Restriction to the sub-box [n_sub] x [m_sub].
TransferSystem restrict_box(const TransferSystem& T, int n_sub, int m_sub);

// Rebuilds a system from a mask produced by edge_mask() (library internal;
// the mask must describe a closed relation).
TransferSystem system_from_edge_mask(const CyclicOrder& ord, const EdgeMask& mask);

}  // namespace trsys
