#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "trsys/realizer.hpp"

namespace trsys {

// Number of negation orbits {i, N-i} in Z/N apart from {0}, i.e. floor(N/2);
// for even N the element N/2 is its own negative and forms a singleton
// orbit.  The indexing sets of Z/N are exactly the 2^pair_count(N) unions of
// orbits with {0}.
int pair_count(int64_t N);

// Visits every indexing set of Z/N in ascending orbit-mask order.  The mask
// bit k-1 selects the orbit {k, N-k}.  Fails when pair_count(N) exceeds the
// sweep cap: cap_bits when non-negative, otherwise the TRSYS_ORACLE_CAP
// environment variable, otherwise 20.
void for_each_indexing_set(int64_t N, int cap_bits,
                           const std::function<void(const IndexingSet&)>& fn);

std::vector<IndexingSet> enumerate_indexing_sets(int64_t N, int cap_bits = -1);

// Indexing set from an orbit mask (shared with the sampling path).
IndexingSet indexing_set_from_orbit_mask(int64_t N,
                                         const std::vector<uint64_t>& mask);

struct Census {
  CyclicOrder order;
  bool exhaustive = true;
  uint64_t sets_swept = 0;
  // Realized system (by edge mask) -> number of witnesses seen.
  std::map<EdgeMask, uint64_t, bool (*)(const EdgeMask&, const EdgeMask&)> counts{
      mask_less};

  Census(const CyclicOrder& ord) : order(ord) {}
  std::vector<TransferSystem> keys() const;  // canonical order
  bool has_key(const TransferSystem& T) const;
};

// Sweeps every indexing set of Z/N and tallies realized systems.
Census realizability_census(const CyclicOrder& ord, int cap_bits = -1);

// Tallies `samples` orbit masks drawn uniformly with a fixed seed; the
// result is marked non-exhaustive.
Census realizability_census_sampled(const CyclicOrder& ord, uint64_t samples,
                                    uint64_t seed);

struct TheoremReport {
  bool pass = false;
  bool exhaustive = true;
  uint64_t sets_swept = 0;
  uint64_t saturated_total = 0;
  uint64_t realizable_saturated = 0;
  std::vector<TransferSystem> missing_saturated;   // saturated but not a key
  std::vector<TransferSystem> unsaturated_keys;    // key but not saturated
  bool construction_agrees = true;  // realize() lands on each system again
  std::string summary;
};

// Compares the census key set with the saturated systems of the box and
// cross-checks the constructive realization.  Requires p, q >= 5.  With an
// insufficient cap the check falls back to sampled, subset-only mode.
TheoremReport verify_theorem_at(const CyclicOrder& ord, int cap_bits = -1,
                                uint64_t samples = 1 << 14, uint64_t seed = 1);

}  // namespace trsys
