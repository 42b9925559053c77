#include "trsys/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <sstream>

#include "trsys/errors.hpp"

namespace trsys {

namespace {

// Explicit caps win; otherwise the environment variable, otherwise 20.
int64_t effective_cap(int cap_bits) {
  if (cap_bits >= 0) return cap_bits;
  if (const char* env = std::getenv("TRSYS_ORACLE_CAP")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 62) return v;
    fail(ErrorKind::Domain, "TRSYS_ORACLE_CAP must be an integer in [1, 62]");
  }
  return 20;
}

IndexingSet set_from_bits(int64_t N, uint64_t bits, int pairs) {
  std::vector<bool> members(static_cast<size_t>(N), false);
  members[0] = true;
  for (int k = 1; k <= pairs; ++k) {
    if (bits >> (k - 1) & 1) {
      members[static_cast<size_t>(k)] = true;
      members[static_cast<size_t>(N - k)] = true;
    }
  }
  ResidueSet rs;
  rs.modulus = N;
  rs.members = std::move(members);
  return IndexingSet(rs);
}

}  // namespace

int pair_count(int64_t N) {
  if (N < 1) fail(ErrorKind::Domain, "modulus must be positive");
  // For even N the orbit of N/2 under negation is the singleton {N/2}; it
  // still contributes one independent bit to the sweep.
  return static_cast<int>(N / 2);
}

void for_each_indexing_set(int64_t N, int cap_bits,
                           const std::function<void(const IndexingSet&)>& fn) {
  const int pairs = pair_count(N);
  const int64_t cap = effective_cap(cap_bits);
  if (pairs > cap) {
    std::ostringstream os;
    os << "sweep over Z/" << N << " needs 2^" << pairs
       << " sets; cap is 2^" << cap
       << " (raise --cap or TRSYS_ORACLE_CAP to override)";
    fail(ErrorKind::Resource, os.str());
  }
  const uint64_t total = uint64_t(1) << pairs;
  for (uint64_t bits = 0; bits < total; ++bits) {
    fn(set_from_bits(N, bits, pairs));
  }
}

std::vector<IndexingSet> enumerate_indexing_sets(int64_t N, int cap_bits) {
  std::vector<IndexingSet> out;
  for_each_indexing_set(N, cap_bits,
                        [&](const IndexingSet& I) { out.push_back(I); });
  return out;
}

IndexingSet indexing_set_from_orbit_mask(int64_t N,
                                         const std::vector<uint64_t>& mask) {
  const int pairs = pair_count(N);
  std::vector<bool> members(static_cast<size_t>(N), false);
  members[0] = true;
  for (int k = 1; k <= pairs; ++k) {
    const size_t word = static_cast<size_t>(k - 1) / 64;
    const int bit = (k - 1) % 64;
    if (word < mask.size() && (mask[word] >> bit & 1)) {
      members[static_cast<size_t>(k)] = true;
      members[static_cast<size_t>(N - k)] = true;
    }
  }
  ResidueSet rs;
  rs.modulus = N;
  rs.members = std::move(members);
  return IndexingSet(rs);
}

std::vector<TransferSystem> Census::keys() const {
  std::vector<TransferSystem> out;
  out.reserve(counts.size());
  for (const auto& [mask, count] : counts) {
    (void)count;
    out.push_back(system_from_edge_mask(order, mask));
  }
  return out;
}

bool Census::has_key(const TransferSystem& T) const {
  return counts.find(T.edge_mask()) != counts.end();
}

Census realizability_census(const CyclicOrder& ord, int cap_bits) {
  Census census(ord);
  for_each_indexing_set(ord.N, cap_bits, [&](const IndexingSet& I) {
    ++census.sets_swept;
    ++census.counts[realized_system(I, ord).edge_mask()];
  });
  return census;
}

Census realizability_census_sampled(const CyclicOrder& ord, uint64_t samples,
                                    uint64_t seed) {
  Census census(ord);
  census.exhaustive = false;
  const int pairs = pair_count(ord.N);
  const size_t words = (static_cast<size_t>(pairs) + 63) / 64;
  std::mt19937_64 rng(seed);
  std::vector<uint64_t> mask(words, 0);
  for (uint64_t s = 0; s < samples; ++s) {
    for (size_t w = 0; w < words; ++w) mask[w] = rng();
    if (pairs % 64 != 0 && !mask.empty()) {
      mask.back() &= (uint64_t(1) << (pairs % 64)) - 1;
    }
    const IndexingSet I = indexing_set_from_orbit_mask(ord.N, mask);
    ++census.sets_swept;
    ++census.counts[realized_system(I, ord).edge_mask()];
  }
  return census;
}

TheoremReport verify_theorem_at(const CyclicOrder& ord, int cap_bits,
                                uint64_t samples, uint64_t seed) {
  TheoremReport report;
  const int pairs = pair_count(ord.N);
  const int64_t cap = effective_cap(cap_bits);

  Census census = pairs <= cap
                      ? realizability_census(ord, cap_bits)
                      : realizability_census_sampled(ord, samples, seed);
  report.exhaustive = census.exhaustive;
  report.sets_swept = census.sets_swept;

  const std::vector<TransferSystem> saturated = enumerate_all(ord, true);
  report.saturated_total = saturated.size();

  for (const TransferSystem& T : saturated) {
    if (census.has_key(T)) {
      ++report.realizable_saturated;
    } else if (census.exhaustive) {
      report.missing_saturated.push_back(T);
    }
    // Cross-check the constructive side whenever it is available.
    if (ord.p >= 5 && ord.q >= 5) {
      const IndexingSet I = realize(T);
      if (!(realized_system(I, ord) == T)) {
        report.construction_agrees = false;
      }
    }
  }
  for (const auto& [mask, count] : census.counts) {
    (void)count;
    const TransferSystem T = system_from_edge_mask(ord, mask);
    if (!is_saturated(T)) report.unsaturated_keys.push_back(T);
  }

  // A sampled sweep can only certify the subset direction (every key is
  // saturated); coverage of all saturated systems needs the full sweep.
  const bool all_covered =
      !census.exhaustive || report.missing_saturated.empty();
  report.pass = all_covered && report.unsaturated_keys.empty() &&
                report.construction_agrees;

  std::ostringstream os;
  os << (census.exhaustive ? "exhaustive" : "sampled") << " sweep of "
     << report.sets_swept << " indexing sets of Z/" << ord.N << ": "
     << census.counts.size() << " realized systems, "
     << report.saturated_total << " saturated systems, "
     << report.realizable_saturated << " saturated realized";
  if (!report.unsaturated_keys.empty()) {
    os << ", " << report.unsaturated_keys.size() << " UNSATURATED KEYS";
  }
  if (!report.construction_agrees) os << ", CONSTRUCTION MISMATCH";
  report.summary = os.str();
  return report;
}

}  // namespace trsys
