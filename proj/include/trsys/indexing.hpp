#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "trsys/transfer.hpp"

namespace trsys {

// Subset of Z/modulus with dense membership and no further structure.
struct ResidueSet {
  int64_t modulus = 1;
  std::vector<bool> members;  // size == modulus

  static ResidueSet empty(int64_t modulus);
  static ResidueSet of(int64_t modulus, std::initializer_list<int64_t> xs);
  static ResidueSet of(int64_t modulus, const std::vector<int64_t>& xs);

  bool contains(int64_t x) const;  // x taken mod modulus
  void insert(int64_t x);          // x taken mod modulus
  void insert_pm(int64_t x);       // x and -x
  size_t count() const;
  std::vector<int64_t> elements() const;  // ascending

  bool operator==(const ResidueSet&) const = default;
};

// Subset of Z/modulus containing 0 and closed under negation; construction
// validates both properties.
class IndexingSet {
 public:
  IndexingSet(int64_t modulus, const std::vector<int64_t>& members);
  explicit IndexingSet(ResidueSet raw);

  static IndexingSet zero(int64_t modulus);  // {0}
  static IndexingSet full(int64_t modulus);  // all of Z/modulus

  int64_t modulus() const { return set_.modulus; }
  bool contains(int64_t x) const { return set_.contains(x); }
  size_t count() const { return set_.count(); }
  std::vector<int64_t> elements() const { return set_.elements(); }
  const ResidueSet& raw() const { return set_; }

  bool operator==(const IndexingSet&) const = default;

 private:
  ResidueSet set_;
};

// Reduction mod e, where e divides the modulus.
ResidueSet reduce(const ResidueSet& S, int64_t e);
ResidueSet reduce(const IndexingSet& I, int64_t e);

// (S + d) mod modulus is a subset of S; translation is a bijection, so the
// subset test is equivalent to equality.
bool is_invariant(const ResidueSet& S, int64_t d);

// The transfer system realized by I on C_N: edge (x,y) present iff
// reduce(I, divisor(y)) is invariant under translation by divisor(x).
TransferSystem realized_system(const IndexingSet& I, const CyclicOrder& ord);

// For every 0 <= i < n, the reduction of I mod p^{i+1} q^m contains a
// non-zero multiple of p^i q^m.
bool star_holds(const IndexingSet& I, const CyclicOrder& ord);

// Pretty form of the periodic universe indexed by I.
std::string describe_universe(const IndexingSet& I);

}  // namespace trsys
