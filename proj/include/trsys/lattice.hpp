#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "trsys/errors.hpp"

namespace trsys {

bool is_prime(int64_t x);

// base^exp in exact integer arithmetic; fails on overflow.
int64_t ipow(int64_t base, int exp);

// The cyclic group C_{p^n q^m}, kept in factored form; N = p^n q^m.
struct CyclicOrder {
  int64_t p;
  int n;
  int64_t q;
  int m;
  int64_t N;

  CyclicOrder(int64_t p_, int n_, int64_t q_, int m_);

  // p^a q^b for 0 <= a <= n, 0 <= b <= m.
  int64_t power(int a, int b) const;

  bool operator==(const CyclicOrder&) const = default;
};

// Subgroup of C_{p^n q^m}, identified with its exponent vector: (a, b) is
// the subgroup of order p^a q^b.  Comparison is lexicographic.
struct Subgroup {
  int a;
  int b;
  auto operator<=>(const Subgroup&) const = default;
};

bool in_box(const CyclicOrder& ord, Subgroup s);

// All (n+1)(m+1) subgroups, lexicographic (a ascending, then b).
std::vector<Subgroup> all_subgroups(const CyclicOrder& ord);

int subgroup_count(const CyclicOrder& ord);

// Position of s in all_subgroups(ord).
int subgroup_index(const CyclicOrder& ord, Subgroup s);

// Divisibility order on subgroups: x <= y iff x.a <= y.a and x.b <= y.b.
bool leq(Subgroup x, Subgroup y);

// Intersection: componentwise minimum.
Subgroup meet(Subgroup x, Subgroup y);

// |s| = p^a q^b.
int64_t divisor(const CyclicOrder& ord, Subgroup s);

// Factored form of divisor(s): "1", "5", "5^2·7", ...
std::string divisor_label(const CyclicOrder& ord, Subgroup s);

}  // namespace trsys
