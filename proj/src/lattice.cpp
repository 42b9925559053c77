#include "trsys/lattice.hpp"

#include <algorithm>
#include <limits>

namespace trsys {

bool is_prime(int64_t x) {
  if (x < 2) return false;
  for (int64_t d = 2; d * d <= x; ++d)
    if (x % d == 0) return false;
  return true;
}

int64_t ipow(int64_t base, int exp) {
  if (base < 1 || exp < 0)
    fail(ErrorKind::Domain, "ipow: need base >= 1 and exp >= 0");
  int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > std::numeric_limits<int64_t>::max() / base)
      fail(ErrorKind::Domain, "ipow: result exceeds exact integer range");
    r *= base;
  }
  return r;
}

CyclicOrder::CyclicOrder(int64_t p_, int n_, int64_t q_, int m_)
    : p(p_), n(n_), q(q_), m(m_), N(1) {
  if (!is_prime(p)) fail(ErrorKind::Domain, "order: p must be prime");
  if (!is_prime(q)) fail(ErrorKind::Domain, "order: q must be prime");
  if (p == q) fail(ErrorKind::Domain, "order: p and q must be distinct");
  if (n < 0 || m < 0) fail(ErrorKind::Domain, "order: exponents must be >= 0");
  const int64_t pn = ipow(p, n);
  const int64_t qm = ipow(q, m);
  if (pn > std::numeric_limits<int64_t>::max() / qm)
    fail(ErrorKind::Domain, "order: p^n q^m exceeds exact integer range");
  N = pn * qm;
}

int64_t CyclicOrder::power(int a, int b) const {
  if (a < 0 || a > n || b < 0 || b > m)
    fail(ErrorKind::Domain, "power: exponents outside the box");
  return ipow(p, a) * ipow(q, b);
}

bool in_box(const CyclicOrder& ord, Subgroup s) {
  return s.a >= 0 && s.a <= ord.n && s.b >= 0 && s.b <= ord.m;
}

std::vector<Subgroup> all_subgroups(const CyclicOrder& ord) {
  std::vector<Subgroup> out;
  out.reserve(static_cast<size_t>(subgroup_count(ord)));
  for (int a = 0; a <= ord.n; ++a)
    for (int b = 0; b <= ord.m; ++b) out.push_back(Subgroup{a, b});
  return out;
}

int subgroup_count(const CyclicOrder& ord) {
  return (ord.n + 1) * (ord.m + 1);
}

int subgroup_index(const CyclicOrder& ord, Subgroup s) {
  if (!in_box(ord, s)) fail(ErrorKind::Domain, "subgroup_index: outside box");
  return s.a * (ord.m + 1) + s.b;
}

bool leq(Subgroup x, Subgroup y) { return x.a <= y.a && x.b <= y.b; }

Subgroup meet(Subgroup x, Subgroup y) {
  return Subgroup{std::min(x.a, y.a), std::min(x.b, y.b)};
}

int64_t divisor(const CyclicOrder& ord, Subgroup s) {
  if (!in_box(ord, s)) fail(ErrorKind::Domain, "divisor: outside box");
  return ord.power(s.a, s.b);
}

std::string divisor_label(const CyclicOrder& ord, Subgroup s) {
  if (!in_box(ord, s)) fail(ErrorKind::Domain, "divisor_label: outside box");
  std::string out;
  auto part = [&out](int64_t prime, int e) {
    if (e == 0) return;
    if (!out.empty()) out += "·";
    out += std::to_string(prime);
    if (e > 1) out += "^" + std::to_string(e);
  };
  part(ord.p, s.a);
  part(ord.q, s.b);
  if (out.empty()) out = "1";
  return out;
}

}  // namespace trsys
