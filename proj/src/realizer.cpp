#include "trsys/realizer.hpp"

#include <algorithm>
#include <numeric>

namespace trsys {

namespace {

int64_t canon(int64_t x, int64_t modulus) {
  x %= modulus;
  if (x < 0) x += modulus;
  return x;
}

// a = quot * b + rem with 0 <= rem < b.
void euclid_split(int64_t a, int64_t b, int64_t& quot, int64_t& rem) {
  rem = canon(a, b);
  quot = (a - rem) / b;
}

void check_prime_at_least_5(int64_t r) {
  if (!is_prime(r))
    fail(ErrorKind::Domain, "chain extension: r must be prime");
  if (r < 5)
    fail(ErrorKind::UnsupportedPrime, "chain extension: r must be >= 5");
}

}  // namespace

BezoutChoice choose_bezout(int64_t p, int64_t q) {
  if (p < 1 || q < 1 || std::gcd(p, q) != 1)
    fail(ErrorKind::Domain, "choose_bezout: p and q must be coprime");
  // u = q^{-1} mod p via the extended Euclidean algorithm, so 0 <= u < p
  // and v = (1 - u q)/p lies in (-q, 1].
  int64_t r0 = p, r1 = canon(q, p);
  int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    const int64_t k = r0 / r1;
    const int64_t r2 = r0 - k * r1;
    const int64_t t2 = t0 - k * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  const int64_t u = canon(t0, p);
  BezoutChoice bez{u, (1 - u * q) / p};
  if (bez.u * q + bez.v * p != 1)
    fail(ErrorKind::Internal, "choose_bezout: identity check failed");
  return bez;
}

BezoutChoice bezout_override(int64_t p, int64_t q, int64_t u, int64_t v) {
  if (u * q + v * p != 1)
    fail(ErrorKind::Domain, "bezout_override: u*q + v*p must equal 1");
  return BezoutChoice{u, v};
}

const char* square_case_name(SquareCase c) {
  switch (c) {
    case SquareCase::I: return "I";
    case SquareCase::II: return "II";
    case SquareCase::III: return "III";
    case SquareCase::IVa: return "IVa";
    case SquareCase::IVb: return "IVb";
    case SquareCase::IVc: return "IVc";
    case SquareCase::IVd: return "IVd";
  }
  return "?";
}

int64_t StepContext::base() const { return ipow(p, n - 1) * ipow(q, m); }
int64_t StepContext::j_modulus() const { return ipow(p, n) * ipow(q, m); }
int64_t StepContext::i_modulus() const { return ipow(p, n - 1) * ipow(q, m + 1); }
int64_t StepContext::k_modulus() const { return ipow(p, n) * ipow(q, m + 1); }

void audit_offsets(const OffsetData& off, const IndexingSet& I,
                   const IndexingSet& J) {
  const StepContext& ctx = off.ctx;
  if (ctx.n < 1) fail(ErrorKind::Precondition, "offsets: step needs n >= 1");
  if (off.bez.u * ctx.q + off.bez.v * ctx.p != 1)
    fail(ErrorKind::Precondition, "offsets: Bezout identity does not hold");
  const int64_t base = ctx.base();
  if (I.modulus() != ctx.i_modulus() || J.modulus() != ctx.j_modulus())
    fail(ErrorKind::Precondition, "offsets: set moduli do not match the window");
  auto check_side = [&](const std::map<int64_t, OffsetDatum>& data,
                        const IndexingSet& keys, const IndexingSet& anchors,
                        int64_t mult, int64_t div, const char* side) {
    for (int64_t x : keys.elements())
      if (!data.count(x))
        fail(ErrorKind::Precondition,
             std::string("offsets: missing datum on side ") + side);
    for (const auto& [x, d] : data) {
      if (!keys.contains(x) || !anchors.contains(d.anchor))
        fail(ErrorKind::Precondition,
             std::string("offsets: anchor not a member on side ") + side);
      if (x != canon(d.anchor + d.shift * base, keys.modulus()) ||
          (x - d.anchor) % base != 0 )
        fail(ErrorKind::Precondition,
             std::string("offsets: shift equation fails on side ") + side);
      // The shift equation must hold exactly over the integers, not just in
      // the ambient modulus, for the step constructions to reduce correctly.
      if (d.anchor + d.shift * base != x)
        fail(ErrorKind::Precondition,
             std::string("offsets: shift is not the exact quotient on side ") + side);
      if (d.rem < 0 || d.rem >= div ||
          mult * d.shift != d.quot * div + d.rem)
        fail(ErrorKind::Precondition,
             std::string("offsets: Euclidean split fails on side ") + side);
    }
    if (data.count(0) && data.at(0).rem == 0)
      fail(ErrorKind::Precondition,
           std::string("offsets: remainder at 0 must be non-zero on side ") + side);
  };
  check_side(off.for_i, I, J, -off.bez.u, ctx.p, "I");
  check_side(off.for_j, J, I, -off.bez.v, ctx.q, "J");
  if (off.alpha && !(0 < *off.alpha && *off.alpha < ctx.p &&
                     J.contains(*off.alpha * base)))
    fail(ErrorKind::Precondition, "offsets: alpha multiple not in J");
  if (off.beta && !(0 < *off.beta && *off.beta < ctx.q &&
                    I.contains(*off.beta * base)))
    fail(ErrorKind::Precondition, "offsets: beta multiple not in I");
}

IndexingSet base_case_extend(const IndexingSet& J, bool admit_top, int64_t r) {
  check_prime_at_least_5(r);
  // The modulus of J must be a power of r.
  int64_t rt = J.modulus();
  while (rt > 1) {
    if (rt % r != 0)
      fail(ErrorKind::Domain, "base_case_extend: modulus of J is not a power of r");
    rt /= r;
  }
  const int64_t low = J.modulus();
  ResidueSet out = ResidueSet::empty(low * r);
  for (int64_t j : J.elements()) {
    if (admit_top) {
      for (int64_t a = 0; a < r; ++a) out.insert_pm(j + a * low);
    } else {
      out.insert_pm(j);
      out.insert_pm(j + low);
    }
  }
  return IndexingSet(std::move(out));
}

IndexingSet chain_realize(const TransferSystem& chain, int64_t r) {
  check_prime_at_least_5(r);
  const CyclicOrder& ord = chain.order();
  if (ord.n > 0 && ord.m > 0)
    fail(ErrorKind::Domain, "chain_realize: the box must be a one-prime chain");
  if (!is_saturated(chain))
    fail(ErrorKind::Domain, "chain_realize: the chain system must be saturated");
  const bool along_p = ord.m == 0;
  const int len = along_p ? ord.n : ord.m;
  if (len > 0 && r != (along_p ? ord.p : ord.q))
    fail(ErrorKind::Domain, "chain_realize: r must be the prime of the chain");
  IndexingSet K = IndexingSet::zero(1);
  for (int i = 0; i < len; ++i) {
    const Subgroup lo = along_p ? Subgroup{i, 0} : Subgroup{0, i};
    const Subgroup hi = along_p ? Subgroup{i + 1, 0} : Subgroup{0, i + 1};
    K = base_case_extend(K, chain.has(lo, hi), r);
  }
  return K;
}

OffsetData compute_offsets(const IndexingSet& I, const IndexingSet& J,
                           const StepContext& ctx, const BezoutChoice& bez,
                           OffsetPolicy policy) {
  if (ctx.n < 1) fail(ErrorKind::Precondition, "compute_offsets: step needs n >= 1");
  const int64_t base = ctx.base();
  if (I.modulus() != ctx.i_modulus() || J.modulus() != ctx.j_modulus())
    fail(ErrorKind::Precondition,
         "compute_offsets: set moduli do not match the window");
  if (!(reduce(I, base) == reduce(J, base)))
    fail(ErrorKind::Precondition,
         "compute_offsets: I and J disagree mod p^{n-1} q^m");

  OffsetData off;
  off.ctx = ctx;
  off.bez = bez;

  for (int64_t c = 1; c < ctx.p; ++c)
    if (J.contains(c * base)) {
      off.alpha = c;
      break;
    }
  for (int64_t c = 1; c < ctx.q; ++c)
    if (I.contains(c * base)) {
      off.beta = c;
      break;
    }

  // Smallest member with each residue mod base, per side.
  auto smallest_by_residue = [&](const IndexingSet& S) {
    std::vector<int64_t> table(static_cast<size_t>(base), -1);
    for (int64_t x : S.elements()) {
      const size_t r = static_cast<size_t>(x % base);
      if (table[r] < 0) table[r] = x;
    }
    return table;
  };
  const auto small_j = smallest_by_residue(J);
  const auto small_i = smallest_by_residue(I);

  const bool paper_anchor =
      policy == OffsetPolicy::PaperC35 && base == 1 && I.contains(1);

  for (int64_t i : I.elements()) {
    OffsetDatum d;
    d.anchor = small_j[static_cast<size_t>(i % base)];
    d.shift = (i - d.anchor) / base;
    euclid_split(-bez.u * d.shift, ctx.p, d.quot, d.rem);
    off.for_i[i] = d;
  }
  for (int64_t j : J.elements()) {
    OffsetDatum d;
    d.anchor = paper_anchor ? 1 : small_i[static_cast<size_t>(j % base)];
    d.shift = (j - d.anchor) / base;
    euclid_split(-bez.v * d.shift, ctx.q, d.quot, d.rem);
    off.for_j[j] = d;
  }

  // A zero remainder at 0 is repaired by re-anchoring 0 at a non-zero
  // multiple of the base on the other side.
  if (off.for_i.at(0).rem == 0) {
    if (!off.alpha)
      fail(ErrorKind::StarViolation,
           "compute_offsets: J holds no non-zero multiple of p^{n-1} q^m");
    OffsetDatum d;
    d.anchor = *off.alpha * base;
    d.shift = -*off.alpha;
    euclid_split(-bez.u * d.shift, ctx.p, d.quot, d.rem);
    off.for_i[0] = d;
  }
  if (off.for_j.at(0).rem == 0) {
    if (!off.beta)
      fail(ErrorKind::StarViolation,
           "compute_offsets: I holds no non-zero multiple of p^{n-1} q^m");
    OffsetDatum d;
    d.anchor = *off.beta * base;
    d.shift = -*off.beta;
    euclid_split(-bez.v * d.shift, ctx.q, d.quot, d.rem);
    off.for_j[0] = d;
  }

  audit_offsets(off, I, J);
  return off;
}

SquareCase classify_square(const TransferSystem& T, int n, int m) {
  const CyclicOrder& ord = T.order();
  if (n < 1 || n > ord.n || m < 0 || m + 1 > ord.m)
    fail(ErrorKind::Domain, "classify_square: square outside the box");
  if (!is_saturated(T))
    fail(ErrorKind::Domain, "classify_square: system must be saturated");
  const bool right = T.has({n, m}, {n, m + 1});
  const bool top = T.has({n - 1, m + 1}, {n, m + 1});
  const bool left = T.has({n - 1, m}, {n - 1, m + 1});
  const bool bottom = T.has({n - 1, m}, {n, m});
  if (right && top) return SquareCase::III;
  if (right) return SquareCase::I;
  if (top) return SquareCase::II;
  if (left && bottom) return SquareCase::IVa;
  if (left) return SquareCase::IVc;
  if (bottom) return SquareCase::IVd;
  return SquareCase::IVb;
}

IndexingSet induction_step(const IndexingSet& J, const IndexingSet& I,
                           SquareCase c, const OffsetData& off,
                           const BezoutChoice& bez) {
  const StepContext& ctx = off.ctx;
  if (!(bez == off.bez))
    fail(ErrorKind::Precondition,
         "induction_step: Bezout witness disagrees with the offsets");
  audit_offsets(off, I, J);

  const int64_t base = ctx.base();     // p^{n-1} q^m
  const int64_t jm = ctx.j_modulus();  // p^n q^m
  const int64_t im = ctx.i_modulus();  // p^{n-1} q^{m+1}
  const int64_t km = ctx.k_modulus();  // p^n q^{m+1}
  const int64_t p = ctx.p, q = ctx.q;

  const bool i_invariant = is_invariant(I.raw(), base);
  const bool j_invariant = is_invariant(J.raw(), base);
  auto need = [&](bool ok, const char* what) {
    if (!ok)
      fail(ErrorKind::Precondition,
           std::string("induction_step: case ") + square_case_name(c) + ": " + what);
  };

  ResidueSet out = ResidueSet::empty(km);
  auto r_of = [&](int64_t i) { return off.for_i.at(i).rem; };
  auto s_of = [&](int64_t j) { return off.for_j.at(j).rem; };

  switch (c) {
    case SquareCase::I:
    case SquareCase::III: {
      need(i_invariant, "I must be invariant under the base translation");
      for (int64_t i : I.elements())
        for (int64_t k = 0; k < q; ++k) out.insert_pm(r_of(i) * im + i + k * jm);
      for (int64_t j : J.elements())
        for (int64_t k = 0; k < q; ++k) out.insert_pm(j + k * jm);
      break;
    }
    case SquareCase::II: {
      need(j_invariant, "J must be invariant under the base translation");
      for (int64_t i : I.elements())
        for (int64_t k = 0; k < p; ++k) out.insert_pm(i + k * im);
      for (int64_t j : J.elements())
        for (int64_t k = 0; k < p; ++k) out.insert_pm(s_of(j) * jm + j + k * im);
      break;
    }
    case SquareCase::IVa: {
      need(i_invariant && j_invariant,
           "both sets must be invariant under the base translation");
      const ResidueSet L = reduce(I, base);
      // Both sides must be the full translation orbit of the common base.
      ResidueSet orbit_i = ResidueSet::empty(im);
      ResidueSet orbit_j = ResidueSet::empty(jm);
      for (int64_t l : L.elements()) {
        for (int64_t k = 0; k < q; ++k) orbit_i.insert(l + k * base);
        for (int64_t k = 0; k < p; ++k) orbit_j.insert(l + k * base);
      }
      need(orbit_i == I.raw() && orbit_j == J.raw(),
           "sets must equal the translation orbit of the common base");
      const int64_t bound = 2 * std::max(p, q);
      for (int64_t l : L.elements())
        for (int64_t k = 0; k < bound; ++k) out.insert_pm(l + k * base);
      break;
    }
    case SquareCase::IVb: {
      for (int64_t i : I.elements()) out.insert_pm(r_of(i) * im + i);
      for (int64_t j : J.elements()) out.insert_pm(s_of(j) * jm + j);
      // The two families miss 0 because the remainders at 0 are non-zero;
      // any extension of I and J works here, so 0 is simply added back.
      out.insert(0);
      break;
    }
    case SquareCase::IVc: {
      need(i_invariant, "I must be invariant under the base translation");
      need(off.alpha.has_value(), "alpha multiple required");
      for (int64_t i : I.elements()) out.insert_pm(r_of(i) * im + i);
      for (int64_t j : J.elements()) out.insert_pm(j);
      out.members[static_cast<size_t>(canon(jm, km))] = false;
      out.members[static_cast<size_t>(canon(-jm, km))] = false;
      out.insert_pm(jm + *off.alpha * bez.u * im);
      out.insert_pm(2 * jm);
      break;
    }
    case SquareCase::IVd: {
      need(j_invariant, "J must be invariant under the base translation");
      need(off.beta.has_value(), "beta multiple required");
      for (int64_t i : I.elements()) out.insert_pm(i);
      for (int64_t j : J.elements()) out.insert_pm(s_of(j) * jm + j);
      out.members[static_cast<size_t>(canon(im, km))] = false;
      out.members[static_cast<size_t>(canon(-im, km))] = false;
      out.insert_pm(im + *off.beta * bez.v * jm);
      out.insert_pm(2 * im);
      break;
    }
  }
  return IndexingSet(std::move(out));
}

namespace {

// Reduction coherence and the non-zero-multiple condition, re-checked after
// every grid cell.
void audit_cell(const IndexingSet& K, int a, int b, const CyclicOrder& ord,
                const std::vector<std::vector<IndexingSet>>& grid) {
  const CyclicOrder local(ord.p, a, ord.q, b);
  if (K.modulus() != local.N)
    fail(ErrorKind::Internal, "realize: cell modulus mismatch");
  if (a > 0 && !(reduce(K, local.power(a - 1, b)) ==
                 grid[static_cast<size_t>(a - 1)][static_cast<size_t>(b)].raw()))
    fail(ErrorKind::Internal, "realize: grid coherence fails below");
  if (b > 0 && !(reduce(K, local.power(a, b - 1)) ==
                 grid[static_cast<size_t>(a)][static_cast<size_t>(b - 1)].raw()))
    fail(ErrorKind::Internal, "realize: grid coherence fails on the left");
  if (!star_holds(K, local))
    fail(ErrorKind::Internal, "realize: non-zero-multiple condition fails");
}

}  // namespace

RealizeResult realize_with_trace(const TransferSystem& T,
                                 const RealizeOptions& opts) {
  const CyclicOrder& ord = T.order();
  if (ord.p < 5 || ord.q < 5)
    fail(ErrorKind::UnsupportedPrime, "realize: needs p >= 5 and q >= 5");
  if (!is_saturated(T))
    fail(ErrorKind::Domain, "realize: the system must be saturated");
  const BezoutChoice bez = opts.bezout ? *opts.bezout
                                       : choose_bezout(ord.p, ord.q);
  if (bez.u * ord.q + bez.v * ord.p != 1)
    fail(ErrorKind::Domain, "realize: invalid Bezout witness");

  std::vector<std::vector<IndexingSet>> grid(
      static_cast<size_t>(ord.n + 1),
      std::vector<IndexingSet>(static_cast<size_t>(ord.m + 1),
                               IndexingSet::zero(1)));
  std::vector<GridCellTrace> trace;
  auto record = [&](int a, int b, const char* method,
                    std::optional<SquareCase> sq) {
    const IndexingSet& K = grid[static_cast<size_t>(a)][static_cast<size_t>(b)];
    audit_cell(K, a, b, ord, grid);
    trace.push_back(GridCellTrace{a, b, method, sq,
                                  static_cast<int64_t>(K.count())});
  };

  record(0, 0, "trivial", std::nullopt);
  // First column: one-prime chain along p.
  for (int a = 1; a <= ord.n; ++a) {
    grid[a][0] = base_case_extend(grid[a - 1][0],
                                  T.has({a - 1, 0}, {a, 0}), ord.p);
    record(a, 0, "chain-extend", std::nullopt);
  }
  // Then column by column along q.
  for (int b = 0; b < ord.m; ++b) {
    grid[0][b + 1] = base_case_extend(grid[0][b],
                                      T.has({0, b}, {0, b + 1}), ord.q);
    record(0, b + 1, "chain-extend", std::nullopt);
    for (int a = 1; a <= ord.n; ++a) {
      const StepContext ctx{ord.p, ord.q, a, b};
      const SquareCase sq = classify_square(T, a, b);
      const IndexingSet& J = grid[a][b];
      const IndexingSet& I = grid[a - 1][b + 1];
      const OffsetData off = compute_offsets(I, J, ctx, bez, opts.policy);
      grid[a][b + 1] = induction_step(J, I, sq, off, bez);
      record(a, b + 1, "square", sq);
    }
  }
  return RealizeResult{grid[static_cast<size_t>(ord.n)][static_cast<size_t>(ord.m)],
                       std::move(trace)};
}

IndexingSet realize(const TransferSystem& T, const RealizeOptions& opts) {
  return realize_with_trace(T, opts).set;
}

}  // namespace trsys
