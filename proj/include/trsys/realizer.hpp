#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trsys/indexing.hpp"

namespace trsys {

// Witness of u*q + v*p = 1.
struct BezoutChoice {
  int64_t u = 0;
  int64_t v = 0;
  bool operator==(const BezoutChoice&) const = default;
};

// Canonical witness: u is the inverse of q mod p in (0, p), so v lies in
// (-q, 0); both satisfy |u| < p and |v| < q.
BezoutChoice choose_bezout(int64_t p, int64_t q);

// Caller-supplied witness, checked against p and q.
BezoutChoice bezout_override(int64_t p, int64_t q, int64_t u, int64_t v);

// Classification of the top-right square of the box by the admissibility of
// its four edges (right, top, left, bottom).
enum class SquareCase { I, II, III, IVa, IVb, IVc, IVd };
const char* square_case_name(SquareCase c);

// How the anchor elements below are selected.  Canonical picks the smallest
// anchor with the required residue; PaperC35 reproduces a fixed published
// choice (anchor 1 on the I side for every j) whenever the step base is 1
// and 1 lies in I, and falls back to Canonical otherwise.
enum class OffsetPolicy { Canonical, PaperC35 };

// Window of the induction step: J lives mod p^n q^m, I mod p^{n-1} q^{m+1},
// and the result mod p^n q^{m+1}.  Requires n >= 1.
struct StepContext {
  int64_t p = 5;
  int64_t q = 7;
  int n = 1;
  int m = 0;

  int64_t base() const;       // p^{n-1} q^m
  int64_t j_modulus() const;  // p^n q^m
  int64_t i_modulus() const;  // p^{n-1} q^{m+1}
  int64_t k_modulus() const;  // p^n q^{m+1}

  bool operator==(const StepContext&) const = default;
};

// For an element x of one side, an anchor with the same residue mod base()
// on the other side, the exact shift solving x = anchor + shift * base(),
// and the Euclidean split of -u*shift (I side, divisor p) or -v*shift
// (J side, divisor q) as quot * divisor + rem with 0 <= rem < divisor.
struct OffsetDatum {
  int64_t anchor = 0;
  int64_t shift = 0;
  int64_t quot = 0;
  int64_t rem = 0;
  bool operator==(const OffsetDatum&) const = default;
};

struct OffsetData {
  StepContext ctx;
  BezoutChoice bez;
  std::map<int64_t, OffsetDatum> for_i;  // keyed by the elements of I
  std::map<int64_t, OffsetDatum> for_j;  // keyed by the elements of J
  // Smallest multipliers with alpha*base() in J (0 < alpha < p) and
  // beta*base() in I (0 < beta < q), when such multiples exist.
  std::optional<int64_t> alpha;
  std::optional<int64_t> beta;
};

// Re-checks every stored identity (Bezout witness, anchor membership, exact
// shift equations, Euclidean splits, non-zero remainders at 0).
void audit_offsets(const OffsetData& off, const IndexingSet& I, const IndexingSet& J);

// Extends an indexing set one level along a single prime r >= 5: J lives mod
// r^t, the result mod r^{t+1}.  With admit_top the result is the full fiber
// over J; without it only the offsets 0 and 1 are used, which keeps the new
// top cover non-admissible (this needs r >= 5).
IndexingSet base_case_extend(const IndexingSet& J, bool admit_top, int64_t r);

// Realizes a saturated transfer system on a one-prime chain by iterating
// base_case_extend from {0}; the result contains r^i for every i below the
// chain length.
IndexingSet chain_realize(const TransferSystem& chain, int64_t r);

// Offsets for the step window; I and J must agree mod base().
OffsetData compute_offsets(const IndexingSet& I, const IndexingSet& J,
                           const StepContext& ctx, const BezoutChoice& bez,
                           OffsetPolicy policy = OffsetPolicy::Canonical);

// Case of the square with corners (n-1,m), (n,m), (n-1,m+1), (n,m+1) read
// from a saturated system whose box contains it.
SquareCase classify_square(const TransferSystem& T, int n, int m);

// One induction step: from J (mod p^n q^m) and I (mod p^{n-1} q^{m+1}),
// builds K (mod p^n q^{m+1}) extending both, with the top and right edges of
// the realized system dictated by the case tag.
IndexingSet induction_step(const IndexingSet& J, const IndexingSet& I,
                           SquareCase c, const OffsetData& off,
                           const BezoutChoice& bez);

struct RealizeOptions {
  std::optional<BezoutChoice> bezout;  // default: choose_bezout(p, q)
  OffsetPolicy policy = OffsetPolicy::Canonical;
};

struct GridCellTrace {
  int a = 0;
  int b = 0;
  std::string method;                 // "trivial", "chain-extend", "square"
  std::optional<SquareCase> square;   // set for induction cells
  int64_t set_size = 0;
};

struct RealizeResult {
  IndexingSet set;
  std::vector<GridCellTrace> trace;
};

// Full driver: dynamic programming over the grid, with grid coherence and
// the non-zero-multiple condition asserted after every cell.  Requires a
// saturated system and p, q >= 5.
RealizeResult realize_with_trace(const TransferSystem& T,
                                 const RealizeOptions& opts = {});
IndexingSet realize(const TransferSystem& T, const RealizeOptions& opts = {});

}  // namespace trsys
