#include "trsys/indexing.hpp"

#include <sstream>

namespace trsys {

namespace {

constexpr int64_t kMaxDenseModulus = int64_t(1) << 24;

void check_modulus(int64_t modulus) {
  if (modulus < 1) fail(ErrorKind::Domain, "residue set: modulus must be >= 1");
  if (modulus > kMaxDenseModulus)
    fail(ErrorKind::Resource, "residue set: modulus exceeds dense storage cap");
}

int64_t canon(int64_t x, int64_t modulus) {
  x %= modulus;
  if (x < 0) x += modulus;
  return x;
}

}  // namespace

ResidueSet ResidueSet::empty(int64_t modulus) {
  check_modulus(modulus);
  ResidueSet S;
  S.modulus = modulus;
  S.members.assign(static_cast<size_t>(modulus), false);
  return S;
}

ResidueSet ResidueSet::of(int64_t modulus, std::initializer_list<int64_t> xs) {
  return of(modulus, std::vector<int64_t>(xs));
}

ResidueSet ResidueSet::of(int64_t modulus, const std::vector<int64_t>& xs) {
  ResidueSet S = empty(modulus);
  for (int64_t x : xs) S.insert(x);
  return S;
}

bool ResidueSet::contains(int64_t x) const {
  return members[static_cast<size_t>(canon(x, modulus))];
}

void ResidueSet::insert(int64_t x) {
  members[static_cast<size_t>(canon(x, modulus))] = true;
}

void ResidueSet::insert_pm(int64_t x) {
  insert(x);
  insert(-x);
}

size_t ResidueSet::count() const {
  size_t c = 0;
  for (bool b : members) c += b;
  return c;
}

std::vector<int64_t> ResidueSet::elements() const {
  std::vector<int64_t> out;
  for (int64_t x = 0; x < modulus; ++x)
    if (members[static_cast<size_t>(x)]) out.push_back(x);
  return out;
}

IndexingSet::IndexingSet(int64_t modulus, const std::vector<int64_t>& members)
    : IndexingSet(ResidueSet::of(modulus, members)) {}

IndexingSet::IndexingSet(ResidueSet raw) : set_(std::move(raw)) {
  check_modulus(set_.modulus);
  if (set_.members.size() != static_cast<size_t>(set_.modulus))
    fail(ErrorKind::Internal, "indexing set: membership size mismatch");
  if (!set_.contains(0))
    fail(ErrorKind::Domain, "indexing set: 0 must be a member");
  for (int64_t x = 1; x < set_.modulus; ++x)
    if (set_.contains(x) && !set_.contains(set_.modulus - x))
      fail(ErrorKind::Domain,
           "indexing set: not closed under negation (missing -" +
               std::to_string(x) + ")");
}

IndexingSet IndexingSet::zero(int64_t modulus) {
  ResidueSet S = ResidueSet::empty(modulus);
  S.insert(0);
  return IndexingSet(std::move(S));
}

IndexingSet IndexingSet::full(int64_t modulus) {
  ResidueSet S = ResidueSet::empty(modulus);
  S.members.assign(static_cast<size_t>(modulus), true);
  return IndexingSet(std::move(S));
}

ResidueSet reduce(const ResidueSet& S, int64_t e) {
  if (e < 1 || S.modulus % e != 0)
    fail(ErrorKind::Domain, "reduce: e must divide the modulus");
  ResidueSet R = ResidueSet::empty(e);
  for (int64_t x = 0; x < S.modulus; ++x)
    if (S.members[static_cast<size_t>(x)]) R.members[static_cast<size_t>(x % e)] = true;
  return R;
}

ResidueSet reduce(const IndexingSet& I, int64_t e) { return reduce(I.raw(), e); }

bool is_invariant(const ResidueSet& S, int64_t d) {
  if (d < 0) fail(ErrorKind::Domain, "is_invariant: d must be >= 0");
  const int64_t step = canon(d, S.modulus);
  for (int64_t x = 0; x < S.modulus; ++x) {
    if (!S.members[static_cast<size_t>(x)]) continue;
    const int64_t y = (x + step) % S.modulus;
    if (!S.members[static_cast<size_t>(y)]) return false;
  }
  return true;
}

TransferSystem realized_system(const IndexingSet& I, const CyclicOrder& ord) {
  if (I.modulus() != ord.N)
    fail(ErrorKind::Domain, "realized_system: modulus of I must equal N");
  const auto subs = all_subgroups(ord);
  const int nsub = static_cast<int>(subs.size());
  std::vector<bool> adj(static_cast<size_t>(nsub) * nsub, false);
  // Reductions shared across targets with the same divisor.
  std::vector<ResidueSet> red;
  red.reserve(subs.size());
  for (Subgroup y : subs) red.push_back(reduce(I, divisor(ord, y)));
  for (int yi = 0; yi < nsub; ++yi)
    for (int xi = 0; xi < nsub; ++xi) {
      if (!leq(subs[xi], subs[yi])) continue;
      if (is_invariant(red[static_cast<size_t>(yi)], divisor(ord, subs[xi])))
        adj[static_cast<size_t>(xi) * nsub + yi] = true;
    }
  return TransferSystem::raw(ord, std::move(adj));
}

bool star_holds(const IndexingSet& I, const CyclicOrder& ord) {
  if (I.modulus() != ord.N)
    fail(ErrorKind::Domain, "star_holds: modulus of I must equal N");
  const int64_t qm = ipow(ord.q, ord.m);
  for (int i = 0; i + 1 <= ord.n; ++i) {
    const int64_t e = ipow(ord.p, i + 1) * qm;
    const int64_t step = ipow(ord.p, i) * qm;
    const ResidueSet R = reduce(I, e);
    bool found = false;
    for (int64_t c = 1; c * step < e; ++c)
      if (R.contains(c * step)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

std::string describe_universe(const IndexingSet& I) {
  const auto xs = I.elements();
  std::ostringstream os;
  auto lam = [&](int64_t j) {
    return "λ_" + std::to_string(I.modulus()) + "(" + std::to_string(j) + ")";
  };
  os << "⊕_ℕ ";
  if (xs.size() == 1) {
    os << lam(xs[0]);
  } else {
    os << "(";
    for (size_t i = 0; i < xs.size(); ++i) {
      if (i) os << " ⊕ ";
      os << lam(xs[i]);
    }
    os << ")";
  }
  return os.str();
}

}  // namespace trsys
