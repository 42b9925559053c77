#include "trsys/tightpair.hpp"

#include <sstream>

#include "trsys/errors.hpp"
#include "trsys/realizer.hpp"

namespace trsys {

namespace {

int64_t canon(int64_t x, int64_t mod) {
  const int64_t r = x % mod;
  return r < 0 ? r + mod : r;
}

void require_prime_at_least_5(int64_t r) {
  if (r < 5) {
    std::ostringstream os;
    os << "prime " << r << " is below 5; the construction needs p, q >= 5";
    fail(ErrorKind::UnsupportedPrime, os.str());
  }
}

void union_into(ResidueSet& dst, const ResidueSet& src) {
  if (dst.modulus != src.modulus) {
    fail(ErrorKind::Internal, "character-set union across different moduli");
  }
  for (int64_t x = 0; x < src.modulus; ++x) {
    if (src.members[static_cast<size_t>(x)]) dst.insert(x);
  }
}

// Soft bound on per-subgroup character counts; the comparator stores dense
// singleton-image tables, so it is meant for desk-scale orders only.
constexpr int64_t kMaxCharacters = int64_t(1) << 16;

}  // namespace

Diagram::Diagram(const CyclicOrder& ord) : order(ord) {
  for (const Subgroup& H : all_subgroups(ord)) {
    sets.emplace(H, ResidueSet::empty(divisor(ord, H)));
  }
}

ResidueSet& Diagram::at(Subgroup H) {
  const auto it = sets.find(H);
  if (it == sets.end()) fail(ErrorKind::Internal, "subgroup missing from diagram");
  return it->second;
}

const ResidueSet& Diagram::at(Subgroup H) const {
  const auto it = sets.find(H);
  if (it == sets.end()) fail(ErrorKind::Internal, "subgroup missing from diagram");
  return it->second;
}

ResidueSet induce_characters(int64_t d, int64_t e, const ResidueSet& S) {
  if (d < 1 || e < 1 || e % d != 0) {
    fail(ErrorKind::Precondition, "character induction needs d | e");
  }
  if (S.modulus != d) {
    fail(ErrorKind::Precondition, "character set modulus does not match d");
  }
  if (e > kMaxCharacters) {
    fail(ErrorKind::Resource, "character induction target is too large");
  }
  ResidueSet out = ResidueSet::empty(e);
  for (int64_t x = 0; x < e; ++x) {
    if (S.members[static_cast<size_t>(x % d)]) out.insert(x);
  }
  return out;
}

Subinductor::Subinductor(const CyclicOrder& ord) : ord_(ord) {}

void Subinductor::set_image(Subgroup K, Subgroup H, int64_t index,
                            ResidueSet image) {
  if (!in_box(ord_, K) || !in_box(ord_, H) || !leq(K, H)) {
    fail(ErrorKind::Precondition, "subinductor pair is not a comparable pair");
  }
  const int64_t dK = divisor(ord_, K);
  const int64_t dH = divisor(ord_, H);
  if (dK > kMaxCharacters) {
    fail(ErrorKind::Resource, "subinductor source has too many characters");
  }
  if (index < 0 || index >= dK) {
    fail(ErrorKind::Precondition, "character index out of range");
  }
  if (image.modulus != dH) {
    fail(ErrorKind::Precondition, "image modulus does not match the target");
  }
  auto& table = images_[{K, H}];
  // Modulus 0 marks an index whose image was never declared.
  if (table.empty()) table.resize(static_cast<size_t>(dK), ResidueSet{0, {}});
  table[static_cast<size_t>(index)] = std::move(image);
}

ResidueSet Subinductor::apply(Subgroup K, Subgroup H,
                              const ResidueSet& S) const {
  const int64_t dK = divisor(ord_, K);
  const int64_t dH = divisor(ord_, H);
  if (S.modulus != dK) {
    fail(ErrorKind::Precondition, "character set modulus does not match K");
  }
  if (K == H) return S;
  const auto it = images_.find({K, H});
  if (it == images_.end()) {
    fail(ErrorKind::Precondition, "subinductor has no images for this pair");
  }
  ResidueSet out = ResidueSet::empty(dH);
  for (int64_t x = 0; x < dK; ++x) {
    if (!S.members[static_cast<size_t>(x)]) continue;
    const ResidueSet& img = it->second[static_cast<size_t>(x)];
    if (img.modulus == 0) {
      fail(ErrorKind::Precondition, "subinductor image was never declared");
    }
    union_into(out, img);
  }
  return out;
}

TightPair build_cpq_instance(const CyclicOrder& ord, int64_t j, int64_t k) {
  if (ord.n != 1 || ord.m != 1) {
    fail(ErrorKind::Precondition, "the tensor instance needs exponents n = m = 1");
  }
  require_prime_at_least_5(ord.p);
  require_prime_at_least_5(ord.q);
  const int64_t p = ord.p;
  const int64_t q = ord.q;
  const int64_t N = ord.N;
  if (j <= 0 || j >= p || k <= 0 || k >= q) {
    fail(ErrorKind::Domain, "need 0 < j < p and 0 < k < q");
  }

  // CRT section of Z/pq -> Z/p x Z/q, used to embed factor characters.
  const BezoutChoice bez = choose_bezout(p, q);
  const auto crt = [&](int64_t a, int64_t b) {
    return canon(a * bez.u % N * q + b * bez.v % N * p, N);
  };

  Diagram D(ord);
  D.at({0, 0}).insert(0);
  D.at({1, 0}).insert(0);
  D.at({1, 0}).insert_pm(canon(j * q, p));
  D.at({0, 1}).insert(0);
  D.at({0, 1}).insert_pm(canon(k * p, q));
  ResidueSet& top = D.at({1, 1});
  top.insert(0);
  top.insert_pm(canon(j * q, N));
  top.insert_pm(canon(p * k, N));
  top.insert_pm(canon(p * k + j * q, N));
  top.insert_pm(canon(p * k - j * q, N));

  Subinductor J(ord);
  J.set_image({0, 0}, {1, 0}, 0, ResidueSet::of(p, {0}));
  J.set_image({0, 0}, {0, 1}, 0, ResidueSet::of(q, {0}));
  J.set_image({0, 0}, {1, 1}, 0, ResidueSet::of(N, {0}));
  for (int64_t a = 0; a < p; ++a) {
    J.set_image({1, 0}, {1, 1}, a, ResidueSet::of(N, {crt(a, 0)}));
  }
  for (int64_t b = 0; b < q; ++b) {
    J.set_image({0, 1}, {1, 1}, b, ResidueSet::of(N, {crt(0, b)}));
  }
  return TightPair{std::move(D), std::move(J)};
}

TightPair build_cp2_instance(const CyclicOrder& ord) {
  if (ord.n != 2 || ord.m != 0) {
    fail(ErrorKind::Precondition, "the chain instance needs exponents n = 2, m = 0");
  }
  require_prime_at_least_5(ord.p);
  const int64_t p = ord.p;
  const int64_t p2 = p * p;

  Diagram D(ord);
  D.at({0, 0}).insert(0);
  D.at({1, 0}).insert(0);
  D.at({1, 0}).insert_pm(1);
  D.at({2, 0}).insert(0);
  D.at({2, 0}).insert_pm(2 * p);

  Subinductor J(ord);
  J.set_image({0, 0}, {1, 0}, 0, ResidueSet::of(p, {0}));
  J.set_image({0, 0}, {2, 0}, 0, ResidueSet::of(p2, {0, p2 - p}));
  for (int64_t i = 0; i < p; ++i) {
    J.set_image({1, 0}, {2, 0}, i, ResidueSet::of(p2, {i, p2 - p + i}));
  }
  return TightPair{std::move(D), std::move(J)};
}

Diagram extend_by_transfers(const Diagram& D, const TransferSystem& T) {
  if (!(D.order == T.order())) {
    fail(ErrorKind::Precondition, "diagram and transfer system orders differ");
  }
  Diagram out = D;
  for (const Subgroup& H : all_subgroups(D.order)) {
    const int64_t dH = divisor(D.order, H);
    for (const Subgroup& K : all_subgroups(D.order)) {
      if (K == H || !leq(K, H) || !T.has(K, H)) continue;
      const int64_t dK = divisor(D.order, K);
      // Close D(H) under the congruence fibers of its own restriction.
      const ResidueSet fiber =
          induce_characters(dK, dH, reduce(D.at(H), dK));
      union_into(out.at(H), fiber);
    }
  }
  return out;
}

Diagram extend_by_subinduction(const Diagram& D, const Subinductor& J) {
  if (!(D.order == J.order())) {
    fail(ErrorKind::Precondition, "diagram and subinductor orders differ");
  }
  Diagram out = D;
  for (const Subgroup& H : all_subgroups(D.order)) {
    for (const Subgroup& K : all_subgroups(D.order)) {
      if (!leq(K, H)) continue;
      union_into(out.at(H), J.apply(K, H, D.at(K)));
    }
  }
  return out;
}

IndexingSet macbrough_realize(const TightPair& pair, const TransferSystem& T) {
  const CyclicOrder& ord = pair.diagram.order;
  if (!(ord == T.order())) {
    fail(ErrorKind::Precondition, "tight pair and transfer system orders differ");
  }
  if (!is_saturated(T)) {
    fail(ErrorKind::Precondition, "the comparator needs a saturated system");
  }

  // Every round before the fixed point adds at least one character, so the
  // total character count bounds the number of rounds.
  int64_t guard = 2;
  for (const Subgroup& H : all_subgroups(ord)) guard += divisor(ord, H);

  Diagram D = pair.diagram;
  bool converged = false;
  for (int64_t round = 0; round < guard; ++round) {
    Diagram next = extend_by_subinduction(extend_by_transfers(D, T),
                                          pair.subinductor);
    if (next == D) {
      converged = true;
      break;
    }
    D = std::move(next);
  }
  if (!converged) {
    fail(ErrorKind::Internal, "diagram extension did not reach a fixed point");
  }

  const IndexingSet I(D.at({ord.n, ord.m}));
  if (!(realized_system(I, ord) == T)) {
    fail(ErrorKind::Internal,
         "the fixed-point universe does not realize the requested system");
  }
  return I;
}

}  // namespace trsys
