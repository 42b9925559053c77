#include "trsys/transfer.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace trsys {

namespace {

size_t cell(int x, int y, int nsub) {
  return static_cast<size_t>(x) * nsub + y;
}

std::vector<bool> identity_adjacency(int nsub) {
  std::vector<bool> adj(static_cast<size_t>(nsub) * nsub, false);
  for (int i = 0; i < nsub; ++i) adj[cell(i, i, nsub)] = true;
  return adj;
}

// Closes adj under transitivity and restriction in place.
void close(const CyclicOrder& ord, std::vector<bool>& adj) {
  const auto subs = all_subgroups(ord);
  const int nsub = static_cast<int>(subs.size());
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < nsub; ++x) {
      for (int y = 0; y < nsub; ++y) {
        if (!adj[cell(x, y, nsub)]) continue;
        for (int z = 0; z < nsub; ++z) {
          if (adj[cell(y, z, nsub)] && !adj[cell(x, z, nsub)]) {
            adj[cell(x, z, nsub)] = true;
            changed = true;
          }
        }
        for (int w = 0; w < nsub; ++w) {
          if (!leq(subs[w], subs[y])) continue;
          const int mw = subgroup_index(ord, meet(subs[x], subs[w]));
          if (!adj[cell(mw, w, nsub)]) {
            adj[cell(mw, w, nsub)] = true;
            changed = true;
          }
        }
      }
    }
  }
}

// Direct axiom test on a reflexive adjacency whose edges already respect leq.
bool closed_relation(const CyclicOrder& ord, const std::vector<bool>& adj) {
  const auto subs = all_subgroups(ord);
  const int nsub = static_cast<int>(subs.size());
  for (int x = 0; x < nsub; ++x)
    for (int y = 0; y < nsub; ++y) {
      if (!adj[cell(x, y, nsub)]) continue;
      for (int z = 0; z < nsub; ++z)
        if (adj[cell(y, z, nsub)] && !adj[cell(x, z, nsub)]) return false;
      for (int w = 0; w < nsub; ++w) {
        if (!leq(subs[w], subs[y])) continue;
        const int mw = subgroup_index(ord, meet(subs[x], subs[w]));
        if (!adj[cell(mw, w, nsub)]) return false;
      }
    }
  return true;
}

}  // namespace

std::vector<Edge> comparable_pairs(const CyclicOrder& ord) {
  std::vector<Edge> out;
  for (Subgroup x : all_subgroups(ord))
    for (Subgroup y : all_subgroups(ord))
      if (x != y && leq(x, y)) out.push_back(Edge{x, y});
  return out;
}

bool mask_less(const EdgeMask& a, const EdgeMask& b) {
  if (a.size() != b.size())
    fail(ErrorKind::Precondition, "mask_less: masks of different widths");
  for (size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

TransferSystem::TransferSystem(CyclicOrder ord, std::vector<bool> adj)
    : order_(ord), nsub_(subgroup_count(ord)), adj_(std::move(adj)) {
  if (adj_.size() != static_cast<size_t>(nsub_) * nsub_)
    fail(ErrorKind::Internal, "transfer system: adjacency size mismatch");
}

TransferSystem TransferSystem::identities(const CyclicOrder& ord) {
  return TransferSystem(ord, identity_adjacency(subgroup_count(ord)));
}

TransferSystem TransferSystem::full(const CyclicOrder& ord) {
  const int nsub = subgroup_count(ord);
  std::vector<bool> adj(static_cast<size_t>(nsub) * nsub, false);
  const auto subs = all_subgroups(ord);
  for (int x = 0; x < nsub; ++x)
    for (int y = 0; y < nsub; ++y)
      if (leq(subs[x], subs[y])) adj[cell(x, y, nsub)] = true;
  return TransferSystem(ord, std::move(adj));
}

TransferSystem TransferSystem::raw(const CyclicOrder& ord, std::vector<bool> adj) {
  return TransferSystem(ord, std::move(adj));
}

bool TransferSystem::has(Subgroup x, Subgroup y) const {
  return has_index(subgroup_index(order_, x), subgroup_index(order_, y));
}

std::vector<Edge> TransferSystem::nonreflexive_edges() const {
  std::vector<Edge> out;
  for (const Edge& e : comparable_pairs(order_))
    if (has(e.src, e.dst)) out.push_back(e);
  return out;
}

std::vector<Edge> TransferSystem::cover_edges() const {
  const auto subs = all_subgroups(order_);
  std::vector<Edge> out;
  for (const Edge& e : nonreflexive_edges()) {
    bool implied = false;
    for (Subgroup z : subs) {
      if (z == e.src || z == e.dst) continue;
      if (has(e.src, z) && has(z, e.dst)) {
        implied = true;
        break;
      }
    }
    if (!implied) out.push_back(e);
  }
  return out;
}

EdgeMask TransferSystem::edge_mask() const {
  const auto pairs = comparable_pairs(order_);
  EdgeMask mask((pairs.size() + 63) / 64, 0);
  for (size_t k = 0; k < pairs.size(); ++k)
    if (has(pairs[k].src, pairs[k].dst)) mask[k / 64] |= uint64_t(1) << (k % 64);
  return mask;
}

std::string Violation::describe() const {
  std::ostringstream os;
  auto sg = [](Subgroup s) {
    return "(" + std::to_string(s.a) + "," + std::to_string(s.b) + ")";
  };
  switch (axiom) {
    case Axiom::Orientation:
      os << "orientation violation: edge " << sg(witness[0]) << "->"
         << sg(witness[1]) << " does not respect the divisibility order";
      break;
    case Axiom::Transitivity:
      os << "transitivity violation: witness (" << sg(witness[0]) << ","
         << sg(witness[1]) << "," << sg(witness[2]) << ")";
      break;
    case Axiom::Restriction:
      os << "restriction violation: edge " << sg(witness[0]) << "->"
         << sg(witness[1]) << ", witness w=" << sg(witness[2]);
      break;
  }
  return os.str();
}

std::variant<TransferSystem, Violation> validate(const CyclicOrder& ord,
                                                 const std::vector<Edge>& candidate) {
  const auto subs = all_subgroups(ord);
  const int nsub = static_cast<int>(subs.size());
  auto adj = identity_adjacency(nsub);
  for (const Edge& e : candidate) {
    if (!in_box(ord, e.src) || !in_box(ord, e.dst))
      fail(ErrorKind::Domain, "validate: edge endpoint outside the box");
  }
  // Orientation first, scanning subgroup pairs lexicographically.
  std::set<Edge> cand(candidate.begin(), candidate.end());
  for (const Edge& e : cand) {
    if (!leq(e.src, e.dst))
      return Violation{Violation::Axiom::Orientation, {e.src, e.dst}};
    adj[cell(subgroup_index(ord, e.src), subgroup_index(ord, e.dst), nsub)] = true;
  }
  // Transitivity: first failing triple in lexicographic order.
  for (int x = 0; x < nsub; ++x)
    for (int y = 0; y < nsub; ++y) {
      if (!adj[cell(x, y, nsub)] || x == y) continue;
      for (int z = 0; z < nsub; ++z)
        if (adj[cell(y, z, nsub)] && !adj[cell(x, z, nsub)])
          return Violation{Violation::Axiom::Transitivity,
                           {subs[x], subs[y], subs[z]}};
    }
  // Restriction: first failing (edge, w) in lexicographic order.
  for (int x = 0; x < nsub; ++x)
    for (int y = 0; y < nsub; ++y) {
      if (!adj[cell(x, y, nsub)]) continue;
      for (int w = 0; w < nsub; ++w) {
        if (!leq(subs[w], subs[y])) continue;
        const int mw = subgroup_index(ord, meet(subs[x], subs[w]));
        if (!adj[cell(mw, w, nsub)])
          return Violation{Violation::Axiom::Restriction,
                           {subs[x], subs[y], subs[w]}};
      }
    }
  return TransferSystem::raw(ord, std::move(adj));
}

TransferSystem generate(const CyclicOrder& ord, const std::vector<Edge>& seeds) {
  const int nsub = subgroup_count(ord);
  auto adj = identity_adjacency(nsub);
  for (const Edge& e : seeds) {
    if (!in_box(ord, e.src) || !in_box(ord, e.dst))
      fail(ErrorKind::Domain, "generate: seed endpoint outside the box");
    if (!leq(e.src, e.dst))
      fail(ErrorKind::Domain, "generate: seed does not respect the divisibility order");
    adj[cell(subgroup_index(ord, e.src), subgroup_index(ord, e.dst), nsub)] = true;
  }
  close(ord, adj);
  return TransferSystem::raw(ord, std::move(adj));
}

bool is_saturated(const TransferSystem& T) {
  const auto subs = all_subgroups(T.order());
  const int nsub = T.size();
  for (int x = 0; x < nsub; ++x)
    for (int z = 0; z < nsub; ++z) {
      if (x == z || !T.has_index(x, z)) continue;
      for (int y = 0; y < nsub; ++y) {
        if (!leq(subs[x], subs[y]) || !leq(subs[y], subs[z])) continue;
        if (!T.has_index(x, y) || !T.has_index(y, z)) return false;
      }
    }
  return true;
}

std::vector<TransferSystem> enumerate_all(const CyclicOrder& ord,
                                          bool saturated_only) {
  const auto pairs = comparable_pairs(ord);
  const int nsub = subgroup_count(ord);
  if (nsub > 12)
    fail(ErrorKind::Resource,
         "enumerate_all: box too large for the configured strategies");

  std::vector<std::vector<bool>> found;
  if (pairs.size() <= 12) {
    // Filter every subset of the comparable pairs.
    const uint64_t total = uint64_t(1) << pairs.size();
    for (uint64_t mask = 0; mask < total; ++mask) {
      auto adj = identity_adjacency(nsub);
      for (size_t k = 0; k < pairs.size(); ++k)
        if (mask >> k & 1)
          adj[cell(subgroup_index(ord, pairs[k].src),
                   subgroup_index(ord, pairs[k].dst), nsub)] = true;
      if (closed_relation(ord, adj)) found.push_back(std::move(adj));
    }
  } else {
    // Grow systems one closed cover at a time, deduplicating by adjacency.
    std::set<std::vector<bool>> seen;
    std::vector<std::vector<bool>> stack{identity_adjacency(nsub)};
    seen.insert(stack.back());
    while (!stack.empty()) {
      auto cur = std::move(stack.back());
      stack.pop_back();
      for (const Edge& e : pairs) {
        const size_t c = cell(subgroup_index(ord, e.src),
                              subgroup_index(ord, e.dst), nsub);
        if (cur[c]) continue;
        auto next = cur;
        next[c] = true;
        close(ord, next);
        if (seen.insert(next).second) stack.push_back(std::move(next));
      }
      found.push_back(std::move(cur));
    }
  }

  std::vector<TransferSystem> out;
  for (auto& adj : found) {
    TransferSystem T = TransferSystem::raw(ord, std::move(adj));
    if (!saturated_only || is_saturated(T)) out.push_back(std::move(T));
  }
  std::sort(out.begin(), out.end(),
            [](const TransferSystem& a, const TransferSystem& b) {
              return mask_less(a.edge_mask(), b.edge_mask());
            });
  return out;
}

TransferSystem restrict_box(const TransferSystem& T, int n_sub, int m_sub) {
  const CyclicOrder& big = T.order();
  if (n_sub < 0 || n_sub > big.n || m_sub < 0 || m_sub > big.m)
    fail(ErrorKind::Domain, "restrict_box: sub-box exceeds the original box");
  CyclicOrder ord(big.p, n_sub, big.q, m_sub);
  const int nsub = subgroup_count(ord);
  std::vector<bool> adj(static_cast<size_t>(nsub) * nsub, false);
  for (Subgroup x : all_subgroups(ord))
    for (Subgroup y : all_subgroups(ord))
      if (T.has(x, y))
        adj[cell(subgroup_index(ord, x), subgroup_index(ord, y), nsub)] = true;
  return TransferSystem::raw(ord, std::move(adj));
}

TransferSystem system_from_edge_mask(const CyclicOrder& ord, const EdgeMask& mask) {
  const auto pairs = comparable_pairs(ord);
  if (mask.size() != (pairs.size() + 63) / 64)
    fail(ErrorKind::Precondition, "system_from_edge_mask: mask width mismatch");
  const int nsub = subgroup_count(ord);
  auto adj = identity_adjacency(nsub);
  for (size_t k = 0; k < pairs.size(); ++k)
    if (mask[k / 64] >> (k % 64) & 1)
      adj[cell(subgroup_index(ord, pairs[k].src),
               subgroup_index(ord, pairs[k].dst), nsub)] = true;
  return TransferSystem::raw(ord, std::move(adj));
}

}  // namespace trsys
