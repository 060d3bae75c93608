#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fosf/degree.hpp"
#include "fosf/errors.hpp"
#include "fosf/lattice.hpp"
#include "fosf/signature.hpp"

namespace fosf {

// Symmetric fuzzy similarity between sorts, stored once per unordered pair.
class SimilarityRelation {
 public:
  void set(SortId a, SortId b, Degree d) {
    if (!(d > 0.0 && d <= 1.0)) throw DegreeOutOfRange(d);
    if (a == b) return;
    sim_[key(a, b)] = d;
  }

  std::optional<Degree> get(SortId a, SortId b) const {
    if (a == b) return kOne;
    auto it = sim_.find(key(a, b));
    if (it == sim_.end()) return std::nullopt;
    return it->second;
  }

  bool empty() const { return sim_.empty(); }

  // Every (a, b, d) with a != b in both orientations, sorted by (a, b).
  std::vector<std::tuple<SortId, SortId, Degree>> pairs() const {
    std::vector<std::tuple<SortId, SortId, Degree>> out;
    for (const auto& [k, d] : sim_) {
      out.emplace_back(k.first, k.second, d);
      out.emplace_back(k.second, k.first, d);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  static std::pair<SortId, SortId> key(SortId a, SortId b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }
  std::map<std::pair<SortId, SortId>, Degree> sim_;
};

enum class DropReason { SelfEdge, Cycle, Redundant };

inline const char* to_string(DropReason r) {
  switch (r) {
    case DropReason::SelfEdge: return "self-edge";
    case DropReason::Cycle: return "cycle";
    case DropReason::Redundant: return "redundant";
  }
  return "?";
}

struct DroppedEdge {
  SubsumptionEdge edge;
  DropReason reason;
};

struct EnrichResult {
  SubsumptionGraph graph;
  std::vector<DroppedEdge> dropped;
};

// For every strict crisp path s ~> u and sim(u, s2) = b, derive s <= s2 at
// degree b. Derivations of the same pair combine by max; a derived edge
// that would close a cycle is dropped. Candidates are tried in (s, s2)
// order so the outcome does not depend on input order.
inline EnrichResult enrich_from_similarity(const SubsumptionGraph& crisp, const SimilarityRelation& sim) {
  const auto& sig = crisp.signature();
  const std::size_t n = sig.sort_count();
  for (const auto& e : crisp.edges())
    if (e.degree != kOne) throw DegreeOutOfRange(e.degree);

  CrispSupport support(crisp);
  std::map<std::pair<SortId, SortId>, Degree> derived;
  auto pairs = sim.pairs();
  for (std::uint32_t si = 0; si < n; ++si) {
    SortId s{si};
    for (const auto& [u, s2, b] : pairs) {
      if (u == s || !support.leq(s, u)) continue;
      if (s == Signature::bot() || u == Signature::top()) continue;
      auto& slot = derived[{s, s2}];
      slot = std::max(slot, b);
    }
  }

  std::vector<SubsumptionEdge> edges = crisp.edges();
  std::vector<DroppedEdge> dropped;
  // Current adjacency used for incremental cycle checks.
  std::vector<std::vector<SortId>> adj(n);
  for (const auto& e : edges) adj[e.sub.index].push_back(e.super);
  auto reaches = [&](SortId from, SortId to) {
    std::vector<char> seen(n, 0);
    std::vector<SortId> stack{from};
    seen[from.index] = 1;
    while (!stack.empty()) {
      SortId x = stack.back();
      stack.pop_back();
      if (x == to) return true;
      for (SortId y : adj[x.index])
        if (!seen[y.index]) { seen[y.index] = 1; stack.push_back(y); }
    }
    return false;
  };

  for (const auto& [pair, b] : derived) {
    auto [s, s2] = pair;
    SubsumptionEdge e{s, s2, b};
    if (s == s2) { dropped.push_back({e, DropReason::SelfEdge}); continue; }
    if (s2 == Signature::top() || s2 == Signature::bot() || s == Signature::top()) {
      dropped.push_back({e, s2 == Signature::top() ? DropReason::Redundant : DropReason::Cycle});
      continue;
    }
    auto existing = std::find_if(edges.begin(), edges.end(), [&](const auto& x) { return x.sub == s && x.super == s2; });
    if (existing != edges.end()) {
      if (existing->degree >= b) dropped.push_back({e, DropReason::Redundant});
      else existing->degree = b;
      continue;
    }
    if (reaches(s2, s)) { dropped.push_back({e, DropReason::Cycle}); continue; }
    edges.push_back(e);
    adj[s.index].push_back(s2);
  }
  return {SubsumptionGraph(crisp.signature_ptr(), std::move(edges)), std::move(dropped)};
}

}  // namespace fosf
