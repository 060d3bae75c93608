#pragma once

#include <deque>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "fosf/graph.hpp"
#include "fosf/lattice.hpp"
#include "fosf/term.hpp"

namespace fosf {

struct TagDegree {
  Tag tag;     // tag of the subsuming term
  SortId sort0;
  SortId sort1;
  Degree degree;
};

// h maps every tag of psi1 to a tag of psi0. Completion nodes added to psi0
// are named `<parent>.<feature>`.
struct SubsumptionWitness {
  std::vector<std::pair<Tag, Tag>> h;  // (tag of psi1, its image in psi0)
  Degree degree = kOne;
  std::vector<TagDegree> per_tag;
};

namespace detail {

// Root-anchored traversal of psi1 into psi0. With `complete`, missing
// feature edges of psi0 lead to fresh top nodes instead of failure.
inline std::optional<SubsumptionWitness> subsumption_witness(const NormalTerm& psi0, const NormalTerm& psi1,
                                                             const SortLattice& lat, bool complete) {
  const auto& sig = lat.signature();
  // Image nodes: real tags of psi0, or completion nodes keyed by (parent, f).
  struct Image {
    Tag name;
    bool real;
  };
  std::map<std::pair<std::string, FeatureId>, Tag> completion;
  auto step = [&](const Image& x, FeatureId f) -> std::optional<Image> {
    if (x.real) {
      if (auto y = psi0.child(x.name, f)) return Image{*y, true};
    }
    if (!complete) return std::nullopt;
    auto key = std::pair{x.name.name, f};
    auto it = completion.find(key);
    if (it == completion.end()) it = completion.emplace(key, Tag{x.name.name + "." + sig.name(f)}).first;
    return Image{it->second, false};
  };

  std::unordered_map<Tag, Image> h;
  std::deque<Tag> queue{psi1.root()};
  h.emplace(psi1.root(), Image{psi0.root(), true});
  while (!queue.empty()) {
    Tag x = queue.front();
    queue.pop_front();
    const Term* n = psi1.node(x);
    if (!n) continue;
    const Image hx = h.at(x);
    for (const auto& a : n->args) {
      auto img = step(hx, a.feature);
      if (!img) return std::nullopt;
      auto [it, fresh] = h.emplace(a.value.tag, *img);
      if (fresh) {
        queue.push_back(a.value.tag);
      } else if (it->second.name != img->name) {
        return std::nullopt;
      }
    }
  }

  SubsumptionWitness w;
  for (const auto& x : psi1.tags()) {
    const Image& img = h.at(x);
    SortId s0 = img.real ? psi0.sort_of(img.name) : Signature::top();
    SortId s1 = psi1.sort_of(x);
    Degree d = lat.degree(s0, s1);
    w.h.push_back({x, img.name});
    w.per_tag.push_back({x, s0, s1, d});
    w.degree = std::min(w.degree, d);
  }
  return w;
}

}  // namespace detail

// The witness that psi0 is syntactically subsumed by psi1, if one exists.
inline std::optional<SubsumptionWitness> syntactic_subsumes(const NormalTerm& psi0, const NormalTerm& psi1,
                                                            const SortLattice& lat) {
  return detail::subsumption_witness(psi0, psi1, lat, false);
}

// Witness after completing psi0 with the top subterms psi1 demands.
inline std::optional<SubsumptionWitness> subsumption_witness(const NormalTerm& psi0, const NormalTerm& psi1,
                                                             const SortLattice& lat) {
  return detail::subsumption_witness(psi0, psi1, lat, true);
}

// Degree to which psi0 is subsumed by psi1 (psi1 is the more general term).
inline Degree fuzzy_subsumption_degree(const NormalTerm& psi0, const NormalTerm& psi1, const SortLattice& lat) {
  auto w = subsumption_witness(psi0, psi1, lat);
  return w ? w->degree : kZero;
}

inline bool crisp_subsumes(const NormalTerm& psi0, const NormalTerm& psi1, const SortLattice& lat) {
  return fuzzy_subsumption_degree(psi0, psi1, lat) > kZero;
}

// Endomorphic approximation degree of g0 by g1 via the syntactic route.
inline Degree approximation_degree(const OsfGraph& g0, const OsfGraph& g1, const SortLattice& lat) {
  return fuzzy_subsumption_degree(graph_to_term(g1, lat.signature()), graph_to_term(g0, lat.signature()), lat);
}

}  // namespace fosf
