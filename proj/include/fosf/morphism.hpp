#pragma once

#include <deque>
#include <optional>
#include <unordered_map>
#include <vector>

#include "fosf/graph.hpp"
#include "fosf/interpretation.hpp"
#include "fosf/lattice.hpp"

namespace fosf {

// Feature-commuting map on the subalgebra generated by its anchor, with the
// largest beta for which it is a beta-morphism.
struct Morphism {
  std::vector<Element> map;  // indexed by source element; UINT32_MAX outside I[d]
  Degree max_beta = kOne;
};

inline constexpr Element kUnmapped = UINT32_MAX;

// The largest beta with s^from(e) & beta <= s^to(image) for all sorts: 1 if
// nothing is violated, otherwise the least target degree among violations.
template <class FromDeg, class ToDeg>
Degree max_beta_for(const Signature& sig, FromDeg&& from, ToDeg&& to) {
  Degree beta = kOne;
  for (SortId s : sig.sorts()) {
    Degree a = from(s), b = to(s);
    if (a > b) beta = std::min(beta, b);
  }
  return beta;
}

// The unique morphism I[d] -> J sending d to d2, if one exists.
inline std::optional<Morphism> find_morphism(const Interpretation& I, const Interpretation& J, Element d, Element d2) {
  const auto& sig = I.signature();
  Morphism m;
  m.map.assign(I.size(), kUnmapped);
  m.map[d] = d2;
  std::deque<Element> queue{d};
  while (!queue.empty()) {
    Element e = queue.front();
    queue.pop_front();
    for (FeatureId f : sig.features()) {
      Element x = I.apply(f, e), y = J.apply(f, m.map[e]);
      if (m.map[x] == kUnmapped) {
        m.map[x] = y;
        queue.push_back(x);
      } else if (m.map[x] != y) {
        return std::nullopt;
      }
    }
  }
  for (Element e = 0; e < I.size(); ++e) {
    if (m.map[e] == kUnmapped) continue;
    Element t = m.map[e];
    m.max_beta = std::min(m.max_beta, max_beta_for(sig, [&](SortId s) { return I.degree(s, e); },
                                                   [&](SortId s) { return J.degree(s, t); }));
  }
  return m;
}

inline Morphism compose(const Morphism& first, const Morphism& second, const Interpretation& I,
                        const Interpretation& K) {
  Morphism c;
  c.map.assign(first.map.size(), kUnmapped);
  for (Element e = 0; e < first.map.size(); ++e)
    if (first.map[e] != kUnmapped) c.map[e] = second.map.at(first.map[e]);
  for (Element e = 0; e < c.map.size(); ++e) {
    if (c.map[e] == kUnmapped) continue;
    Element t = c.map[e];
    c.max_beta = std::min(c.max_beta, max_beta_for(I.signature(), [&](SortId s) { return I.degree(s, e); },
                                                   [&](SortId s) { return K.degree(s, t); }));
  }
  return c;
}

// Morphism from the graph algebra generated by g into I sending g to d.
// Trivial source elements carry only top and their images are forced, so
// only the concrete nodes are mapped.
struct GraphMorphism {
  std::vector<Element> node_image;  // per node of g
  Degree max_beta = kOne;
};

inline std::optional<GraphMorphism> morphism_from_graph(const OsfGraph& g, const Interpretation& I, Element d,
                                                        const SortLattice& lat) {
  GraphMorphism m;
  m.node_image.assign(g.size(), kUnmapped);
  m.node_image[g.root] = d;
  std::deque<std::uint32_t> queue{g.root};
  while (!queue.empty()) {
    auto x = queue.front();
    queue.pop_front();
    for (const auto& [f, y] : g.out[x]) {
      Element img = I.apply(f, m.node_image[x]);
      if (m.node_image[y] == kUnmapped) {
        m.node_image[y] = img;
        queue.push_back(y);
      } else if (m.node_image[y] != img) {
        return std::nullopt;
      }
    }
  }
  for (std::uint32_t x = 0; x < g.size(); ++x) {
    if (m.node_image[x] == kUnmapped) continue;
    Element t = m.node_image[x];
    m.max_beta = std::min(m.max_beta, max_beta_for(lat.signature(), [&](SortId s) { return lat.degree(g.label[x], s); },
                                                   [&](SortId s) { return I.degree(s, t); }));
  }
  return m;
}

// Morphism between generated graph subalgebras sending g0 to g1, found by
// applying features in the graph algebra itself. Exploration stops at
// trivial source elements. Returns the largest beta, or nullopt if no
// feature-commuting map exists.
inline std::optional<Degree> graph_morphism_degree(const OsfGraph& g0, const OsfGraph& g1, const SortLattice& lat) {
  std::vector<std::optional<GraphElement>> image(g0.size());
  image[g0.root] = GraphElement(restrict(g1, g1.root));
  std::deque<std::uint32_t> queue{g0.root};
  while (!queue.empty()) {
    auto x = queue.front();
    queue.pop_front();
    for (const auto& [f, y] : g0.out[x]) {
      GraphElement img = apply_feature(*image[x], f);
      if (!image[y]) {
        image[y] = img;
        queue.push_back(y);
      } else if (!(*image[y] == img)) {
        return std::nullopt;
      }
    }
  }
  Degree beta = kOne;
  for (std::uint32_t x = 0; x < g0.size(); ++x) {
    if (!image[x]) continue;
    SortId l1 = image[x]->root_label();
    beta = std::min(beta, max_beta_for(lat.signature(), [&](SortId s) { return lat.degree(g0.label[x], s); },
                                       [&](SortId s) { return lat.degree(l1, s); }));
  }
  return beta;
}

}  // namespace fosf
