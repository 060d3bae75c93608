#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "fosf/graph.hpp"
#include "fosf/interpretation.hpp"
#include "fosf/lattice.hpp"
#include "fosf/term.hpp"

namespace fosf::gen {

using Rng = std::mt19937_64;

inline const std::vector<Degree>& degree_grid() {
  static const std::vector<Degree> g{0.2, 0.4, 0.5, 0.7, 0.9, 1.0};
  return g;
}

inline Degree pick_degree(Rng& rng) {
  const auto& g = degree_grid();
  return g[std::uniform_int_distribution<std::size_t>(0, g.size() - 1)(rng)];
}

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

inline std::size_t below(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

inline std::shared_ptr<Signature> make_signature(std::size_t sorts, std::size_t features) {
  auto sig = std::make_shared<Signature>();
  for (std::size_t i = 0; i < sorts; ++i) sig->add_sort("s" + std::to_string(i));
  for (std::size_t i = 0; i < features; ++i) sig->add_feature("f" + std::to_string(i));
  return sig;
}

// Random weighted DAG over `sorts` user sorts: edges only go from lower to
// higher index, plus occasional links from bot or to top.
inline SubsumptionGraph random_dag(Rng& rng, std::size_t sorts, std::size_t features, double density) {
  auto sig = make_signature(sorts, features);
  std::vector<SubsumptionEdge> edges;
  for (std::uint32_t i = 2; i < sorts + 2; ++i) {
    for (std::uint32_t j = i + 1; j < sorts + 2; ++j)
      if (coin(rng, density)) edges.push_back({SortId{i}, SortId{j}, pick_degree(rng)});
    if (coin(rng, 0.1)) edges.push_back({Signature::bot(), SortId{i}, pick_degree(rng)});
    if (coin(rng, 0.1)) edges.push_back({SortId{i}, Signature::top(), pick_degree(rng)});
  }
  std::shuffle(edges.begin(), edges.end(), rng);
  return SubsumptionGraph(std::move(sig), std::move(edges));
}

// Random DAG that is a lattice; falls back to a chain after many misses.
inline std::shared_ptr<const SortLattice> random_lattice(Rng& rng, std::size_t sorts, std::size_t features,
                                                         double density = 0.4) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    auto g = std::make_shared<const SubsumptionGraph>(random_dag(rng, sorts, features, density));
    try {
      return validate_lattice(g);
    } catch (const NotALattice&) {
    }
  }
  auto sig = make_signature(sorts, features);
  std::vector<SubsumptionEdge> chain;
  for (std::uint32_t i = 2; i + 1 < sorts + 2; ++i) chain.push_back({SortId{i}, SortId{i + 1}, pick_degree(rng)});
  return validate_lattice(SubsumptionGraph(std::move(sig), std::move(chain)));
}

inline SortId random_sort(Rng& rng, const Signature& sig, bool allow_bot = false) {
  std::size_t lo = allow_bot ? 0 : 1;
  return SortId{static_cast<std::uint32_t>(lo + below(rng, sig.sort_count() - lo))};
}

// Random rooted OSF graph with up to `max_nodes` nodes. `top_bias` is the
// chance a node is labelled top.
inline OsfGraph random_graph(Rng& rng, const Signature& sig, std::size_t max_nodes, double top_bias = 0.3,
                             double edge_prob = 0.5, const std::string& prefix = "X") {
  OsfGraph g;
  std::size_t n = 1 + below(rng, max_nodes);
  for (std::size_t i = 0; i < n; ++i)
    g.add_node(Tag{prefix + std::to_string(i)}, coin(rng, top_bias) ? Signature::top() : random_sort(rng, sig));
  g.root = 0;
  const std::size_t nf = sig.feature_count();
  if (nf == 0) {
    g.nodes.resize(1);
    g.label.resize(1);
    g.out.resize(1);
    return g;
  }
  // Spanning tree first so every node is reachable, then extra edges.
  for (std::uint32_t i = 1; i < n; ++i) {
    for (int tries = 0; tries < 16; ++tries) {
      auto p = static_cast<std::uint32_t>(below(rng, i));
      FeatureId f{static_cast<std::uint32_t>(below(rng, nf))};
      if (!g.child(p, f)) {
        g.out[p].push_back({f, i});
        break;
      }
    }
  }
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t f = 0; f < nf; ++f)
      if (!g.child(x, FeatureId{f}) && coin(rng, edge_prob * 0.4))
        g.out[x].push_back({FeatureId{f}, static_cast<std::uint32_t>(below(rng, n))});
  return restrict(g, g.root);
}

// Term for g whose structured occurrences sit on a random spanning tree, so
// layouts vary beyond the canonical depth-first one.
inline NormalTerm random_layout_term(Rng& rng, const OsfGraph& g, const Signature& sig) {
  std::vector<char> seen(g.size(), 0);
  std::vector<std::pair<std::uint32_t, std::size_t>> frontier;  // (node, edge index)
  std::vector<std::vector<char>> tree(g.size());
  for (std::uint32_t i = 0; i < g.size(); ++i) tree[i].assign(g.out[i].size(), 0);
  seen[g.root] = 1;
  for (std::size_t e = 0; e < g.out[g.root].size(); ++e) frontier.push_back({g.root, e});
  while (!frontier.empty()) {
    std::size_t k = below(rng, frontier.size());
    auto [x, e] = frontier[k];
    frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(k));
    auto y = g.out[x][e].second;
    if (seen[y]) continue;
    seen[y] = 1;
    tree[x][e] = 1;
    for (std::size_t e2 = 0; e2 < g.out[y].size(); ++e2) frontier.push_back({y, e2});
  }
  std::function<Term(std::uint32_t)> build = [&](std::uint32_t x) {
    Term t{g.nodes[x], g.label[x], {}};
    for (std::size_t e = 0; e < g.out[x].size(); ++e) {
      auto [f, y] = g.out[x][e];
      t.args.push_back(Arg{f, tree[x][e] ? build(y) : leaf(g.nodes[y])});
    }
    return t;
  };
  return NormalTerm(build(g.root), sig);
}

inline NormalTerm random_normal_term(Rng& rng, const Signature& sig, std::size_t max_tags, double top_bias = 0.3,
                                     const std::string& prefix = "X") {
  return random_layout_term(rng, random_graph(rng, sig, max_tags, top_bias, 0.5, prefix), sig);
}

// Random clause over up to `max_tags` tags; the first tag is the root.
inline Clause random_clause(Rng& rng, const Signature& sig, std::size_t max_tags, std::size_t max_constraints) {
  std::size_t n = 1 + below(rng, max_tags);
  std::vector<Tag> tags;
  for (std::size_t i = 0; i < n; ++i) tags.push_back(Tag{"T" + std::to_string(i)});
  auto tag = [&] { return tags[below(rng, n)]; };
  Clause c;
  c.root = tags[0];
  c.constraints.push_back(SortC{tags[0], random_sort(rng, sig)});
  std::size_t m = below(rng, max_constraints + 1);
  for (std::size_t i = 0; i < m; ++i) {
    switch (below(rng, 3)) {
      case 0: c.constraints.push_back(SortC{tag(), random_sort(rng, sig)}); break;
      case 1: c.constraints.push_back(EqC{tag(), tag()}); break;
      default:
        if (sig.feature_count() == 0) break;
        c.constraints.push_back(FeatC{tag(), FeatureId{static_cast<std::uint32_t>(below(rng, sig.feature_count()))}, tag()});
    }
  }
  return c;
}

// Random valid interpretation. Each element gets a most specific sort m;
// its support is the crisp up-set of m (closed under glb), degrees are
// drawn from the grid and then raised once to satisfy the subsumption
// condition. One pass suffices because the closure is max-min transitive.
inline Interpretation random_interpretation(Rng& rng, const SortLattice& lat, std::size_t domain) {
  const auto& sig = lat.signature();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < domain; ++i) names.push_back("e" + std::to_string(i));
  Interpretation I(lat.signature_ptr(), names);
  auto sorts = sig.sorts();
  for (Element d = 0; d < domain; ++d) {
    SortId m = random_sort(rng, sig);
    std::vector<Degree> base(sorts.size(), kZero);
    for (SortId s : sorts)
      if (s != Signature::bot() && lat.support().leq(m, s)) base[s.index] = coin(rng, 0.3) ? kOne : pick_degree(rng);
    base[Signature::top().index] = kOne;
    for (SortId s1 : sorts) {
      Degree v = base[s1.index];
      for (SortId s0 : sorts) v = std::max(v, std::min(base[s0.index], lat.degree(s0, s1)));
      if (s1 == Signature::bot()) v = kZero;
      I.set_degree(s1, d, v);
    }
    for (FeatureId f : sig.features()) I.set_feature(f, d, static_cast<Element>(below(rng, domain)));
  }
  return I;
}

// Random term that need not be normal: tags repeat with structure, features
// repeat, and bot appears occasionally.
inline Term random_raw_term(Rng& rng, const Signature& sig, std::size_t max_tags, int depth = 3) {
  std::size_t n = 1 + below(rng, max_tags);
  std::function<Term(int, bool)> build = [&](int d, bool root) {
    Term t;
    t.tag = Tag{"T" + std::to_string(root ? 0 : below(rng, n))};
    t.sort = coin(rng, 0.05) ? Signature::bot() : coin(rng, 0.3) ? Signature::top() : random_sort(rng, sig);
    if (d > 0 && sig.feature_count() > 0) {
      std::size_t k = below(rng, 3);
      for (std::size_t i = 0; i < k; ++i)
        t.args.push_back(Arg{FeatureId{static_cast<std::uint32_t>(below(rng, sig.feature_count()))}, build(d - 1, false)});
    }
    return t;
  };
  return build(depth, true);
}

// A graph that g probably approximates: labels move up the lattice, some
// edges disappear and tags get a new prefix.
inline OsfGraph generalize(Rng& rng, const OsfGraph& g, const SortLattice& lat, const std::string& prefix = "Y") {
  OsfGraph r = g;
  const auto& sig = lat.signature();
  for (std::uint32_t i = 0; i < r.size(); ++i) {
    r.nodes[i] = Tag{prefix + std::to_string(i)};
    if (coin(rng, 0.5)) {
      std::vector<SortId> ups;
      for (SortId s : sig.sorts())
        if (s != Signature::bot() && lat.support().leq(g.label[i], s)) ups.push_back(s);
      r.label[i] = ups[below(rng, ups.size())];
    } else if (coin(rng, 0.2)) {
      r.label[i] = random_sort(rng, sig);
    }
    auto& out = r.out[i];
    out.erase(std::remove_if(out.begin(), out.end(), [&](const auto&) { return coin(rng, 0.2); }), out.end());
  }
  return restrict(r, r.root);
}

}  // namespace fosf::gen
