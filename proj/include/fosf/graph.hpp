#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "fosf/errors.hpp"
#include "fosf/lattice.hpp"
#include "fosf/term.hpp"

namespace fosf {

// Rooted graph with sort-labelled nodes and feature-labelled edges. Nodes
// are identified by their tags.
struct OsfGraph {
  std::vector<Tag> nodes;
  std::vector<SortId> label;
  std::vector<std::vector<std::pair<FeatureId, std::uint32_t>>> out;
  std::uint32_t root = 0;

  std::size_t size() const { return nodes.size(); }

  std::optional<std::uint32_t> find(const Tag& t) const {
    for (std::uint32_t i = 0; i < nodes.size(); ++i)
      if (nodes[i] == t) return i;
    return std::nullopt;
  }
  std::optional<std::uint32_t> child(std::uint32_t n, FeatureId f) const {
    for (const auto& [g, m] : out[n])
      if (g == f) return m;
    return std::nullopt;
  }
  std::uint32_t add_node(Tag t, SortId s) {
    nodes.push_back(std::move(t));
    label.push_back(s);
    out.emplace_back();
    return static_cast<std::uint32_t>(nodes.size() - 1);
  }
};

// Identity of a graph as a value: root tag plus, per tag, its label and its
// edges sorted by feature. Node order in the vectors does not matter.
inline bool same_graph(const OsfGraph& a, const OsfGraph& b) {
  if (a.size() != b.size() || a.nodes[a.root] != b.nodes[b.root]) return false;
  std::unordered_map<Tag, std::uint32_t> bi;
  for (std::uint32_t i = 0; i < b.size(); ++i) bi.emplace(b.nodes[i], i);
  for (std::uint32_t i = 0; i < a.size(); ++i) {
    auto it = bi.find(a.nodes[i]);
    if (it == bi.end()) return false;
    std::uint32_t j = it->second;
    if (a.label[i] != b.label[j] || a.out[i].size() != b.out[j].size()) return false;
    std::vector<std::pair<FeatureId, Tag>> ea, eb;
    for (const auto& [f, m] : a.out[i]) ea.push_back({f, a.nodes[m]});
    for (const auto& [f, m] : b.out[j]) eb.push_back({f, b.nodes[m]});
    std::sort(ea.begin(), ea.end());
    std::sort(eb.begin(), eb.end());
    if (ea != eb) return false;
  }
  return true;
}

inline std::optional<std::string> graph_violation(const OsfGraph& g) {
  if (g.nodes.empty()) return "empty graph";
  std::vector<char> seen(g.size(), 0);
  std::vector<std::uint32_t> stack{g.root};
  seen[g.root] = 1;
  while (!stack.empty()) {
    auto n = stack.back();
    stack.pop_back();
    for (const auto& [f, m] : g.out[n])
      if (!seen[m]) { seen[m] = 1; stack.push_back(m); }
  }
  for (std::uint32_t i = 0; i < g.size(); ++i) {
    if (g.label[i] == Signature::bot()) return "node " + g.nodes[i].name + " labelled bot";
    if (!seen[i]) return "node " + g.nodes[i].name + " unreachable";
    std::vector<FeatureId> fs;
    for (const auto& [f, m] : g.out[i]) fs.push_back(f);
    std::sort(fs.begin(), fs.end());
    if (std::adjacent_find(fs.begin(), fs.end()) != fs.end()) return "repeated feature at " + g.nodes[i].name;
  }
  return std::nullopt;
}

// The part of `g` reachable from node `n`, rooted at `n`.
inline OsfGraph restrict(const OsfGraph& g, std::uint32_t n) {
  OsfGraph r;
  std::vector<std::uint32_t> map(g.size(), UINT32_MAX);
  std::deque<std::uint32_t> queue{n};
  map[n] = r.add_node(g.nodes[n], g.label[n]);
  while (!queue.empty()) {
    auto x = queue.front();
    queue.pop_front();
    for (const auto& [f, m] : g.out[x]) {
      if (map[m] == UINT32_MAX) {
        map[m] = r.add_node(g.nodes[m], g.label[m]);
        queue.push_back(m);
      }
      r.out[map[x]].push_back({f, map[m]});
    }
  }
  r.root = 0;
  return r;
}

inline OsfGraph term_to_graph(const NormalTerm& t) {
  OsfGraph g;
  std::unordered_map<Tag, std::uint32_t> id;
  for (const auto& x : t.tags()) id.emplace(x, g.add_node(x, t.sort_of(x)));
  for (const auto& x : t.tags()) {
    if (const Term* n = t.node(x))
      for (const auto& a : n->args) g.out[id.at(x)].push_back({a.feature, id.at(a.value.tag)});
  }
  g.root = id.at(t.root());
  return g;
}

inline Clause graph_to_clause(const OsfGraph& g) {
  Clause c;
  c.root = g.nodes[g.root];
  for (std::uint32_t i = 0; i < g.size(); ++i) c.constraints.push_back(SortC{g.nodes[i], g.label[i]});
  for (std::uint32_t i = 0; i < g.size(); ++i)
    for (const auto& [f, m] : g.out[i]) c.constraints.push_back(FeatC{g.nodes[i], f, g.nodes[m]});
  return c;
}

inline NormalTerm graph_to_term(const OsfGraph& g, const Signature& sig) {
  // Visit order follows edges from the root, so build the clause in that
  // order to keep argument order stable.
  return clause_to_term(graph_to_clause(restrict(g, g.root)), sig);
}

// Graph of the subclause reachable from `root` in a solved clause. Tags
// without a sort constraint are labelled top.
inline OsfGraph clause_to_graph(const Clause& c, const Tag& root) {
  if (auto why = solved_violation(c)) throw NotSolved(*why);
  OsfGraph g;
  std::unordered_map<Tag, std::uint32_t> id;
  std::unordered_map<Tag, SortId> sort;
  std::unordered_map<Tag, std::vector<std::pair<FeatureId, Tag>>> out;
  for (const auto& k : c.constraints) {
    if (auto* s = std::get_if<SortC>(&k)) sort[s->x] = s->s;
    if (auto* f = std::get_if<FeatC>(&k)) out[f->x].push_back({f->f, f->y});
  }
  auto node = [&](const Tag& t) {
    auto it = id.find(t);
    if (it != id.end()) return std::pair{it->second, false};
    auto s = sort.find(t);
    auto n = g.add_node(t, s == sort.end() ? Signature::top() : s->second);
    id.emplace(t, n);
    return std::pair{n, true};
  };
  std::deque<Tag> queue{root};
  node(root);
  while (!queue.empty()) {
    Tag x = queue.front();
    queue.pop_front();
    auto xi = id.at(x);
    for (const auto& [f, y] : out[x]) {
      auto [yi, fresh] = node(y);
      g.out[xi].push_back({f, yi});
      if (fresh) queue.push_back(y);
    }
  }
  g.root = 0;
  return g;
}

// G(phi(X)) for every tag X of a solved clause.
inline std::map<Tag, OsfGraph> canonical_subgraphs(const Clause& c) {
  if (auto why = solved_violation(c)) throw NotSolved(*why);
  std::map<Tag, OsfGraph> out;
  for (const auto& t : c.tags()) out.emplace(t, clause_to_graph(c, t));
  return out;
}

// Element of the graph algebra: a concrete graph, or the trivial top graph
// reached from a concrete origin along a feature path the origin lacks.
// Trivial elements are only ever named, never expanded.
struct TrivialElement {
  std::shared_ptr<const OsfGraph> origin;
  std::vector<FeatureId> path;
};

class GraphElement {
 public:
  explicit GraphElement(OsfGraph g) : v_(std::make_shared<const OsfGraph>(std::move(g))) {}
  explicit GraphElement(std::shared_ptr<const OsfGraph> g) : v_(std::move(g)) {}
  explicit GraphElement(TrivialElement t) : v_(std::move(t)) {}

  bool trivial() const { return std::holds_alternative<TrivialElement>(v_); }
  const OsfGraph& graph() const { return *std::get<0>(v_); }
  const std::shared_ptr<const OsfGraph>& graph_ptr() const { return std::get<0>(v_); }
  const TrivialElement& trivial_key() const { return std::get<1>(v_); }

  SortId root_label() const { return trivial() ? Signature::top() : graph().label[graph().root]; }

  friend bool operator==(const GraphElement& a, const GraphElement& b) {
    if (a.trivial() != b.trivial()) return false;
    if (!a.trivial()) return same_graph(a.graph(), b.graph());
    const auto& x = a.trivial_key();
    const auto& y = b.trivial_key();
    return x.path == y.path && same_graph(*x.origin, *y.origin);
  }

 private:
  std::variant<std::shared_ptr<const OsfGraph>, TrivialElement> v_;
};

// s^G(g) = degree(root label, s); trivial elements carry top.
inline Degree sort_membership(const GraphElement& g, SortId s, const SortLattice& lat) {
  return lat.degree(g.root_label(), s);
}

inline GraphElement apply_feature(const GraphElement& g, FeatureId f) {
  if (g.trivial()) {
    TrivialElement t = g.trivial_key();
    t.path.push_back(f);
    return GraphElement(std::move(t));
  }
  const OsfGraph& gr = g.graph();
  if (auto c = gr.child(gr.root, f)) return GraphElement(restrict(gr, *c));
  return GraphElement(TrivialElement{g.graph_ptr(), {f}});
}

// Repeatedly removes non-root top-labelled leaves with exactly one incoming
// edge. Such leaves are indistinguishable from trivial graphs.
inline OsfGraph strip_trivial_leaves(const OsfGraph& g) {
  const std::size_t n = g.size();
  std::vector<int> indeg(n, 0);
  std::vector<std::size_t> outdeg(n, 0);
  std::vector<std::vector<std::uint32_t>> parents(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    outdeg[i] = g.out[i].size();
    for (const auto& [f, m] : g.out[i]) {
      ++indeg[m];
      parents[m].push_back(i);
    }
  }
  std::vector<char> removed(n, 0);
  auto strippable = [&](std::uint32_t i) {
    return !removed[i] && i != g.root && g.label[i] == Signature::top() && outdeg[i] == 0 && indeg[i] == 1;
  };
  std::vector<std::uint32_t> work;
  for (std::uint32_t i = 0; i < n; ++i)
    if (strippable(i)) work.push_back(i);
  while (!work.empty()) {
    auto i = work.back();
    work.pop_back();
    if (!strippable(i)) continue;
    removed[i] = 1;
    for (auto p : parents[i]) {
      if (removed[p]) continue;
      --outdeg[p];
      if (strippable(p)) work.push_back(p);
    }
  }
  OsfGraph r;
  std::vector<std::uint32_t> map(n, UINT32_MAX);
  for (std::uint32_t i = 0; i < n; ++i)
    if (!removed[i]) map[i] = r.add_node(g.nodes[i], g.label[i]);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (removed[i]) continue;
    for (const auto& [f, m] : g.out[i])
      if (!removed[m]) r.out[map[i]].push_back({f, map[m]});
  }
  r.root = map[g.root];
  return r;
}

// Rooted isomorphism up to tag names: walk both graphs in lockstep from the
// roots along features in sorted order.
inline bool rooted_isomorphic(const OsfGraph& a, const OsfGraph& b) {
  if (a.size() != b.size()) return false;
  std::vector<std::uint32_t> ab(a.size(), UINT32_MAX), ba(b.size(), UINT32_MAX);
  std::deque<std::pair<std::uint32_t, std::uint32_t>> queue{{a.root, b.root}};
  ab[a.root] = b.root;
  ba[b.root] = a.root;
  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop_front();
    if (a.label[x] != b.label[y] || a.out[x].size() != b.out[y].size()) return false;
    auto ex = a.out[x], ey = b.out[y];
    std::sort(ex.begin(), ex.end());
    std::sort(ey.begin(), ey.end());
    for (std::size_t i = 0; i < ex.size(); ++i) {
      auto [f, xm] = ex[i];
      auto [g, ym] = ey[i];
      if (f != g) return false;
      if (ab[xm] == UINT32_MAX && ba[ym] == UINT32_MAX) {
        ab[xm] = ym;
        ba[ym] = xm;
        queue.push_back({xm, ym});
      } else if (ab[xm] != ym || ba[ym] != xm) {
        return false;
      }
    }
  }
  return true;
}

// Equivalence modulo trivial subgraphs.
inline bool graph_equivalent(const OsfGraph& a, const OsfGraph& b) {
  return rooted_isomorphic(strip_trivial_leaves(restrict(a, a.root)), strip_trivial_leaves(restrict(b, b.root)));
}

inline bool term_equivalent(const NormalTerm& a, const NormalTerm& b) {
  return graph_equivalent(term_to_graph(a), term_to_graph(b));
}

inline std::string graph_to_dot(const OsfGraph& g, const Signature& sig) {
  std::ostringstream os;
  os << "digraph osf {\n";
  for (std::uint32_t i = 0; i < g.size(); ++i) {
    os << "  n" << i << " [label=\"" << g.nodes[i].name << " : " << sig.name(g.label[i]) << "\", shape=ellipse"
       << (i == g.root ? ", peripheries=2" : "") << "];\n";
  }
  for (std::uint32_t i = 0; i < g.size(); ++i)
    for (const auto& [f, m] : g.out[i]) os << "  n" << i << " -> n" << m << " [label=\"" << sig.name(f) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace fosf
