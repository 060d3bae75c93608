#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "fosf/fixtures.hpp"
#include "fosf/graph.hpp"
#include "fosf/interpretation.hpp"
#include "fosf/lattice.hpp"
#include "fosf/morphism.hpp"
#include "fosf/normalize.hpp"
#include "fosf/ontology.hpp"
#include "fosf/random.hpp"
#include "fosf/subsumption.hpp"
#include "fosf/syntax.hpp"

namespace fosf {

struct TheoremOptions {
  std::uint64_t seed = 0;
  std::size_t max_domain = 4;
  std::size_t max_sorts = 5;
  std::size_t max_features = 2;
  std::size_t max_tags = 3;
  std::size_t rounds = 1500;
};

struct CheckResult {
  std::string name;
  std::size_t cases = 0;
  std::vector<std::string> counterexamples;
  bool passed() const { return counterexamples.empty(); }
};

struct TheoremReport {
  std::vector<CheckResult> checks;
  double seconds = 0;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed()) return false;
    return true;
  }
  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
  std::string to_text() const {
    std::ostringstream os;
    for (const auto& c : checks) {
      os << (c.passed() ? "PASS " : "FAIL ") << c.name << " (" << c.cases << " cases)\n";
      for (std::size_t i = 0; i < c.counterexamples.size() && i < 5; ++i) os << "  " << c.counterexamples[i] << "\n";
    }
    os << (passed() ? "all checks passed" : "counterexamples found") << "\n";
    return os.str();
  }
};

namespace detail {

// Calls f on every assignment of `tags` to elements of a domain of size n.
inline void for_each_assignment(const std::vector<Tag>& tags, std::size_t n,
                                const std::function<void(const Assignment&)>& f) {
  Assignment alpha;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == tags.size()) { f(alpha); return; }
    for (Element e = 0; e < n; ++e) {
      alpha[tags[i]] = e;
      rec(i + 1);
    }
  };
  rec(0);
}

inline std::vector<Degree> beta_grid() {
  std::vector<Degree> g{0.0, 0.1};
  for (Degree d : gen::degree_grid()) g.push_back(d);
  return g;
}

// Copy of I's features with fresh random degrees, so identity maps commute.
inline Interpretation reweigh(gen::Rng& rng, const Interpretation& I, const SortLattice& lat) {
  Interpretation J = gen::random_interpretation(rng, lat, I.size());
  for (FeatureId f : lat.signature().features())
    for (Element e = 0; e < I.size(); ++e) J.set_feature(f, e, I.apply(f, e));
  return J;
}

inline SortId support_glb(const Interpretation& I, Element e, const SortLattice& lat) {
  SortId g = Signature::top();
  for (SortId s : lat.signature().sorts())
    if (I.degree(s, e) > kZero) g = lat.glb(g, s);
  return g;
}

class Harness {
 public:
  explicit Harness(const TheoremOptions& opt) : opt_(opt), rng_(opt.seed) {}

  TheoremReport run() {
    auto start = std::chrono::steady_clock::now();
    add("denotation-satisfaction", [&](CheckResult& r) { denotation_satisfaction(r); });
    add("normalization-preserves-solutions", [&](CheckResult& r) { normalization_preserves(r); });
    add("canonical-solution", [&](CheckResult& r) { canonical_solution(r); });
    add("extending-solutions", [&](CheckResult& r) { extending(r); });
    add("extracting-solutions", [&](CheckResult& r) { extracting(r); });
    add("denotation-via-morphisms", [&](CheckResult& r) { denotation_via_morphisms(r); });
    add("weak-finality", [&](CheckResult& r) { weak_finality(r); });
    add("morphism-composition", [&](CheckResult& r) { composition(r); });
    add("subalgebra-transparency", [&](CheckResult& r) { subalgebra(r); });
    add("syntactic-vs-morphism-degree", [&](CheckResult& r) { syntactic_vs_morphism(r); });
    add("subsumption-soundness", [&](CheckResult& r) { subsumption_soundness(r); });
    add("equivalent-terms-same-denotation", [&](CheckResult& r) { equivalent_denotation(r); });
    add("generated-interpretations-valid", [&](CheckResult& r) { generator_valid(r); });
    add("movie-denotation", [&](CheckResult& r) { movie_denotation(r); });
    add("movie-morphism", [&](CheckResult& r) { movie_morphism(r); });
    add("corrupted-interpretation-flagged", [&](CheckResult& r) { negative_control(r); });
    report_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return std::move(report_);
  }

 private:
  struct World {
    std::shared_ptr<const SortLattice> lat;
    Interpretation I;
  };

  World world() {
    std::size_t sorts = 1 + gen::below(rng_, opt_.max_sorts);
    std::size_t feats = 1 + gen::below(rng_, opt_.max_features);
    auto lat = gen::random_lattice(rng_, sorts, feats);
    std::size_t dom = 1 + gen::below(rng_, opt_.max_domain);
    return {lat, gen::random_interpretation(rng_, *lat, dom)};
  }

  void add(const std::string& name, const std::function<void(CheckResult&)>& body) {
    CheckResult r{name, 0, {}};
    try {
      body(r);
    } catch (const std::exception& e) {
      r.counterexamples.push_back(std::string("exception: ") + e.what());
    }
    report_.checks.push_back(std::move(r));
  }

  static void fail(CheckResult& r, const std::string& what) {
    if (r.counterexamples.size() < 20) r.counterexamples.push_back(what);
  }

  void denotation_satisfaction(CheckResult& r) {
    auto grid = beta_grid();
    for (std::size_t round = 0; round < opt_.rounds; ++round) {
      World w = world();
      const auto& sig = w.lat->signature();
      Term t = gen::random_raw_term(rng_, sig, opt_.max_tags);
      Clause phi = term_to_clause(t);
      auto tags = tags_of(t);
      std::vector<Degree> best(w.I.size(), kZero);
      for_each_assignment(tags, w.I.size(), [&](const Assignment& a) {
        Element d = a.at(t.tag);
        Degree den = denote(t, w.I, a, d);
        best[d] = std::max(best[d], den);
        for (Degree b : grid) {
          ++r.cases;
          if ((den >= b) != satisfies(phi, w.I, a, b))
            fail(r, print_term(t, sig) + " beta=" + format_degree(b));
        }
      });
      for (Element d = 0; d < w.I.size(); ++d) {
        ++r.cases;
        if (denote(t, w.I, d) != best[d]) fail(r, "forced assignment differs for " + print_term(t, sig));
      }
    }
  }

  void normalization_preserves(CheckResult& r) {
    for (std::size_t round = 0; round < opt_.rounds; ++round) {
      World w = world();
      const auto& sig = w.lat->signature();
      Clause phi = gen::random_clause(rng_, sig, opt_.max_tags + 1, 6);
      NormalForm nf = normalize(phi, *w.lat);
      Clause out;
      if (nf.consistent()) {
        out = nf.normalized().solved;
        for (const auto& [a, b] : nf.normalized().equalities) out.constraints.push_back(EqC{a, b});
      }
      for_each_assignment(phi.tags(), w.I.size(), [&](const Assignment& a) {
        ++r.cases;
        bool before = satisfaction_degree(phi, w.I, a) > kZero;
        bool after = nf.consistent() && satisfaction_degree(out, w.I, a) > kZero;
        if (before != after) fail(r, print_clause(phi, sig));
      });
    }
  }

  void canonical_solution(CheckResult& r) {
    for (std::size_t round = 0; round < opt_.rounds; ++round) {
      World w = world();
      const auto& sig = w.lat->signature();
      NormalTerm psi = gen::random_normal_term(rng_, sig, opt_.max_tags + 2);
      Clause phi = term_to_clause(psi);
      std::map<Tag, GraphElement> alpha;
      for (auto& [t, g] : canonical_subgraphs(phi)) alpha.emplace(t, GraphElement(std::move(g)));
      for (const auto& k : phi.constraints) {
        ++r.cases;
        bool ok = true;
        if (auto* s = std::get_if<SortC>(&k)) ok = sort_membership(alpha.at(s->x), s->s, *w.lat) >= kOne;
        if (auto* f = std::get_if<FeatC>(&k)) ok = apply_feature(alpha.at(f->x), f->f) == alpha.at(f->y);
        if (!ok) fail(r, print_term(psi, sig) + " at " + print_constraint(k, sig));
      }
    }
  }

  void extending(CheckResult& r) {
    for (std::size_t round = 0; round < opt_.rounds; ++round) {
      World w = world();
      const auto& sig = w.lat->signature();
      Interpretation J = reweigh(rng_, w.I, *w.lat);
      Element d = static_cast<Element>(gen::below(rng_, w.I.size()));
      auto m = find_morphism(w.I, J, d, d);
      if (!m) { fail(r, "identity does not commute"); continue; }
      Clause phi = term_to_clause(gen::random_normal_term(rng_, sig, opt_.max_tags));
      auto sub = generated_subalgebra(w.I, {d});
      auto tags = phi.tags();
      for_each_assignment(tags, sub.embedding.size(), [&](const Assignment& local) {
        Assignment a, b;
        for (const auto& [t, e] : local) {
          a[t] = sub.embedding[e];
          b[t] = m->map[sub.embedding[e]];
        }
        Degree bi = satisfaction_degree(phi, w.I, a);
        if (bi == kZero) return;
        ++r.cases;
        if (!satisfies(phi, J, b, std::min(bi, m->max_beta))) fail(r, print_clause(phi, sig));
      });
    }
  }

  void extracting(CheckResult& r) {
    for (std::size_t round = 0; round < opt_.rounds; ++round) {
      World w = world();
      const auto& sig = w.lat->signature();
      NormalTerm psi = gen::random_normal_term(rng_, sig, opt_.max_tags, 0.5);
      Clause phi = term_to_clause(psi);
      OsfGraph g = term_to_graph(psi);
      for_each_assignment(phi.tags(), w.I.size(), [&](const Assignment& a) {
        Degree b = satisfaction_degree(phi, w.I, a);
        if (b == kZero) return;
        ++r.cases;
        auto m = morphism_from_graph(g, w.I, a.at(psi.root()), *w.lat);
        if (!m) { fail(r, "no morphism for solution of " + print_term(psi, sig)); return; }
        for (std::uint32_t x = 0; x < g.size(); ++x)
          if (m->node_image[x] != a.at(g.nodes[x])) fail(r, "morphism disagrees with solution at " + g.nodes[x].name);
        if (m->max_beta < b) fail(r, "morphism degree below solution degree for " + print_term(psi, sig));
      });
    }
  }

  void denotation_via_morphisms(CheckResult& r) {
    for (std::size_t round = 0; round < opt_.rounds; ++round) {
      World w = world();
      const auto& sig = w.lat->signature();
      NormalTerm psi = gen::random_normal_term(rng_, sig, opt_.max_tags + 1, 0.5);
      OsfGraph g = term_to_graph(psi);
      for (Element d = 0; d < w.I.size(); ++d) {
        ++r.cases;
        auto m = morphism_from_graph(g, w.I, d, *w.lat);
        Degree via = m ? m->max_beta : kZero;
        if (via != denote(psi.term(), w.I, d)) fail(r, print_term(psi, sig) + " at " + w.I.name(d));
      }
    }
  }

  void weak_finality(CheckResult& r) {
    for (std::size_t round = 0; round < opt_.rounds; ++round) {
      World w = world();
      const auto& sig = w.lat->signature();
      // One node per element, labelled by the glb of its support.
      OsfGraph all;
      for (Element e = 0; e < w.I.size(); ++e) all.add_node(Tag{"E" + std::to_string(e)}, support_glb(w.I, e, *w.lat));
      for (Element e = 0; e < w.I.size(); ++e)
        for (FeatureId f : sig.features()) all.out[e].push_back({f, w.I.apply(f, e)});
      std::vector<GraphElement> gamma;
      for (Element e = 0; e < w.I.size(); ++e) gamma.emplace_back(restrict(all, e));
      Degree beta = kOne;
      for (Element e = 0; e < w.I.size(); ++e) {
        ++r.cases;
        if (all.label[e] == Signature::bot()) fail(r, "support glb is bot at " + w.I.name(e));
        for (FeatureId f : sig.features())
          if (!(apply_feature(gamma[e], f) == gamma[w.I.apply(f, e)])) fail(r, "feature does not commute");
        SortId l = all.label[e];
        beta = std::min(beta, max_beta_for(sig, [&](SortId s) { return w.I.degree(s, e); },
                                           [&](SortId s) { return w.lat->degree(l, s); }));
      }
      if (!(beta > kZero)) fail(r, "morphism into the graph algebra has degree 0");
    }
  }

  void composition(CheckResult& r) {
    for (std::size_t round = 0; round < opt_.rounds; ++round) {
      World w = world();
      Interpretation J = reweigh(rng_, w.I, *w.lat);
      Interpretation K = reweigh(rng_, w.I, *w.lat);
      Element d = static_cast<Element>(gen::below(rng_, w.I.size()));
      auto m1 = find_morphism(w.I, J, d, d);
      auto m2 = find_morphism(J, K, d, d);
      ++r.cases;
      if (!m1 || !m2) { fail(r, "identity does not commute"); continue; }
      Morphism c = compose(*m1, *m2, w.I, K);
      if (c.max_beta < std::min(m1->max_beta, m2->max_beta)) fail(r, "composite degree below min");
      // The computed degree is exact: the map is a max_beta-morphism.
      for (Element e = 0; e < w.I.size(); ++e) {
        if (m1->map[e] == kUnmapped) continue;
        for (SortId s : w.lat->signature().sorts())
          if (std::min(w.I.degree(s, e), m1->max_beta) > J.degree(s, m1->map[e])) fail(r, "max_beta not attained");
      }
    }
  }

  void subalgebra(CheckResult& r) {
    auto grid = beta_grid();
    for (std::size_t round = 0; round < opt_.rounds; ++round) {
      World w = world();
      const auto& sig = w.lat->signature();
      Element d = static_cast<Element>(gen::below(rng_, w.I.size()));
      auto sub = generated_subalgebra(w.I, {d});
      Term t = gen::random_raw_term(rng_, sig, opt_.max_tags);
      Clause phi = term_to_clause(t);
      for (Element e = 0; e < sub.embedding.size(); ++e) {
        ++r.cases;
        if (denote(t, sub.algebra, e) != denote(t, w.I, sub.embedding[e])) fail(r, "denotation differs in subalgebra");
      }
      for_each_assignment(phi.tags(), sub.embedding.size(), [&](const Assignment& local) {
        Assignment a;
        for (const auto& [x, e] : local) a[x] = sub.embedding[e];
        for (Degree b : grid) {
          ++r.cases;
          if (satisfies(phi, sub.algebra, local, b) != satisfies(phi, w.I, a, b)) fail(r, "satisfaction differs in subalgebra");
        }
      });
    }
  }

  void syntactic_vs_morphism(CheckResult& r) {
    for (std::size_t round = 0; round < 4 * opt_.rounds; ++round) {
      World w = world();
      const auto& sig = w.lat->signature();
      OsfGraph g0 = gen::random_graph(rng_, sig, opt_.max_tags + 2);
      OsfGraph g1 = gen::coin(rng_, 0.7) ? gen::generalize(rng_, g0, *w.lat) : gen::random_graph(rng_, sig, opt_.max_tags + 2, 0.3, 0.5, "Y");
      ++r.cases;
      Degree syn = approximation_degree(g0, g1, *w.lat);
      Degree sem = graph_morphism_degree(g0, g1, *w.lat).value_or(kZero);
      if (syn != sem)
        fail(r, print_term(graph_to_term(g0, sig), sig) + " vs " + print_term(graph_to_term(g1, sig), sig) + ": " +
                    format_degree(syn) + " != " + format_degree(sem));
    }
  }

  void subsumption_soundness(CheckResult& r) {
    for (std::size_t round = 0; round < opt_.rounds; ++round) {
      World w = world();
      const auto& sig = w.lat->signature();
      OsfGraph g0 = gen::random_graph(rng_, sig, opt_.max_tags, 0.2);
      NormalTerm psi0 = graph_to_term(g0, sig);
      NormalTerm psi1 = graph_to_term(gen::generalize(rng_, g0, *w.lat), sig);
      Degree beta = fuzzy_subsumption_degree(psi0, psi1, *w.lat);
      for (Element d = 0; d < w.I.size(); ++d) {
        ++r.cases;
        if (std::min(denote(psi0.term(), w.I, d), beta) > denote(psi1.term(), w.I, d))
          fail(r, print_term(psi0, sig) + " below " + print_term(psi1, sig) + " at " + w.I.name(d));
      }
    }
  }

  void equivalent_denotation(CheckResult& r) {
    for (std::size_t round = 0; round < opt_.rounds; ++round) {
      World w = world();
      const auto& sig = w.lat->signature();
      NormalTerm psi = gen::random_normal_term(rng_, sig, opt_.max_tags + 2, 0.6);
      NormalTerm stripped = graph_to_term(strip_trivial_leaves(term_to_graph(psi)), sig);
      for (Element d = 0; d < w.I.size(); ++d) {
        ++r.cases;
        if (denote(psi.term(), w.I, d) != denote(stripped.term(), w.I, d)) fail(r, print_term(psi, sig));
      }
    }
  }

  void generator_valid(CheckResult& r) {
    for (std::size_t round = 0; round < opt_.rounds; ++round) {
      World w = world();
      ++r.cases;
      auto v = validate_interpretation(w.I, *w.lat);
      if (!v.empty()) fail(r, v.front());
    }
  }

  struct Movie {
    std::shared_ptr<const SortLattice> lat;
    std::unique_ptr<Interpretation> I;
  };

  static Movie movie() {
    auto onto = parse_ontology_text(fixtures::movie_ontology());
    Movie m{validate_lattice(onto.graph), nullptr};
    std::istringstream in(fixtures::movie_interpretation());
    m.I = std::make_unique<Interpretation>(parse_interpretation(in, m.lat->signature_ptr()));
    return m;
  }

  void movie_denotation(CheckResult& r) {
    Movie m = movie();
    const auto& sig = m.lat->signature();
    const Interpretation& I = *m.I;
    ++r.cases;
    auto v = validate_interpretation(I, *m.lat);
    if (!v.empty()) fail(r, "fixture invalid: " + v.front());
    Term t = parse_term("X:thriller(directed_by -> Y:director)", sig);
    Assignment a{{Tag{"X"}, *I.find("halloween")}, {Tag{"Y"}, *I.find("carpenter")}};
    ++r.cases;
    if (denote(t, I, a, *I.find("halloween")) != 0.5) fail(r, "halloween denotation is not 0.5");
    ++r.cases;
    if (denote(t, I, *I.find("halloween")) != 0.5) fail(r, "halloween best denotation is not 0.5");
    Term clash = parse_term("X:movie(directed_by -> Y:director, directed_by -> Y:string)", sig);
    for (Element d = 0; d < I.size(); ++d) {
      ++r.cases;
      if (denote(clash, I, d) != kZero) fail(r, "contradictory term positive at " + I.name(d));
    }
  }

  void movie_morphism(CheckResult& r) {
    Movie m = movie();
    const auto& sig = m.lat->signature();
    NormalTerm t = parse_normal_term("X:thriller(directed_by -> Y:director)", sig);
    OsfGraph g = term_to_graph(t);
    ++r.cases;
    auto mor = morphism_from_graph(g, *m.I, *m.I->find("halloween"), *m.lat);
    if (!mor) { fail(r, "no morphism to halloween"); return; }
    if (mor->max_beta != 0.5) fail(r, "morphism degree " + format_degree(mor->max_beta) + " != 0.5");
    ++r.cases;
    if (mor->node_image[*g.find(Tag{"Y"})] != *m.I->find("carpenter")) fail(r, "director not sent to carpenter");
  }

  void negative_control(CheckResult& r) {
    Movie m = movie();
    const auto& sig = m.lat->signature();
    m.I->set_degree(sig.sort("thriller"), *m.I->find("halloween"), 0.3);
    ++r.cases;
    if (validate_interpretation(*m.I, *m.lat).empty()) fail(r, "thriller(halloween)=0.3 not flagged");
    for (std::size_t round = 0; round < opt_.rounds; ++round) {
      World w = world();
      const auto& s = w.lat->signature();
      // Lower the degree of a supersort below what subsumption forces.
      bool injected = false;
      for (Element e = 0; e < w.I.size() && !injected; ++e)
        for (SortId a : s.sorts())
          for (SortId b : s.sorts()) {
            if (injected || a == b || b == Signature::top() || w.I.degree(a, e) == kZero || w.lat->degree(a, b) == kZero) continue;
            w.I.set_degree(b, e, kZero);
            injected = true;
          }
      if (!injected) continue;
      ++r.cases;
      if (validate_interpretation(w.I, *w.lat).empty()) fail(r, "injected violation not flagged");
    }
  }

  TheoremOptions opt_;
  gen::Rng rng_;
  TheoremReport report_;
};

}  // namespace detail

inline TheoremReport check_theorems(const TheoremOptions& opt = {}) { return detail::Harness(opt).run(); }

}  // namespace fosf
