#pragma once

#include <algorithm>
#include <atomic>
#include <future>
#include <optional>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fosf/errors.hpp"
#include "fosf/graph.hpp"
#include "fosf/lattice.hpp"
#include "fosf/normalize.hpp"
#include "fosf/term.hpp"

namespace fosf {

struct TagClass {
  Tag representative;        // fresh `_Z<n>` name used in the unifier
  std::vector<Tag> members;  // tags of the input terms
};

struct UnifyResult {
  std::optional<NormalTerm> unifier;  // empty for the bottom unifier
  Degree beta1 = kOne;
  Degree beta2 = kOne;
  Degree beta = kOne;
  std::vector<TagClass> classes;
  std::unordered_map<Tag, Tag> renamed;  // tags of psi2 renamed on collision

  bool bottom() const { return !unifier.has_value(); }
};

// Unifier of two normal terms and the unification degree. Colliding tags
// of psi2 are renamed first; the unifier uses fresh `_Z<n>` tags numbered in
// depth-first order from its root.
inline UnifyResult unify(const NormalTerm& psi1, const NormalTerm& psi2, const SortLattice& lat,
                         const NormalizeOptions& opt = {}) {
  UnifyResult res;
  TagGenerator gen;
  for (const auto& t : psi1.tags()) gen.reserve(t);
  for (const auto& t : psi2.tags()) gen.reserve(t);
  std::unordered_map<Tag, Tag> ren;
  for (const auto& t : psi2.tags())
    if (psi1.contains(t)) ren.emplace(t, gen.fresh());
  Term t2 = ren.empty() ? psi2.term() : rename(psi2.term(), ren);
  res.renamed = ren;

  Clause phi = term_to_clause(psi1);
  Clause phi2 = term_to_clause(t2);
  phi.constraints.insert(phi.constraints.end(), phi2.constraints.begin(), phi2.constraints.end());
  phi.constraints.push_back(EqC{psi1.root(), t2.tag});

  NormalForm nf = normalize(phi, lat, opt);
  if (!nf.consistent()) return res;  // bottom, beta = 1
  const Normalized& n = nf.normalized();

  Term shape = clause_to_term_raw(n.solved);
  TagGenerator out;
  for (const auto& t : psi1.tags()) out.reserve(t);
  for (const auto& t : psi2.tags()) out.reserve(t);
  std::unordered_map<Tag, Tag> fresh;
  for (const auto& t : tags_of(shape)) fresh.emplace(t, out.fresh());
  res.unifier.emplace(rename(shape, fresh), lat.signature());

  std::unordered_map<Tag, Tag> cls;  // input tag -> fresh representative
  for (const auto& c : n.classes) {
    TagClass tc{fresh.at(c.front()), {}};
    for (const auto& m : c) {
      cls.emplace(m, tc.representative);
      tc.members.push_back(m);
    }
    res.classes.push_back(std::move(tc));
  }
  std::sort(res.classes.begin(), res.classes.end(), [&](const TagClass& a, const TagClass& b) {
    auto num = [](const Tag& t) { return std::stoul(t.name.substr(2)); };
    return num(a.representative) < num(b.representative);
  });

  const NormalTerm& u = *res.unifier;
  for (const auto& x : psi1.tags())
    res.beta1 = std::min(res.beta1, lat.degree(u.sort_of(cls.at(x)), psi1.sort_of(x)));
  for (const auto& x : psi2.tags()) {
    auto it = ren.find(x);
    const Tag& y = it == ren.end() ? x : it->second;
    res.beta2 = std::min(res.beta2, lat.degree(u.sort_of(cls.at(y)), psi2.sort_of(x)));
  }
  res.beta = std::min(res.beta1, res.beta2);
  return res;
}

enum class Direction { FirstBelowSecond, SecondBelowFirst, Incomparable };

struct MutualSubsumption {
  Direction direction = Direction::Incomparable;
  Degree degree = kZero;
};

// If the unifier is equivalent to one input, that input is subsumed by the
// other with the unification degree.
inline MutualSubsumption mutual_subsumption_via_unify(const NormalTerm& psi1, const NormalTerm& psi2,
                                                      const SortLattice& lat) {
  UnifyResult r = unify(psi1, psi2, lat);
  if (r.bottom()) return {};
  OsfGraph g = term_to_graph(*r.unifier);
  if (graph_equivalent(g, term_to_graph(psi1))) return {Direction::FirstBelowSecond, r.beta};
  if (graph_equivalent(g, term_to_graph(psi2))) return {Direction::SecondBelowFirst, r.beta};
  return {};
}

// Unifies independent pairs, in parallel when `threads` > 1. Results keep
// the input order.
inline std::vector<UnifyResult> unify_batch(const std::vector<std::pair<NormalTerm, NormalTerm>>& pairs,
                                            const SortLattice& lat, unsigned threads = 1) {
  std::vector<std::optional<UnifyResult>> slots(pairs.size());
  if (threads <= 1 || pairs.size() < 2) {
    for (std::size_t i = 0; i < pairs.size(); ++i) slots[i] = unify(pairs[i].first, pairs[i].second, lat);
  } else {
    std::vector<std::future<void>> workers;
    std::atomic<std::size_t> next{0};
    for (unsigned w = 0; w < threads; ++w) {
      workers.push_back(std::async(std::launch::async, [&] {
        for (std::size_t i; (i = next++) < pairs.size();) slots[i] = unify(pairs[i].first, pairs[i].second, lat);
      }));
    }
    for (auto& w : workers) w.get();
  }
  std::vector<UnifyResult> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace fosf
