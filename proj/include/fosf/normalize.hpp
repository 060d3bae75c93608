#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "fosf/errors.hpp"
#include "fosf/lattice.hpp"
#include "fosf/syntax.hpp"
#include "fosf/term.hpp"
#include "fosf/union_find.hpp"

namespace fosf {

struct NormalizeOptions {
  // Test-only: shuffle constraints, pick pending merges at random and link
  // equal-rank roots in a random direction.
  bool randomized = false;
  std::uint64_t seed = 0;
  bool trace = false;
};

struct Normalized {
  Clause solved;
  std::vector<std::pair<Tag, Tag>> equalities;  // (representative, member)
  std::vector<std::vector<Tag>> classes;        // representative first
  std::optional<Tag> root;
  std::size_t steps = 0;
  std::vector<std::string> trace;
};

struct Inconsistent {
  Tag witness;
  std::size_t steps = 0;
  std::vector<std::string> trace;
};

struct NormalForm {
  std::variant<Normalized, Inconsistent> value;

  bool consistent() const { return std::holds_alternative<Normalized>(value); }
  const Normalized& normalized() const {
    if (!consistent()) throw InconsistentInput();
    return std::get<Normalized>(value);
  }
  const Inconsistent& inconsistent() const { return std::get<Inconsistent>(value); }
  std::size_t steps() const {
    return std::visit([](const auto& v) { return v.steps; }, value);
  }
  const std::vector<std::string>& trace() const {
    return std::visit([](const auto& v) -> const std::vector<std::string>& { return v.trace; }, value);
  }
};

// Rule applications never exceed this on any input.
inline std::size_t normalization_step_bound(const Clause& c) {
  std::size_t n = c.tags().size();
  return c.constraints.size() + n * n;
}

namespace detail {

class Normalizer {
 public:
  Normalizer(const Clause& c, const SortLattice& lat, const NormalizeOptions& opt)
      : clause_(c), lat_(lat), opt_(opt), rng_(opt.seed) {
    tags_ = c.tags();
    for (std::uint32_t i = 0; i < tags_.size(); ++i) index_.emplace(tags_[i], i);
    uf_.reset(tags_.size());
    sort_.assign(tags_.size(), Signature::top());
    feats_.assign(tags_.size(), {});
  }

  NormalForm run() {
    std::vector<const Constraint*> order;
    for (const auto& k : clause_.constraints) order.push_back(&k);
    if (opt_.randomized) {
      std::shuffle(order.begin(), order.end(), rng_);
      for (const auto* k : order) {
        apply(*k);
        if (failed_) return fail();
        if (std::uniform_int_distribution<int>(0, 2)(rng_) == 0) drain();
        if (failed_) return fail();
      }
      drain();
      if (failed_) return fail();
    } else {
      // Equalities, then features, then sorts; merges are drained eagerly.
      for (int phase = 0; phase < 3; ++phase) {
        for (const auto* k : order) {
          if (static_cast<int>(k->index()) != (phase == 0 ? 1 : phase == 1 ? 2 : 0)) continue;
          apply(*k);
          drain();
          if (failed_) return fail();
        }
      }
    }
    return NormalForm{finish()};
  }

 private:
  std::uint32_t id(const Tag& t) const { return index_.at(t); }

  void apply(const Constraint& k) {
    if (auto* e = std::get_if<EqC>(&k)) {
      pending_.push_back({id(e->x), id(e->y)});
    } else if (auto* f = std::get_if<FeatC>(&k)) {
      add_feature(uf_.find(id(f->x)), f->f, id(f->y));
    } else {
      const auto& s = std::get<SortC>(k);
      std::uint32_t r = uf_.find(id(s.x));
      intersect(r, s.s);
    }
  }

  void add_feature(std::uint32_t rep, FeatureId f, std::uint32_t target) {
    auto& fs = feats_[rep];
    auto it = std::find_if(fs.begin(), fs.end(), [&](const auto& p) { return p.first == f; });
    if (it == fs.end()) {
      fs.push_back({f, target});
      return;
    }
    ++steps_;
    log("Feature Functionality " + tags_[rep].name + "." + lat_.signature().name(f) + ": " +
        tags_[it->second].name + " = " + tags_[target].name);
    pending_.push_back({it->second, target});
  }

  void intersect(std::uint32_t rep, SortId s) {
    SortId old = sort_[rep];
    SortId g = lat_.glb(old, s);
    if (old != Signature::top() || s == Signature::bot()) {
      ++steps_;
      log("Sort Intersection " + tags_[rep].name + ": " + lat_.signature().name(old) + " & " +
          lat_.signature().name(s) + " -> " + lat_.signature().name(g));
    }
    sort_[rep] = g;
    if (g == Signature::bot()) {
      ++steps_;
      log("Inconsistent Sort " + tags_[rep].name);
      failed_ = true;
      witness_ = rep;
    }
  }

  void drain() {
    while (!pending_.empty() && !failed_) {
      std::size_t pick = 0;
      if (opt_.randomized) pick = std::uniform_int_distribution<std::size_t>(0, pending_.size() - 1)(rng_);
      auto [a, b] = pending_[pick];
      pending_.erase(pending_.begin() + static_cast<std::ptrdiff_t>(pick));
      merge(a, b);
    }
  }

  void merge(std::uint32_t a, std::uint32_t b) {
    if (uf_.same(a, b)) return;
    bool flip = opt_.randomized && std::uniform_int_distribution<int>(0, 1)(rng_) == 1;
    auto [keep, gone] = uf_.unite(a, b, flip);
    ++steps_;
    log("Tag Elimination " + tags_[gone].name + " -> " + tags_[keep].name);
    auto moved = std::move(feats_[gone]);
    feats_[gone].clear();
    for (const auto& [f, t] : moved) add_feature(keep, f, t);
    SortId s = sort_[gone];
    if (s != Signature::top()) intersect(keep, s);
  }

  Normalized finish() {
    const std::size_t n = tags_.size();
    // Name each class after its earliest tag so output is independent of
    // the union order.
    std::vector<std::uint32_t> name(n, UINT32_MAX);
    std::vector<std::vector<std::uint32_t>> members(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      std::uint32_t r = uf_.find(i);
      if (name[r] == UINT32_MAX) name[r] = i;
      members[r].push_back(i);
    }
    Normalized out;
    out.steps = steps_;
    out.trace = std::move(trace_);
    std::vector<std::uint32_t> reps;
    for (std::uint32_t i = 0; i < n; ++i)
      if (uf_.find(i) == i) reps.push_back(i);
    std::sort(reps.begin(), reps.end(), [&](auto x, auto y) { return name[x] < name[y]; });
    auto tag_of = [&](std::uint32_t i) { return tags_[name[uf_.find(i)]]; };
    for (auto r : reps) out.solved.constraints.push_back(SortC{tags_[name[r]], sort_[r]});
    for (auto r : reps)
      for (const auto& [f, t] : feats_[r]) out.solved.constraints.push_back(FeatC{tags_[name[r]], f, tag_of(t)});
    for (auto r : reps) {
      std::vector<Tag> cls{tags_[name[r]]};
      for (auto m : members[r]) {
        if (m == name[r]) continue;
        cls.push_back(tags_[m]);
        out.equalities.push_back({tags_[name[r]], tags_[m]});
      }
      out.classes.push_back(std::move(cls));
    }
    if (clause_.root) {
      out.root = tag_of(id(*clause_.root));
      out.solved.root = out.root;
    }
    return out;
  }

  NormalForm fail() { return NormalForm{Inconsistent{tags_[witness_], steps_, std::move(trace_)}}; }

  void log(std::string line) {
    if (opt_.trace) trace_.push_back(std::move(line));
  }

  const Clause& clause_;
  const SortLattice& lat_;
  NormalizeOptions opt_;
  std::mt19937_64 rng_;
  std::vector<Tag> tags_;
  std::unordered_map<Tag, std::uint32_t> index_;
  UnionFind uf_;
  std::vector<SortId> sort_;
  std::vector<std::vector<std::pair<FeatureId, std::uint32_t>>> feats_;
  std::deque<std::pair<std::uint32_t, std::uint32_t>> pending_;
  std::size_t steps_ = 0;
  bool failed_ = false;
  std::uint32_t witness_ = 0;
  std::vector<std::string> trace_;
};

}  // namespace detail

// Applies the four normalization rules to a fixpoint: Tag Elimination via
// union-find, Sort Intersection via glb, Feature Functionality by merging
// the targets, Inconsistent Sort when a glb reaches bot.
inline NormalForm normalize(const Clause& c, const SortLattice& lat, const NormalizeOptions& opt = {}) {
  return detail::Normalizer(c, lat, opt).run();
}

inline const Clause& solved_part(const NormalForm& nf) { return nf.normalized().solved; }

}  // namespace fosf
