#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "fosf/errors.hpp"
#include "fosf/signature.hpp"

namespace fosf {

struct Tag {
  std::string name;
  friend auto operator<=>(const Tag&, const Tag&) = default;
};

inline bool is_valid_tag(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (s.size() > 2 && s[0] == '_' && s[1] == 'Z') {
    i = 2;
  } else if (!(s[0] >= 'A' && s[0] <= 'Z')) {
    return false;
  }
  return std::all_of(s.begin() + i, s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

}  // namespace fosf

template <>
struct std::hash<fosf::Tag> {
  std::size_t operator()(const fosf::Tag& t) const noexcept { return std::hash<std::string>{}(t.name); }
};

namespace fosf {

// Produces `_Z<n>` names that avoid every tag registered with it.
class TagGenerator {
 public:
  TagGenerator() = default;
  template <class Range>
  explicit TagGenerator(const Range& used) {
    for (const auto& t : used) reserve(t);
  }
  void reserve(const Tag& t) { used_.insert(t.name); }
  Tag fresh() {
    for (;;) {
      std::string name = "_Z" + std::to_string(next_++);
      if (used_.insert(name).second) return Tag{name};
    }
  }

 private:
  std::unordered_set<std::string> used_;
  std::size_t next_ = 0;
};

struct Arg;

struct Term {
  Tag tag;
  SortId sort = Signature::top();
  std::vector<Arg> args;

  // A bare tag occurrence: sort top and no arguments.
  bool trivial() const { return sort == Signature::top() && args.empty(); }
  friend bool operator==(const Term&, const Term&);
};

struct Arg {
  FeatureId feature;
  Term value;
  friend bool operator==(const Arg&, const Arg&) = default;
};

inline bool operator==(const Term& a, const Term& b) {
  return a.tag == b.tag && a.sort == b.sort && a.args == b.args;
}

inline Term leaf(Tag tag, SortId sort = Signature::top()) { return Term{std::move(tag), sort, {}}; }

// Tags in first-occurrence pre-order.
inline std::vector<Tag> tags_of(const Term& t) {
  std::vector<Tag> out;
  std::unordered_set<Tag> seen;
  std::vector<const Term*> stack{&t};
  while (!stack.empty()) {
    const Term* x = stack.back();
    stack.pop_back();
    if (seen.insert(x->tag).second) out.push_back(x->tag);
    for (auto it = x->args.rbegin(); it != x->args.rend(); ++it) stack.push_back(&it->value);
  }
  return out;
}

template <class F>
void for_each_subterm(const Term& t, F&& f) {
  std::vector<const Term*> stack{&t};
  while (!stack.empty()) {
    const Term* x = stack.back();
    stack.pop_back();
    f(*x);
    for (auto it = x->args.rbegin(); it != x->args.rend(); ++it) stack.push_back(&it->value);
  }
}

// Why `t` is not a normal term, or nullopt if it is.
inline std::optional<std::string> normal_violation(const Term& t, const Signature& sig) {
  std::unordered_map<Tag, int> nontrivial;
  std::optional<std::string> why;
  for_each_subterm(t, [&](const Term& x) {
    if (why) return;
    if (x.sort == Signature::bot()) { why = "tag " + x.tag.name + " has sort bot"; return; }
    std::set<FeatureId> feats;
    for (const auto& a : x.args)
      if (!feats.insert(a.feature).second) {
        why = "feature " + sig.name(a.feature) + " repeated under " + x.tag.name;
        return;
      }
    if (!x.trivial() && ++nontrivial[x.tag] > 1) why = "tag " + x.tag.name + " is structured twice";
  });
  return why;
}

// A term in normal form (a psi-term).
class NormalTerm {
 public:
  NormalTerm(Term t, const Signature& sig) : term_(std::move(t)) {
    if (auto why = normal_violation(term_, sig)) throw NotNormal(*why);
    index();
  }

  const Term& term() const { return term_; }
  const Tag& root() const { return term_.tag; }
  const std::vector<Tag>& tags() const { return tags_; }

  // Sort_psi(X): the sort at the structured occurrence of X, top otherwise.
  SortId sort_of(const Tag& x) const {
    auto it = node_.find(x);
    return it == node_.end() ? Signature::top() : it->second->sort;
  }
  // The structured occurrence of X, or nullptr if X only occurs bare.
  const Term* node(const Tag& x) const {
    auto it = node_.find(x);
    return it == node_.end() ? nullptr : it->second;
  }
  std::optional<Tag> child(const Tag& x, FeatureId f) const {
    const Term* n = node(x);
    if (!n) return std::nullopt;
    for (const auto& a : n->args)
      if (a.feature == f) return a.value.tag;
    return std::nullopt;
  }
  bool contains(const Tag& x) const { return tag_set_.count(x) > 0; }

  NormalTerm(const NormalTerm& o) : term_(o.term_) { index(); }
  NormalTerm& operator=(const NormalTerm& o) {
    term_ = o.term_;
    index();
    return *this;
  }
  NormalTerm(NormalTerm&& o) noexcept : term_(std::move(o.term_)) { index(); }
  NormalTerm& operator=(NormalTerm&& o) noexcept {
    term_ = std::move(o.term_);
    index();
    return *this;
  }

 private:
  void index() {
    node_.clear();
    tags_ = tags_of(term_);
    tag_set_ = {tags_.begin(), tags_.end()};
    for_each_subterm(term_, [&](const Term& x) {
      if (!x.trivial()) node_[x.tag] = &x;
    });
  }

  Term term_;
  std::vector<Tag> tags_;
  std::unordered_set<Tag> tag_set_;
  std::unordered_map<Tag, const Term*> node_;
};

struct SortC {
  Tag x;
  SortId s;
  friend auto operator<=>(const SortC&, const SortC&) = default;
};
struct EqC {
  Tag x, y;
  friend auto operator<=>(const EqC&, const EqC&) = default;
};
struct FeatC {
  Tag x;
  FeatureId f;
  Tag y;
  friend auto operator<=>(const FeatC&, const FeatC&) = default;
};

using Constraint = std::variant<SortC, EqC, FeatC>;

struct Clause {
  std::vector<Constraint> constraints;
  std::optional<Tag> root;

  std::vector<Tag> tags() const {
    std::vector<Tag> out;
    std::unordered_set<Tag> seen;
    auto add = [&](const Tag& t) {
      if (seen.insert(t).second) out.push_back(t);
    };
    if (root) add(*root);
    for (const auto& c : constraints) {
      std::visit([&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        add(k.x);
        if constexpr (std::is_same_v<K, EqC>) add(k.y);
        if constexpr (std::is_same_v<K, FeatC>) add(k.y);
      }, c);
    }
    return out;
  }

  // Constraints as a sorted multiset, for order-insensitive comparison.
  std::vector<Constraint> sorted() const {
    auto v = constraints;
    std::sort(v.begin(), v.end());
    return v;
  }
};

inline bool same_constraints(const Clause& a, const Clause& b) {
  return a.root == b.root && a.sorted() == b.sorted();
}

inline std::optional<std::string> solved_violation(const Clause& c) {
  std::set<Tag> sorted;
  std::set<std::pair<Tag, FeatureId>> feats;
  for (const auto& k : c.constraints) {
    if (std::holds_alternative<EqC>(k)) return "equality constraint " + std::get<EqC>(k).x.name + " = " + std::get<EqC>(k).y.name;
    if (auto* s = std::get_if<SortC>(&k)) {
      if (s->s == Signature::bot()) return "tag " + s->x.name + " has sort bot";
      if (!sorted.insert(s->x).second) return "tag " + s->x.name + " sorted twice";
    }
    if (auto* f = std::get_if<FeatC>(&k)) {
      if (!feats.insert({f->x, f->f}).second) return "feature repeated under " + f->x.name;
    }
  }
  return std::nullopt;
}

inline bool is_solved(const Clause& c) { return !solved_violation(c); }

inline std::optional<std::string> rooted_violation(const Clause& c) {
  if (!c.root) return "no root";
  std::unordered_map<Tag, std::vector<Tag>> out;
  std::unordered_set<Tag> sorted;
  for (const auto& k : c.constraints) {
    if (auto* f = std::get_if<FeatC>(&k)) out[f->x].push_back(f->y);
    if (auto* s = std::get_if<SortC>(&k)) sorted.insert(s->x);
  }
  std::unordered_set<Tag> seen{*c.root};
  std::vector<Tag> stack{*c.root};
  while (!stack.empty()) {
    Tag x = stack.back();
    stack.pop_back();
    for (const auto& y : out[x])
      if (seen.insert(y).second) stack.push_back(y);
  }
  for (const auto& t : c.tags()) {
    if (!seen.count(t)) return "tag " + t.name + " unreachable from " + c.root->name;
    if (!sorted.count(t)) return "tag " + t.name + " unsorted";
  }
  return std::nullopt;
}

inline bool is_rooted(const Clause& c) { return !rooted_violation(c); }

// phi(t): pre-order, X:s at every structured occurrence plus X:top once for
// tags that only ever occur bare, and one feature constraint per argument.
inline Clause term_to_clause(const Term& t) {
  Clause c;
  c.root = t.tag;
  std::unordered_set<Tag> structured;
  for_each_subterm(t, [&](const Term& x) {
    if (!x.trivial()) structured.insert(x.tag);
  });
  std::unordered_set<Tag> bare_emitted;
  for_each_subterm(t, [&](const Term& x) {
    if (!x.trivial()) {
      c.constraints.push_back(SortC{x.tag, x.sort});
    } else if (!structured.count(x.tag) && bare_emitted.insert(x.tag).second) {
      c.constraints.push_back(SortC{x.tag, Signature::top()});
    }
    for (const auto& a : x.args) c.constraints.push_back(FeatC{x.tag, a.feature, a.value.tag});
  });
  return c;
}

inline Clause term_to_clause(const NormalTerm& t) { return term_to_clause(t.term()); }

// psi(phi): depth-first from the root following feature constraints in
// clause order. The first visit of a tag carries its sort and arguments.
inline Term clause_to_term_raw(const Clause& c) {
  if (auto why = solved_violation(c)) throw NotSolved(*why);
  if (auto why = rooted_violation(c)) throw NotRooted(*why);
  std::unordered_map<Tag, SortId> sort;
  std::unordered_map<Tag, std::vector<std::pair<FeatureId, Tag>>> out;
  for (const auto& k : c.constraints) {
    if (auto* s = std::get_if<SortC>(&k)) sort[s->x] = s->s;
    if (auto* f = std::get_if<FeatC>(&k)) out[f->x].push_back({f->f, f->y});
  }
  std::unordered_set<Tag> visited;
  // Explicit stack: (node under construction, index of next argument).
  Term root;
  root.tag = *c.root;
  struct Frame { Term* node; std::size_t next; };
  std::vector<Frame> stack;
  auto open = [&](Term& node) {
    visited.insert(node.tag);
    node.sort = sort.at(node.tag);
    const auto& succ = out[node.tag];
    node.args.reserve(succ.size());
    for (const auto& [f, y] : succ) node.args.push_back(Arg{f, leaf(y)});
    stack.push_back({&node, 0});
  };
  open(root);
  while (!stack.empty()) {
    auto& fr = stack.back();
    if (fr.next == fr.node->args.size()) {
      stack.pop_back();
      continue;
    }
    Term& child = fr.node->args[fr.next++].value;
    if (!visited.count(child.tag)) open(child);
  }
  return root;
}

inline NormalTerm clause_to_term(const Clause& c, const Signature& sig) { return NormalTerm(clause_to_term_raw(c), sig); }

// Moves every structured occurrence to the first depth-first occurrence of
// its tag, the layout clause_to_term produces.
inline Term canonical_layout(const NormalTerm& t) { return clause_to_term_raw(term_to_clause(t)); }

// Renames tags through `m`; tags not in the map are kept.
inline Term rename(const Term& t, const std::unordered_map<Tag, Tag>& m) {
  Term out;
  auto it = m.find(t.tag);
  out.tag = it == m.end() ? t.tag : it->second;
  out.sort = t.sort;
  out.args.reserve(t.args.size());
  for (const auto& a : t.args) out.args.push_back(Arg{a.feature, rename(a.value, m)});
  return out;
}

inline Clause rename(const Clause& c, const std::unordered_map<Tag, Tag>& m) {
  auto r = [&](const Tag& t) {
    auto it = m.find(t);
    return it == m.end() ? t : it->second;
  };
  Clause out;
  if (c.root) out.root = r(*c.root);
  for (const auto& k : c.constraints) {
    std::visit([&](const auto& x) {
      using K = std::decay_t<decltype(x)>;
      if constexpr (std::is_same_v<K, SortC>) out.constraints.push_back(SortC{r(x.x), x.s});
      if constexpr (std::is_same_v<K, EqC>) out.constraints.push_back(EqC{r(x.x), r(x.y)});
      if constexpr (std::is_same_v<K, FeatC>) out.constraints.push_back(FeatC{r(x.x), x.f, r(x.y)});
    }, k);
  }
  return out;
}

}  // namespace fosf
