#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "fosf/degree.hpp"
#include "fosf/errors.hpp"

namespace fosf {

struct SortId {
  std::uint32_t index = 0;
  friend auto operator<=>(const SortId&, const SortId&) = default;
};

struct FeatureId {
  std::uint32_t index = 0;
  friend auto operator<=>(const FeatureId&, const FeatureId&) = default;
};

namespace detail {

inline bool is_lower_identifier(std::string_view s) {
  if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

}  // namespace detail

// Sort and feature symbol tables. Index 0 is always `bot`, index 1 `top`.
class Signature {
 public:
  static constexpr SortId bot() { return SortId{0}; }
  static constexpr SortId top() { return SortId{1}; }

  Signature() {
    sort_names_ = {"bot", "top"};
    sort_index_ = {{"bot", 0}, {"top", 1}};
  }

  SortId add_sort(std::string_view name) {
    std::string n(name);
    if (!detail::is_lower_identifier(n)) throw InvalidName(n);
    if (sort_index_.count(n) || feature_index_.count(n)) throw DuplicateName(n);
    SortId id{static_cast<std::uint32_t>(sort_names_.size())};
    sort_names_.push_back(n);
    sort_index_.emplace(std::move(n), id.index);
    return id;
  }

  // Idempotent variant: returns the existing id for bot/top or a known sort.
  SortId ensure_sort(std::string_view name) {
    if (auto id = find_sort(name)) return *id;
    return add_sort(name);
  }

  FeatureId add_feature(std::string_view name) {
    std::string n(name);
    if (!detail::is_lower_identifier(n)) throw InvalidName(n);
    if (sort_index_.count(n) || feature_index_.count(n)) throw DuplicateName(n);
    FeatureId id{static_cast<std::uint32_t>(feature_names_.size())};
    feature_names_.push_back(n);
    feature_index_.emplace(std::move(n), id.index);
    return id;
  }

  std::optional<SortId> find_sort(std::string_view name) const {
    auto it = sort_index_.find(std::string(name));
    if (it == sort_index_.end()) return std::nullopt;
    return SortId{it->second};
  }
  std::optional<FeatureId> find_feature(std::string_view name) const {
    auto it = feature_index_.find(std::string(name));
    if (it == feature_index_.end()) return std::nullopt;
    return FeatureId{it->second};
  }
  SortId sort(std::string_view name) const {
    if (auto id = find_sort(name)) return *id;
    throw UnknownSort(std::string(name));
  }
  FeatureId feature(std::string_view name) const {
    if (auto id = find_feature(name)) return *id;
    throw UnknownFeature(std::string(name));
  }

  const std::string& name(SortId s) const { return sort_names_.at(s.index); }
  const std::string& name(FeatureId f) const { return feature_names_.at(f.index); }

  std::size_t sort_count() const { return sort_names_.size(); }
  std::size_t feature_count() const { return feature_names_.size(); }

  std::vector<SortId> sorts() const {
    std::vector<SortId> out;
    for (std::uint32_t i = 0; i < sort_names_.size(); ++i) out.push_back(SortId{i});
    return out;
  }
  std::vector<FeatureId> features() const {
    std::vector<FeatureId> out;
    for (std::uint32_t i = 0; i < feature_names_.size(); ++i) out.push_back(FeatureId{i});
    return out;
  }

  bool operator==(const Signature& o) const {
    return sort_names_ == o.sort_names_ && feature_names_ == o.feature_names_;
  }

 private:
  std::vector<std::string> sort_names_;
  std::vector<std::string> feature_names_;
  std::unordered_map<std::string, std::uint32_t> sort_index_;
  std::unordered_map<std::string, std::uint32_t> feature_index_;
};

struct SubsumptionEdge {
  SortId sub;
  SortId super;
  Degree degree = kOne;
  friend bool operator==(const SubsumptionEdge&, const SubsumptionEdge&) = default;
};

// The declared fragment of the fuzzy subsumption relation: a weighted DAG
// whose max-min reflexive-transitive closure is the relation itself.
// bot <= s and s <= top hold by definition and are not stored as edges.
class SubsumptionGraph {
 public:
  SubsumptionGraph(std::shared_ptr<const Signature> sig, std::vector<SubsumptionEdge> edges)
      : sig_(std::move(sig)) {
    const std::size_t n = sig_->sort_count();
    // Parallel edges collapse to the strongest one.
    std::vector<SubsumptionEdge> merged;
    std::unordered_map<std::uint64_t, std::size_t> seen;
    for (const auto& e : edges) {
      if (e.sub.index >= n || e.super.index >= n) throw UnknownSort("#" + std::to_string(std::max(e.sub.index, e.super.index)));
      if (!(e.degree > 0.0 && e.degree <= 1.0)) throw DegreeOutOfRange(e.degree);
      if (e.sub == e.super) throw CycleDetected({sig_->name(e.sub), sig_->name(e.super)});
      if (e.super == Signature::bot()) throw CycleDetected({"bot", sig_->name(e.sub), "bot"});
      if (e.sub == Signature::top()) throw CycleDetected({"top", sig_->name(e.super), "top"});
      std::uint64_t key = (std::uint64_t{e.sub.index} << 32) | e.super.index;
      auto [it, fresh] = seen.emplace(key, merged.size());
      if (fresh) {
        merged.push_back(e);
      } else {
        merged[it->second].degree = std::max(merged[it->second].degree, e.degree);
      }
    }
    if (merged.empty()) merged.push_back({Signature::bot(), Signature::top(), kOne});
    edges_ = std::move(merged);
    out_.assign(n, {});
    for (const auto& e : edges_) out_[e.sub.index].push_back({e.super, e.degree});
    compute_topological_order();
  }

  const Signature& signature() const { return *sig_; }
  const std::shared_ptr<const Signature>& signature_ptr() const { return sig_; }
  const std::vector<SubsumptionEdge>& edges() const { return edges_; }
  std::size_t sort_count() const { return sig_->sort_count(); }

  const std::vector<std::pair<SortId, Degree>>& successors(SortId s) const { return out_[s.index]; }

  // Sorts in an order where every edge goes forward.
  const std::vector<SortId>& topological_order() const { return topo_; }
  std::uint32_t topological_position(SortId s) const { return topo_pos_[s.index]; }

  std::string to_dot() const {
    std::ostringstream os;
    os << "digraph subsumption {\n  rankdir=BT;\n  node [shape=ellipse];\n";
    for (std::size_t i = 0; i < sig_->sort_count(); ++i) {
      os << "  \"" << sig_->name(SortId{static_cast<std::uint32_t>(i)}) << "\";\n";
    }
    for (const auto& e : edges_) {
      os << "  \"" << sig_->name(e.sub) << "\" -> \"" << sig_->name(e.super) << "\" [label=\""
         << format_degree(e.degree) << "\"];\n";
    }
    os << "}\n";
    return os.str();
  }

 private:
  void compute_topological_order() {
    const std::size_t n = out_.size();
    enum : char { kWhite, kGrey, kBlack };
    std::vector<char> colour(n, kWhite);
    std::vector<std::uint32_t> parent(n, 0);
    std::vector<SortId> post;
    post.reserve(n);
    // Iterative DFS so deep ontologies do not exhaust the stack.
    std::vector<std::pair<std::uint32_t, std::size_t>> stack;
    for (std::uint32_t root = 0; root < n; ++root) {
      if (colour[root] != kWhite) continue;
      stack.push_back({root, 0});
      colour[root] = kGrey;
      while (!stack.empty()) {
        auto& [u, next] = stack.back();
        if (next < out_[u].size()) {
          std::uint32_t v = out_[u][next++].first.index;
          if (colour[v] == kGrey) {
            std::vector<std::string> cycle{sig_->name(SortId{v})};
            for (std::uint32_t w = u; w != v; w = parent[w]) cycle.push_back(sig_->name(SortId{w}));
            cycle.push_back(sig_->name(SortId{v}));
            std::reverse(cycle.begin(), cycle.end());
            throw CycleDetected(std::move(cycle));
          }
          if (colour[v] == kWhite) {
            colour[v] = kGrey;
            parent[v] = u;
            stack.push_back({v, 0});
          }
        } else {
          colour[u] = kBlack;
          post.push_back(SortId{u});
          stack.pop_back();
        }
      }
    }
    // bot first and top last, so the implicit bounds also respect the order.
    topo_.clear();
    topo_.push_back(Signature::bot());
    for (auto it = post.rbegin(); it != post.rend(); ++it)
      if (*it != Signature::bot() && *it != Signature::top()) topo_.push_back(*it);
    topo_.push_back(Signature::top());
    topo_pos_.assign(n, 0);
    for (std::uint32_t i = 0; i < topo_.size(); ++i) topo_pos_[topo_[i].index] = i;
  }

  std::shared_ptr<const Signature> sig_;
  std::vector<SubsumptionEdge> edges_;
  std::vector<std::vector<std::pair<SortId, Degree>>> out_;
  std::vector<SortId> topo_;
  std::vector<std::uint32_t> topo_pos_;
};

struct NamedEdge {
  std::string sub;
  std::string super;
  Degree degree = kOne;
};

// Builds a signature and its declared subsumption DAG. `bot` and `top` are
// always present; listing them among `sorts` is allowed.
inline SubsumptionGraph build_signature(const std::vector<std::string>& sorts,
                                        const std::vector<std::string>& features,
                                        const std::vector<NamedEdge>& edges) {
  auto sig = std::make_shared<Signature>();
  for (const auto& s : sorts) {
    if (s == "bot" || s == "top") continue;
    sig->add_sort(s);
  }
  for (const auto& f : features) sig->add_feature(f);
  std::vector<SubsumptionEdge> resolved;
  resolved.reserve(edges.size());
  for (const auto& e : edges) {
    if (!(e.degree > 0.0 && e.degree <= 1.0)) throw DegreeOutOfRange(e.degree);
    resolved.push_back({sig->sort(e.sub), sig->sort(e.super), e.degree});
  }
  return SubsumptionGraph(std::move(sig), std::move(resolved));
}

}  // namespace fosf

template <>
struct std::hash<fosf::SortId> {
  std::size_t operator()(fosf::SortId s) const noexcept { return std::hash<std::uint32_t>{}(s.index); }
};
template <>
struct std::hash<fosf::FeatureId> {
  std::size_t operator()(fosf::FeatureId f) const noexcept { return std::hash<std::uint32_t>{}(f.index); }
};
