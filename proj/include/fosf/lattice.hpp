#pragma once

#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fosf/closure.hpp"
#include "fosf/errors.hpp"
#include "fosf/signature.hpp"

namespace fosf {

// Down-sets of the crisp support relation (degree > 0) as bitsets.
class CrispSupport {
 public:
  explicit CrispSupport(const SubsumptionGraph& g) : n_(g.sort_count()), words_((n_ + 63) / 64) {
    down_.assign(n_, std::vector<std::uint64_t>(words_, 0));
    std::vector<std::vector<SortId>> preds(n_);
    for (const auto& e : g.edges()) preds[e.super.index].push_back(e.sub);
    for (SortId v : g.topological_order()) {
      auto& d = down_[v.index];
      set(d, v.index);
      set(d, Signature::bot().index);
      for (SortId u : preds[v.index]) {
        const auto& du = down_[u.index];
        for (std::size_t w = 0; w < words_; ++w) d[w] |= du[w];
      }
    }
    auto& top = down_[Signature::top().index];
    for (std::uint32_t i = 0; i < n_; ++i) set(top, i);
  }

  bool leq(SortId s, SortId t) const { return test(down_[t.index], s.index); }
  const std::vector<std::uint64_t>& down(SortId s) const { return down_[s.index]; }
  std::size_t sort_count() const { return n_; }

  static bool test(const std::vector<std::uint64_t>& b, std::uint32_t i) { return (b[i >> 6] >> (i & 63)) & 1u; }
  static void set(std::vector<std::uint64_t>& b, std::uint32_t i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }

  std::vector<std::uint64_t> common(SortId s, SortId t) const {
    std::vector<std::uint64_t> c(words_);
    for (std::size_t w = 0; w < words_; ++w) c[w] = down_[s.index][w] & down_[t.index][w];
    return c;
  }

  // Members of a bitset that are not strictly below another member.
  std::vector<SortId> maximal(const std::vector<std::uint64_t>& set_bits) const {
    std::vector<SortId> members, out;
    for (std::uint32_t i = 0; i < n_; ++i)
      if (test(set_bits, i)) members.push_back(SortId{i});
    for (SortId m : members) {
      bool dominated = false;
      for (SortId x : members)
        if (x != m && leq(m, x)) { dominated = true; break; }
      if (!dominated) out.push_back(m);
    }
    return out;
  }

  // The greatest element of down(s) ∩ down(t), if any.
  std::optional<SortId> glb(SortId s, SortId t, const SubsumptionGraph& g) const {
    auto c = common(s, t);
    std::optional<SortId> cand;
    std::uint32_t best_pos = 0;
    for (std::uint32_t i = 0; i < n_; ++i) {
      if (!test(c, i)) continue;
      std::uint32_t pos = g.topological_position(SortId{i});
      if (!cand || pos > best_pos) { cand = SortId{i}; best_pos = pos; }
    }
    const auto& dg = down_[cand->index];
    for (std::size_t w = 0; w < words_; ++w)
      if ((c[w] & ~dg[w]) != 0) return std::nullopt;
    return cand;
  }

 private:
  std::size_t n_, words_;
  std::vector<std::vector<std::uint64_t>> down_;
};

// A validated bounded fuzzy sort lattice: graph, closure and full GLB table.
class SortLattice {
 public:
  SortLattice(std::shared_ptr<const SubsumptionGraph> graph, bool dense = false)
      : graph_(std::move(graph)), closure_(graph_, dense), support_(*graph_), n_(graph_->sort_count()) {
    glb_.resize(n_ * n_);
    for (std::uint32_t s = 0; s < n_; ++s) {
      for (std::uint32_t t = s; t < n_; ++t) {
        auto g = support_.glb(SortId{s}, SortId{t}, *graph_);
        if (!g) {
          std::vector<std::string> names;
          for (SortId m : support_.maximal(support_.common(SortId{s}, SortId{t})))
            names.push_back(signature().name(m));
          throw NotALattice(signature().name(SortId{s}), signature().name(SortId{t}), std::move(names));
        }
        glb_[s * n_ + t] = *g;
        glb_[t * n_ + s] = *g;
      }
    }
  }

  SortLattice(const SortLattice&) = delete;
  SortLattice& operator=(const SortLattice&) = delete;

  const Signature& signature() const { return graph_->signature(); }
  const std::shared_ptr<const Signature>& signature_ptr() const { return graph_->signature_ptr(); }
  const SubsumptionGraph& graph() const { return *graph_; }
  const std::shared_ptr<const SubsumptionGraph>& graph_ptr() const { return graph_; }
  const ClosureTable& closure() const { return closure_; }
  const CrispSupport& support() const { return support_; }

  Degree degree(SortId s, SortId t) const { return closure_.degree(s, t); }
  SortId glb(SortId s, SortId t) const { return glb_[s.index * n_ + t.index]; }
  std::size_t sort_count() const { return n_; }

 private:
  std::shared_ptr<const SubsumptionGraph> graph_;
  ClosureTable closure_;
  CrispSupport support_;
  std::size_t n_;
  std::vector<SortId> glb_;
};

// GLB of a single pair without materializing the table.
inline SortId glb_pair(const SubsumptionGraph& g, const CrispSupport& support, SortId s, SortId t) {
  if (auto r = support.glb(s, t, g)) return *r;
  std::vector<std::string> names;
  for (SortId m : support.maximal(support.common(s, t))) names.push_back(g.signature().name(m));
  throw NotALattice(g.signature().name(s), g.signature().name(t), std::move(names));
}

inline std::shared_ptr<const SortLattice> validate_lattice(std::shared_ptr<const SubsumptionGraph> g,
                                                           bool dense = false) {
  return std::make_shared<const SortLattice>(std::move(g), dense);
}

inline std::shared_ptr<const SortLattice> validate_lattice(SubsumptionGraph g, bool dense = false) {
  return validate_lattice(std::make_shared<const SubsumptionGraph>(std::move(g)), dense);
}

}  // namespace fosf
