#pragma once

#include <algorithm>
#include <memory>
#include <mutex>
#include <vector>

#include "fosf/degree.hpp"
#include "fosf/signature.hpp"

namespace fosf {

// Max-min reflexive-transitive closure of a subsumption DAG. Rows are
// computed on first use by a single sweep in topological order and then
// cached; concurrent readers are safe.
class ClosureTable {
 public:
  explicit ClosureTable(std::shared_ptr<const SubsumptionGraph> graph, bool dense = false)
      : graph_(std::move(graph)),
        n_(graph_->sort_count()),
        rows_(n_),
        once_(std::make_unique<std::once_flag[]>(n_)) {
    if (dense) {
      for (std::uint32_t s = 0; s < n_; ++s) row(SortId{s});
    }
  }

  ClosureTable(const ClosureTable&) = delete;
  ClosureTable& operator=(const ClosureTable&) = delete;

  Degree degree(SortId s, SortId t) const {
    if (s == t || s == Signature::bot() || t == Signature::top()) return kOne;
    return row(s)[t.index];
  }

  const std::vector<Degree>& row(SortId s) const {
    std::call_once(once_[s.index], [&] { rows_[s.index] = compute_row(s); });
    return rows_[s.index];
  }

  std::size_t sort_count() const { return n_; }
  const SubsumptionGraph& graph() const { return *graph_; }

  std::size_t materialized_rows() const {
    return static_cast<std::size_t>(
        std::count_if(rows_.begin(), rows_.end(), [](const auto& r) { return !r.empty(); }));
  }

 private:
  std::vector<Degree> compute_row(SortId s) const {
    std::vector<Degree> best(n_, kZero);
    if (s == Signature::bot()) {
      best.assign(n_, kOne);
      return best;
    }
    best[s.index] = kOne;
    const auto& order = graph_->topological_order();
    for (std::size_t i = graph_->topological_position(s); i < order.size(); ++i) {
      SortId u = order[i];
      Degree du = best[u.index];
      if (du == kZero) continue;
      for (const auto& [v, w] : graph_->successors(u)) {
        Degree cand = std::min(du, w);
        if (cand > best[v.index]) best[v.index] = cand;
      }
    }
    best[Signature::top().index] = kOne;
    return best;
  }

  std::shared_ptr<const SubsumptionGraph> graph_;
  std::size_t n_;
  mutable std::vector<std::vector<Degree>> rows_;
  std::unique_ptr<std::once_flag[]> once_;
};

}  // namespace fosf
