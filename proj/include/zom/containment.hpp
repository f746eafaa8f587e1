#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

#include "zom/errors.hpp"
#include "zom/matrix.hpp"
#include "zom/pattern.hpp"

namespace zom {

/// Strictly increasing host indices for every pattern row and column.
struct Occurrence {
  std::vector<index_t> row_map;
  std::vector<index_t> col_map;
  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

struct SearchLimits {
  std::uint64_t node_budget = 1'000'000'000;
  unsigned threads = 1;
};

enum class MatchStatus { found, free, unknown };

struct MatchResult {
  MatchStatus status = MatchStatus::free;
  std::optional<Occurrence> occurrence;
  std::uint64_t nodes = 0;
};

/// Inclusive bounds on the host index a pattern row or column may take.
struct IndexRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

/// True iff every pattern one lands on a host one and both maps are strictly increasing and in range.
inline bool is_occurrence(const Pattern& p, const Matrix01& a, const Occurrence& w) {
  if (w.row_map.size() != p.rows() || w.col_map.size() != p.cols()) return false;
  for (std::size_t i = 0; i < w.row_map.size(); ++i)
    if (w.row_map[i] >= a.rows() || (i > 0 && w.row_map[i] <= w.row_map[i - 1])) return false;
  for (std::size_t j = 0; j < w.col_map.size(); ++j)
    if (w.col_map[j] >= a.cols() || (j > 0 && w.col_map[j] <= w.col_map[j - 1])) return false;
  for (auto x : p.ones())
    if (!a.at(w.row_map[x.row], w.col_map[x.col])) return false;
  return true;
}

namespace detail {

inline constexpr std::int64_t kUnset = -1;

// Tightens ranges so that consecutive indices leave room for each other.
inline bool propagate(std::vector<IndexRange>& ranges) {
  for (std::size_t q = 1; q < ranges.size(); ++q) ranges[q].lo = std::max(ranges[q].lo, ranges[q - 1].lo + 1);
  for (std::size_t q = ranges.size() - 1; q-- > 0;) ranges[q].hi = std::min(ranges[q].hi, ranges[q + 1].hi - 1);
  return std::all_of(ranges.begin(), ranges.end(), [](const IndexRange& r) { return r.lo <= r.hi; });
}

inline std::vector<IndexRange> full_ranges(std::size_t count, std::size_t extent) {
  std::vector<IndexRange> out(count);
  for (std::size_t q = 0; q < count; ++q)
    out[q] = {static_cast<std::int64_t>(q), static_cast<std::int64_t>(extent) - static_cast<std::int64_t>(count - q)};
  return out;
}

// Shared between the worker threads of one search.
struct SearchShared {
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};
  std::uint64_t budget = 0;
};

/// Backtracking embedder. Pattern columns are assigned in a static
/// most-constrained-first order; pattern rows get assigned as the columns
/// holding their ones are reached. Empty pattern rows and columns are never
/// branched on; the range bookkeeping keeps room for them.
class Embedder {
 public:
  Embedder(const Pattern& p, const Matrix01& a, std::vector<IndexRange> row_ranges,
           std::vector<IndexRange> col_ranges, SearchShared& shared)
      : p_(p), a_(a), row_ranges_(std::move(row_ranges)), col_ranges_(std::move(col_ranges)), shared_(shared) {
    plan();
  }

  MatchStatus run() {
    row_map_.assign(p_.rows(), kUnset);
    col_map_.assign(p_.cols(), kUnset);
    if (!feasible_) return MatchStatus::free;
    bool hit = descend(0);
    flush_nodes();
    if (hit) return MatchStatus::found;
    return aborted_ ? MatchStatus::unknown : MatchStatus::free;
  }

  const Occurrence& witness() const { return witness_; }

  /// Column searched first; the parallel driver splits its range.
  index_t first_column() const { return order_.empty() ? 0 : order_.front(); }
  bool has_order() const { return !order_.empty(); }

 private:
  enum class Direction { none, ascending, descending };

  struct Step {
    index_t col = 0;
    std::vector<index_t> assigned_rows;    // rows fixed before this step
    std::vector<index_t> unassigned_rows;  // rows this step assigns, ascending
    Direction dominance = Direction::none;
  };

  void plan() {
    const index_t k = p_.rows(), l = p_.cols();
    feasible_ = k <= a_.rows() && l <= a_.cols() && propagate(row_ranges_) && propagate(col_ranges_);
    if (!feasible_) return;
    col_rows_.resize(l);
    for (index_t j = 0; j < l; ++j) col_rows_[j] = p_.col_ones(j);
    std::vector<bool> placed(l, false), row_known(k, false);
    for (index_t j = 0; j < l; ++j)
      if (col_rows_[j].empty()) placed[j] = true;
    while (true) {
      std::int64_t best = -1;
      std::tuple<std::size_t, std::size_t> best_key{};
      for (index_t j = 0; j < l; ++j) {
        if (placed[j]) continue;
        std::size_t known = 0;
        for (auto i : col_rows_[j]) known += row_known[i];
        std::tuple<std::size_t, std::size_t> key{known, col_rows_[j].size()};
        if (best < 0 || key > best_key) {
          best = j;
          best_key = key;
        }
      }
      if (best < 0) break;
      auto j = static_cast<index_t>(best);
      placed[j] = true;
      Step step;
      step.col = j;
      for (auto i : col_rows_[j]) (row_known[i] ? step.assigned_rows : step.unassigned_rows).push_back(i);
      for (auto i : col_rows_[j]) row_known[i] = true;
      order_.push_back(j);
      steps_.push_back(std::move(step));
    }
    for (std::size_t d = 0; d < steps_.size(); ++d) {
      auto& step = steps_[d];
      if (!step.unassigned_rows.empty()) continue;
      bool left = false, right = false;
      for (std::size_t e = d + 1; e < steps_.size(); ++e) (steps_[e].col < step.col ? left : right) = true;
      if (!left) step.dominance = Direction::ascending;
      else if (!right) step.dominance = Direction::descending;
    }
  }

  IndexRange col_domain(index_t j) const {
    IndexRange d = col_ranges_[j];
    for (index_t q = j; q-- > 0;)
      if (col_map_[q] != kUnset) {
        d.lo = std::max(d.lo, col_map_[q] + static_cast<std::int64_t>(j - q));
        break;
      }
    for (index_t q = j + 1; q < p_.cols(); ++q)
      if (col_map_[q] != kUnset) {
        d.hi = std::min(d.hi, col_map_[q] - static_cast<std::int64_t>(q - j));
        break;
      }
    return d;
  }

  IndexRange row_domain(index_t i) const {
    IndexRange d = row_ranges_[i];
    for (index_t q = i; q-- > 0;)
      if (row_map_[q] != kUnset) {
        d.lo = std::max(d.lo, row_map_[q] + static_cast<std::int64_t>(i - q));
        break;
      }
    for (index_t q = i + 1; q < p_.rows(); ++q)
      if (row_map_[q] != kUnset) {
        d.hi = std::min(d.hi, row_map_[q] - static_cast<std::int64_t>(q - i));
        break;
      }
    return d;
  }

  bool tick() {
    if (++local_nodes_ >= 1024) flush_nodes();
    return !aborted_;
  }

  void flush_nodes() {
    auto total = shared_.nodes.fetch_add(local_nodes_) + local_nodes_;
    local_nodes_ = 0;
    if (total > shared_.budget) {
      aborted_ = true;
      shared_.stop = true;
    }
    if (shared_.stop) aborted_ = true;
  }

  static bool row_has_one_in(std::span<const index_t> line, IndexRange d) {
    auto it = std::lower_bound(line.begin(), line.end(), static_cast<index_t>(std::max<std::int64_t>(d.lo, 0)));
    return it != line.end() && static_cast<std::int64_t>(*it) <= d.hi;
  }

  // Cheap look-ahead on everything not yet placed.
  bool forward_check(std::size_t depth) const {
    for (index_t i = 0; i < p_.rows(); ++i)
      if (row_map_[i] == kUnset) {
        auto d = row_domain(i);
        if (d.lo > d.hi) return false;
      }
    for (std::size_t e = depth + 1; e < steps_.size(); ++e) {
      const index_t j = steps_[e].col;
      auto d = col_domain(j);
      if (d.lo > d.hi) return false;
      for (auto i : col_rows_[j])
        if (row_map_[i] != kUnset && !row_has_one_in(a_.row(static_cast<index_t>(row_map_[i])), d)) return false;
    }
    return true;
  }

  bool descend(std::size_t depth) {
    if (depth == steps_.size()) {
      record();
      return true;
    }
    const Step& step = steps_[depth];
    const index_t j = step.col;
    const IndexRange d = col_domain(j);
    if (d.lo > d.hi) return false;

    auto try_column = [&](index_t c) -> int {  // 1 = success, 0 = keep going, -1 = stop this level
      if (!tick()) return -1;
      for (auto i : step.assigned_rows)
        if (!a_.at(static_cast<index_t>(row_map_[i]), c)) return 0;
      col_map_[j] = c;
      bool hit = assign_rows(depth, 0, c);
      if (hit) return 1;
      col_map_[j] = kUnset;
      if (aborted_) return -1;
      return step.dominance == Direction::none ? 0 : -1;
    };

    if (!step.assigned_rows.empty()) {
      index_t anchor = step.assigned_rows.front();
      for (auto i : step.assigned_rows)
        if (a_.row(static_cast<index_t>(row_map_[i])).size() < a_.row(static_cast<index_t>(row_map_[anchor])).size())
          anchor = i;
      auto line = a_.row(static_cast<index_t>(row_map_[anchor]));
      auto first = std::lower_bound(line.begin(), line.end(), static_cast<index_t>(d.lo));
      auto last = std::upper_bound(first, line.end(), static_cast<index_t>(d.hi));
      if (step.dominance == Direction::descending) {
        for (auto it = last; it != first;) {
          int r = try_column(*--it);
          if (r != 0) return r == 1;
        }
      } else {
        for (auto it = first; it != last; ++it) {
          int r = try_column(*it);
          if (r != 0) return r == 1;
        }
      }
      return false;
    }

    const std::size_t need = step.unassigned_rows.size();
    for (auto c = d.lo; c <= d.hi; ++c) {
      if (a_.col(static_cast<index_t>(c)).size() < need) continue;
      int r = try_column(static_cast<index_t>(c));
      if (r != 0) return r == 1;
    }
    return false;
  }

  bool assign_rows(std::size_t depth, std::size_t idx, index_t c) {
    const Step& step = steps_[depth];
    if (idx == step.unassigned_rows.size()) {
      if (!forward_check(depth)) return false;
      return descend(depth + 1);
    }
    const index_t i = step.unassigned_rows[idx];
    const IndexRange d = row_domain(i);
    if (d.lo > d.hi) return false;
    auto line = a_.col(c);
    auto first = std::lower_bound(line.begin(), line.end(), static_cast<index_t>(d.lo));
    for (auto it = first; it != line.end() && static_cast<std::int64_t>(*it) <= d.hi; ++it) {
      if (!tick()) return false;
      row_map_[i] = *it;
      if (assign_rows(depth, idx + 1, c)) return true;
      row_map_[i] = kUnset;
      if (aborted_) return false;
    }
    return false;
  }

  // Fills empty rows/columns with the smallest values the ranges allow.
  void record() {
    auto fill = [](std::vector<std::int64_t> map, const std::vector<IndexRange>& ranges) {
      std::vector<index_t> out(map.size());
      std::int64_t prev = -1;
      for (std::size_t q = 0; q < map.size(); ++q) {
        if (map[q] == kUnset) map[q] = std::max(ranges[q].lo, prev + 1);
        prev = map[q];
        out[q] = static_cast<index_t>(map[q]);
      }
      return out;
    };
    witness_.row_map = fill(row_map_, row_ranges_);
    witness_.col_map = fill(col_map_, col_ranges_);
  }

  const Pattern& p_;
  const Matrix01& a_;
  std::vector<IndexRange> row_ranges_;
  std::vector<IndexRange> col_ranges_;
  SearchShared& shared_;
  bool feasible_ = true;
  bool aborted_ = false;
  std::uint64_t local_nodes_ = 0;
  std::vector<std::vector<index_t>> col_rows_;
  std::vector<index_t> order_;
  std::vector<Step> steps_;
  std::vector<std::int64_t> row_map_;
  std::vector<std::int64_t> col_map_;
  Occurrence witness_;
};

struct RangedResult {
  MatchStatus status = MatchStatus::free;
  Occurrence witness;
  std::uint64_t nodes = 0;
};

// One existence query under the given ranges, optionally split across threads
// by the range of the first searched column.
inline RangedResult search_ranged(const Pattern& p, const Matrix01& a, const std::vector<IndexRange>& rows,
                                  const std::vector<IndexRange>& cols, const SearchLimits& limits) {
  SearchShared shared;
  shared.budget = limits.node_budget;
  RangedResult out;
  Embedder probe(p, a, rows, cols, shared);
  unsigned threads = std::max(1u, limits.threads);
  if (threads == 1 || !probe.has_order()) {
    out.status = probe.run();
    if (out.status == MatchStatus::found) out.witness = probe.witness();
    out.nodes = shared.nodes.load();
    return out;
  }
  const index_t j0 = probe.first_column();
  auto span_range = cols[j0];
  std::int64_t width = span_range.hi - span_range.lo + 1;
  threads = static_cast<unsigned>(std::min<std::int64_t>(threads, std::max<std::int64_t>(width, 1)));
  std::vector<MatchStatus> status(threads, MatchStatus::free);
  std::vector<Occurrence> found(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      auto local_cols = cols;
      local_cols[j0].lo = span_range.lo + width * t / threads;
      local_cols[j0].hi = span_range.lo + width * (t + 1) / threads - 1;
      Embedder worker(p, a, rows, local_cols, shared);
      status[t] = worker.run();
      if (status[t] == MatchStatus::found) {
        found[t] = worker.witness();
        shared.stop = true;
      }
    });
  }
  for (auto& th : pool) th.join();
  out.nodes = shared.nodes.load();
  for (unsigned t = 0; t < threads; ++t)
    if (status[t] == MatchStatus::found) {
      out.status = MatchStatus::found;
      out.witness = found[t];
      return out;
    }
  bool budget_hit = out.nodes > limits.node_budget;
  out.status = budget_hit ? MatchStatus::unknown : MatchStatus::free;
  return out;
}

}  // namespace detail

/// Decides P < A. When a witness exists, the returned one is the
/// lexicographically first by column map, then row map: each index is
/// lowered by binary search on range-restricted existence queries.
inline MatchResult find_occurrence(const Pattern& p, const Matrix01& a, const SearchLimits& limits = {}) {
  MatchResult out;
  if (p.rows() > a.rows() || p.cols() > a.cols()) return out;
  auto rows = detail::full_ranges(p.rows(), a.rows());
  auto cols = detail::full_ranges(p.cols(), a.cols());
  auto first = detail::search_ranged(p, a, rows, cols, limits);
  out.nodes = first.nodes;
  if (first.status != MatchStatus::found) {
    out.status = first.status;
    return out;
  }
  Occurrence best = first.witness;

  auto lower = [&](std::vector<IndexRange>& ranges, std::size_t q, bool is_row) -> bool {
    std::int64_t lo = ranges[q].lo;
    std::int64_t hi = is_row ? best.row_map[q] : best.col_map[q];
    const std::int64_t floor = ranges[q].lo;
    while (lo < hi) {
      std::int64_t mid = lo + (hi - lo) / 2;
      auto trial = ranges;
      trial[q] = {floor, mid};
      auto r = is_row ? detail::search_ranged(p, a, trial, cols, limits)
                      : detail::search_ranged(p, a, rows, trial, limits);
      out.nodes += r.nodes;
      if (r.status == MatchStatus::unknown) return false;
      if (r.status == MatchStatus::found) {
        hi = mid;
        best = r.witness;
      } else {
        lo = mid + 1;
      }
    }
    ranges[q] = {lo, lo};
    return true;
  };

  for (std::size_t j = 0; j < cols.size(); ++j)
    if (!lower(cols, j, false)) {
      out.status = MatchStatus::unknown;
      return out;
    }
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (!lower(rows, i, true)) {
      out.status = MatchStatus::unknown;
      return out;
    }
  out.status = MatchStatus::found;
  out.occurrence = best;
  return out;
}

/// Witness for P < A, or nullopt if A is P-free.
/// Throws budget_exceeded when the search could not decide.
inline std::optional<Occurrence> contains(const Pattern& p, const Matrix01& a, const SearchLimits& limits = {}) {
  auto r = find_occurrence(p, a, limits);
  if (r.status == MatchStatus::unknown) throw budget_exceeded("containment search exceeded its node budget");
  return r.occurrence;
}

}  // namespace zom
