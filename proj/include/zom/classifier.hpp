#pragma once

#include <algorithm>
#include <array>
#include <climits>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zom/containment.hpp"
#include "zom/matrix.hpp"
#include "zom/pattern.hpp"
#include "zom/registry.hpp"

namespace zom {

struct CoveringWitness {
  index_t k_star = 0;
  std::vector<index_t> J;
  std::vector<std::pair<index_t, index_t>> intervals;  // (first, last) per member of J
};

namespace detail {

// Some column has two ones among rows lo..hi inclusive.
inline bool column_links(const Pattern& p, index_t lo, index_t hi) {
  for (index_t c = 0; c < p.cols(); ++c) {
    int hits = 0;
    for (index_t r = lo; r <= hi; ++r) hits += p.at(r, c);
    if (hits >= 2) return true;
  }
  return false;
}

}  // namespace detail

/// Witness for the smallest valid distinguished row, or nullopt.
inline std::optional<CoveringWitness> is_covering(const Pattern& p) {
  if (!is_acyclic(p)) return std::nullopt;
  const index_t last = p.cols() - 1;
  for (index_t k = 0; k < p.rows(); ++k) {
    if (!p.at(k, 0) || !p.at(k, last)) continue;
    CoveringWitness w;
    w.k_star = k;
    for (index_t r = 0; r < p.rows(); ++r)
      if (r != k && p.row_weight(r) >= 2) w.J.push_back(r);
    auto below = std::count_if(w.J.begin(), w.J.end(), [&](index_t r) { return r < k; });
    if (below > 1) continue;
    bool linked = std::all_of(w.J.begin(), w.J.end(), [&](index_t r) {
      return r < k ? detail::column_links(p, r, k) : detail::column_links(p, k, r);
    });
    if (!linked) continue;
    for (auto r : w.J) {
      auto ones = p.row_ones(r);
      w.intervals.emplace_back(ones.front(), ones.back());
    }
    auto spans = w.intervals;
    std::sort(spans.begin(), spans.end());
    index_t reach = 0;
    bool covered = !spans.empty() && spans.front().first == 0;
    for (auto [first, end] : spans) {
      if (!covered || first > reach) {
        covered = false;
        break;
      }
      reach = std::max(reach, end);
    }
    if (covered && reach == last) return w;
  }
  return std::nullopt;
}

/// No decomposition into single rows by horizontal cuts exists.
inline constexpr unsigned kNoDecomposition = UINT_MAX;

/// Least s such that P is class-s degenerate under horizontal cuts.
inline unsigned degeneracy_class(const Pattern& p) {
  const index_t k = p.rows();
  // memo[lo][hi] for the row range lo..hi inclusive
  std::vector<std::vector<unsigned>> memo(k, std::vector<unsigned>(k, kNoDecomposition));
  for (index_t len = 1; len <= k; ++len)
    for (index_t lo = 0; lo + len <= k; ++lo) {
      const index_t hi = lo + len - 1;
      if (len == 1) {
        memo[lo][hi] = 0;
        continue;
      }
      unsigned best = kNoDecomposition;
      for (index_t cut = lo; cut < hi; ++cut) {
        unsigned shared = 0;
        for (index_t c = 0; c < p.cols(); ++c) {
          bool top = false, bottom = false;
          for (index_t r = lo; r <= cut; ++r) top = top || p.at(r, c);
          for (index_t r = cut + 1; r <= hi; ++r) bottom = bottom || p.at(r, c);
          shared += top && bottom;
        }
        if (shared > 1) continue;
        unsigned worst = std::max(memo[lo][cut], memo[cut + 1][hi]);
        if (worst != kNoDecomposition) best = std::min(best, worst + 1);
      }
      memo[lo][hi] = best;
    }
  return memo[0][k - 1];
}

/// Weight-1 column elimination rules. L extends a boundary row by one
/// (costs O(n), no log factor); A, B, C cost log, log, log^2.
enum class Rule { L, A, B, C };

inline std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::L: return "L";
    case Rule::A: return "A";
    case Rule::B: return "B";
    case Rule::C: return "C";
  }
  return "?";
}

inline unsigned rule_cost(Rule r) {
  switch (r) {
    case Rule::L: return 0;
    case Rule::A:
    case Rule::B: return 1;
    case Rule::C: return 2;
  }
  return 0;
}

struct ReductionStep {
  Rule rule = Rule::A;
  Transform frame = Transform::identity;
  std::vector<index_t> removed;  // column indices in the transformed frame
  Pattern before;
  Pattern after;
};

struct ReductionReport {
  std::vector<ReductionStep> steps;
  unsigned exponent = 0;
  Pattern residual;
  bool success = false;
};

/// Linear base cases: acyclic with at most three ones, or at most one one per row and column.
inline bool is_base_linear(const Pattern& p) {
  return (is_acyclic(p) && p.weight() <= 3) || is_partial_permutation(p);
}

namespace detail {

// Columns removed by `rule` at site j of q, or nullopt if the site does not apply.
inline std::optional<std::vector<index_t>> rule_site(const Pattern& q, Rule rule, index_t j) {
  const index_t l = q.cols();
  auto single = [&](index_t c) { return q.col_weight(c) == 1; };
  auto only_row = [&](index_t c) { return q.col_ones(c).front(); };
  switch (rule) {
    case Rule::L:
      if (l < 2 || j != l - 1 || !single(j)) return std::nullopt;
      if (!q.at(only_row(j), j - 1)) return std::nullopt;
      return std::vector<index_t>{j};
    case Rule::A:
      if (l < 2 || j != l - 1 || !single(j)) return std::nullopt;
      return std::vector<index_t>{j};
    case Rule::B: {
      if (j < 1 || j + 1 >= l || !single(j)) return std::nullopt;
      index_t i0 = only_row(j);
      if (!q.at(i0, j + 1)) return std::nullopt;
      for (index_t i1 = 0; i1 < q.rows(); ++i1)
        if (q.at(i1, j - 1) && q.at(i1, j + 1)) return std::vector<index_t>{j};
      return std::nullopt;
    }
    case Rule::C: {
      if (j < 1 || j + 2 >= l || !single(j) || !single(j + 1)) return std::nullopt;
      index_t i0 = only_row(j), i1 = only_row(j + 1);
      if (!q.at(i0, j - 1) || !q.at(i1, j + 2)) return std::nullopt;
      for (index_t i2 = 0; i2 < q.rows(); ++i2)
        if (q.at(i2, j - 1) && q.at(i2, j + 2)) return std::vector<index_t>{j, j + 1};
      return std::nullopt;
    }
  }
  return std::nullopt;
}

inline std::optional<ReductionStep> apply_at(const Pattern& p, Rule rule, Transform g, index_t j) {
  Pattern q = transform(p, g);
  auto removed = rule_site(q, rule, j);
  if (!removed) return std::nullopt;
  ReductionStep step{rule, g, *removed, p, transform(q.without_cols(*removed), inverse(g))};
  return step;
}

// Every applicable (rule, frame, site), in preference order: rule, then frame, then leftmost site.
inline std::vector<ReductionStep> all_steps(const Pattern& p) {
  std::vector<ReductionStep> out;
  for (Rule rule : {Rule::L, Rule::A, Rule::B, Rule::C})
    for (Transform g : all_transforms) {
      const index_t width = swaps_axes(g) ? p.rows() : p.cols();
      for (index_t j = 0; j < width; ++j)
        if (auto step = apply_at(p, rule, g, j)) out.push_back(std::move(*step));
    }
  return out;
}

}  // namespace detail

/// Greedy reduction: repeatedly applies the most preferred applicable rule
/// (L, then A, B, C; frames in enum order; leftmost site) until the residual
/// is a linear base case or nothing applies.
inline ReductionReport reduce_polylog(const Pattern& p) {
  ReductionReport report{{}, 0, p, false};
  while (!is_base_linear(report.residual)) {
    auto options = detail::all_steps(report.residual);
    if (options.empty()) break;
    auto& step = options.front();
    report.exponent += rule_cost(step.rule);
    report.residual = step.after;
    report.steps.push_back(std::move(step));
  }
  report.success = is_base_linear(report.residual);
  return report;
}

/// Cheapest successful reduction over every rule order. Limited to small patterns.
inline ReductionReport reduce_polylog_exhaustive(const Pattern& p) {
  if (p.cols() > 8 || p.rows() > 8) throw invalid_input("exhaustive reduction is limited to 8 rows and columns");
  std::map<std::string, std::optional<ReductionReport>> memo;
  std::function<std::optional<ReductionReport>(const Pattern&)> best_from = [&](const Pattern& q) {
    auto key = std::to_string(q.rows()) + ":" + to_text(q);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::optional<ReductionReport> best;
    if (is_base_linear(q)) {
      best = ReductionReport{{}, 0, q, true};
    } else {
      for (auto& step : detail::all_steps(q)) {
        auto rest = best_from(step.after);
        if (!rest) continue;
        unsigned total = rest->exponent + rule_cost(step.rule);
        if (best && best->exponent <= total) continue;
        ReductionReport candidate{{step}, total, rest->residual, true};
        candidate.steps.insert(candidate.steps.end(), rest->steps.begin(), rest->steps.end());
        best = std::move(candidate);
      }
    }
    memo[key] = best;
    return best;
  };
  if (auto found = best_from(p)) return *found;
  return reduce_polylog(p);
}

/// Re-checks every step's precondition and result from the starting pattern.
inline bool replay_reduction(const Pattern& start, const ReductionReport& report) {
  Pattern cur = start;
  unsigned exponent = 0;
  for (const auto& step : report.steps) {
    if (!(step.before == cur) || step.removed.empty()) return false;
    auto redo = detail::apply_at(cur, step.rule, step.frame, step.removed.front());
    if (!redo || redo->removed != step.removed || !(redo->after == step.after)) return false;
    exponent += rule_cost(step.rule);
    cur = redo->after;
  }
  return cur == report.residual && exponent == report.exponent && report.success == is_base_linear(cur);
}

/// Q3, Q3' and their horizontal, vertical and double reflections.
inline std::vector<Pattern> q_family() {
  std::vector<Pattern> out;
  for (auto name : {"q3", "q3p"})
    for (auto g : {Transform::identity, Transform::flip_h, Transform::flip_v, Transform::rot180})
      out.push_back(transform(registry_pattern(name), g));
  return out;
}

/// Light and avoiding every member of the Q family.
inline bool q_free_light_check(const Pattern& p) {
  if (!is_light(p)) return false;
  auto host = Matrix01::from_pattern(p);
  for (const auto& q : q_family())
    if (contains(q, host)) return false;
  return true;
}

struct ClassifyReport {
  bool acyclic = false;
  bool light = false;
  std::optional<CoveringWitness> covering;
  unsigned degeneracy = 0;
  unsigned degeneracy_transposed = 0;
  ReductionReport reduction;
  bool q_free_light = false;
};

inline ClassifyReport classify(const Pattern& p, bool exhaustive = false) {
  ClassifyReport out;
  out.acyclic = is_acyclic(p);
  out.light = is_light(p);
  out.covering = is_covering(p);
  out.degeneracy = degeneracy_class(p);
  out.degeneracy_transposed = degeneracy_class(transform(p, Transform::transpose));
  out.reduction = exhaustive ? reduce_polylog_exhaustive(p) : reduce_polylog(p);
  out.q_free_light = q_free_light_check(p);
  return out;
}

}  // namespace zom
