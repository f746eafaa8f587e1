#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "zom/containment.hpp"
#include "zom/errors.hpp"
#include "zom/matrix.hpp"
#include "zom/registry.hpp"

namespace zom {

/// floor(log_base x) for positive integers x, base = num/den > 1, by a table
/// of thresholds T_k = ceil(base^k): floor(log x) is the largest k with T_k <= x.
class FloorLog {
 public:
  FloorLog(std::uint64_t num, std::uint64_t den, std::uint64_t max_argument) : max_argument_(max_argument) {
    if (den == 0 || num <= den) throw invalid_input("floor-log base must exceed 1");
    using boost::multiprecision::cpp_int;
    cpp_int power_num = 1, power_den = 1;
    while (true) {
      cpp_int threshold = (power_num + power_den - 1) / power_den;
      if (threshold > max_argument) break;
      thresholds_.push_back(threshold.convert_to<std::uint64_t>());
      power_num *= num;
      power_den *= den;
    }
  }

  std::int64_t operator()(std::uint64_t x) const {
    if (x == 0 || x > max_argument_) throw invalid_input("floor-log argument outside the table range");
    auto it = std::upper_bound(thresholds_.begin(), thresholds_.end(), x);
    return static_cast<std::int64_t>(it - thresholds_.begin()) - 1;
  }

  std::size_t size() const { return thresholds_.size(); }

 private:
  std::uint64_t max_argument_;
  std::vector<std::uint64_t> thresholds_;
};

/// Landmark columns for a one at (r, c). Unset optionals are undefined landmarks.
/// pairs[j-1] holds (a_j, b_j).
struct Landmarks {
  std::optional<index_t> F;
  std::optional<index_t> L;
  std::vector<std::optional<std::pair<index_t, index_t>>> pairs;
};

/// Landmarks of the one at (r, c) for parameter t >= 1. If c is one of the last
/// two ones of its row, every landmark is undefined.
inline Landmarks landmarks(const Matrix01& a, index_t r, index_t c, index_t t) {
  if (t < 1) throw invalid_input("landmarks need t >= 1");
  if (r >= a.rows() || c >= a.cols() || !a.at(r, c)) throw invalid_input("landmarks need a one at (r, c)");
  Landmarks out;
  out.pairs.assign(t - 1, std::nullopt);
  auto line = a.row(r);
  auto after = std::upper_bound(line.begin(), line.end(), c);
  const std::size_t first = static_cast<std::size_t>(after - line.begin());
  if (line.size() - first < 2) return out;
  out.F = line[first];
  out.L = line.back();
  // Consecutive pairs (line[q], line[q+1]) with first <= q, q+1 <= limit; first maximal gap.
  auto widest = [&](std::size_t limit) -> std::optional<std::size_t> {
    std::optional<std::size_t> best;
    for (std::size_t q = first; q + 1 <= limit; ++q)
      if (!best || line[q + 1] - line[q] > line[*best + 1] - line[*best]) best = q;
    return best;
  };
  std::size_t limit = line.size() - 1;
  for (std::size_t j = t - 1; j-- > 0;) {
    auto q = widest(limit);
    if (!q) break;
    out.pairs[j] = std::pair{line[*q], line[*q + 1]};
    limit = *q;
  }
  return out;
}

using Token = std::optional<std::int64_t>;

struct Signature {
  std::vector<Token> sig0;
  std::vector<Token> sig1_logs;
  std::vector<Token> sig1_positions;  // sign(log(b_j - c) - log(a_k - c)), row-major in (j, k)
  std::vector<Token> sig2_logs;
  std::vector<Token> sig2_positions;  // sign(log(a_j - c) - log(b_k - c)), row-major in (j, k)
  std::vector<Token> sig2_ratios;

  friend bool operator==(const Signature&, const Signature&) = default;
};

struct MarkParams {
  index_t t = 2;
  std::uint64_t zeta = 2;
  std::uint64_t q = 0;  // epsilon = 1/q

  static MarkParams make(index_t t, std::uint64_t zeta) {
    if (t < 2) throw invalid_input("marking needs t >= 2");
    if (zeta < t) throw invalid_input("marking needs zeta >= t");
    return {t, zeta, 6 * (zeta + 1) * (t + 2)};
  }
};

/// max(t, least z with 2^(z^t) >= N), N = min(rows, cols).
inline std::uint64_t default_zeta(const Matrix01& a, index_t t) {
  const std::uint64_t n = std::min(a.rows(), a.cols());
  std::uint64_t z = 0;
  auto enough = [&](std::uint64_t cand) {
    boost::multiprecision::cpp_int power = 1;
    for (index_t q = 0; q < t; ++q) power *= cand;
    if (power >= 64) return true;
    return (std::uint64_t{1} << power.convert_to<unsigned>()) >= n;
  };
  while (!enough(z)) ++z;
  return std::max<std::uint64_t>(t, z);
}

/// Floor-log tables for one matrix and parameter set.
class SignatureContext {
 public:
  SignatureContext(const Matrix01& a, const MarkParams& params)
      : params_(params),
        log_zeta_(params.zeta, 1, std::max<index_t>(a.cols(), 1)),
        log_eps_(params.q + 1, params.q, std::max<index_t>(a.cols(), 1)) {}

  const MarkParams& params() const { return params_; }

  std::int64_t log_zeta(std::uint64_t x) const { return log_zeta_(x); }
  std::int64_t log_eps(std::uint64_t x) const { return log_eps_(x); }

  Signature compute(const Landmarks& lm, index_t c) const {
    const index_t t = params_.t;
    Signature sig;
    auto a_of = [&](index_t j) -> std::optional<index_t> {  // 1-based, a_t = L
      if (j == t) return lm.L;
      if (!lm.pairs[j - 1]) return std::nullopt;
      return lm.pairs[j - 1]->first;
    };
    auto b_of = [&](index_t j) -> std::optional<index_t> {
      if (!lm.pairs[j - 1]) return std::nullopt;
      return lm.pairs[j - 1]->second;
    };
    auto cmp = [](Token x, Token y) -> Token {
      if (!x || !y) return std::nullopt;
      return (*x > *y) - (*x < *y);
    };

    sig.sig0.push_back(lm.F ? Token{log_zeta(*lm.F - c)} : std::nullopt);
    for (index_t j = 1; j < t; ++j) {
      auto a = a_of(j), b = b_of(j);
      sig.sig0.push_back(a && b ? Token{log_zeta(*b - *a)} : std::nullopt);
    }
    std::vector<Token> log_a, log_b;
    for (index_t j = 1; j < t; ++j) {
      auto a = a_of(j), b = b_of(j);
      log_a.push_back(a ? Token{log_eps(*a - c)} : std::nullopt);
      log_b.push_back(b ? Token{log_eps(*b - c)} : std::nullopt);
    }
    sig.sig1_logs = log_a;
    sig.sig2_logs = log_b;
    for (index_t j = 0; j + 1 < t; ++j)
      for (index_t k = 0; k + 1 < t; ++k) {
        sig.sig1_positions.push_back(cmp(log_b[j], log_a[k]));
        sig.sig2_positions.push_back(cmp(log_a[j], log_b[k]));
      }
    const std::int64_t cap = 3 * static_cast<std::int64_t>(t);
    for (index_t j = 1; j < t; ++j) {
      auto b = b_of(j), next = a_of(j + 1);
      if (!b || !next) {
        sig.sig2_ratios.push_back(std::nullopt);
        continue;
      }
      std::int64_t ratio = 2 * (static_cast<std::int64_t>(*next) - *b) / (static_cast<std::int64_t>(*b) - c);
      sig.sig2_ratios.push_back(std::min(ratio, cap));
    }
    return sig;
  }

 private:
  MarkParams params_;
  FloorLog log_zeta_;
  FloorLog log_eps_;
};

inline Signature signatures(const Matrix01& a, index_t r, index_t c, index_t t, std::uint64_t zeta) {
  SignatureContext ctx(a, MarkParams::make(t, zeta));
  return ctx.compute(landmarks(a, r, c, t), c);
}

/// 3*zeta*(a_1 - F) > F - c, with F and a_1 required to exist.
inline bool satisfies_first_inequality(const Landmarks& lm, index_t c, std::uint64_t zeta) {
  if (!lm.F || lm.pairs.empty() || !lm.pairs[0]) return false;
  const std::uint64_t gap = lm.pairs[0]->first - *lm.F;
  return 3 * zeta * gap > *lm.F - c;
}

struct MarkReport {
  MarkParams params;
  std::array<std::uint64_t, 4> per_step{};
  std::vector<Cell> unmarked;
  std::array<std::uint64_t, 3> signature_types{};  // distinct sig0, sig1, sig2 types over all ones
  std::uint64_t structural_bound = 0;
  std::uint64_t weight = 0;

  std::uint64_t marked() const { return per_step[0] + per_step[1] + per_step[2] + per_step[3]; }
};

/// The four marking steps. Each step selects against the marks present when
/// it starts, then commits; "last" means largest index within the row or column.
inline MarkReport run_marking(const Matrix01& a, index_t t, std::optional<std::uint64_t> zeta = std::nullopt) {
  MarkReport report;
  report.params = MarkParams::make(t, zeta.value_or(default_zeta(a, t)));
  report.weight = a.weight();
  const auto ones = a.ones();
  SignatureContext ctx(a, report.params);

  std::vector<Landmarks> marks_lm(ones.size());
  std::vector<Signature> sigs(ones.size());
  for (std::size_t q = 0; q < ones.size(); ++q) {
    marks_lm[q] = landmarks(a, ones[q].row, ones[q].col, t);
    sigs[q] = ctx.compute(marks_lm[q], ones[q].col);
  }
  // Position in the row-major ones list of each entry of the column index.
  std::vector<std::vector<std::size_t>> by_col(a.cols());
  for (std::size_t q = 0; q < ones.size(); ++q) by_col[ones[q].col].push_back(q);
  std::vector<std::pair<std::size_t, std::size_t>> by_row(a.rows(), {0, 0});
  {
    std::size_t q = 0;
    for (index_t r = 0; r < a.rows(); ++r) {
      by_row[r].first = q;
      q += a.row(r).size();
      by_row[r].second = q;
    }
  }

  std::vector<bool> marked(ones.size(), false);
  auto commit = [&](const std::vector<std::size_t>& pick, int step) {
    for (auto q : pick)
      if (!marked[q]) {
        marked[q] = true;
        ++report.per_step[step];
      }
  };

  // Walks a line from the end, picking up to `quota` unmarked ones per key.
  auto select_line = [&](auto indices_desc, auto key_of, auto eligible, std::size_t quota,
                         std::vector<std::size_t>& pick) {
    using Key = std::decay_t<decltype(key_of(std::size_t{}))>;
    std::map<Key, std::size_t> taken;
    for (auto q : indices_desc) {
      if (marked[q] || !eligible(q)) continue;
      auto& n = taken[key_of(q)];
      if (n < quota) {
        ++n;
        pick.push_back(q);
      }
    }
  };
  auto row_desc = [&](index_t r) {
    std::vector<std::size_t> out;
    for (auto q = by_row[r].second; q-- > by_row[r].first;) out.push_back(q);
    return out;
  };
  auto col_desc = [&](index_t c) { return std::vector<std::size_t>(by_col[c].rbegin(), by_col[c].rend()); };
  auto always = [](std::size_t) { return true; };

  {  // Step 1
    std::vector<std::size_t> pick;
    for (index_t r = 0; r < a.rows(); ++r) {
      auto line = row_desc(r);
      for (std::size_t k = 0; k < std::min<std::size_t>(2, line.size()); ++k) pick.push_back(line[k]);
      select_line(line, [&](std::size_t q) { return sigs[q].sig0; }, always, 1, pick);
    }
    commit(pick, 0);
  }
  {  // Step 2
    std::vector<std::size_t> pick;
    auto eligible = [&](std::size_t q) {
      return satisfies_first_inequality(marks_lm[q], ones[q].col, report.params.zeta);
    };
    for (index_t c = 0; c < a.cols(); ++c)
      select_line(col_desc(c), [&](std::size_t q) { return std::make_tuple(sigs[q].sig1_logs, sigs[q].sig1_positions); },
                  eligible, 1, pick);
    commit(pick, 1);
  }
  auto sig2_key = [&](std::size_t q) {
    return std::make_tuple(sigs[q].sig2_logs, sigs[q].sig2_positions, sigs[q].sig2_ratios);
  };
  {  // Step 3
    std::vector<std::size_t> pick;
    for (index_t r = 0; r < a.rows(); ++r) select_line(row_desc(r), sig2_key, always, t, pick);
    commit(pick, 2);
  }
  {  // Step 4
    std::vector<std::size_t> pick;
    for (index_t c = 0; c < a.cols(); ++c) select_line(col_desc(c), sig2_key, always, t, pick);
    commit(pick, 3);
  }

  for (std::size_t q = 0; q < ones.size(); ++q)
    if (!marked[q]) report.unmarked.push_back(ones[q]);

  std::set<std::vector<Token>> types0;
  std::set<std::tuple<std::vector<Token>, std::vector<Token>>> types1;
  std::set<std::tuple<std::vector<Token>, std::vector<Token>, std::vector<Token>>> types2;
  for (const auto& s : sigs) {
    types0.insert(s.sig0);
    types1.insert({s.sig1_logs, s.sig1_positions});
    types2.insert({s.sig2_logs, s.sig2_positions, s.sig2_ratios});
  }
  report.signature_types = {types0.size(), types1.size(), types2.size()};
  const std::uint64_t rows = a.rows(), cols = a.cols();
  report.structural_bound = rows * (2 + types0.size()) + cols * types1.size() + t * rows * types2.size() +
                            t * cols * types2.size();
  return report;
}

/// Either every one was marked, or a witness of p(t) in A.
struct UnmarkedAudit {
  bool all_marked = true;
  std::optional<Occurrence> witness;
};

/// An unmarked one without a p(t) occurrence contradicts the marking theorem and throws.
inline UnmarkedAudit audit_unmarked(const Matrix01& a, index_t t, const MarkReport& report,
                                    const SearchLimits& limits = {}) {
  if (report.unmarked.empty()) return {};
  auto w = contains(make_p(t), a, limits);
  if (!w) throw inconsistency("unmarked ones remain but the matrix avoids p(t)");
  return {false, w};
}

}  // namespace zom
