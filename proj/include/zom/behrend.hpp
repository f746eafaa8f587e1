#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "zom/constructions.hpp"
#include "zom/errors.hpp"

namespace zom {

struct BehrendParams {
  std::uint64_t d = 0;
  std::uint64_t D = 0;
  std::uint64_t base = 0;  // 2hd
  friend bool operator==(const BehrendParams&, const BehrendParams&) = default;
};

struct BehrendSet {
  std::vector<std::uint64_t> elements;
  std::uint64_t N = 0;
  std::uint64_t h = 0;
  std::optional<BehrendParams> params;  // empty on the greedy fallback
  std::optional<std::uint64_t> shell_norm;
  bool verified = false;

  bool fallback() const { return !params.has_value(); }
};

/// A nontrivial solution alpha*s0 + beta*s1 + gamma*s2 = 0.
struct BehrendWitness {
  std::int64_t alpha = 0, beta = 0, gamma = 0;
  std::uint64_t s0 = 0, s1 = 0, s2 = 0;
  friend bool operator==(const BehrendWitness&, const BehrendWitness&) = default;
};

struct BehrendCheck {
  bool ok = true;
  std::optional<BehrendWitness> witness;
};

/// Trivial: the relation holds for every non-empty set.
inline bool is_trivial_solution(const BehrendWitness& w) {
  auto d01 = static_cast<std::int64_t>(w.s0) - static_cast<std::int64_t>(w.s1);
  auto d12 = static_cast<std::int64_t>(w.s1) - static_cast<std::int64_t>(w.s2);
  auto d20 = static_cast<std::int64_t>(w.s2) - static_cast<std::int64_t>(w.s0);
  return w.alpha + w.beta + w.gamma == 0 && w.alpha * w.beta * d01 == 0 && w.beta * w.gamma * d12 == 0 &&
         w.gamma * w.alpha * d20 == 0;
}

namespace detail {

// Scans (s0, s1, s2) triples in lexicographic order, coefficients with the
// first nonzero one positive; gamma is solved for. When `balanced` is set only
// alpha+beta+gamma = 0 is considered, otherwise only the rest. `must_use`
// restricts to triples containing that value.
inline std::optional<BehrendWitness> scan_solutions(std::span<const std::uint64_t> set, std::int64_t h, bool balanced,
                                                    std::optional<std::uint64_t> must_use = std::nullopt) {
  for (auto s0 : set)
    for (auto s1 : set)
      for (auto s2 : set) {
        if (must_use && s0 != *must_use && s1 != *must_use && s2 != *must_use) continue;
        for (std::int64_t alpha = -h; alpha <= h; ++alpha)
          for (std::int64_t beta = -h; beta <= h; ++beta) {
            std::int64_t partial = alpha * static_cast<std::int64_t>(s0) + beta * static_cast<std::int64_t>(s1);
            if (partial % static_cast<std::int64_t>(s2) != 0) continue;
            std::int64_t gamma = -partial / static_cast<std::int64_t>(s2);
            if (gamma < -h || gamma > h) continue;
            std::int64_t lead = alpha != 0 ? alpha : beta != 0 ? beta : gamma;
            if (lead <= 0) continue;
            if ((alpha + beta + gamma == 0) != balanced) continue;
            BehrendWitness w{alpha, beta, gamma, s0, s1, s2};
            if (!is_trivial_solution(w)) return w;
          }
      }
  return std::nullopt;
}

}  // namespace detail

/// Exhaustive check for nontrivial solutions with |alpha|, |beta|, |gamma| <= h.
/// The reported witness is the first in this order: solutions with
/// alpha+beta+gamma = 0 before the others, then (s0, s1, s2) lexicographically,
/// then (alpha, beta) ascending, normalised so the first nonzero coefficient is positive.
inline BehrendCheck verify_behrend(std::span<const std::uint64_t> set, std::uint64_t h,
                                   std::uint64_t work_budget = 20'000'000'000ULL) {
  const auto size = static_cast<long double>(set.size());
  const auto coeffs = static_cast<long double>(2 * h + 1);
  if (size * size * size * coeffs * coeffs > static_cast<long double>(work_budget))
    throw budget_exceeded("verify_behrend: set too large for exhaustive checking");
  for (auto s : set)
    if (s == 0) throw invalid_input("verify_behrend expects positive integers");
  for (bool balanced : {true, false})
    if (auto w = detail::scan_solutions(set, static_cast<std::int64_t>(h), balanced)) return {false, w};
  return {true, std::nullopt};
}

namespace detail {

using Float50 = boost::multiprecision::cpp_bin_float_50;

// d = floor(2^(sqrt(log h * log(N/2)) - log 2h)), D = floor(sqrt(log(N/2) / log h)); logs binary.
// D is computed exactly as the largest D with 2 h^(D^2) <= N.
inline std::optional<BehrendParams> behrend_parameters(std::uint64_t N, std::uint64_t h) {
  if (h < 2 || N < 4) return std::nullopt;
  std::uint64_t D = 0;
  while (true) {
    auto next = D + 1;
    boost::multiprecision::cpp_int power = boost::multiprecision::pow(boost::multiprecision::cpp_int(h), next * next);
    if (2 * power > N) break;
    D = next;
  }
  Float50 lg_h = boost::multiprecision::log2(Float50(h));
  Float50 lg_half = boost::multiprecision::log2(Float50(N) / 2);
  Float50 exponent = boost::multiprecision::sqrt(lg_h * lg_half) - boost::multiprecision::log2(Float50(2 * h));
  Float50 value = boost::multiprecision::floor(boost::multiprecision::pow(Float50(2), exponent));
  auto d = value.convert_to<std::uint64_t>();
  if (d < 2 || D < 1) return std::nullopt;
  return BehrendParams{d, D, 2 * h * d};
}

inline std::vector<std::uint64_t> greedy_solution_free(std::uint64_t N, std::uint64_t h) {
  std::vector<std::uint64_t> set;
  for (std::uint64_t v = 1; v <= N; ++v) {
    set.push_back(v);
    bool bad = scan_solutions(set, static_cast<std::int64_t>(h), true, v).has_value() ||
               scan_solutions(set, static_cast<std::int64_t>(h), false, v).has_value();
    if (bad) set.pop_back();
  }
  return set;
}

}  // namespace detail

/// Subset of [1, N] free of nontrivial relations with coefficients in [-h, h].
/// Digit vectors in {0..d-1}^D are grouped by squared norm; the fullest shell
/// (smallest norm on ties), prefixed by a leading 1, is read in base 2hd.
/// When the parameters degenerate (d < 2, D < 1, h < 2) a greedy scan of 1..N is used.
inline BehrendSet behrend_set(std::uint64_t N, std::uint64_t h) {
  if (N < 1) throw invalid_input("behrend_set needs N >= 1");
  if (h < 1) throw invalid_input("behrend_set needs h >= 1");
  BehrendSet out;
  out.N = N;
  out.h = h;
  out.params = detail::behrend_parameters(N, h);
  if (out.params) {
    const auto [d, D, base] = *out.params;
    std::uint64_t lead = 1;
    for (std::uint64_t q = 0; q < D; ++q) lead *= base;
    if (2 * lead > N) throw inconsistency("behrend parameters overflow [N]");
    std::map<std::uint64_t, std::vector<std::uint64_t>> shells;
    std::vector<std::uint64_t> digit(D, 0);
    while (true) {
      std::uint64_t norm = 0, value = lead, place = 1;
      for (std::uint64_t q = 0; q < D; ++q) {
        norm += digit[q] * digit[q];
        value += digit[q] * place;
        place *= base;
      }
      shells[norm].push_back(value);
      std::uint64_t q = 0;
      while (q < D && ++digit[q] == d) digit[q++] = 0;
      if (q == D) break;
    }
    auto best = shells.begin();
    for (auto it = shells.begin(); it != shells.end(); ++it)
      if (it->second.size() > best->second.size()) best = it;
    out.shell_norm = best->first;
    out.elements = best->second;
    std::sort(out.elements.begin(), out.elements.end());
  } else {
    out.elements = detail::greedy_solution_free(N, h);
  }
  auto check = verify_behrend(out.elements, h);
  if (!check.ok) throw inconsistency("behrend_set produced a set with a nontrivial solution");
  out.verified = true;
  return out;
}

/// |S| >= d^(D-2)/D. Vacuous on the fallback path.
inline bool meets_size_bound(const BehrendSet& set) {
  if (!set.params) return true;
  const auto& p = *set.params;
  using boost::multiprecision::cpp_int;
  cpp_int size = set.elements.size();
  if (p.D < 2) return size * p.D * boost::multiprecision::pow(cpp_int(p.d), static_cast<unsigned>(2 - p.D)) >= 1;
  return size * p.D >= boost::multiprecision::pow(cpp_int(p.d), static_cast<unsigned>(p.D - 2));
}

/// The S0(t)-avoiding matrix: rows S x [m]^b, columns [m]^b x {0..t-1}^b, one iff r = c + s*i,
/// with S the first t^b elements of behrend_set(floor(m/b), t-1) for the least m >= b*t^b that has enough.
inline LabeledMatrix build_dense_S0t(index_t b, index_t t, const Caps& caps = Caps::from_env()) {
  if (b < 1 || t < 2) throw invalid_input("build_dense_S0t needs b >= 1 and t >= 2");
  const std::uint64_t need = detail::checked_pow(t, b);
  for (std::uint64_t m = b * need;; ++m) {
    const std::uint64_t side = need * detail::checked_pow(m, b);
    if (side > caps.cells / side) throw cap_exceeded("build_dense_S0t: no suitable m below the cell cap");
    auto set = behrend_set(m / b, t - 1);
    if (set.elements.size() < need) continue;
    set.elements.resize(need);
    return build_dense(b, static_cast<index_t>(m), t, set.elements, caps);
  }
}

}  // namespace zom
