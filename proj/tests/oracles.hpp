#pragma once

// Slow reference implementations. Deliberately share no code with the library
// beyond the data types.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "zom/containment.hpp"
#include "zom/matrix.hpp"
#include "zom/pattern.hpp"

namespace oracle {

using zom::Cell;
using zom::index_t;
using zom::Matrix01;
using zom::Occurrence;
using zom::Pattern;

// All k-subsets of [0, n) in lexicographic order.
inline void for_each_subset(index_t n, index_t k, const std::function<bool(const std::vector<index_t>&)>& fn) {
  std::vector<index_t> pick(k);
  std::function<bool(index_t, index_t)> rec = [&](index_t pos, index_t from) -> bool {
    if (pos == k) return fn(pick);
    for (index_t v = from; v + (k - pos) <= n; ++v) {
      pick[pos] = v;
      if (rec(pos + 1, v + 1)) return true;
    }
    return false;
  };
  rec(0, 0);
}

/// Lexicographically first (colMap, rowMap) occurrence by plain enumeration.
inline std::optional<Occurrence> naive_contains(const Pattern& p, const Matrix01& a) {
  if (p.rows() > a.rows() || p.cols() > a.cols()) return std::nullopt;
  std::optional<Occurrence> hit;
  for_each_subset(a.cols(), p.cols(), [&](const std::vector<index_t>& cols) {
    for_each_subset(a.rows(), p.rows(), [&](const std::vector<index_t>& rows) {
      for (auto x : p.ones())
        if (!a.at(rows[x.row], cols[x.col])) return false;
      hit = Occurrence{rows, cols};
      return true;
    });
    return hit.has_value();
  });
  return hit;
}

/// Host from the low n*m bits of mask, row-major.
inline Matrix01 matrix_from_mask(index_t n, index_t m, std::uint64_t mask) {
  std::vector<Cell> ones;
  for (index_t r = 0; r < n; ++r)
    for (index_t c = 0; c < m; ++c)
      if ((mask >> (r * m + c)) & 1) ones.push_back({r, c});
  return Matrix01(n, m, std::move(ones));
}

/// Ex(P, n, m) by trying every host.
inline std::size_t brute_force_ex(const Pattern& p, index_t n, index_t m) {
  std::size_t best = 0;
  const std::uint64_t total = std::uint64_t{1} << (n * m);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    auto w = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (w <= best) continue;
    if (!naive_contains(p, matrix_from_mask(n, m, mask))) best = w;
  }
  return best;
}

inline Matrix01 random_matrix(index_t n, index_t m, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(density);
  std::vector<Cell> ones;
  for (index_t r = 0; r < n; ++r)
    for (index_t c = 0; c < m; ++c)
      if (coin(rng)) ones.push_back({r, c});
  return Matrix01(n, m, std::move(ones));
}

}  // namespace oracle
