#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "zom/behrend.hpp"
#include "zom/constructions.hpp"
#include "zom/errors.hpp"
#include "zom/matrix.hpp"
#include "zom/pattern.hpp"

namespace zom {

struct ExResult {
  Pattern pattern;
  index_t n = 0;
  index_t m = 0;
  std::uint64_t value = 0;
  Matrix01 witness;
  std::uint64_t nodes = 0;
  bool exact = true;
};

struct ExLimits {
  std::uint64_t node_budget = 2'000'000'000;
  std::uint64_t max_cells = 36;  // larger hosts need this raised explicitly
};

namespace detail {

// Containment test for hosts of at most 64 cells held as one row mask per row.
class DenseMatcher {
 public:
  DenseMatcher(const Pattern& p, index_t n, index_t m) : p_(p), n_(n), m_(m) {
    std::vector<index_t> pick(p.cols());
    enumerate(pick, 0, 0);
  }

  bool contained_in(const std::vector<std::uint64_t>& rows) const {
    for (const auto& masks : column_choices_) {
      index_t next = 0;
      bool ok = true;
      for (index_t i = 0; i < p_.rows() && ok; ++i) {
        while (next < n_ && (rows[next] & masks[i]) != masks[i]) ++next;
        if (next == n_) ok = false;
        ++next;
      }
      if (ok) return true;
    }
    return false;
  }

 private:
  void enumerate(std::vector<index_t>& pick, index_t pos, index_t from) {
    if (pos == p_.cols()) {
      std::vector<std::uint64_t> masks(p_.rows(), 0);
      for (auto x : p_.ones()) masks[x.row] |= std::uint64_t{1} << pick[x.col];
      column_choices_.push_back(std::move(masks));
      return;
    }
    for (index_t c = from; c + (p_.cols() - pos) <= m_; ++c) {
      pick[pos] = c;
      enumerate(pick, pos + 1, c + 1);
    }
  }

  const Pattern& p_;
  index_t n_, m_;
  std::vector<std::vector<std::uint64_t>> column_choices_;
};

}  // namespace detail

/// Ex(P, n, m): the largest weight of an n x m matrix avoiding P. Branch and
/// bound over cells in row-major order, 1 before 0, bounded by the current
/// weight plus the undecided cells. An exhausted budget leaves the best found
/// value marked inexact.
inline ExResult exact_ex(const Pattern& p, index_t n, index_t m, const ExLimits& limits = {}) {
  if (n < 1 || m < 1) throw invalid_input("exact_ex needs n, m >= 1");
  const std::uint64_t cells = std::uint64_t{n} * m;
  if (cells > limits.max_cells) throw invalid_input("exact_ex host too large for exhaustive search");
  if (m > 64) throw invalid_input("exact_ex supports at most 64 columns");
  ExResult out{p, n, m, 0, Matrix01::zeros(n, m), 0, true};
  if (p.rows() > n || p.cols() > m) {
    out.value = cells;
    out.witness = Matrix01::all_ones(n, m);
    return out;
  }
  if (p.weight() == 0) throw invalid_input("a weight-0 pattern occurs in every host that fits it");

  detail::DenseMatcher matcher(p, n, m);
  std::vector<std::uint64_t> rows(n, 0), best_rows(n, 0);
  std::uint64_t best = 0;
  std::uint64_t nodes = 0;
  bool aborted = false;

  auto search = [&](auto&& self, std::uint64_t cell, std::uint64_t weight) -> void {
    if (aborted) return;
    if (++nodes > limits.node_budget) {
      aborted = true;
      return;
    }
    if (weight > best) {
      best = weight;
      best_rows = rows;
    }
    if (cell == cells || weight + (cells - cell) <= best) return;
    const auto r = static_cast<index_t>(cell / m), c = static_cast<index_t>(cell % m);
    rows[r] |= std::uint64_t{1} << c;
    if (!matcher.contained_in(rows)) self(self, cell + 1, weight + 1);
    rows[r] &= ~(std::uint64_t{1} << c);
    if (weight + (cells - cell - 1) > best) self(self, cell + 1, weight);
  };
  search(search, 0, 0);

  std::vector<Cell> ones;
  for (index_t r = 0; r < n; ++r)
    for (index_t c = 0; c < m; ++c)
      if ((best_rows[r] >> c) & 1) ones.push_back({r, c});
  out.value = best;
  out.witness = Matrix01(n, m, std::move(ones));
  out.nodes = nodes;
  out.exact = !aborted;
  return out;
}

struct DensityParams {
  index_t b = 1;
  index_t m = 1;
  std::optional<index_t> t;
};

struct DensityRow {
  Variant variant = Variant::A;
  index_t b = 0;
  index_t m = 0;
  std::optional<index_t> t;
  std::uint64_t rows = 0;
  std::uint64_t cols = 0;
  std::uint64_t weight = 0;
  double density = 0;
  std::optional<std::uint64_t> bound;
  std::string status;
};

/// One row per grid entry. The dense variant picks its own m, so the grid m is ignored there.
inline std::vector<DensityRow> density_table(Variant variant, const std::vector<DensityParams>& grid,
                                             const Caps& caps = Caps::from_env()) {
  std::vector<DensityRow> out;
  for (const auto& g : grid) {
    DensityRow row{variant, g.b, g.m, g.t, 0, 0, 0, 0.0, std::nullopt, "ok"};
    try {
      LabeledMatrix lm;
      switch (variant) {
        case Variant::A:
          lm = build_A(g.b, g.m, caps);
          row.bound = weight_bound_A(g.b, g.m);
          break;
        case Variant::At:
          if (!g.t) throw invalid_input("density_table: the At variant needs t");
          lm = build_At(g.b, g.m, *g.t, caps);
          row.bound = weight_bound_At(g.b, g.m, *g.t);
          break;
        case Variant::dense:
          if (!g.t) throw invalid_input("density_table: the dense variant needs t");
          lm = build_dense_S0t(g.b, *g.t, caps);
          row.m = lm.params.m;
          break;
      }
      row.rows = lm.matrix.rows();
      row.cols = lm.matrix.cols();
      row.weight = lm.matrix.weight();
      row.density = row.cols == 0 ? 0.0 : static_cast<double>(row.weight) / static_cast<double>(row.cols);
      if (row.bound && row.weight < *row.bound) row.status = "below-bound";
    } catch (const cap_exceeded&) {
      row.status = "skipped";
    }
    out.push_back(row);
  }
  return out;
}

inline void write_density_csv(std::ostream& out, const std::vector<DensityRow>& table) {
  out << "b,m,t,rows,cols,weight,density,bound,status\n";
  for (const auto& r : table) {
    out << r.b << ',' << r.m << ',';
    if (r.t) out << *r.t;
    out << ',' << r.rows << ',' << r.cols << ',' << r.weight << ',';
    std::ostringstream density;
    density.precision(6);
    density << std::fixed << r.density;
    out << density.str() << ',';
    if (r.bound) out << *r.bound;
    out << ',' << r.status << '\n';
  }
}

}  // namespace zom
