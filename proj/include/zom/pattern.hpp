#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zom/errors.hpp"

namespace zom {

using index_t = std::uint32_t;

/// A (row, col) position, 0-based. Ordered row-major.
struct Cell {
  index_t row = 0;
  index_t col = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// The eight rotations and reflections of a rectangle.
///
/// flip_h reverses the row order (mirror across the horizontal axis),
/// flip_v reverses the column order (mirror across the vertical axis).
/// Rotations are clockwise.
enum class Transform : std::uint8_t {
  identity,
  rot90,
  rot180,
  rot270,
  flip_h,
  flip_v,
  transpose,
  antitranspose,
};

inline constexpr std::array<Transform, 8> all_transforms = {
    Transform::identity, Transform::rot90,     Transform::rot180,
    Transform::rot270,   Transform::flip_h,    Transform::flip_v,
    Transform::transpose, Transform::antitranspose};

inline std::string_view to_string(Transform g) {
  switch (g) {
    case Transform::identity: return "identity";
    case Transform::rot90: return "rot90";
    case Transform::rot180: return "rot180";
    case Transform::rot270: return "rot270";
    case Transform::flip_h: return "flipH";
    case Transform::flip_v: return "flipV";
    case Transform::transpose: return "transpose";
    case Transform::antitranspose: return "antitranspose";
  }
  return "?";
}

inline Transform inverse(Transform g) {
  switch (g) {
    case Transform::rot90: return Transform::rot270;
    case Transform::rot270: return Transform::rot90;
    default: return g;
  }
}

inline bool swaps_axes(Transform g) {
  return g == Transform::rot90 || g == Transform::rot270 ||
         g == Transform::transpose || g == Transform::antitranspose;
}

/// Where cell (r, c) of an n x m rectangle lands after applying g.
inline Cell map_cell(Transform g, Cell x, index_t n, index_t m) {
  const index_t r = x.row, c = x.col;
  switch (g) {
    case Transform::identity: return {r, c};
    case Transform::rot90: return {c, n - 1 - r};
    case Transform::rot180: return {n - 1 - r, m - 1 - c};
    case Transform::rot270: return {m - 1 - c, r};
    case Transform::flip_h: return {n - 1 - r, c};
    case Transform::flip_v: return {r, m - 1 - c};
    case Transform::transpose: return {c, r};
    case Transform::antitranspose: return {m - 1 - c, n - 1 - r};
  }
  return x;
}

/// Small dense 0-1 matrix used as the forbidden object.
class Pattern {
 public:
  Pattern() : Pattern(1, 1, {}) {}

  Pattern(index_t rows, index_t cols, std::vector<Cell> ones)
      : rows_(rows), cols_(cols), ones_(std::move(ones)) {
    if (rows_ == 0 || cols_ == 0) throw invalid_input("pattern must have at least one row and column");
    std::sort(ones_.begin(), ones_.end());
    for (std::size_t q = 0; q < ones_.size(); ++q) {
      if (ones_[q].row >= rows_ || ones_[q].col >= cols_)
        throw invalid_input("pattern cell out of range");
      if (q > 0 && ones_[q] == ones_[q - 1]) throw invalid_input("duplicate pattern cell");
    }
    cells_.assign(std::size_t{rows_} * cols_, 0);
    for (auto x : ones_) cells_[std::size_t{x.row} * cols_ + x.col] = 1;
  }

  index_t rows() const { return rows_; }
  index_t cols() const { return cols_; }
  std::size_t weight() const { return ones_.size(); }
  std::span<const Cell> ones() const { return ones_; }

  bool at(index_t r, index_t c) const { return cells_[std::size_t{r} * cols_ + c] != 0; }

  std::size_t row_weight(index_t r) const {
    std::size_t w = 0;
    for (index_t c = 0; c < cols_; ++c) w += at(r, c);
    return w;
  }
  std::size_t col_weight(index_t c) const {
    std::size_t w = 0;
    for (index_t r = 0; r < rows_; ++r) w += at(r, c);
    return w;
  }
  std::vector<index_t> row_ones(index_t r) const {
    std::vector<index_t> out;
    for (index_t c = 0; c < cols_; ++c)
      if (at(r, c)) out.push_back(c);
    return out;
  }
  std::vector<index_t> col_ones(index_t c) const {
    std::vector<index_t> out;
    for (index_t r = 0; r < rows_; ++r)
      if (at(r, c)) out.push_back(r);
    return out;
  }

  Pattern without_cols(std::span<const index_t> drop) const;
  Pattern without_rows(std::span<const index_t> drop) const;

  friend bool operator==(const Pattern& a, const Pattern& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.ones_ == b.ones_;
  }

 private:
  index_t rows_;
  index_t cols_;
  std::vector<Cell> ones_;
  std::vector<std::uint8_t> cells_;
};

namespace detail {

// Splits UTF-8 text into code points; '●' (U+25CF) is the only multi-byte glyph accepted.
inline std::vector<std::string_view> glyphs(std::string_view line) {
  std::vector<std::string_view> out;
  for (std::size_t q = 0; q < line.size();) {
    auto lead = static_cast<unsigned char>(line[q]);
    std::size_t len = lead < 0x80 ? 1 : (lead >> 5) == 0x6 ? 2 : (lead >> 4) == 0xE ? 3 : (lead >> 3) == 0x1E ? 4 : 1;
    if (q + len > line.size()) len = line.size() - q;
    out.push_back(line.substr(q, len));
    q += len;
  }
  return out;
}

}  // namespace detail

/// Parses the text form: one line per row, '1' '*' or '●' for a one, '0' or '.' for a zero.
/// A single trailing newline is allowed.
inline Pattern parse_pattern(std::string_view text) {
  if (!text.empty() && text.back() == '\n') text.remove_suffix(1);
  if (text.empty()) throw invalid_input("empty pattern text");
  std::vector<Cell> ones;
  index_t rows = 0;
  std::size_t width = 0;
  std::size_t start = 0;
  while (true) {
    std::size_t stop = text.find('\n', start);
    std::string_view line = text.substr(start, stop == std::string_view::npos ? std::string_view::npos : stop - start);
    auto cells = detail::glyphs(line);
    if (cells.empty()) throw invalid_input("empty line in pattern text");
    if (rows == 0) width = cells.size();
    if (cells.size() != width) throw invalid_input("ragged pattern lines");
    for (std::size_t c = 0; c < cells.size(); ++c) {
      auto g = cells[c];
      if (g == "1" || g == "*" || g == "●") {
        ones.push_back({rows, static_cast<index_t>(c)});
      } else if (g != "0" && g != ".") {
        throw invalid_input("illegal character '" + std::string(g) + "' in pattern text");
      }
    }
    ++rows;
    if (stop == std::string_view::npos) break;
    start = stop + 1;
  }
  return Pattern(rows, static_cast<index_t>(width), std::move(ones));
}

/// Canonical text form using '1' and '.', rows joined by '\n', no trailing newline.
inline std::string to_text(const Pattern& p) {
  std::string out;
  for (index_t r = 0; r < p.rows(); ++r) {
    if (r > 0) out += '\n';
    for (index_t c = 0; c < p.cols(); ++c) out += p.at(r, c) ? '1' : '.';
  }
  return out;
}

inline Pattern transform(const Pattern& p, Transform g) {
  std::vector<Cell> ones;
  ones.reserve(p.weight());
  for (auto x : p.ones()) ones.push_back(map_cell(g, x, p.rows(), p.cols()));
  return swaps_axes(g) ? Pattern(p.cols(), p.rows(), std::move(ones))
                       : Pattern(p.rows(), p.cols(), std::move(ones));
}

inline Pattern Pattern::without_cols(std::span<const index_t> drop) const {
  std::vector<index_t> keep_index(cols_, 0);
  index_t next = 0;
  for (index_t c = 0; c < cols_; ++c) {
    bool dropped = std::find(drop.begin(), drop.end(), c) != drop.end();
    keep_index[c] = dropped ? cols_ : next++;
  }
  if (next == 0) throw invalid_input("cannot remove every column of a pattern");
  std::vector<Cell> ones;
  for (auto x : ones_)
    if (keep_index[x.col] != cols_) ones.push_back({x.row, keep_index[x.col]});
  return Pattern(rows_, next, std::move(ones));
}

inline Pattern Pattern::without_rows(std::span<const index_t> drop) const {
  return transform(transform(*this, Transform::transpose).without_cols(drop), Transform::transpose);
}

/// True iff the bipartite graph on rows + columns with ones as edges is a forest.
inline bool is_acyclic(const Pattern& p) {
  std::vector<std::size_t> parent(std::size_t{p.rows()} + p.cols());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (auto x : p.ones()) {
    auto a = find(x.row);
    auto b = find(std::size_t{p.rows()} + x.col);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

/// Exactly one 1 in every column.
inline bool is_light(const Pattern& p) {
  for (index_t c = 0; c < p.cols(); ++c)
    if (p.col_weight(c) != 1) return false;
  return true;
}

/// At most one 1 in every row and every column.
inline bool is_partial_permutation(const Pattern& p) {
  for (index_t r = 0; r < p.rows(); ++r)
    if (p.row_weight(r) > 1) return false;
  for (index_t c = 0; c < p.cols(); ++c)
    if (p.col_weight(c) > 1) return false;
  return true;
}

}  // namespace zom
