#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "zom/errors.hpp"
#include "zom/pattern.hpp"

namespace zom {

/// Host 0-1 matrix: a sorted, duplicate-free sparse list of ones with
/// row-major (CSR) and column-major (CSC) indexes. A dense bitset is kept
/// as well while it stays under a few megabytes.
class Matrix01 {
 public:
  static constexpr std::uint64_t kBitsetLimit = std::uint64_t{1} << 27;

  Matrix01() = default;

  /// Any order is accepted; duplicates and out-of-range cells are rejected.
  Matrix01(index_t rows, index_t cols, std::vector<Cell> ones) : rows_(rows), cols_(cols), ones_(std::move(ones)) {
    std::sort(ones_.begin(), ones_.end());
    for (std::size_t q = 0; q < ones_.size(); ++q) {
      if (ones_[q].row >= rows_ || ones_[q].col >= cols_) throw invalid_input("matrix cell out of range");
      if (q > 0 && ones_[q] == ones_[q - 1]) throw invalid_input("duplicate matrix cell");
    }
    build_indexes();
  }

  /// Builds from ones listed column-major (by column, then row) without a comparison sort.
  static Matrix01 from_column_major(index_t rows, index_t cols, std::span<const Cell> ones) {
    std::vector<std::size_t> start(std::size_t{rows} + 1, 0);
    for (auto x : ones) {
      if (x.row >= rows || x.col >= cols) throw invalid_input("matrix cell out of range");
      ++start[x.row + 1];
    }
    for (std::size_t r = 0; r < rows; ++r) start[r + 1] += start[r];
    std::vector<Cell> sorted(ones.size());
    auto fill = start;
    for (auto x : ones) sorted[fill[x.row]++] = x;
    for (std::size_t q = 1; q < sorted.size(); ++q)
      if (!(sorted[q - 1] < sorted[q])) throw invalid_input("column-major input is unsorted or has duplicates");
    Matrix01 out;
    out.rows_ = rows;
    out.cols_ = cols;
    out.ones_ = std::move(sorted);
    out.build_indexes();
    return out;
  }

  static Matrix01 zeros(index_t rows, index_t cols) { return Matrix01(rows, cols, {}); }

  static Matrix01 all_ones(index_t rows, index_t cols) {
    std::vector<Cell> ones;
    ones.reserve(std::size_t{rows} * cols);
    for (index_t r = 0; r < rows; ++r)
      for (index_t c = 0; c < cols; ++c) ones.push_back({r, c});
    return Matrix01(rows, cols, std::move(ones));
  }

  static Matrix01 from_pattern(const Pattern& p) {
    return Matrix01(p.rows(), p.cols(), std::vector<Cell>(p.ones().begin(), p.ones().end()));
  }

  index_t rows() const { return rows_; }
  index_t cols() const { return cols_; }
  std::size_t weight() const { return ones_.size(); }
  std::span<const Cell> ones() const { return ones_; }

  /// Sorted column indices of the ones in row r.
  std::span<const index_t> row(index_t r) const {
    return {row_cols_.data() + row_start_[r], row_cols_.data() + row_start_[r + 1]};
  }
  /// Sorted row indices of the ones in column c.
  std::span<const index_t> col(index_t c) const {
    return {col_rows_.data() + col_start_[c], col_rows_.data() + col_start_[c + 1]};
  }

  bool at(index_t r, index_t c) const {
    if (!bits_.empty()) {
      std::uint64_t k = std::uint64_t{r} * cols_ + c;
      return (bits_[k >> 6] >> (k & 63)) & 1;
    }
    auto line = row(r);
    return std::binary_search(line.begin(), line.end(), c);
  }

  bool has_bitset() const { return !bits_.empty(); }

  /// Copy with the entry at x flipped.
  Matrix01 toggled(Cell x) const {
    std::vector<Cell> ones(ones_.begin(), ones_.end());
    auto it = std::lower_bound(ones.begin(), ones.end(), x);
    if (it != ones.end() && *it == x) ones.erase(it);
    else ones.insert(it, x);
    return Matrix01(rows_, cols_, std::move(ones));
  }

  friend bool operator==(const Matrix01& a, const Matrix01& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.ones_ == b.ones_;
  }

 private:
  void build_indexes() {
    row_start_.assign(std::size_t{rows_} + 1, 0);
    col_start_.assign(std::size_t{cols_} + 1, 0);
    for (auto x : ones_) {
      ++row_start_[x.row + 1];
      ++col_start_[x.col + 1];
    }
    for (std::size_t r = 0; r < rows_; ++r) row_start_[r + 1] += row_start_[r];
    for (std::size_t c = 0; c < cols_; ++c) col_start_[c + 1] += col_start_[c];
    row_cols_.resize(ones_.size());
    col_rows_.resize(ones_.size());
    auto fill = col_start_;
    for (std::size_t q = 0; q < ones_.size(); ++q) {
      row_cols_[q] = ones_[q].col;
      col_rows_[fill[ones_[q].col]++] = ones_[q].row;
    }
    bits_.clear();
    std::uint64_t cells = std::uint64_t{rows_} * cols_;
    if (cells <= kBitsetLimit) {
      bits_.assign((cells + 63) / 64, 0);
      for (auto x : ones_) {
        std::uint64_t k = std::uint64_t{x.row} * cols_ + x.col;
        bits_[k >> 6] |= std::uint64_t{1} << (k & 63);
      }
    }
  }

  index_t rows_ = 0;
  index_t cols_ = 0;
  std::vector<Cell> ones_;
  std::vector<std::size_t> row_start_{0};
  std::vector<index_t> row_cols_;
  std::vector<std::size_t> col_start_{0};
  std::vector<index_t> col_rows_;
  std::vector<std::uint64_t> bits_;
};

inline Matrix01 transform(const Matrix01& a, Transform g) {
  std::vector<Cell> ones;
  ones.reserve(a.weight());
  for (auto x : a.ones()) ones.push_back(map_cell(g, x, a.rows(), a.cols()));
  return swaps_axes(g) ? Matrix01(a.cols(), a.rows(), std::move(ones))
                       : Matrix01(a.rows(), a.cols(), std::move(ones));
}

/// Matrix file: header "n m w", then w lines "r c" in row-major order.
inline void write_matrix(std::ostream& out, const Matrix01& a) {
  out << a.rows() << ' ' << a.cols() << ' ' << a.weight() << '\n';
  for (auto x : a.ones()) out << x.row << ' ' << x.col << '\n';
}

inline std::string to_matrix_text(const Matrix01& a) {
  std::ostringstream out;
  write_matrix(out, a);
  return out.str();
}

inline Matrix01 read_matrix(std::istream& in) {
  std::uint64_t n = 0, m = 0, w = 0;
  if (!(in >> n >> m >> w)) throw invalid_input("matrix file: bad header");
  if (n > UINT32_MAX || m > UINT32_MAX) throw invalid_input("matrix file: dimensions too large");
  std::vector<Cell> ones;
  ones.reserve(w);
  for (std::uint64_t q = 0; q < w; ++q) {
    std::uint64_t r = 0, c = 0;
    if (!(in >> r >> c)) throw invalid_input("matrix file: truncated entry list");
    if (r >= n || c >= m) throw invalid_input("matrix file: entry out of range");
    Cell x{static_cast<index_t>(r), static_cast<index_t>(c)};
    if (!ones.empty() && !(ones.back() < x)) throw invalid_input("matrix file: entries not sorted or duplicated");
    ones.push_back(x);
  }
  std::string rest;
  if (in >> rest) throw invalid_input("matrix file: trailing content");
  return Matrix01(static_cast<index_t>(n), static_cast<index_t>(m), std::move(ones));
}

inline Matrix01 parse_matrix(const std::string& text) {
  std::istringstream in(text);
  return read_matrix(in);
}

}  // namespace zom
