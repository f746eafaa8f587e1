#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "zom/constructions.hpp"
#include "zom/errors.hpp"
#include "zom/matrix.hpp"
#include "zom/pattern.hpp"

namespace zom {

/// Dense r-dimensional 0-1 array, last axis fastest.
class Tensor01 {
 public:
  Tensor01() = default;
  explicit Tensor01(std::vector<index_t> shape) : shape_(std::move(shape)) {
    std::uint64_t total = 1;
    for (auto e : shape_) total *= e;
    cells_.assign(total, 0);
  }

  const std::vector<index_t>& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t size() const { return cells_.size(); }

  std::size_t offset(std::span<const index_t> idx) const {
    std::size_t off = 0;
    for (std::size_t q = 0; q < shape_.size(); ++q) off = off * shape_[q] + idx[q];
    return off;
  }
  bool at(std::span<const index_t> idx) const { return cells_[offset(idx)] != 0; }
  void set(std::span<const index_t> idx, bool v) { cells_[offset(idx)] = v; }

  friend bool operator==(const Tensor01&, const Tensor01&) = default;

 private:
  std::vector<index_t> shape_;
  std::vector<std::uint8_t> cells_;
};

using TensorPattern = Tensor01;
using TensorMatrix = Tensor01;

namespace detail {

inline void check_tensor_cells(const std::vector<index_t>& shape, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (auto e : shape) {
    if (e != 0 && total > cap / e) throw cap_exceeded("tensor exceeds the cell cap");
    total *= e;
  }
  if (total > cap) throw cap_exceeded("tensor exceeds the cell cap");
}

}  // namespace detail

/// P with r-2 trailing width-1 axes, and A copied along r-2 trailing axes of the given extent
/// (default: A's row count).
inline std::pair<TensorPattern, TensorMatrix> lift_and_stack(const Pattern& p, const Matrix01& a, std::size_t r,
                                                             std::optional<index_t> extent = std::nullopt,
                                                             const Caps& caps = Caps::from_env()) {
  if (r < 2 || r > 4) throw invalid_input("lift_and_stack needs 2 <= r <= 4");
  const index_t depth = extent.value_or(a.rows());
  std::vector<index_t> pshape{p.rows(), p.cols()}, ashape{a.rows(), a.cols()};
  for (std::size_t q = 2; q < r; ++q) {
    pshape.push_back(1);
    ashape.push_back(depth);
  }
  detail::check_tensor_cells(ashape, caps.cells);
  TensorPattern tp(pshape);
  std::vector<index_t> idx(r, 0);
  for (auto x : p.ones()) {
    idx[0] = x.row;
    idx[1] = x.col;
    tp.set(idx, true);
  }
  TensorMatrix ta(ashape);
  std::uint64_t slices = 1;
  for (std::size_t q = 2; q < r; ++q) slices *= depth;
  for (std::uint64_t code = 0; code < slices; ++code) {
    auto rest = code;
    for (std::size_t q = r; q-- > 2;) {
      idx[q] = static_cast<index_t>(rest % depth);
      rest /= depth;
    }
    for (auto x : a.ones()) {
      idx[0] = x.row;
      idx[1] = x.col;
      ta.set(idx, true);
    }
  }
  return {std::move(tp), std::move(ta)};
}

/// True iff increasing index sets exist on every axis so that the selected
/// sub-tensor of ta dominates tp entrywise. Brute force over all selections.
inline bool contains_r(const TensorPattern& tp, const TensorMatrix& ta, std::uint64_t cell_cap = 1'000'000) {
  if (tp.rank() != ta.rank()) throw invalid_input("contains_r needs tensors of equal rank");
  if (tp.size() > cell_cap || ta.size() > cell_cap) throw cap_exceeded("contains_r is limited to small tensors");
  const std::size_t r = tp.rank();
  for (std::size_t q = 0; q < r; ++q)
    if (tp.shape()[q] > ta.shape()[q]) return false;

  std::vector<std::vector<index_t>> demanded;
  {
    std::vector<index_t> idx(r, 0);
    for (std::size_t off = 0; off < tp.size(); ++off) {
      auto rest = off;
      for (std::size_t q = r; q-- > 0;) {
        idx[q] = static_cast<index_t>(rest % tp.shape()[q]);
        rest /= tp.shape()[q];
      }
      if (tp.at(idx)) demanded.push_back(idx);
    }
  }

  std::vector<std::vector<index_t>> pick(r);
  std::function<bool(std::size_t)> choose_axis;
  std::function<bool(std::size_t, std::size_t, index_t)> choose_index = [&](std::size_t axis, std::size_t pos,
                                                                            index_t from) -> bool {
    if (pos == tp.shape()[axis]) return choose_axis(axis + 1);
    for (index_t v = from; v + (tp.shape()[axis] - pos) <= ta.shape()[axis]; ++v) {
      pick[axis][pos] = v;
      if (choose_index(axis, pos + 1, v + 1)) return true;
    }
    return false;
  };
  choose_axis = [&](std::size_t axis) -> bool {
    if (axis == r) {
      std::vector<index_t> host(r);
      for (const auto& cell : demanded) {
        for (std::size_t q = 0; q < r; ++q) host[q] = pick[q][cell[q]];
        if (!ta.at(host)) return false;
      }
      return true;
    }
    pick[axis].assign(tp.shape()[axis], 0);
    return choose_index(axis, 0, 0);
  };
  return choose_axis(0);
}

}  // namespace zom
