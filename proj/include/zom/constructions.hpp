#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "zom/errors.hpp"
#include "zom/matrix.hpp"

namespace zom {

/// Size limits for generated matrices and tensors.
struct Caps {
  std::uint64_t cells = std::uint64_t{1} << 32;
  std::uint64_t ones = 100'000'000;

  /// Defaults, with the cell cap overridable through ZOM_CELL_CAP.
  static Caps from_env() {
    Caps caps;
    if (const char* raw = std::getenv("ZOM_CELL_CAP")) {
      char* end = nullptr;
      auto value = std::strtoull(raw, &end, 10);
      if (end == raw || *end != '\0' || value == 0) throw invalid_input("ZOM_CELL_CAP must be a positive integer");
      caps.cells = value;
    }
    return caps;
  }
};

enum class Variant { A, At, dense };

inline std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::A: return "A";
    case Variant::At: return "At";
    case Variant::dense: return "dense";
  }
  return "?";
}

/// Row label (s, r). For the dense variant s is an element of the Behrend set.
struct RowLabel {
  std::uint64_t s = 1;
  std::vector<index_t> r;
  friend auto operator<=>(const RowLabel&, const RowLabel&) = default;
};

/// Column label (c, i).
struct ColLabel {
  std::vector<index_t> c;
  std::vector<index_t> i;
  friend auto operator<=>(const ColLabel&, const ColLabel&) = default;
};

struct ConstructionParams {
  Variant variant = Variant::A;
  index_t b = 1;
  index_t m = 1;
  std::optional<index_t> t;
  std::vector<std::uint64_t> s_values;  // dense variant only
  friend bool operator==(const ConstructionParams&, const ConstructionParams&) = default;
};

struct LabeledMatrix {
  Matrix01 matrix;
  std::vector<RowLabel> row_labels;
  std::vector<ColLabel> col_labels;
  ConstructionParams params;
};

/// Splits a 0/1 vector into the ones at odd and even positions counted from the right.
/// odd holds the last, 3rd last, ... ones; even the 2nd last, 4th last, ...
struct EvenOdd {
  std::vector<index_t> even;
  std::vector<index_t> odd;
};

inline EvenOdd split_even_odd(std::span<const index_t> i) {
  EvenOdd out{std::vector<index_t>(i.size(), 0), std::vector<index_t>(i.size(), 0)};
  index_t suffix = 0;
  for (std::size_t u = i.size(); u-- > 0;) {
    if (i[u] > 1) throw invalid_input("split_even_odd expects a 0/1 vector");
    suffix += i[u];
    if (i[u] == 1) (suffix % 2 == 1 ? out.odd : out.even)[u] = 1;
  }
  return out;
}

namespace detail {

inline std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t q = 0; q < exp; ++q) {
    if (base != 0 && out > UINT64_MAX / base) throw cap_exceeded("construction size overflows 64 bits");
    out *= base;
  }
  return out;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t out = 1;
  for (std::uint64_t q = 1; q <= k; ++q) out = out * (n - k + q) / q;
  return out;
}

// Base-`base` digits of `value`, most significant first, as 1-based components when one_based.
inline std::vector<index_t> digits(std::uint64_t value, std::uint64_t base, index_t count, bool one_based) {
  std::vector<index_t> out(count);
  for (index_t u = count; u-- > 0;) {
    out[u] = static_cast<index_t>(value % base) + (one_based ? 1 : 0);
    value /= base;
  }
  return out;
}

inline void check_dimensions(std::uint64_t rows, std::uint64_t cols, const Caps& caps) {
  if (rows >= UINT32_MAX || cols >= UINT32_MAX) throw cap_exceeded("matrix dimension exceeds 32-bit indexing");
  if (rows != 0 && cols > caps.cells / rows) {
    std::ostringstream msg;
    msg << "construction has " << rows << " x " << cols << " cells, above the cap of " << caps.cells;
    throw cap_exceeded(msg.str());
  }
}

// Row offset of column label (c, i) for row label s, per variant.
inline std::int64_t offset(const ConstructionParams& params, std::uint64_t s, const ColLabel& col, const EvenOdd& split,
                           index_t u) {
  switch (params.variant) {
    case Variant::A:
    case Variant::dense: return static_cast<std::int64_t>(s) * col.i[u];
    case Variant::At:
      return static_cast<std::int64_t>(s) * split.even[u] + static_cast<std::int64_t>(params.m + 1 - s) * split.odd[u];
  }
  return 0;
}

// The i-vectors of a variant in lexicographic order.
inline std::vector<std::vector<index_t>> i_vectors(const ConstructionParams& params) {
  std::vector<std::vector<index_t>> out;
  const index_t b = params.b;
  const std::uint64_t radix = params.variant == Variant::dense ? *params.t : 2;
  const std::uint64_t count = checked_pow(radix, b);
  for (std::uint64_t code = 0; code < count; ++code) {
    auto v = digits(code, radix, b, false);
    if (params.variant == Variant::At) {
      index_t weight = 0;
      for (auto x : v) weight += x;
      if (weight != *params.t) continue;
    }
    out.push_back(std::move(v));
  }
  return out;
}

inline std::vector<std::uint64_t> s_values(const ConstructionParams& params) {
  if (params.variant == Variant::dense) return params.s_values;
  std::vector<std::uint64_t> out(params.m);
  for (index_t s = 0; s < params.m; ++s) out[s] = s + 1;
  return out;
}

// Row index of label (s at rank s_rank, r).
inline std::uint64_t row_index(std::uint64_t s_rank, std::span<const index_t> r, index_t m) {
  std::uint64_t idx = s_rank;
  for (auto x : r) idx = idx * m + (x - 1);
  return idx;
}

inline LabeledMatrix build_labeled(const ConstructionParams& params, const Caps& caps) {
  const index_t b = params.b, m = params.m;
  const auto svals = s_values(params);
  const auto ivecs = i_vectors(params);
  const std::uint64_t mb = checked_pow(m, b);
  const std::uint64_t rows = svals.size() * mb;
  const std::uint64_t cols = mb * ivecs.size();
  check_dimensions(rows, cols, caps);

  LabeledMatrix out;
  out.params = params;
  out.row_labels.reserve(rows);
  for (std::uint64_t q = 0; q < svals.size(); ++q)
    for (std::uint64_t code = 0; code < mb; ++code) out.row_labels.push_back({svals[q], digits(code, m, b, true)});
  out.col_labels.reserve(cols);
  std::vector<EvenOdd> splits;
  for (const auto& i : ivecs) splits.push_back(params.variant == Variant::At ? split_even_odd(i) : EvenOdd{});
  for (std::uint64_t code = 0; code < mb; ++code) {
    auto c = digits(code, m, b, true);
    for (const auto& i : ivecs) out.col_labels.push_back({c, i});
  }

  std::vector<Cell> ones;
  std::vector<index_t> r(b);
  for (std::uint64_t col = 0; col < cols; ++col) {
    const auto& label = out.col_labels[col];
    const auto& split = splits[col % ivecs.size()];
    for (std::uint64_t q = 0; q < svals.size(); ++q) {
      bool fits = true;
      for (index_t u = 0; u < b && fits; ++u) {
        std::int64_t value = label.c[u] + offset(params, svals[q], label, split, u);
        fits = value >= 1 && value <= m;
        r[u] = static_cast<index_t>(value);
      }
      if (!fits) continue;
      if (ones.size() >= caps.ones) throw cap_exceeded("construction exceeds the cap on ones");
      ones.push_back({static_cast<index_t>(row_index(q, r, m)), static_cast<index_t>(col)});
    }
  }
  out.matrix = Matrix01::from_column_major(static_cast<index_t>(rows), static_cast<index_t>(cols), ones);
  return out;
}

}  // namespace detail

/// A[b,m]: rows [m] x [m]^b, columns [m]^b x {0,1}^b, one iff r = c + s*i.
inline LabeledMatrix build_A(index_t b, index_t m, const Caps& caps = Caps::from_env()) {
  if (b < 1 || m < 1) throw invalid_input("build_A needs b >= 1 and m >= 1");
  return detail::build_labeled({Variant::A, b, m, std::nullopt, {}}, caps);
}

/// A_t[b,m]: the columns of A[b,m] with |i| = t, offsets s on even ones and m+1-s on odd ones.
inline LabeledMatrix build_At(index_t b, index_t m, index_t t, const Caps& caps = Caps::from_env()) {
  if (b < 1 || m < 1) throw invalid_input("build_At needs b >= 1 and m >= 1");
  if (t < 1 || t > b) throw invalid_input("build_At needs 1 <= t <= b");
  return detail::build_labeled({Variant::At, b, m, t, {}}, caps);
}

/// Dense variant: rows S x [m]^b, columns [m]^b x {0..t-1}^b, one iff r = c + s*i.
inline LabeledMatrix build_dense(index_t b, index_t m, index_t t, std::vector<std::uint64_t> s_values,
                                 const Caps& caps = Caps::from_env()) {
  if (b < 1 || m < 1 || t < 2) throw invalid_input("build_dense needs b >= 1, m >= 1, t >= 2");
  if (!std::is_sorted(s_values.begin(), s_values.end()) ||
      std::adjacent_find(s_values.begin(), s_values.end()) != s_values.end() ||
      (!s_values.empty() && s_values.front() == 0))
    throw invalid_input("build_dense needs a strictly increasing set of positive integers");
  return detail::build_labeled({Variant::dense, b, m, t, std::move(s_values)}, caps);
}

/// Rebuilds a construction from its parameters.
inline LabeledMatrix rebuild(const ConstructionParams& params, const Caps& caps = Caps::from_env()) {
  switch (params.variant) {
    case Variant::A: return build_A(params.b, params.m, caps);
    case Variant::At: return build_At(params.b, params.m, params.t.value_or(0), caps);
    case Variant::dense: return build_dense(params.b, params.m, params.t.value_or(0), params.s_values, caps);
  }
  throw invalid_input("unknown variant");
}

struct AuditReport {
  bool pass = true;
  std::string violation;
  std::uint64_t column_pairs = 0;
  std::uint64_t row_pairs = 0;
};

/// Checks the defining equation in both directions (every one satisfies it,
/// every labeled cell satisfying it is a one), then the pair properties:
/// two ones in a column have s0 < s1; two ones in a row have c0 < c1, and at
/// the first nonzero position u of c1 - c0, i0(u) = 1 and the difference is
/// s0 (A), s0 or m+1-s0 by the even/odd split (A_t). For the dense variant
/// every coordinate of c1 - c0 is a multiple j*s0 with |j| <= t-1.
inline AuditReport audit_simple_properties(const LabeledMatrix& lm) {
  AuditReport report;
  const auto& a = lm.matrix;
  const auto& params = lm.params;
  if (lm.row_labels.size() != a.rows() || lm.col_labels.size() != a.cols())
    throw invalid_input("audit needs a labeled matrix with one label per row and column");
  auto fail = [&](std::string what) {
    report.pass = false;
    report.violation = std::move(what);
    return report;
  };
  auto where = [](index_t r, index_t c) {
    std::ostringstream out;
    out << " at (" << r << ", " << c << ")";
    return out.str();
  };

  const auto svals = detail::s_values(params);
  const index_t b = params.b, m = params.m;
  for (index_t c = 0; c < a.cols(); ++c) {
    const auto& col = lm.col_labels[c];
    auto split = params.variant == Variant::At ? split_even_odd(col.i) : EvenOdd{};
    auto rows = a.col(c);
    std::size_t next = 0;
    for (std::uint64_t q = 0; q < svals.size(); ++q) {
      std::vector<index_t> r(b);
      bool fits = true;
      for (index_t u = 0; u < b && fits; ++u) {
        std::int64_t value = col.c[u] + detail::offset(params, svals[q], col, split, u);
        fits = value >= 1 && value <= m;
        r[u] = static_cast<index_t>(value);
      }
      if (!fits) continue;
      auto expect = static_cast<index_t>(detail::row_index(q, r, m));
      if (lm.row_labels[expect].s != svals[q] || lm.row_labels[expect].r != r)
        return fail("row labels out of order" + where(expect, c));
      if (next < rows.size() && rows[next] < expect)
        return fail("one violates the defining equation" + where(rows[next], c));
      if (next == rows.size() || rows[next] != expect)
        return fail("missing one required by the defining equation" + where(expect, c));
      ++next;
    }
    if (next != rows.size()) return fail("one violates the defining equation" + where(rows[next], c));

    for (std::size_t x = 0; x < rows.size(); ++x)
      for (std::size_t y = x + 1; y < rows.size(); ++y) {
        ++report.column_pairs;
        if (!(lm.row_labels[rows[x]].s < lm.row_labels[rows[y]].s))
          return fail("column pair without s0 < s1" + where(rows[y], c));
      }
  }

  for (index_t r = 0; r < a.rows(); ++r) {
    const std::uint64_t s0 = lm.row_labels[r].s;
    auto cols = a.row(r);
    for (std::size_t x = 0; x < cols.size(); ++x) {
      const auto& first = lm.col_labels[cols[x]];
      auto split = params.variant == Variant::At ? split_even_odd(first.i) : EvenOdd{};
      for (std::size_t y = x + 1; y < cols.size(); ++y) {
        ++report.row_pairs;
        const auto& second = lm.col_labels[cols[y]];
        if (!(first.c < second.c)) return fail("row pair without c0 < c1" + where(r, cols[y]));
        if (params.variant == Variant::dense) {
          for (index_t u = 0; u < b; ++u) {
            auto diff = static_cast<std::int64_t>(second.c[u]) - first.c[u];
            auto step = static_cast<std::int64_t>(s0);
            if (diff % step != 0 || std::abs(diff / step) > static_cast<std::int64_t>(*params.t) - 1)
              return fail("row pair difference is not a bounded multiple of s0" + where(r, cols[y]));
          }
          continue;
        }
        index_t u = 0;
        while (first.c[u] == second.c[u]) ++u;
        const std::int64_t diff = static_cast<std::int64_t>(second.c[u]) - first.c[u];
        if (first.i[u] != 1) return fail("row pair with i0(u) = 0" + where(r, cols[y]));
        std::int64_t want = static_cast<std::int64_t>(s0);
        if (params.variant == Variant::At && split.odd[u] == 1) want = static_cast<std::int64_t>(m + 1 - s0);
        if (diff != want) return fail("row pair difference disagrees with its offset" + where(r, cols[y]));
      }
    }
  }
  return report;
}

/// ceil(2^b m^b (m/(b+1) - 1)), clamped at zero.
inline std::uint64_t weight_bound_A(index_t b, index_t m) {
  using boost::multiprecision::cpp_int;
  if (b < 1 || m < 1) throw invalid_input("weight_bound_A needs b, m >= 1");
  if (m <= b + 1) return 0;
  cpp_int num = cpp_int(1) << b;
  num *= boost::multiprecision::pow(cpp_int(m), b);
  num *= m - b - 1;
  cpp_int den = b + 1;
  cpp_int bound = (num + den - 1) / den;
  if (bound > UINT64_MAX) throw cap_exceeded("weight bound exceeds 64 bits");
  return bound.convert_to<std::uint64_t>();
}

/// Column count of A_t[b,m] times (floor(m/2) - 1) / 4^t, rounded up, clamped at zero.
/// This fixes eps = 1/4 in the averaging argument over s in the middle half of [m].
inline std::uint64_t weight_bound_At(index_t b, index_t m, index_t t) {
  using boost::multiprecision::cpp_int;
  if (b < 1 || m < 1 || t < 1 || t > b) throw invalid_input("weight_bound_At needs b, m >= 1 and 1 <= t <= b");
  if (m / 2 <= 1) return 0;
  cpp_int num = boost::multiprecision::pow(cpp_int(m), b) * detail::binomial(b, t) * (m / 2 - 1);
  cpp_int den = cpp_int(1) << (2 * t);
  cpp_int bound = (num + den - 1) / den;
  if (bound > UINT64_MAX) throw cap_exceeded("weight bound exceeds 64 bits");
  return bound.convert_to<std::uint64_t>();
}

}  // namespace zom
