#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zom/errors.hpp"
#include "zom/pattern.hpp"

namespace zom {

/// p(t): 2 x (t+2). Column 0 holds both rows; column j >= 1 has its one in row (j+1) mod 2.
inline Pattern make_p(index_t t) {
  if (t < 1) throw invalid_input("p(t) needs t >= 1");
  std::vector<Cell> ones{{0, 0}, {1, 0}};
  for (index_t j = 1; j < t + 2; ++j) ones.push_back({(j + 1) % 2, j});
  return Pattern(2, t + 2, std::move(ones));
}

/// s0t(t): 3 x 2t. Row 0 at even columns, row 1 at both ends, row 2 at odd columns.
inline Pattern make_s0t(index_t t) {
  if (t < 1) throw invalid_input("s0t(t) needs t >= 1");
  const index_t width = 2 * t;
  std::vector<Cell> ones;
  for (index_t j = 0; j < width; j += 2) ones.push_back({0, j});
  ones.push_back({1, 0});
  if (width - 1 != 0) ones.push_back({1, width - 1});
  for (index_t j = 1; j < width; j += 2) ones.push_back({2, j});
  return Pattern(3, width, std::move(ones));
}

namespace detail {

struct NamedPattern {
  std::string_view name;
  std::string_view text;
};

inline constexpr NamedPattern kFixedPatterns[] = {
    {"s0", "1.1.\n1..1\n.1.1"},
    {"s1", "1..1\n1.1.\n.1.1"},
    {"s2", ".1...1.\n...1...\n1..1..1\n1.1....\n....1.1"},
    {"s3", "1......1\n...1....\n...1..1.\n.....1.1\n.1..1...\n1.1....."},
    {"q3", "1.1.\n.1.1"},
    {"q3p", "1...\n..1.\n.1.1"},
    {"r0", "11.\n..1\n1.1"},
    {"r1", "11..\n..11\n1..1"},
    {"r2", "11..\n1..1\n..11"},
    {"x", ".1.11\n..1.1\n.1...\n1...1"},
    {"o2", ".11.\n1..1"},
    {"o3", ".1..1.\n1....1\n..11.."},
    {"o4", "...11...\n.1....1.\n1......1\n..1..1.."},
};

inline index_t parse_parameter(std::string_view digits, std::string_view name) {
  index_t t = 0;
  auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), t);
  if (digits.empty() || ec != std::errc{} || end != digits.data() + digits.size())
    throw invalid_input("bad parameter in pattern name '" + std::string(name) + "'");
  return t;
}

}  // namespace detail

/// Named patterns. Parameterised names carry t as a suffix ("p3", "s0t3") or via the second argument.
inline Pattern registry_pattern(std::string_view name, std::optional<index_t> t = std::nullopt) {
  for (const auto& entry : detail::kFixedPatterns)
    if (entry.name == name) return parse_pattern(entry.text);
  auto param = [&](std::string_view suffix) {
    if (!suffix.empty()) return detail::parse_parameter(suffix, name);
    if (!t) throw invalid_input("pattern '" + std::string(name) + "' needs a parameter t");
    return *t;
  };
  if (name.starts_with("s0t")) return make_s0t(param(name.substr(3)));
  if (name.starts_with("p")) return make_p(param(name.substr(1)));
  throw invalid_input("unknown pattern name '" + std::string(name) + "'");
}

/// Every fixed pattern plus p(1..4) and s0t(2..3), with their names.
inline std::vector<std::pair<std::string, Pattern>> pattern_corpus() {
  std::vector<std::pair<std::string, Pattern>> out;
  for (const auto& entry : detail::kFixedPatterns) out.emplace_back(std::string(entry.name), parse_pattern(entry.text));
  for (index_t t = 1; t <= 4; ++t) out.emplace_back("p" + std::to_string(t), make_p(t));
  for (index_t t = 2; t <= 3; ++t) out.emplace_back("s0t" + std::to_string(t), make_s0t(t));
  return out;
}

}  // namespace zom
