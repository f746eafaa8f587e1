#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "zom/classifier.hpp"
#include "zom/containment.hpp"
#include "zom/registry.hpp"

using namespace zom;

namespace {

// Plain recursion over every horizontal cut, no memo.
unsigned naive_degeneracy(const Pattern& p, index_t lo, index_t hi) {
  if (lo == hi) return 0;
  unsigned best = kNoDecomposition;
  for (index_t cut = lo; cut < hi; ++cut) {
    index_t shared = 0;
    for (index_t c = 0; c < p.cols(); ++c) {
      bool top = false, bottom = false;
      for (index_t r = lo; r <= cut; ++r) top |= p.at(r, c);
      for (index_t r = cut + 1; r <= hi; ++r) bottom |= p.at(r, c);
      shared += top && bottom;
    }
    if (shared > 1) continue;
    unsigned a = naive_degeneracy(p, lo, cut), b = naive_degeneracy(p, cut + 1, hi);
    if (a == kNoDecomposition || b == kNoDecomposition) continue;
    best = std::min(best, 1 + std::max(a, b));
  }
  return best;
}

Pattern random_pattern(index_t n, index_t m, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution bit(density);
  std::vector<Cell> ones;
  for (index_t r = 0; r < n; ++r)
    for (index_t c = 0; c < m; ++c)
      if (bit(rng)) ones.push_back({r, c});
  return Pattern(n, m, std::move(ones));
}

unsigned expected_exponent(const ReductionReport& r) {
  unsigned total = 0;
  for (const auto& s : r.steps) total += s.rule == Rule::C ? 2 : s.rule == Rule::L ? 0 : 1;
  return total;
}

}  // namespace

TEST_CASE("covering examples") {
  auto w = is_covering(registry_pattern("s0"));
  REQUIRE(w);
  CHECK(w->k_star == 1);
  CHECK(w->J == std::vector<index_t>{0, 2});
  for (const char* name : {"s1", "s2", "s3"}) CHECK(is_covering(registry_pattern(name)));
  CHECK_FALSE(is_covering(parse_pattern("1.1")));
  CHECK_FALSE(is_covering(parse_pattern("1111")));
  CHECK_FALSE(is_covering(registry_pattern("p1")));
  CHECK_FALSE(is_covering(registry_pattern("q3")));
}

TEST_CASE("covering witnesses are well formed") {
  std::mt19937_64 rng(17);
  auto corpus = pattern_corpus();
  for (int k = 0; k < 3000; ++k) corpus.push_back({"random", random_pattern(4, 5, 0.45, rng)});
  for (const auto& [name, p] : corpus) {
    auto w = is_covering(p);
    if (!w) continue;
    INFO(name << "\n" << to_text(p));
    CHECK(is_acyclic(p));
    CHECK(p.at(w->k_star, 0));
    CHECK(p.at(w->k_star, p.cols() - 1));
    REQUIRE(w->intervals.size() == w->J.size());
    std::vector<std::pair<index_t, index_t>> spans = w->intervals;
    std::sort(spans.begin(), spans.end());
    index_t reach = 0;
    bool covered = !spans.empty() && spans.front().first == 0;
    for (auto [first, last] : spans) {
      if (first > reach) covered = false;
      reach = std::max(reach, last);
    }
    CHECK(covered);
    CHECK(reach == p.cols() - 1);
    for (std::size_t q = 0; q < w->J.size(); ++q) {
      auto ones = p.row_ones(w->J[q]);
      CHECK(ones.size() >= 2);
      CHECK(w->J[q] != w->k_star);
      CHECK(w->intervals[q] == std::pair(ones.front(), ones.back()));
    }
  }
}

TEST_CASE("degeneracy examples") {
  CHECK(degeneracy_class(parse_pattern("1.11.1")) == 0);
  CHECK(degeneracy_class(registry_pattern("s0")) == 2);
  CHECK(degeneracy_class(registry_pattern("s1")) == 2);
  CHECK(degeneracy_class(registry_pattern("q3")) == 1);
  CHECK(degeneracy_class(parse_pattern("11\n11\n11")) == kNoDecomposition);
}

TEST_CASE("degeneracy matches the naive recursion") {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 800; ++k) {
    std::uniform_int_distribution<index_t> dim(1, 6);
    auto p = random_pattern(dim(rng), dim(rng), 0.4, rng);
    INFO(to_text(p));
    CHECK(degeneracy_class(p) == naive_degeneracy(p, 0, p.rows() - 1));
  }
  for (const auto& [name, p] : pattern_corpus()) {
    INFO(name);
    CHECK(degeneracy_class(p) == naive_degeneracy(p, 0, p.rows() - 1));
  }
}

TEST_CASE("reduction examples") {
  for (index_t t = 1; t <= 4; ++t) {
    auto r = reduce_polylog(make_p(t));
    CHECK(r.success);
    CHECK(r.exponent == t);
  }
  auto r0 = reduce_polylog(registry_pattern("r0"));
  CHECK(r0.success);
  CHECK(r0.exponent == 2);
  auto r1 = reduce_polylog(registry_pattern("r1"));
  CHECK(r1.success);
  CHECK(r1.exponent == 3);
  auto r2 = reduce_polylog(registry_pattern("r2"));
  CHECK(r2.success);
  CHECK(r2.exponent == 2);
  for (const char* name : {"s0", "s1", "s2", "s3"}) {
    INFO(name);
    CHECK_FALSE(reduce_polylog(registry_pattern(name)).success);
  }
  CHECK_FALSE(reduce_polylog(make_s0t(2)).success);
}

TEST_CASE("reduction reports are internally consistent and replay") {
  std::mt19937_64 rng(29);
  auto corpus = pattern_corpus();
  for (int k = 0; k < 400; ++k) corpus.push_back({"random", random_pattern(4, 5, 0.35, rng)});
  for (const auto& [name, p] : corpus) {
    INFO(name << "\n" << to_text(p));
    auto r = reduce_polylog(p);
    CHECK(r.exponent == expected_exponent(r));
    CHECK(replay_reduction(p, r));
    if (r.success) CHECK(is_base_linear(r.residual));
    if (!r.success) CHECK(detail::all_steps(r.residual).empty());
  }
}

TEST_CASE("strong-version consistency on the reducible corpus") {
  for (const char* name : {"p1", "p2", "p3", "p4", "r0", "r1", "r2"}) {
    INFO(name);
    auto p = registry_pattern(name);
    auto r = reduce_polylog(p);
    REQUIRE(r.success);
    CHECK(r.exponent + 3 <= p.weight());
  }
}

TEST_CASE("exhaustive reduction never does worse than greedy") {
  for (const auto& [name, p] : pattern_corpus()) {
    if (p.cols() > 8 || p.rows() > 8) continue;
    INFO(name);
    auto greedy = reduce_polylog(p);
    auto best = reduce_polylog_exhaustive(p);
    CHECK(replay_reduction(p, best));
    if (greedy.success) {
      CHECK(best.success);
      CHECK(best.exponent <= greedy.exponent);
    }
  }
}

TEST_CASE("replay rejects a tampered trace") {
  const auto r1 = registry_pattern("r1");
  const auto r = reduce_polylog(r1);
  REQUIRE_FALSE(r.steps.empty());
  auto wrong_exponent = r;
  wrong_exponent.exponent += 5;
  CHECK_FALSE(replay_reduction(r1, wrong_exponent));
  auto wrong_result = r;
  wrong_result.steps.front().after = r1;
  CHECK_FALSE(replay_reduction(r1, wrong_result));
}

TEST_CASE("Q-free light check") {
  for (const char* name : {"o2", "o3", "o4"}) CHECK(q_free_light_check(registry_pattern(name)));
  CHECK_FALSE(q_free_light_check(registry_pattern("q3")));
  CHECK_FALSE(q_free_light_check(registry_pattern("q3p")));
  CHECK_FALSE(q_free_light_check(registry_pattern("s0")));
  CHECK(q_family().size() <= 8);
  for (const auto& q : q_family()) CHECK_FALSE(q_free_light_check(q));
}

TEST_CASE("classify report fields") {
  auto c = classify(registry_pattern("s0"));
  CHECK(c.acyclic);
  CHECK_FALSE(c.light);
  CHECK(c.covering);
  CHECK(c.degeneracy == 2);
  CHECK_FALSE(c.reduction.success);
  CHECK_FALSE(c.q_free_light);
  auto t = classify(transform(registry_pattern("s0"), Transform::transpose));
  CHECK(c.degeneracy_transposed == t.degeneracy);
}
