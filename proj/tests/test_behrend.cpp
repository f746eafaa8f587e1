#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "zom/behrend.hpp"
#include "zom/containment.hpp"
#include "zom/registry.hpp"

using namespace zom;

namespace {

// Every triple and every coefficient vector, no normalisation or ordering tricks.
bool has_nontrivial_solution(const std::vector<std::uint64_t>& set, std::int64_t h) {
  for (auto s0 : set)
    for (auto s1 : set)
      for (auto s2 : set)
        for (std::int64_t a = -h; a <= h; ++a)
          for (std::int64_t b = -h; b <= h; ++b)
            for (std::int64_t c = -h; c <= h; ++c) {
              auto x = static_cast<std::int64_t>(s0), y = static_cast<std::int64_t>(s1), z = static_cast<std::int64_t>(s2);
              if (a * x + b * y + c * z != 0) continue;
              bool trivial = a + b + c == 0 && a * b * (x - y) == 0 && b * c * (y - z) == 0 && c * a * (z - x) == 0;
              if (!trivial) return true;
            }
  return false;
}

void check_witness(const BehrendWitness& w, const std::vector<std::uint64_t>& set, std::int64_t h) {
  CHECK(w.alpha * static_cast<std::int64_t>(w.s0) + w.beta * static_cast<std::int64_t>(w.s1) +
            w.gamma * static_cast<std::int64_t>(w.s2) ==
        0);
  CHECK_FALSE(is_trivial_solution(w));
  for (auto c : {w.alpha, w.beta, w.gamma}) CHECK(std::abs(c) <= h);
  for (auto s : {w.s0, w.s1, w.s2}) CHECK(std::find(set.begin(), set.end(), s) != set.end());
}

}  // namespace

TEST_CASE("verify_behrend examples") {
  std::vector<std::uint64_t> one{1};
  for (std::uint64_t h = 1; h <= 5; ++h) CHECK(verify_behrend(one, h).ok);

  std::vector<std::uint64_t> three{1, 2, 3};
  auto check = verify_behrend(three, 2);
  REQUIRE_FALSE(check.ok);
  REQUIRE(check.witness);
  CHECK(*check.witness == BehrendWitness{1, -2, 1, 1, 2, 3});
}

TEST_CASE("{1,2} with h = 1 has the nontrivial solution 1 + 1 - 2 = 0") {
  // alpha + beta + gamma = 1, so the solution is nontrivial under the triviality rule.
  std::vector<std::uint64_t> two{1, 2};
  auto check = verify_behrend(two, 1);
  CHECK_FALSE(check.ok);
  REQUIRE(check.witness);
  CHECK(*check.witness == BehrendWitness{1, 1, -1, 1, 1, 2});
  CHECK(has_nontrivial_solution(two, 1));
}

TEST_CASE("verify_behrend agrees with the unnormalised oracle") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 150; ++trial) {
    std::uniform_int_distribution<int> size(1, 5);
    std::uniform_int_distribution<std::uint64_t> value(1, 40);
    std::vector<std::uint64_t> set;
    int k = size(rng);
    while (static_cast<int>(set.size()) < k) {
      auto v = value(rng);
      if (std::find(set.begin(), set.end(), v) == set.end()) set.push_back(v);
    }
    std::sort(set.begin(), set.end());
    for (std::int64_t h = 1; h <= 3; ++h) {
      auto check = verify_behrend(set, h);
      CHECK(check.ok == !has_nontrivial_solution(set, h));
      if (!check.ok) check_witness(*check.witness, set, h);
    }
  }
}

TEST_CASE("behrend_set outputs verify and respect the bounds") {
  for (std::uint64_t N : {1ULL, 2ULL, 10ULL, 100ULL, 1000ULL, 10000ULL})
    for (std::uint64_t h : {2ULL, 3ULL}) {
      INFO("N=" << N << " h=" << h);
      auto set = behrend_set(N, h);
      CHECK(set.verified);
      REQUIRE_FALSE(set.elements.empty());
      CHECK(std::is_sorted(set.elements.begin(), set.elements.end()));
      CHECK(std::adjacent_find(set.elements.begin(), set.elements.end()) == set.elements.end());
      CHECK(set.elements.front() >= 1);
      CHECK(set.elements.back() <= N);
      CHECK(verify_behrend(set.elements, h).ok);
      if (!set.fallback()) {
        CHECK(meets_size_bound(set));
        CHECK(set.elements.back() < N);
        CHECK(set.params->base == 2 * h * set.params->d);
      }
    }
  CHECK(behrend_set(1, 2).elements == std::vector<std::uint64_t>{1});
}

TEST_CASE("behrend_set at N = 10^4") {
  auto two = behrend_set(10000, 2);
  REQUIRE_FALSE(two.fallback());
  CHECK(two.params->d == 2);
  CHECK(two.params->D == 3);
  CHECK(two.elements == std::vector<std::uint64_t>{513, 520, 576});

  auto three = behrend_set(10000, 3);
  REQUIRE_FALSE(three.fallback());
  CHECK(three.params->d == 3);
  CHECK(three.params->D == 2);
  CHECK(three.elements == std::vector<std::uint64_t>{325, 342});
}

TEST_CASE("subsets of a verified set verify") {
  auto set = behrend_set(100, 2).elements;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << set.size()); mask += 7) {
    std::vector<std::uint64_t> sub;
    for (std::size_t q = 0; q < set.size(); ++q)
      if ((mask >> q) & 1) sub.push_back(set[q]);
    CHECK(verify_behrend(sub, 2).ok);
  }
}

TEST_CASE("verify_behrend rejects oversized work") {
  std::vector<std::uint64_t> big(200);
  for (std::size_t q = 0; q < big.size(); ++q) big[q] = q + 1;
  CHECK_THROWS_AS(verify_behrend(big, 3, 1000), budget_exceeded);
}

TEST_CASE("dense construction is S0(t)-free") {
  for (auto [b, t] : {std::pair<index_t, index_t>{1, 2}, {1, 3}, {2, 2}}) {
    INFO("b=" << b << " t=" << t);
    auto lm = build_dense_S0t(b, t);
    const auto need = static_cast<std::size_t>(std::pow(t, b));
    REQUIRE(lm.params.s_values.size() == need);
    CHECK(verify_behrend(lm.params.s_values, t - 1).ok);
    CHECK(lm.matrix.cols() == static_cast<std::uint64_t>(std::pow(lm.params.m, b)) * need);
    CHECK(lm.matrix.rows() == static_cast<std::uint64_t>(std::pow(lm.params.m, b)) * need);
    for (const auto& c : lm.col_labels)
      for (auto x : c.i) CHECK(x < t);
    CHECK(audit_simple_properties(lm).pass);
    CHECK_FALSE(contains(make_s0t(t), lm.matrix));
  }
  auto lm = build_dense_S0t(2, 2);
  CHECK(lm.params.m == 14);
  CHECK(lm.params.s_values == std::vector<std::uint64_t>{1, 3, 5, 7});
}

TEST_CASE("dense construction at b = 2, t = 3 with a raised cap") {
  Caps caps;
  caps.cells = UINT64_MAX;
  auto lm = build_dense_S0t(2, 3, caps);
  CHECK(lm.params.m == 218);
  CHECK(lm.params.s_values.size() == 9);
  CHECK(verify_behrend(lm.params.s_values, 2).ok);
  auto result = find_occurrence(make_s0t(3), lm.matrix);
  CHECK(result.status == MatchStatus::free);
}

TEST_CASE("dense construction honours the cell cap") {
  Caps caps;
  caps.cells = 10000;
  CHECK_THROWS_AS(build_dense_S0t(2, 3, caps), cap_exceeded);
}
