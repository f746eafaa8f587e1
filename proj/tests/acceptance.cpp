// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "zom/zom.hpp"

using namespace zom;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      note << " [failed: " << what << "]";
    }
  }
};

// contains() with a wall-clock limit check.
bool free_within(Outcome& o, const Pattern& p, const Matrix01& a, double limit, const std::string& what) {
  auto start = Clock::now();
  auto w = contains(p, a);
  double took = seconds_since(start);
  o.require(!w, what + " free");
  o.require(took < limit, what + " under " + std::to_string(static_cast<int>(limit)) + " s");
  return !w;
}

void criterion_1(Outcome& o) {
  for (auto [b, m] : {std::pair<index_t, index_t>{1, 2}, {2, 4}, {3, 8}}) {
    auto lm = build_A(b, m);
    std::string tag = "A(" + std::to_string(b) + "," + std::to_string(m) + ")";
    if (b == 3) o.require(lm.matrix.rows() == 4096 && lm.matrix.cols() == 4096, tag + " is 4096x4096");
    free_within(o, registry_pattern("s0"), lm.matrix, 60, "s0 in " + tag);
    free_within(o, registry_pattern("s1"), lm.matrix, 60, "s1 in " + tag);
  }
}

void criterion_2(Outcome& o) {
  auto a = build_A(2, 4).matrix;
  for (const char* name : {"s2", "s3"}) o.require(!contains(registry_pattern(name), a), std::string(name) + " free");
  for (const char* name : {"s0", "s1", "s2", "s3"})
    o.require(is_covering(registry_pattern(name)).has_value(), std::string(name) + " covering");
  for (const char* name : {"p1", "q3"})
    o.require(!is_covering(registry_pattern(name)), std::string(name) + " not covering");
  for (const char* row : {"1", "11", "1.1", "1111", "1..1.1"})
    o.require(!is_covering(parse_pattern(row)), std::string("single row ") + row + " not covering");
}

void criterion_3(Outcome& o) {
  free_within(o, make_p(2), build_At(4, 6, 2).matrix, 120, "p2 in At(4,6,2)");
  free_within(o, make_p(3), build_At(4, 4, 3).matrix, 120, "p3 in At(4,4,3)");
}

void criterion_4(Outcome& o) {
  for (index_t b = 1; b <= 3; ++b)
    for (index_t m = 1; m <= 8; ++m)
      o.require(build_A(b, m).matrix.weight() >= weight_bound_A(b, m),
                "size lemma b=" + std::to_string(b) + " m=" + std::to_string(m));
  // enumeration oracle: count label pairs satisfying r = c + s*i directly
  std::size_t count = 0;
  for (int s = 1; s <= 2; ++s)
    for (int r = 1; r <= 2; ++r)
      for (int c = 1; c <= 2; ++c)
        for (int i = 0; i <= 1; ++i) count += r == c + s * i;
  o.require(count == 5, "enumeration oracle gives 5");
  o.require(build_A(1, 2).matrix.weight() == 5, "weight(A(1,2)) = 5");
}

void criterion_5(Outcome& o) {
  for (std::uint64_t N : {100ULL, 10000ULL})
    for (std::uint64_t h : {2ULL, 3ULL}) {
      auto set = behrend_set(N, h);
      std::string tag = "N=" + std::to_string(N) + " h=" + std::to_string(h);
      o.require(verify_behrend(set.elements, h).ok, "verify " + tag);
      if (!set.fallback()) o.require(meets_size_bound(set), "size bound " + tag);
    }
  std::vector<std::uint64_t> three{1, 2, 3};
  auto check = verify_behrend(three, 2);
  o.require(!check.ok && check.witness && *check.witness == BehrendWitness{1, -2, 1, 1, 2, 3},
            "{1,2,3} witness (1,-2,1,1,2,3)");
}

void criterion_6(Outcome& o) {
  auto lm = build_dense_S0t(2, 2);
  o.require(!contains(make_s0t(2), lm.matrix), "s0t2 free in dense(2,2)");
}

void criterion_7(Outcome& o) {
  auto at = build_At(4, 6, 2).matrix;
  auto report = run_marking(at, 2);
  o.require(report.unmarked.empty(), "At(4,6,2) fully marked");
  std::mt19937_64 rng(2024);
  std::size_t with_unmarked = 0;
  for (int k = 0; k < 20; ++k) {
    double density = 0.05 + 0.05 * k;  // 0.05 .. 1.0
    auto a = oracle::random_matrix(50, 50, density, rng);
    auto r = run_marking(a, 2);
    try {
      auto audit = audit_unmarked(a, 2, r);
      if (!audit.all_marked) {
        ++with_unmarked;
        o.require(audit.witness && is_occurrence(make_p(2), a, *audit.witness), "witness is a p2 occurrence");
      }
    } catch (const inconsistency&) {
      o.require(false, "audit inconsistency on random host " + std::to_string(k));
    }
  }
  o.note << " (" << with_unmarked << "/20 random hosts had unmarked ones)";
}

void criterion_8(Outcome& o) {
  auto expect = [&](const Pattern& p, const std::string& name, std::optional<unsigned> exponent) {
    auto r = reduce_polylog(p);
    if (exponent)
      o.require(r.success && r.exponent == *exponent, name + " -> " + std::to_string(*exponent));
    else
      o.require(!r.success, name + " stuck");
  };
  for (index_t t = 1; t <= 3; ++t) expect(make_p(t), "p" + std::to_string(t), t);
  expect(registry_pattern("r0"), "r0", 2);
  expect(registry_pattern("r2"), "r2", 2);
  expect(registry_pattern("r1"), "r1", 3);
  expect(registry_pattern("s0"), "s0", std::nullopt);
  expect(registry_pattern("s1"), "s1", std::nullopt);
}

void criterion_9(Outcome& o) {
  for (const char* row : {"1", "11", "1.1", "1..11"})
    o.require(degeneracy_class(parse_pattern(row)) == 0, std::string("single row ") + row);
  o.require(degeneracy_class(registry_pattern("s0")) == 2, "s0 class 2");
  o.require(degeneracy_class(registry_pattern("s1")) == 2, "s1 class 2");
}

void criterion_10(Outcome& o) {
  std::size_t cases = 0;
  for (const auto& [name, p] : pattern_corpus())
    for (index_t n = 1; n <= 16; ++n)
      for (index_t m = 1; n * m <= 16; ++m) {
        auto r = exact_ex(p, n, m);
        ++cases;
        o.require(r.exact && r.value == oracle::brute_force_ex(p, n, m),
                  name + " n=" + std::to_string(n) + " m=" + std::to_string(m));
      }
  o.require(exact_ex(parse_pattern("1.\n.1"), 3, 3).value == 5, "identity on 3x3 is 5");
  o.note << " (" << cases << " host shapes)";
}

void criterion_11(Outcome& o) {
  std::vector<LabeledMatrix> matrices{build_A(1, 2), build_A(2, 4), build_A(3, 8), build_At(4, 6, 2),
                                      build_At(4, 4, 3)};
  std::mt19937_64 rng(11);
  for (const auto& lm : matrices) {
    std::string tag = std::string(to_string(lm.params.variant)) + "(" + std::to_string(lm.params.b) + "," +
                      std::to_string(lm.params.m) + ")";
    o.require(audit_simple_properties(lm).pass, tag + " passes");
    std::uniform_int_distribution<index_t> row(0, lm.matrix.rows() - 1), col(0, lm.matrix.cols() - 1);
    for (int k = 0; k < 10; ++k) {
      auto mutated = lm;
      mutated.matrix = lm.matrix.toggled({row(rng), col(rng)});
      o.require(!audit_simple_properties(mutated).pass, tag + " mutation " + std::to_string(k) + " caught");
    }
  }
}

void criterion_12(Outcome& o) {
  auto s0 = registry_pattern("s0");
  auto a = build_A(1, 2).matrix;
  auto [tp, ta] = lift_and_stack(s0, a, 3);
  bool lifted = contains_r(tp, ta);
  bool flat = contains(s0, a).has_value();
  o.require(lifted == flat, "lifted agrees with 2-D");
  o.require(!lifted, "s0 absent from the lift");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"S0/S1-freeness of A[b,m]", criterion_1},
      {"covering patterns", criterion_2},
      {"P_t-freeness of A_t", criterion_3},
      {"size lemma", criterion_4},
      {"Behrend soundness", criterion_5},
      {"dense construction", criterion_6},
      {"marking theorem", criterion_7},
      {"reduction engine", criterion_8},
      {"degeneracy", criterion_9},
      {"exact search", criterion_10},
      {"Simple Properties audit", criterion_11},
      {"r-dimensional lift", criterion_12},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    auto start = Clock::now();
    try {
      criteria[k].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.note << " [exception: " << e.what() << "]";
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", seconds_since(start));
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (k + 1) << ": " << criteria[k].first << " ("
              << timing << ")" << o.note.str() << std::endl;
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
