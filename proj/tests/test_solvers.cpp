#include "doctest.h"

#include <random>

#include "batlb/error.hpp"
#include "batlb/solvers.hpp"
#include "oracles.hpp"

using namespace batlb;

namespace {

std::vector<std::uint32_t> to_vec(const Arrangement& arr) {
  return {arr.positions().begin(), arr.positions().end()};
}

}  // namespace

TEST_CASE("satisfied_count and meets_target") {
  auto inst = parse_instance("p btw 3 3\nb 2 1 3\nb 1 2 3\nb 3 1 2\n");
  CHECK(satisfied_count(inst, Arrangement::identity(3)) == 1);
  CHECK(satisfied_count(inst, Arrangement::from_positions({2, 1, 3})) == 1);
  CHECK(meets_target(4, 12, 0));
  CHECK_FALSE(meets_target(3, 12, 0));
  CHECK(meets_target(5, 12, 1));
  CHECK_FALSE(meets_target(4, 12, 1));
  CHECK_FALSE(meets_target(5, 13, 1));
  CHECK(meets_target(6, 13, 1));
}

TEST_CASE("satisfied_count matches the oracle") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    auto inst = oracle::random_instance(9, 1 + rng() % 100, rng);
    std::vector<std::uint32_t> pos(9);
    std::iota(pos.begin(), pos.end(), 1u);
    std::shuffle(pos.begin(), pos.end(), rng);
    CHECK(satisfied_count(inst, Arrangement::from_positions(pos)) == oracle::count(inst, pos));
  }
}

TEST_CASE("complete instances reach exactly C(n,3)") {
  for (std::uint32_t n = 3; n <= 8; ++n) {
    auto dp = solve_exact_dp(gen_complete(n));
    CHECK(dp.best_count == n * (n - 1) * (n - 2) / 6);
    CHECK(dp.optimal);
    CHECK(dp.method == SolveMethod::exact_dp);
  }
}

TEST_CASE("DP and brute force return the same arrangement") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 120; ++trial) {
    std::uint32_t n = 3 + static_cast<std::uint32_t>(rng() % 5);
    auto inst = oracle::random_instance(n, rng() % 25, rng);
    auto brute = solve_brute(inst);
    auto dp = solve_exact_dp(inst);
    CHECK(dp.best_count == brute.best_count);
    CHECK(dp.arrangement == brute.arrangement);
    CHECK(brute.best_count == oracle::optimum(inst));
    CHECK(satisfied_count(inst, dp.arrangement) == dp.best_count);
  }
}

TEST_CASE("tie-break prefers the lexicographically smallest position vector") {
  auto empty = Instance::create(4, {});
  CHECK(solve_exact_dp(empty).arrangement == Arrangement::identity(4));
  auto inst = parse_instance("p btw 3 1\nb 1 2 3\n");
  CHECK(to_vec(solve_exact_dp(inst).arrangement) == std::vector<std::uint32_t>{2, 1, 3});
}

TEST_CASE("prefix credit equals the satisfied count") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    auto inst = oracle::random_instance(8, 1 + rng() % 80, rng);
    std::vector<std::uint32_t> pos(8);
    std::iota(pos.begin(), pos.end(), 1u);
    std::shuffle(pos.begin(), pos.end(), rng);
    auto arr = Arrangement::from_positions(pos);
    CHECK(prefix_credit(inst, arr) == satisfied_count(inst, arr));
  }
}

TEST_CASE("solver size limits") {
  CHECK_THROWS_AS(solve_brute(gen_random(11, 5, 0)), Error);
  CHECK_THROWS_AS(solve_exact_dp(gen_random(12, 5, 0), 10), Error);
  CHECK_THROWS_AS(solve_exact_dp(gen_random(27, 5, 0), 30), Error);
  CHECK(solve_exact_dp(Instance()).best_count == 0);
}

TEST_CASE("sample_compatible_arrangement respects block order") {
  auto inst = gen_random(10, 20, 2);
  Assignment4 phi({3, 0, 1, 2, 0, 3, 1, 1, 2, 0});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto arr = sample_compatible_arrangement(inst, phi, seed);
    for (VarId u = 1; u <= 10; ++u)
      for (VarId v = 1; v <= 10; ++v)
        if (phi[u] < phi[v]) CHECK(arr.position(u) < arr.position(v));
  }
}

TEST_CASE("randomized rounding and local search stay below the optimum") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 40; ++trial) {
    auto inst = oracle::random_instance(8, 10 + rng() % 60, rng);
    auto opt = solve_exact_dp(inst).best_count;
    auto rounded = randomized_round(inst, 16, 16, trial);
    CHECK(rounded.best_count <= opt);
    CHECK(satisfied_count(inst, rounded.arrangement) == rounded.best_count);
    CHECK(3 * rounded.best_count >= inst.num_constraints());
    auto improved = local_search(inst, rounded.arrangement, 50);
    CHECK(improved.best_count >= rounded.best_count);
    CHECK(improved.best_count <= opt);
  }
}

TEST_CASE("randomized rounding is deterministic per seed") {
  auto inst = gen_random(15, 120, 4);
  auto a = randomized_round(inst, 8, 8, 99);
  auto b = randomized_round(inst, 8, 8, 99);
  CHECK(a.arrangement == b.arrangement);
  CHECK(a.best_count == b.best_count);
}

TEST_CASE("planted instances without noise are fully satisfiable") {
  auto planted = gen_planted(8, 30, Rational(0), 7);
  CHECK(solve_exact_dp(planted.instance).best_count == 30);
}

TEST_CASE("decide") {
  SUBCASE("kappa 0 is YES with a certificate") {
    auto inst = parse_instance("p btw 3 1\nb 2 1 3\n");
    auto r = decide_batlb(inst, 0);
    CHECK(r.verdict == Verdict::yes);
    REQUIRE(r.certificate.has_value());
    CHECK(meets_target(r.certificate_count, 1, 0));
  }
  SUBCASE("single constraint cannot exceed m/3 + 1") {
    auto r = decide_batlb(parse_instance("p btw 3 1\nb 2 1 3\n"), 1);
    CHECK(r.verdict == Verdict::no);
  }
  SUBCASE("verdict agrees with the exact optimum") {
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 60; ++trial) {
      auto inst = oracle::random_instance(7, 1 + rng() % 60, rng);
      auto opt = oracle::optimum(inst);
      for (std::int64_t kappa = 1; kappa <= 4; ++kappa) {
        auto r = decide_batlb(inst, kappa);
        bool expected = meets_target(opt, inst.num_constraints(), kappa);
        CHECK(r.verdict == (expected ? Verdict::yes : Verdict::no));
        if (r.certificate) {
          CHECK(satisfied_count(inst, *r.certificate) == r.certificate_count);
        }
      }
    }
  }
  SUBCASE("kernel beyond the DP budget is UNDECIDED when no certificate is found") {
    DecideBudget budget;
    budget.dp_max_vars = 5;
    auto r = decide_batlb(gen_random(12, 40, 1), 1000, budget);
    CHECK(r.verdict == Verdict::undecided);
    CHECK_FALSE(r.certificate.has_value());
  }
}
