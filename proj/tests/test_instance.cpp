#include "doctest.h"

#include <random>
#include <set>

#include "batlb/error.hpp"
#include "batlb/instance.hpp"
#include "batlb/solvers.hpp"

using namespace batlb;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::invalid_argument;
}

}  // namespace

TEST_CASE("normalize_constraint sorts the outer pair") {
  CHECK(normalize_constraint(2, 3, 1) == Constraint{2, 1, 3});
  CHECK(normalize_constraint(1, 2, 3) == Constraint{1, 2, 3});
  CHECK(code_of([] { normalize_constraint(1, 1, 2); }) == ErrorCode::duplicate_variable);
  CHECK(code_of([] { normalize_constraint(1, 2, 2); }) == ErrorCode::duplicate_variable);

  auto c = normalize_constraint(5, 9, 4);
  CHECK(normalize_constraint(c.middle, c.outer_lo, c.outer_hi) == c);
}

TEST_CASE("parse_instance") {
  SUBCASE("single constraint") {
    auto inst = parse_instance("p btw 3 1\nb 2 1 3\n");
    CHECK(inst.num_vars() == 3);
    REQUIRE(inst.num_constraints() == 1);
    CHECK(inst.constraints()[0] == Constraint{2, 1, 3});
  }
  SUBCASE("comments, blank lines and reversed outers") {
    auto inst = parse_instance("c hello\n\np btw 4 2\nc mid\nb 2 3 1\nb 4 2 1\n");
    CHECK(serialize_instance(inst) == "p btw 4 2\nb 2 1 3\nb 4 1 2\n");
  }
  SUBCASE("duplicate after canonicalization") {
    CHECK(code_of([] { parse_instance("p btw 3 2\nb 2 1 3\nb 2 3 1\n"); }) ==
          ErrorCode::duplicate_constraint);
    auto merged = parse_instance("p btw 3 2\nb 2 1 3\nb 2 3 1\n", true);
    CHECK(merged.num_constraints() == 1);
  }
  SUBCASE("different middles on one 3-set are distinct") {
    CHECK(parse_instance("p btw 3 2\nb 1 2 3\nb 2 1 3\n").num_constraints() == 2);
  }
  SUBCASE("errors") {
    CHECK(code_of([] { parse_instance("p btw 2 1\nb 1 2 3\n"); }) == ErrorCode::range);
    CHECK(code_of([] { parse_instance("p btw 3 1\nb 0 1 2\n"); }) == ErrorCode::range);
    CHECK(code_of([] { parse_instance("p btw 3 2\nb 2 1 3\n"); }) == ErrorCode::count_mismatch);
    CHECK(code_of([] { parse_instance("b 2 1 3\np btw 3 1\n"); }) == ErrorCode::syntax);
    CHECK(code_of([] { parse_instance("c only comments\n"); }) == ErrorCode::syntax);
    CHECK(code_of([] { parse_instance("p btw 3 0\np btw 3 0\n"); }) == ErrorCode::syntax);
    CHECK(code_of([] { parse_instance("p sat 3 0\n"); }) == ErrorCode::syntax);
    CHECK(code_of([] { parse_instance("p btw 3 1\nb 2 1\n"); }) == ErrorCode::syntax);
    CHECK(code_of([] { parse_instance("p btw 3 1\nb 2 1 x\n"); }) == ErrorCode::syntax);
    CHECK(code_of([] { parse_instance("p btw 3 1\nb 2 1 -3\n"); }) == ErrorCode::syntax);
    CHECK(code_of([] { parse_instance("p btw 3 1\nq 2 1 3\n"); }) == ErrorCode::syntax);
    CHECK(code_of([] { parse_instance("p btw 3 1\nb 2 2 3\n"); }) ==
          ErrorCode::duplicate_variable);
  }
}

TEST_CASE("serialize_instance") {
  CHECK(serialize_instance(Instance::create(3, {Constraint{2, 1, 3}})) == "p btw 3 1\nb 2 1 3\n");
  CHECK(serialize_instance(Instance::create(0, {})) == "p btw 0 0\n");
  CHECK(parse_instance("p btw 0 0\n") == Instance());
}

TEST_CASE("parse and serialize round-trip on generated instances") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::uint32_t n = 3 + static_cast<std::uint32_t>(rng() % 10);
    std::size_t m = rng() % (distinct_constraint_count(n) + 1);
    auto inst = gen_random(n, m, rng());
    auto text = serialize_instance(inst);
    auto back = parse_instance(text);
    CHECK(back == inst);
    CHECK(serialize_instance(back) == text);
  }
}

TEST_CASE("gen_complete") {
  auto three = gen_complete(3);
  CHECK(three.num_constraints() == 3);
  CHECK(three.contains({1, 2, 3}));
  CHECK(three.contains({2, 1, 3}));
  CHECK(three.contains({3, 1, 2}));
  CHECK(gen_complete(4).num_constraints() == 12);
  CHECK(gen_complete(7).num_constraints() == 105);
  for (std::uint32_t n = 3; n <= 12; ++n) {
    CHECK(gen_complete(n).num_constraints() == 3 * n * (n - 1) * (n - 2) / 6);
  }
  CHECK(code_of([] { gen_complete(2); }) == ErrorCode::too_small);
}

TEST_CASE("gen_random") {
  CHECK(gen_random(3, 3, 99) == gen_complete(3));
  CHECK(gen_random(10, 50, 1) == gen_random(10, 50, 1));
  CHECK(gen_random(10, 50, 1) != gen_random(10, 50, 2));
  CHECK(gen_random(10, 50, 1).num_constraints() == 50);
  CHECK(code_of([] { gen_random(4, 13, 0); }) == ErrorCode::too_many);
  CHECK(gen_random(4, 12, 0) == gen_complete(4));
  CHECK(gen_random(5, 0, 0).num_constraints() == 0);
}

TEST_CASE("gen_random covers every constraint over many seeds") {
  std::set<Constraint> seen;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto inst = gen_random(5, 3, seed);
    for (const auto& c : inst.constraints()) seen.insert(c);
  }
  CHECK(seen.size() == distinct_constraint_count(5));
}

TEST_CASE("gen_planted") {
  SUBCASE("noise 0 is fully satisfied by the hidden arrangement") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto planted = gen_planted(9, 40, Rational(0), seed);
      CHECK(planted.instance.num_constraints() == 40);
      CHECK(satisfied_count(planted.instance, planted.hidden) == 40);
    }
  }
  SUBCASE("deterministic per seed") {
    auto a = gen_planted(10, 30, make_rational(1, 5), 3);
    auto b = gen_planted(10, 30, make_rational(1, 5), 3);
    CHECK(a.instance == b.instance);
    CHECK(a.hidden == b.hidden);
  }
  SUBCASE("noise 1 yields distinct uniform constraints") {
    auto planted = gen_planted(6, 50, Rational(1), 4);
    CHECK(planted.instance.num_constraints() == 50);
  }
  SUBCASE("limits") {
    CHECK(code_of([] { gen_planted(4, 13, Rational(1), 0); }) == ErrorCode::too_many);
    // one satisfiable constraint per 3-set
    CHECK(code_of([] { gen_planted(4, 5, Rational(0), 0); }) == ErrorCode::too_many);
    CHECK(gen_planted(4, 4, Rational(0), 0).instance.num_constraints() == 4);
    CHECK(code_of([] { gen_planted(4, 2, make_rational(3, 2), 0); }) ==
          ErrorCode::invalid_argument);
  }
}

TEST_CASE("Arrangement validates bijections") {
  auto arr = Arrangement::from_positions({2, 3, 1});
  CHECK(arr.position(1) == 2);
  CHECK(arr.order() == std::vector<VarId>{3, 1, 2});
  CHECK(Arrangement::from_order(arr.order()) == arr);
  CHECK(code_of([] { Arrangement::from_positions({1, 1, 3}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { Arrangement::from_positions({0, 1}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { Arrangement::from_positions({1, 3}); }) == ErrorCode::invalid_argument);
  CHECK(Arrangement::from_positions({1, 2, 3}) < Arrangement::from_positions({1, 3, 2}));
}

TEST_CASE("Instance::create rejects malformed constraints") {
  CHECK(code_of([] { Instance::create(3, {Constraint{1, 3, 2}}); }) ==
        ErrorCode::duplicate_variable);
  CHECK(code_of([] { Instance::create(3, {Constraint{4, 1, 2}}); }) == ErrorCode::range);
  // unused variables are legal
  CHECK(Instance::create(10, {Constraint{2, 1, 3}}).num_vars() == 10);
}
