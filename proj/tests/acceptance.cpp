// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "batlb/kernelizer.hpp"
#include "batlb/sabem.hpp"
#include "batlb/solvers.hpp"
#include "oracles.hpp"

using namespace batlb;

namespace {

BigInt from_int128(unsigned __int128 v) {
  BigInt hi(static_cast<std::uint64_t>(v >> 64));
  return (hi << 64) + static_cast<std::uint64_t>(v);
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Rational rat(std::size_t v) { return Rational(BigInt(v)); }

/// Random instance with `extra` complete triples mixed in.
Instance with_triples(std::uint32_t n, std::size_t m, std::size_t extra, std::mt19937_64& rng) {
  auto base = oracle::random_instance(n, m, rng);
  std::vector<Constraint> cs(base.constraints().begin(), base.constraints().end());
  std::uniform_int_distribution<std::uint32_t> pick(1, n);
  for (std::size_t k = 0; k < extra; ++k) {
    std::uint32_t a = pick(rng), b = pick(rng), c = pick(rng);
    if (a == b || b == c || a == c) continue;
    cs.push_back(normalize_constraint(a, b, c));
    cs.push_back(normalize_constraint(b, a, c));
    cs.push_back(normalize_constraint(c, a, b));
  }
  return Instance::create(n, std::move(cs), true);
}

Outcome ac1() {
  Outcome out;
  auto start = Clock::now();
  auto report = compute_case_weights();
  for (const auto& row : report.rows) {
    out.require(row.scaled == Rational(kCaseWeights[row.index - 1]),
                "class " + std::to_string(row.index) + " gave " + to_string(row.scaled));
  }
  double elapsed = seconds_since(start);
  out.require(elapsed < 1.0, "took " + std::to_string(elapsed) + " s");
  if (out.pass) out.detail = "768*E[XlXl'] = (12,3,-6,24,36,-18,-6,-44), " +
                             std::to_string(elapsed) + " s";
  return out;
}

Outcome ac2() {
  Outcome out;
  const std::array<Rational, 5> probs = {make_rational(1, 16), make_rational(3, 16),
                                         make_rational(6, 16), make_rational(2, 16),
                                         make_rational(4, 16)};
  const std::array<Rational, 5> values = {0, make_rational(-1, 3), make_rational(1, 6),
                                          make_rational(2, 3), make_rational(-1, 3)};
  std::array<int, 5> hits{};
  Rational mean = 0, square = 0;
  auto single = Instance::create(3, {Constraint{2, 1, 3}});
  for (int code = 0; code < 64; ++code) {
    Color lo = code & 3, mid = (code >> 2) & 3, hi = (code >> 4) & 3;
    int k = static_cast<int>(weight_case(mid, lo, hi));
    ++hits[k];
    Rational w = xp_weight(mid, lo, hi);
    out.require(w == values[k], "case value mismatch");
    out.require(w == oracle::excess(single, {lo, mid, hi}), "oracle disagrees at " +
                                                                std::to_string(code));
    mean += w;
    square += w * w;
  }
  for (int k = 0; k < 5; ++k) {
    out.require(Rational(BigInt(hits[k]), BigInt(64)) == probs[k],
                "probability of case " + std::to_string(k));
  }
  mean /= 64;
  square /= 64;
  out.require(mean == 0, "E[Xp] = " + to_string(mean));
  out.require(square == make_rational(11, 96), "E[Xp^2] = " + to_string(square));
  out.require(first_moment(single) == 0, "first_moment");
  out.require(second_moment_direct(single) == make_rational(11, 96), "second_moment_direct");
  if (out.pass) out.detail = "probabilities, values, E[Xp] = 0, E[Xp^2] = 11/96";
  return out;
}

Outcome ac3() {
  Outcome out;
  auto start = Clock::now();
  std::mt19937_64 rng(3);
  int instances = 0, direct = 0;
  while (instances < 120) {
    std::uint32_t n = 3 + static_cast<std::uint32_t>(rng() % 10);
    std::size_t cap = std::min<std::uint64_t>(80, distinct_constraint_count(n));
    auto inst = gen_random(n, 1 + rng() % cap, rng());
    if (!is_irreducible(inst)) continue;
    ++instances;
    Rational closed = second_moment_closed_form(inst);
    Rational enumerated = second_moment_enumerated(inst);
    std::string tag = "n=" + std::to_string(n) + " m=" + std::to_string(inst.num_constraints());
    out.require(closed == enumerated, "closed form vs pairs, " + tag);
    if (n <= 8) {
      ++direct;
      out.require(second_moment_direct(inst) == closed, "direct enumeration, " + tag);
    }
    Rational m = rat(inst.num_constraints());
    out.require(closed * 768 >= 11 * m, "E[X^2] bound, " + tag);
    out.require(cross_term_closed_form(inst) * 768 >= -77 * m, "cross term bound, " + tag);
  }
  double elapsed = seconds_since(start);
  out.require(elapsed < 120.0, "took " + std::to_string(elapsed) + " s");
  if (out.pass) {
    out.detail = std::to_string(instances) + " irreducible instances (" +
                 std::to_string(direct) + " with 4^n enumeration), " +
                 std::to_string(elapsed) + " s";
  }
  return out;
}

Outcome ac4() {
  Outcome out;
  std::mt19937_64 rng(4);
  int constraints = 0;
  for (; constraints < 60; ++constraints) {
    auto inst = oracle::random_instance(12, 1, rng);
    auto poly = xp_polynomial(inst.constraints()[0]);
    out.require(poly.degree() <= 6, "degree above 6");
    for (Color a = 0; a < 4; ++a)
      for (Color b = 0; b < 4; ++b)
        for (Color c = 0; c < 4; ++c)
          out.require(poly.evaluate(encode_epsilon(a, b, c)) == xp_weight(a, b, c),
                      "polynomial differs from xp_weight");
  }
  int instances = 0;
  for (; instances < 40; ++instances) {
    std::uint32_t n = 3 + static_cast<std::uint32_t>(rng() % 5);
    auto inst = oracle::random_instance(n, 1 + rng() % 40, rng);
    auto moments = enumerate_moments(inst);
    out.require(moments.fourth <= Rational(BigInt(1) << 36) * moments.second * moments.second,
                "fourth moment bound, n=" + std::to_string(n));
  }
  if (out.pass) {
    out.detail = std::to_string(constraints) + " polynomials exact on 64 points, " +
                 std::to_string(instances) + " instances with E[X^4] <= 2^36 E[X^2]^2";
  }
  return out;
}

Outcome ac5() {
  Outcome out;
  std::mt19937_64 rng(5);
  int instances = 0, reducible = 0;
  for (; instances < 220; ++instances) {
    std::uint32_t n = 3 + static_cast<std::uint32_t>(rng() % 6);
    auto inst = with_triples(n, rng() % 30, rng() % 4, rng);
    auto res = reduce(inst);
    reducible += res.triples_removed > 0;
    Rational lhs = rat(oracle::optimum(inst)) - rat(inst.num_constraints()) / 3;
    auto solved = solve_exact_dp(res.reduced);
    Rational rhs = rat(solved.best_count) - rat(res.reduced.num_constraints()) / 3;
    out.require(lhs == rhs, "excess changed, instance " + std::to_string(instances));
    auto lifted = lift_arrangement(solved.arrangement, res);
    out.require(satisfied_count(inst, lifted) == solved.best_count + res.triples_removed,
                "lift offset, instance " + std::to_string(instances));
  }
  if (out.pass) {
    out.detail = std::to_string(instances) + " instances (" + std::to_string(reducible) +
                 " reducible), excess and lift offset exact";
  }
  return out;
}

Outcome ac6() {
  Outcome out;
  for (std::uint32_t n = 3; n <= 7; ++n) {
    auto inst = gen_complete(n);
    auto solved = solve_exact_dp(inst);
    std::size_t expected = n * (n - 1) * (n - 2) / 6;
    out.require(solved.best_count == expected && 3 * expected == inst.num_constraints(),
                "n=" + std::to_string(n) + " gave " + std::to_string(solved.best_count));
  }
  if (out.pass) out.detail = "OPT = C(n,3) = m/3 for n = 3..7";
  return out;
}

Outcome ac7() {
  Outcome out;
  const BigInt scale = BigInt(768) << 40;
  for (std::int64_t kappa = 1; kappa <= 1000; ++kappa) {
    BigInt t = yes_threshold(kappa);
    BigInt rhs = scale * kappa * kappa;
    out.require(11 * (t - 1) < rhs && rhs <= 11 * t, "kappa=" + std::to_string(kappa));
    // independent 128-bit computation
    __int128 num = static_cast<__int128>(768) * (static_cast<__int128>(1) << 40) * kappa * kappa;
    out.require(t == from_int128((num + 10) / 11),
                "128-bit oracle, kappa=" + std::to_string(kappa));
    for (int delta = -2; delta <= 2; ++delta) {
      BigInt m = t + delta;
      out.require(meets_yes_bound(m, kappa) == (11 * m >= rhs),
                  "verdict at m*" + std::to_string(delta) + ", kappa=" + std::to_string(kappa));
    }
  }
  // real kernelize calls on both sides of the threshold
  auto inst = gen_random(9, 40, 1);
  out.require(kernelize(inst, 0).verdict == KernelVerdict::yes, "kappa 0 should be YES");
  out.require(kernelize(inst, 1).verdict == KernelVerdict::kernel, "kappa 1 should be KERNEL");
  out.require(kernelize(inst, 1).threshold_used == yes_threshold(1), "threshold_used");
  if (out.pass) out.detail = "kappa = 1..1000 with verdicts at m* - 2 .. m* + 2";
  return out;
}

Outcome ac8() {
  Outcome out;
  std::mt19937_64 rng(8);
  int instances = 0;
  for (; instances < 220; ++instances) {
    std::uint32_t n = 3 + static_cast<std::uint32_t>(rng() % 6);
    auto inst = oracle::random_instance(n, rng() % 60, rng);
    auto brute = solve_brute(inst);
    auto dp = solve_exact_dp(inst);
    std::string tag = "instance " + std::to_string(instances);
    out.require(brute.best_count == dp.best_count, "DP vs brute value, " + tag);
    out.require(brute.arrangement == dp.arrangement, "DP vs brute arrangement, " + tag);
    auto rounded = randomized_round(inst, 8, 8, instances);
    out.require(rounded.best_count <= dp.best_count, "rounding above optimum, " + tag);
  }
  int planted = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed, ++planted) {
    std::uint32_t n = 4 + static_cast<std::uint32_t>(seed % 7);
    std::size_t m = std::min<std::size_t>(n * (n - 1) * (n - 2) / 6, 10 + seed * 2);
    auto p = gen_planted(n, m, Rational(0), seed);
    out.require(solve_exact_dp(p.instance).best_count == m,
                "planted seed " + std::to_string(seed));
  }
  if (out.pass) {
    out.detail = std::to_string(instances) + " DP/brute matches, " + std::to_string(planted) +
                 " planted instances fully satisfied";
  }
  return out;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"AC1 case table", ac1},
      {"AC2 single-constraint distribution", ac2},
      {"AC3 second moment agreement", ac3},
      {"AC4 polynomial and fourth moment", ac4},
      {"AC5 reduction correctness", ac5},
      {"AC6 tight family", ac6},
      {"AC7 threshold arithmetic", ac7},
      {"AC8 solver cross-validation", ac8},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += !o.pass;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures,
              std::size(criteria));
  return failures == 0 ? 0 : 1;
}
