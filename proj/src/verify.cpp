#include "batlb/verify.hpp"

#include <algorithm>

#include "batlb/error.hpp"
#include "batlb/kernelizer.hpp"
#include "batlb/sabem.hpp"

namespace batlb {

const char* to_string(CheckStatus status) noexcept {
  switch (status) {
    case CheckStatus::passed: return "pass";
    case CheckStatus::failed: return "fail";
    case CheckStatus::skipped: return "skip";
  }
  return "unknown";
}

bool VerificationReport::all_passed() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const auto& c) { return c.status == CheckStatus::failed; });
}

namespace {

constexpr std::uint32_t kDirectEnumerationVars = 8;
constexpr std::size_t kPairEnumerationMaxConstraints = 4000;

struct CheckBuilder {
  CheckResult result;

  explicit CheckBuilder(std::string name) { result.name = std::move(name); }

  void compare(std::string label, const Rational& computed, const Rational& expected) {
    bool ok = computed == expected;
    result.comparisons.push_back({std::move(label), to_string(computed), to_string(expected), ok});
  }

  // Records computed >= bound.
  void at_least(std::string label, const Rational& computed, const Rational& bound) {
    bool ok = computed >= bound;
    result.comparisons.push_back(
        {std::move(label), to_string(computed), ">= " + to_string(bound), ok});
  }

  CheckResult finish() {
    bool ok = std::all_of(result.comparisons.begin(), result.comparisons.end(),
                          [](const auto& c) { return c.ok; });
    result.status = ok ? CheckStatus::passed : CheckStatus::failed;
    return std::move(result);
  }

  CheckResult skip(std::string note) {
    result.status = CheckStatus::skipped;
    result.note = std::move(note);
    return std::move(result);
  }
};

CheckResult check_weight_distribution() {
  CheckBuilder check("table1_distribution");
  constexpr std::array<WeightCase, 5> cases = {
      WeightCase::all_equal, WeightCase::middle_apart, WeightCase::middle_shares_outer,
      WeightCase::middle_between, WeightCase::middle_outside};
  constexpr std::array<const char*, 5> names = {"all_equal", "middle_apart",
                                                "middle_shares_outer", "middle_between",
                                                "middle_outside"};
  const std::array<Rational, 5> want_prob = {make_rational(1, 16), make_rational(3, 16),
                                             make_rational(6, 16), make_rational(2, 16),
                                             make_rational(4, 16)};
  const std::array<Rational, 5> want_value = {make_rational(0), make_rational(-1, 3),
                                              make_rational(1, 6), make_rational(2, 3),
                                              make_rational(-1, 3)};
  std::array<int, 5> hits{};
  std::array<bool, 5> value_consistent;
  value_consistent.fill(true);
  Rational mean = 0, mean_sq = 0;
  for (Color a = 0; a < 4; ++a) {
    for (Color b = 0; b < 4; ++b) {
      for (Color c = 0; c < 4; ++c) {
        auto idx = static_cast<std::size_t>(
            std::find(cases.begin(), cases.end(), weight_case(a, b, c)) - cases.begin());
        ++hits[idx];
        Rational w = xp_weight(a, b, c);
        if (w != want_value[idx]) value_consistent[idx] = false;
        mean += w / 64;
        mean_sq += w * w / 64;
      }
    }
  }
  for (std::size_t i = 0; i < cases.size(); ++i) {
    check.compare(std::string("P(") + names[i] + ")", make_rational(hits[i], 64), want_prob[i]);
    check.result.comparisons.push_back({std::string("value(") + names[i] + ")",
                                        value_consistent[i] ? to_string(want_value[i]) : "varies",
                                        to_string(want_value[i]), value_consistent[i]});
  }
  check.compare("E[X_p]", mean, 0);
  check.compare("E[X_p^2]", mean_sq, make_rational(11, 96));
  return check.finish();
}

// Table values against the actual block-order arrangements of one constraint.
CheckResult check_compatible_arrangements() {
  CheckBuilder check("compatible_arrangement_oracle");
  const Instance single = Instance::create(3, {normalize_constraint(2, 1, 3)});
  bool all_ok = true;
  std::string first_bad;
  for (Color a = 0; a < 4; ++a) {
    for (Color b = 0; b < 4; ++b) {
      for (Color c = 0; c < 4; ++c) {
        // variable 2 is the middle, 1 and 3 the outers
        Assignment4 phi({b, a, c});
        Rational excess = expected_satisfied_exhaustive(single, phi) - make_rational(1, 3);
        if (excess != xp_weight(a, b, c) && all_ok) {
          all_ok = false;
          first_bad = std::to_string(a) + std::to_string(b) + std::to_string(c);
        }
      }
    }
  }
  check.result.comparisons.push_back({"64 phi-triples: E[satisfied] - 1/3 == xp_weight",
                                      all_ok ? "all equal" : "differs at " + first_bad,
                                      "all equal", all_ok});
  return check.finish();
}

CheckResult check_case_weights() {
  CheckBuilder check("table2_case_weights");
  auto report = compute_case_weights();
  for (const auto& row : report.rows) {
    check.compare("768*E[X_l X_l'] S" + std::to_string(row.index), row.scaled,
                  Rational(row.expected));
  }
  return check.finish();
}

CheckResult check_polynomial() {
  CheckBuilder check("xp_polynomial");
  auto poly = xp_polynomial(normalize_constraint(1, 2, 3));
  bool all_ok = true;
  for (Color a = 0; a < 4; ++a)
    for (Color b = 0; b < 4; ++b)
      for (Color c = 0; c < 4; ++c)
        if (poly.evaluate(encode_epsilon(a, b, c)) != xp_weight(a, b, c)) all_ok = false;
  check.result.comparisons.push_back({"evaluation at 64 points == xp_weight",
                                      all_ok ? "all equal" : "differs", "all equal", all_ok});
  check.result.comparisons.push_back({"degree", std::to_string(poly.degree()), "<= 6",
                                      poly.degree() <= 6});
  check.compare("constant term", poly.constant_term(), 0);
  return check.finish();
}

CheckResult check_prime_weights() {
  CheckBuilder check("prime_weight_relations");
  auto derived = derive_prime_weights(kCaseWeights);
  for (std::size_t i = 0; i < derived.size(); ++i) {
    check.compare("768*w'_" + std::to_string(i + 1), derived[i], kCaseWeightsPrime[i]);
  }
  return check.finish();
}

CheckResult check_first_moment(const Instance& inst) {
  CheckBuilder check("first_moment_zero");
  check.compare("E[X] by linearity", first_moment(inst), 0);
  if (inst.num_vars() <= kDirectEnumerationVars) {
    check.compare("E[X] by 4^n enumeration", enumerate_moments(inst).first, 0);
  }
  return check.finish();
}

CheckResult check_second_moment_agreement(const Instance& inst) {
  CheckBuilder check("second_moment_agreement");
  Rational closed = second_moment_closed_form(inst);
  Rational quadratic = make_rational(kDiagonalWeight, 768) * inst.num_constraints() +
                       cross_term_quadratic_form(inst);
  check.compare("quadratic form vs closed form", quadratic, closed);
  if (inst.num_constraints() <= kPairEnumerationMaxConstraints) {
    check.compare("pair enumeration vs closed form", second_moment_enumerated(inst), closed);
  } else {
    check.result.note = "pair enumeration skipped above " +
                        std::to_string(kPairEnumerationMaxConstraints) + " constraints";
  }
  if (inst.num_vars() <= kDirectEnumerationVars) {
    check.compare("4^n enumeration vs closed form", second_moment_direct(inst), closed);
  } else {
    if (!check.result.note.empty()) check.result.note += "; ";
    check.result.note += "4^n enumeration skipped for n > 8";
  }
  return check.finish();
}

CheckResult check_second_moment_bound(const Instance& inst, bool irreducible) {
  CheckBuilder check("second_moment_lower_bound");
  if (!irreducible) return check.skip("not irreducible");
  check.at_least("E[X^2]", second_moment_closed_form(inst),
                 make_rational(11, 768) * inst.num_constraints());
  return check.finish();
}

CheckResult check_cross_term_bound(const Instance& inst, bool irreducible) {
  CheckBuilder check("cross_term_lower_bound");
  if (!irreducible) return check.skip("not irreducible");
  check.at_least("sum_{l != l'} E[X_l X_l']", cross_term_closed_form(inst),
                 make_rational(-77, 768) * inst.num_constraints());
  return check.finish();
}

CheckResult check_fourth_moment(const Instance& inst) {
  CheckBuilder check("fourth_moment_bound");
  if (inst.num_vars() > kDirectEnumerationVars) return check.skip("n > 8");
  auto moments = enumerate_moments(inst);
  Rational bound = Rational(BigInt(1) << 36) * moments.second * moments.second;
  bool ok = moments.fourth <= bound;
  check.result.comparisons.push_back(
      {"E[X^4]", to_string(moments.fourth), "<= 2^36 E[X^2]^2 = " + to_string(bound), ok});
  return check.finish();
}

}  // namespace

VerificationReport run_verification(const Instance* inst) {
  VerificationReport report;
  report.checks.push_back(check_weight_distribution());
  report.checks.push_back(check_compatible_arrangements());
  report.checks.push_back(check_case_weights());
  report.checks.push_back(check_polynomial());
  report.checks.push_back(check_prime_weights());
  if (inst != nullptr) {
    const bool irreducible = is_irreducible(*inst);
    report.checks.push_back(check_first_moment(*inst));
    report.checks.push_back(check_second_moment_agreement(*inst));
    report.checks.push_back(check_second_moment_bound(*inst, irreducible));
    report.checks.push_back(check_cross_term_bound(*inst, irreducible));
    report.checks.push_back(check_fourth_moment(*inst));
  }
  return report;
}

}  // namespace batlb
