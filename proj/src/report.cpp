#include "batlb/report.hpp"

#include "batlb/error.hpp"

namespace batlb {

using json = nlohmann::ordered_json;

namespace {

json constraint_json(const Constraint& c) {
  return json::array({c.middle, c.outer_lo, c.outer_hi});
}

json positions_json(const Arrangement& arr) {
  return json(std::vector<std::uint32_t>(arr.positions().begin(), arr.positions().end()));
}

}  // namespace

json to_json(const KernelDecision& decision) {
  json out = {
      {"verdict", to_string(decision.verdict)},
      {"kappa", decision.kappa},
      {"m_original", decision.m_original},
      {"m_reduced", decision.m_reduced()},
      {"n_reduced", decision.reduction.reduced.num_vars()},
      {"triples_removed", decision.triples_removed()},
      {"threshold", decision.threshold_used.str()},
      {"mode", to_string(decision.mode)},
  };
  if (decision.second_moment) {
    BigInt k = decision.kappa;
    out["second_moment"] = to_string(*decision.second_moment);
    out["second_moment_threshold"] = to_string(Rational((BigInt(1) << 40) * k * k));
  }
  return out;
}

json to_json(const SolveResult& result, const Instance& inst) {
  const Rational bound = Rational(BigInt(inst.num_constraints()), BigInt(3));
  return {
      {"method", to_string(result.method)},
      {"best_count", result.best_count},
      {"m", inst.num_constraints()},
      {"lower_bound_m_over_3", to_string(bound)},
      {"above_bound", to_string(Rational(BigInt(result.best_count)) - bound)},
      {"arrangement", positions_json(result.arrangement)},
      {"optimal", result.optimal},
  };
}

json to_json(const DecideResult& result, const Instance& inst) {
  json out = {
      {"verdict", to_string(result.verdict)},
      {"kappa", result.kernel_decision.kappa},
      {"m", inst.num_constraints()},
      {"target", to_string(Rational(BigInt(inst.num_constraints()), BigInt(3)) +
                           Rational(BigInt(result.kernel_decision.kappa)))},
      {"existential", result.existential},
      {"kernel", to_json(result.kernel_decision)},
  };
  if (result.certificate) {
    out["certificate"] = positions_json(*result.certificate);
    out["certificate_count"] = result.certificate_count;
  } else {
    out["certificate"] = nullptr;
  }
  return out;
}

json to_json(const CaseWeightReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    rows.push_back({
        {"case", "S" + std::to_string(row.index)},
        {"first", constraint_json(row.first)},
        {"second", constraint_json(row.second)},
        {"scaled_768", to_string(row.scaled)},
        {"expected_768", to_string(Rational(row.expected))},
        {"match", row.match},
    });
  }
  return {{"cases", rows}, {"all_match", report.all_match()}};
}

json to_json(const VerificationReport& report) {
  json checks = json::array();
  for (const auto& check : report.checks) {
    json comparisons = json::array();
    for (const auto& c : check.comparisons) {
      comparisons.push_back(
          {{"label", c.label}, {"computed", c.computed}, {"expected", c.expected}, {"ok", c.ok}});
    }
    json entry = {{"name", check.name},
                  {"status", to_string(check.status)},
                  {"comparisons", comparisons}};
    if (!check.note.empty()) entry["note"] = check.note;
    checks.push_back(std::move(entry));
  }
  return {{"all_passed", report.all_passed()}, {"checks", checks}};
}

json to_json(const ProfileCounts& counts) {
  json c_mid = json::array();
  for (const auto& [key, count] : counts.c_mid) c_mid.push_back({key.first, key.second, count});
  json c_out = json::array();
  for (const auto& [key, count] : counts.c_out) c_out.push_back({key.first, key.second, count});
  json same_set = json::array();
  for (const auto& [triple, count] : counts.per_triple) {
    if (count > 1) same_set.push_back({{"vars", triple}, {"constraints", count}});
  }
  return {{"n", counts.n},       {"m", counts.m},         {"b", counts.b},
          {"e", counts.e},       {"c_mid", c_mid},        {"c_out", c_out},
          {"shared_3_sets", same_set}};
}

json stats_report(const Instance& inst, std::uint64_t samples, std::uint64_t seed) {
  json out;
  out["n"] = inst.num_vars();
  out["m"] = inst.num_constraints();
  out["irreducible"] = is_irreducible(inst);
  out["profile"] = to_json(profile_counts(inst));

  Rational closed = second_moment_closed_form(inst);
  out["second_moment_closed_form"] = to_string(closed);
  out["second_moment_enumerated"] = to_string(second_moment_enumerated(inst));
  out["cross_term"] = to_string(cross_term_closed_form(inst));
  out["second_moment_floor"] = to_string(make_rational(11, 768) * inst.num_constraints());
  if (inst.num_vars() <= 8) {
    auto moments = enumerate_moments(inst);
    out["direct"] = {{"first", to_string(moments.first)},
                     {"second", to_string(moments.second)},
                     {"fourth", to_string(moments.fourth)}};
  } else {
    out["direct"] = nullptr;
  }
  auto mc = monte_carlo_moments(inst, samples, seed);
  out["monte_carlo"] = {{"samples", mc.samples},
                        {"seed", seed},
                        {"mean", to_string(mc.mean)},
                        {"mean_sq", to_string(mc.mean_sq)}};
  return out;
}

}  // namespace batlb
