#include "batlb/kernelizer.hpp"

#include <algorithm>
#include <map>

#include "batlb/error.hpp"
#include "batlb/sabem.hpp"

namespace batlb {

namespace {

// 768 * 2^40; squaring sqrt((11/768) m) / (4 * 2^18) >= kappa gives
// 11 m >= 768 * 2^40 * kappa^2.
BigInt scaled_kappa_square(std::int64_t kappa) {
  if (kappa < 0) {
    throw Error(ErrorCode::negative_parameter, "kappa must be non-negative");
  }
  BigInt k = kappa;
  return BigInt(768) * (BigInt(1) << 40) * k * k;
}

}  // namespace

std::vector<CompleteTriple> find_complete_triples(const Instance& inst) {
  std::map<std::array<VarId, 3>, std::vector<Constraint>> by_set;
  for (const auto& c : inst.constraints()) by_set[c.vars()].push_back(c);

  std::vector<CompleteTriple> triples;
  for (const auto& [vars, group] : by_set) {
    // Set semantics: at most one constraint per middle, so three means complete.
    if (group.size() == 3) triples.push_back({vars, {group[0], group[1], group[2]}});
  }
  return triples;
}

bool is_irreducible(const Instance& inst) { return find_complete_triples(inst).empty(); }

ReductionResult reduce(const Instance& inst) {
  ReductionResult result;
  result.original_vars = inst.num_vars();
  result.removed_triples = find_complete_triples(inst);
  result.triples_removed = result.removed_triples.size();

  std::vector<Constraint> removed;
  for (const auto& t : result.removed_triples) {
    removed.insert(removed.end(), t.constraints.begin(), t.constraints.end());
  }
  std::sort(removed.begin(), removed.end());

  const std::uint32_t n = inst.num_vars();
  std::vector<bool> in_removed(n + 1, false);
  std::vector<bool> in_kept(n + 1, false);
  std::vector<Constraint> kept;
  for (const auto& c : inst.constraints()) {
    bool is_removed = std::binary_search(removed.begin(), removed.end(), c);
    auto& mark = is_removed ? in_removed : in_kept;
    mark[c.middle] = mark[c.outer_lo] = mark[c.outer_hi] = true;
    if (!is_removed) kept.push_back(c);
  }

  std::vector<VarId> new_id(n + 1, 0);
  for (VarId v = 1; v <= n; ++v) {
    if (in_kept[v] || !in_removed[v]) {
      result.var_map.push_back(v);
      new_id[v] = static_cast<VarId>(result.var_map.size());
    }
  }
  for (auto& c : kept) {
    c = normalize_constraint(new_id[c.middle], new_id[c.outer_lo], new_id[c.outer_hi]);
  }
  result.reduced =
      Instance::create(static_cast<std::uint32_t>(result.var_map.size()), std::move(kept));
  return result;
}

BigInt yes_threshold(std::int64_t kappa) {
  BigInt scaled = scaled_kappa_square(kappa);
  return (scaled + 10) / 11;
}

bool meets_yes_bound(const BigInt& m_reduced, std::int64_t kappa) {
  return 11 * m_reduced >= scaled_kappa_square(kappa);
}

const char* to_string(KernelMode mode) noexcept {
  return mode == KernelMode::bound ? "bound" : "sharp";
}

const char* to_string(KernelVerdict verdict) noexcept {
  return verdict == KernelVerdict::yes ? "YES" : "KERNEL";
}

KernelDecision kernelize(const Instance& inst, std::int64_t kappa, KernelMode mode) {
  KernelDecision decision;
  decision.threshold_used = yes_threshold(kappa);
  decision.kappa = kappa;
  decision.mode = mode;
  decision.m_original = inst.num_constraints();
  decision.reduction = reduce(inst);

  const auto& reduced = decision.reduction.reduced;
  bool yes = false;
  if (mode == KernelMode::bound) {
    yes = meets_yes_bound(BigInt(reduced.num_constraints()), kappa);
  } else {
    // sigma / 2^20 >= kappa  <=>  E[X^2] >= 2^40 kappa^2 (both sides non-negative).
    Rational sigma2 = second_moment_closed_form(reduced);
    BigInt k = kappa;
    yes = sigma2 >= Rational((BigInt(1) << 40) * k * k);
    decision.second_moment = std::move(sigma2);
  }
  decision.verdict = yes ? KernelVerdict::yes : KernelVerdict::kernel;
  if (!yes) decision.kernel = reduced;
  return decision;
}

Arrangement lift_arrangement(const Arrangement& reduced_arr, const ReductionResult& res) {
  if (reduced_arr.size() != res.reduced.num_vars()) {
    throw Error(ErrorCode::invalid_argument, "arrangement does not match the reduced instance");
  }
  const std::uint32_t n = res.original_vars;
  std::vector<std::uint32_t> positions(n, 0);
  for (std::uint32_t r = 1; r <= reduced_arr.size(); ++r) {
    positions[res.var_map[r - 1] - 1] = reduced_arr.position(r);
  }
  std::uint32_t next = reduced_arr.size();
  for (std::uint32_t v = 0; v < n; ++v) {
    if (positions[v] == 0) positions[v] = ++next;
  }
  return Arrangement::from_positions(std::move(positions));
}

}  // namespace batlb
