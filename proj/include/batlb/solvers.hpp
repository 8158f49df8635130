#pragma once

#include <cstdint>
#include <optional>

#include "batlb/instance.hpp"
#include "batlb/kernelizer.hpp"
#include "batlb/sabem.hpp"

namespace batlb {

/// Constraints whose middle sits strictly between its outers.
std::size_t satisfied_count(const Instance& inst, const Arrangement& arr);

/// 3 * satisfied >= m + 3 * kappa, i.e. satisfied >= m/3 + kappa.
bool meets_target(std::size_t satisfied, std::size_t m, std::int64_t kappa);

enum class SolveMethod { brute, exact_dp, randomized_round, local_search };
const char* to_string(SolveMethod method) noexcept;

struct SolveResult {
  std::size_t best_count = 0;
  Arrangement arrangement;
  SolveMethod method = SolveMethod::exact_dp;
  bool optimal = false;
};

inline constexpr std::uint32_t kBruteMaxVars = 10;
inline constexpr std::uint32_t kDefaultDpMaxVars = 22;

/// All n! arrangements; ties go to the lexicographically smallest position vector.
SolveResult solve_brute(const Instance& inst, std::uint32_t max_vars = kBruteMaxVars);

/// Subset DP over placed prefixes. Same tie-break as solve_brute, so both
/// return identical arrangements.
SolveResult solve_exact_dp(const Instance& inst, std::uint32_t max_vars = kDefaultDpMaxVars);

/// Replays an arrangement left to right through the DP credit rule: placing v
/// credits each constraint with middle v that has exactly one outer placed.
std::size_t prefix_credit(const Instance& inst, const Arrangement& arr);

/// Blocks 0..3 in order, uniform random order inside each block.
Arrangement sample_compatible_arrangement(const Instance& inst, const Assignment4& phi,
                                          std::uint64_t seed);

/// Keeps the best of phi_trials uniform phi by exact x_weight, then the best
/// of arr_trials phi-compatible arrangements.
SolveResult randomized_round(const Instance& inst, std::uint32_t phi_trials,
                             std::uint32_t arr_trials, std::uint64_t seed);

/// Single-variable reinsertion hill climbing.
SolveResult local_search(const Instance& inst, const Arrangement& start,
                         std::uint32_t max_rounds);

struct DecideBudget {
  std::uint32_t dp_max_vars = kDefaultDpMaxVars;
  std::uint32_t phi_trials = 64;
  std::uint32_t arr_trials = 64;
  std::uint32_t local_search_rounds = 50;
  std::uint64_t seed = 0;
  KernelMode mode = KernelMode::bound;
};

enum class Verdict { yes, no, undecided };
const char* to_string(Verdict verdict) noexcept;

struct DecideResult {
  Verdict verdict = Verdict::undecided;
  /// A YES from the kernel threshold alone, without an explicit arrangement.
  bool existential = false;
  std::optional<Arrangement> certificate;
  std::size_t certificate_count = 0;
  KernelDecision kernel_decision;
};

DecideResult decide_batlb(const Instance& inst, std::int64_t kappa,
                          const DecideBudget& budget = {});

}  // namespace batlb
