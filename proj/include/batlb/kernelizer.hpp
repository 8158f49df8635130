#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "batlb/instance.hpp"
#include "batlb/rational.hpp"

namespace batlb {

/// A 3-set carrying all three constraints, one per choice of middle. Every
/// arrangement satisfies exactly one of them.
struct CompleteTriple {
  std::array<VarId, 3> vars;
  std::array<Constraint, 3> constraints;

  friend bool operator==(const CompleteTriple&, const CompleteTriple&) = default;
};

std::vector<CompleteTriple> find_complete_triples(const Instance& inst);
bool is_irreducible(const Instance& inst);

struct ReductionResult {
  Instance reduced;
  std::size_t triples_removed = 0;
  /// var_map[r - 1] is the original id of reduced variable r (ascending).
  std::vector<VarId> var_map;
  std::vector<CompleteTriple> removed_triples;
  std::uint32_t original_vars = 0;
};

/// Removes every complete triple and every variable that occurred only in
/// removed triples, then renumbers the survivors densely in original order.
/// Variables that never occurred in any constraint are kept.
ReductionResult reduce(const Instance& inst);

/// Smallest m such that sqrt((11/768) m) / 2^20 >= kappa, i.e.
/// ceil(768 * 2^40 * kappa^2 / 11).
BigInt yes_threshold(std::int64_t kappa);

/// 11 * m >= 768 * 2^40 * kappa^2, evaluated without square roots.
bool meets_yes_bound(const BigInt& m_reduced, std::int64_t kappa);

enum class KernelMode { bound, sharp };
enum class KernelVerdict { yes, kernel };

const char* to_string(KernelMode mode) noexcept;
const char* to_string(KernelVerdict verdict) noexcept;

struct KernelDecision {
  KernelVerdict verdict = KernelVerdict::kernel;
  std::optional<Instance> kernel;
  BigInt threshold_used;
  std::int64_t kappa = 0;
  KernelMode mode = KernelMode::bound;
  std::size_t m_original = 0;
  /// Exact E[X^2] of the reduced instance; filled in sharp mode only.
  std::optional<Rational> second_moment;
  ReductionResult reduction;

  std::size_t m_reduced() const { return reduction.reduced.num_constraints(); }
  std::size_t triples_removed() const { return reduction.triples_removed; }
};

/// bound: YES iff m' >= yes_threshold(kappa), using the guaranteed
/// E[X^2] >= (11/768) m' of irreducible instances.
/// sharp: YES iff the reduced instance's exact E[X^2] >= 2^40 kappa^2.
///
/// Either way the witness exists by the fourth-moment argument: with
/// sigma / (4 * 2^18) >= kappa some phi has X > sigma / (4 * 2^18) >= kappa,
/// so the non-strict comparison is sound.
KernelDecision kernelize(const Instance& inst, std::int64_t kappa,
                         KernelMode mode = KernelMode::bound);

/// Maps reduced positions back through var_map and appends the deleted
/// variables after all kept ones, in ascending original id.
Arrangement lift_arrangement(const Arrangement& reduced_arr, const ReductionResult& res);

}  // namespace batlb
