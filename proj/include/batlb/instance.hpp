#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "batlb/rational.hpp"

namespace batlb {

/// Variables are 1-indexed on every interface.
using VarId = std::uint32_t;

/// A betweenness constraint (middle, {outer_lo, outer_hi}) in canonical form:
/// the three variables are pairwise distinct and outer_lo < outer_hi.
struct Constraint {
  VarId middle = 0;
  VarId outer_lo = 0;
  VarId outer_hi = 0;

  friend auto operator<=>(const Constraint&, const Constraint&) = default;

  /// The three variables in ascending order.
  std::array<VarId, 3> vars() const;
  bool involves(VarId v) const {
    return middle == v || outer_lo == v || outer_hi == v;
  }
};

/// Throws Error(duplicate_variable) unless the three ids are pairwise distinct.
Constraint normalize_constraint(VarId middle, VarId a, VarId b);

/// n variables and a duplicate-free set of canonical constraints, stored
/// sorted by (middle, outer_lo, outer_hi). Immutable once built.
class Instance {
 public:
  Instance() = default;

  /// Validates ranges, sorts, and rejects repeated constraints unless
  /// `dedupe` is set, in which case repeats are merged.
  static Instance create(std::uint32_t n, std::vector<Constraint> constraints,
                         bool dedupe = false);

  std::uint32_t num_vars() const { return n_; }
  std::size_t num_constraints() const { return constraints_.size(); }
  std::span<const Constraint> constraints() const { return constraints_; }
  bool empty() const { return constraints_.empty(); }
  bool contains(const Constraint& c) const;

  bool operator==(const Instance&) const = default;

 private:
  Instance(std::uint32_t n, std::vector<Constraint> constraints)
      : n_(n), constraints_(std::move(constraints)) {}

  std::uint32_t n_ = 0;
  std::vector<Constraint> constraints_;
};

/// A bijection from variables 1..n onto positions 1..n.
class Arrangement {
 public:
  Arrangement() = default;

  /// positions[v - 1] is the position of variable v.
  static Arrangement from_positions(std::vector<std::uint32_t> positions);
  /// order[p - 1] is the variable at position p.
  static Arrangement from_order(std::span<const VarId> order);
  static Arrangement identity(std::uint32_t n);

  std::uint32_t size() const { return static_cast<std::uint32_t>(positions_.size()); }
  std::uint32_t position(VarId v) const { return positions_[v - 1]; }
  std::span<const std::uint32_t> positions() const { return positions_; }
  std::vector<VarId> order() const;

  /// Lexicographic on the position vector; used for tie-breaking.
  friend auto operator<=>(const Arrangement&, const Arrangement&) = default;

 private:
  explicit Arrangement(std::vector<std::uint32_t> positions)
      : positions_(std::move(positions)) {}

  std::vector<std::uint32_t> positions_;
};

/// Text format:
///   c <comment>
///   p btw <n> <m>
///   b <middle> <outer1> <outer2>
Instance parse_instance(std::string_view text, bool dedupe = false);
std::string serialize_instance(const Instance& inst);

/// 3 * C(n, 3), the number of distinct canonical constraints over n variables.
std::uint64_t distinct_constraint_count(std::uint32_t n);

Instance gen_complete(std::uint32_t n);
Instance gen_random(std::uint32_t n, std::size_t m, std::uint64_t seed);

struct PlantedInstance {
  Instance instance;
  Arrangement hidden;
};

/// Each constraint is, with probability 1 - noise, one that the hidden
/// arrangement satisfies; otherwise uniformly random. Repeats are resampled.
PlantedInstance gen_planted(std::uint32_t n, std::size_t m, const Rational& noise,
                            std::uint64_t seed);

}  // namespace batlb
