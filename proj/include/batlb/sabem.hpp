#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "batlb/instance.hpp"
#include "batlb/rational.hpp"

namespace batlb {

/// Block index of a variable under phi: V -> {0, 1, 2, 3}.
using Color = std::uint8_t;

class Assignment4 {
 public:
  Assignment4() = default;
  /// colors[v - 1] is phi(v); every entry must be at most 3.
  explicit Assignment4(std::vector<Color> colors);
  static Assignment4 constant(std::uint32_t n, Color c);

  Color operator[](VarId v) const { return colors_[v - 1]; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(colors_.size()); }
  std::span<const Color> colors() const { return colors_; }

 private:
  std::vector<Color> colors_;
};

// ---------------------------------------------------------------------------
// Per-constraint weight X_p = E[satisfied | phi] - 1/3
// ---------------------------------------------------------------------------

enum class WeightCase {
  all_equal,           // phi(mid) = phi(lo) = phi(hi)
  middle_apart,        // phi(mid) != phi(lo) = phi(hi)
  middle_shares_outer, // phi(mid) in {phi(lo), phi(hi)}, outers differ
  middle_between,      // all distinct, phi(mid) strictly between
  middle_outside,      // all distinct, phi(mid) not between
};

WeightCase weight_case(Color mid, Color lo, Color hi);
Rational xp_weight(Color mid, Color lo, Color hi);
/// 6 * xp_weight, always an integer in {-2, 0, 1, 4}.
int xp_weight_sixths(Color mid, Color lo, Color hi);

/// Sum of xp_weight over all constraints.
Rational x_weight(const Instance& inst, const Assignment4& phi);

/// Exact mean of satisfied_count over every phi-compatible arrangement,
/// i.e. over all orderings inside each block. Throws too_large when the
/// product of block factorials exceeds max_orderings.
Rational expected_satisfied_exhaustive(const Instance& inst, const Assignment4& phi,
                                       std::uint64_t max_orderings = 10'000'000);

// ---------------------------------------------------------------------------
// Moments of X over uniform phi
// ---------------------------------------------------------------------------

Rational first_moment(const Instance& inst);

/// E[X_{c1} X_{c2}] by enumerating the 4^k joint colorings of the k distinct
/// variables involved (k <= 6). c1 == c2 gives E[X_c^2].
Rational pair_expectation(const Constraint& c1, const Constraint& c2);

/// Occurrence statistics behind the closed-form second moment.
struct ProfileCounts {
  std::uint32_t n = 0;
  std::size_t m = 0;
  std::vector<std::int64_t> b;  // b[u-1]: constraints with middle u
  std::vector<std::int64_t> e;  // e[u-1]: constraints with u as an outer
  /// (u, v) -> #constraints (u, {v, *})
  std::map<std::pair<VarId, VarId>, std::int64_t> c_mid;
  /// {u, v} with u < v -> #constraints (*, {u, v})
  std::map<std::pair<VarId, VarId>, std::int64_t> c_out;
  /// sorted 3-set -> #constraints on exactly that 3-set
  std::map<std::array<VarId, 3>, std::int64_t> per_triple;

  std::int64_t mid_count(VarId u, VarId v) const;
  std::int64_t outer_count(VarId u, VarId v) const;

  // Sizes of the ordered-pair classes S_1 .. S_8.
  std::int64_t s1(VarId u) const;
  std::int64_t s2(VarId u) const;
  std::int64_t s3(VarId u) const;
  std::int64_t s4(VarId u, VarId v) const;
  std::int64_t s5(VarId u, VarId v) const;
  std::int64_t s6(VarId u, VarId v) const;
  std::int64_t s7(VarId u, VarId v) const;
  std::int64_t s8(const std::array<VarId, 3>& triple) const;

  /// Unordered pairs {u < v} with any nonzero c_mid / c_out entry.
  std::vector<std::pair<VarId, VarId>> touched_pairs() const;
};

ProfileCounts profile_counts(const Instance& inst);

/// 768 * E[X_l X_l'] for a pair lying in S_i and in no S_j, j > i.
inline constexpr std::array<int, 8> kCaseWeights = {12, 3, -6, 24, 36, -18, -6, -44};
/// The inclusion-corrected weights w'_i, also scaled by 768.
inline constexpr std::array<int, 8> kCaseWeightsPrime = {12, 3, -6, 9, 30, -15, 6, -11};
/// 768 * E[X_l^2].
inline constexpr int kDiagonalWeight = 88;

/// Recovers w' from w through the class inclusions:
///   S4 ⊂ S1∩S2, S5 ⊂ S2∩S2, S6 ⊂ S3∩S2, S7 ⊂ S3∩S3,
///   S8 ⊂ S3∩S3∩S2∩S7∩S6∩S6.
std::array<int, 8> derive_prime_weights(const std::array<int, 8>& weights);

/// Sum over ordered pairs l != l' of E[X_l X_l'] via the S-class sizes and w'.
Rational cross_term_closed_form(const Instance& inst);
/// The same sum via the per-variable and per-pair quadratic forms in b, e, c.
Rational cross_term_quadratic_form(const Instance& inst);
/// m * 88/768 + cross_term_closed_form.
Rational second_moment_closed_form(const Instance& inst);
/// Sum of pair_expectation over all ordered pairs, diagonal included.
Rational second_moment_enumerated(const Instance& inst);

struct EnumeratedMoments {
  Rational first;
  Rational second;
  Rational fourth;
};

/// E[X], E[X^2], E[X^4] by walking all 4^n assignments. too_large if n > max_vars.
EnumeratedMoments enumerate_moments(const Instance& inst, std::uint32_t max_vars = 8);
Rational second_moment_direct(const Instance& inst, std::uint32_t max_vars = 8);
Rational fourth_moment_enumerated(const Instance& inst, std::uint32_t max_vars = 8);

/// Cross term >= -(77/768) m. Throws not_irreducible on reducible input.
bool cross_term_lower_bound_check(const Instance& inst);

// ---------------------------------------------------------------------------
// Case table for E[X_l X_l']
// ---------------------------------------------------------------------------

struct CaseWeightRow {
  int index = 0;  // 1..8
  Constraint first;
  Constraint second;
  Rational scaled;  // 768 * E[X_l X_l']
  int expected = 0;
  bool match = false;
};

struct CaseWeightReport {
  std::array<CaseWeightRow, 8> rows;
  bool all_match() const;
};

/// Evaluates one representative pair per class and compares against
/// kCaseWeights. Throws mismatch (listing the offending classes) on any
/// disagreement.
CaseWeightReport verify_table2();
/// The representatives without the comparison; never throws.
CaseWeightReport compute_case_weights();

// ---------------------------------------------------------------------------
// Multilinear form of X_p over six +-1 variables
// ---------------------------------------------------------------------------

/// The +-1 encoding of phi(mid), phi(lo), phi(hi): two digits per variable,
/// high bit first, -1 standing for a 0 bit. Order:
/// (mid_1, mid_2, lo_1, lo_2, hi_1, hi_2).
using EpsilonPoint = std::array<int, 6>;

EpsilonPoint encode_epsilon(Color mid, Color lo, Color hi);
std::array<Color, 3> decode_epsilon(const EpsilonPoint& eps);

class XpPolynomial {
 public:
  /// Monomial masks use bit t for the t-th variable of EpsilonPoint.
  XpPolynomial(Constraint constraint, std::array<Rational, 64> coefficients)
      : constraint_(constraint), coefficients_(std::move(coefficients)) {}

  const Constraint& constraint() const { return constraint_; }
  const Rational& coefficient(unsigned mask) const { return coefficients_[mask]; }
  const Rational& constant_term() const { return coefficients_[0]; }
  std::size_t num_terms() const;
  int degree() const;
  Rational evaluate(const EpsilonPoint& eps) const;

 private:
  Constraint constraint_;
  std::array<Rational, 64> coefficients_;
};

/// Expands (1/64) sum_q (-1)^{s_q} w_q prod_t (eps_t + c_t^q) into multilinear form.
XpPolynomial xp_polynomial(const Constraint& c);

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

struct MonteCarloMoments {
  Rational mean;
  Rational mean_sq;
  std::uint64_t samples = 0;
};

MonteCarloMoments monte_carlo_moments(const Instance& inst, std::uint64_t samples,
                                      std::uint64_t seed);

}  // namespace batlb
