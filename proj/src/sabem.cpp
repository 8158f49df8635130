#include "batlb/sabem.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <unordered_map>

#include "batlb/error.hpp"
#include "batlb/kernelizer.hpp"
#include "random.hpp"

namespace batlb {

namespace {

BigInt to_bigint(__int128 value) {
  bool negative = value < 0;
  unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-value)
                                   : static_cast<unsigned __int128>(value);
  BigInt result = static_cast<std::uint64_t>(mag >> 64);
  result <<= 64;
  result += static_cast<std::uint64_t>(mag);
  return negative ? BigInt(-result) : result;
}

std::uint64_t pow4(unsigned k) { return std::uint64_t{1} << (2 * k); }

}  // namespace

Assignment4::Assignment4(std::vector<Color> colors) : colors_(std::move(colors)) {
  for (auto c : colors_) {
    if (c > 3) throw Error(ErrorCode::invalid_argument, "phi values must lie in {0,1,2,3}");
  }
}

Assignment4 Assignment4::constant(std::uint32_t n, Color c) {
  return Assignment4(std::vector<Color>(n, c));
}

// ---------------------------------------------------------------------------
// Weights
// ---------------------------------------------------------------------------

WeightCase weight_case(Color mid, Color lo, Color hi) {
  if (lo == hi) return mid == lo ? WeightCase::all_equal : WeightCase::middle_apart;
  if (mid == lo || mid == hi) return WeightCase::middle_shares_outer;
  return (std::min(lo, hi) < mid && mid < std::max(lo, hi)) ? WeightCase::middle_between
                                                          : WeightCase::middle_outside;
}

int xp_weight_sixths(Color mid, Color lo, Color hi) {
  switch (weight_case(mid, lo, hi)) {
    case WeightCase::all_equal: return 0;            // 1/3 - 1/3
    case WeightCase::middle_apart: return -2;        // 0 - 1/3
    case WeightCase::middle_shares_outer: return 1;  // 1/2 - 1/3
    case WeightCase::middle_between: return 4;       // 1 - 1/3
    case WeightCase::middle_outside: return -2;      // 0 - 1/3
  }
  return 0;
}

Rational xp_weight(Color mid, Color lo, Color hi) {
  return make_rational(xp_weight_sixths(mid, lo, hi), 6);
}

namespace {

std::int64_t x_weight_sixths(const Instance& inst, std::span<const Color> colors) {
  std::int64_t total = 0;
  for (const auto& c : inst.constraints()) {
    total += xp_weight_sixths(colors[c.middle - 1], colors[c.outer_lo - 1],
                              colors[c.outer_hi - 1]);
  }
  return total;
}

void require_total(const Instance& inst, const Assignment4& phi) {
  if (phi.size() != inst.num_vars()) {
    throw Error(ErrorCode::invalid_argument, "assignment size differs from the variable count");
  }
}

}  // namespace

Rational x_weight(const Instance& inst, const Assignment4& phi) {
  require_total(inst, phi);
  return make_rational(x_weight_sixths(inst, phi.colors()), 6);
}

Rational expected_satisfied_exhaustive(const Instance& inst, const Assignment4& phi,
                                       std::uint64_t max_orderings) {
  require_total(inst, phi);
  std::array<std::vector<VarId>, 4> blocks;
  for (VarId v = 1; v <= inst.num_vars(); ++v) blocks[phi[v]].push_back(v);

  std::uint64_t total = 1;
  for (const auto& block : blocks) {
    for (std::uint64_t k = 2; k <= block.size(); ++k) {
      total *= k;
      if (total > max_orderings) {
        throw Error(ErrorCode::too_large, "more than " + std::to_string(max_orderings) +
                                              " phi-compatible arrangements");
      }
    }
  }

  std::vector<std::uint32_t> pos(inst.num_vars() + 1, 0);
  std::uint64_t satisfied_sum = 0;

  // Permute block b in place, recursing into later blocks for every ordering.
  auto visit = [&](auto&& self, std::size_t b, std::uint32_t offset) -> void {
    if (b == blocks.size()) {
      for (const auto& c : inst.constraints()) {
        auto pm = pos[c.middle], pl = pos[c.outer_lo], ph = pos[c.outer_hi];
        if ((pl < pm && pm < ph) || (ph < pm && pm < pl)) ++satisfied_sum;
      }
      return;
    }
    auto& block = blocks[b];
    std::sort(block.begin(), block.end());
    do {
      for (std::size_t i = 0; i < block.size(); ++i) {
        pos[block[i]] = offset + static_cast<std::uint32_t>(i) + 1;
      }
      self(self, b + 1, offset + static_cast<std::uint32_t>(block.size()));
    } while (std::next_permutation(block.begin(), block.end()));
  };
  visit(visit, 0, 0);
  return Rational(BigInt(satisfied_sum), BigInt(total));
}

// ---------------------------------------------------------------------------
// Moments
// ---------------------------------------------------------------------------

Rational first_moment(const Instance& inst) {
  Rational total = 0;
  for (std::size_t p = 0; p < inst.num_constraints(); ++p) {
    std::int64_t sum = 0;
    for (Color a = 0; a < 4; ++a)
      for (Color b = 0; b < 4; ++b)
        for (Color c = 0; c < 4; ++c) sum += xp_weight_sixths(a, b, c);
    total += make_rational(sum, 6 * 64);
  }
  return total;
}

namespace {

// Two constraints over k local labels 0..k-1, in (mid, lo, hi, mid, lo, hi)
// order. Returns sum over all 4^k colorings of 36 * X_1 * X_2.
std::int64_t pair_product_sum(const std::array<int, 6>& local, unsigned k) {
  std::int64_t sum = 0;
  std::array<Color, 6> color{};
  for (std::uint64_t code = 0; code < pow4(k); ++code) {
    for (unsigned i = 0; i < k; ++i) color[i] = static_cast<Color>((code >> (2 * i)) & 3);
    sum += xp_weight_sixths(color[local[0]], color[local[1]], color[local[2]]) *
           xp_weight_sixths(color[local[3]], color[local[4]], color[local[5]]);
  }
  return sum;
}

// Relabels by first occurrence; the labelled shape fully determines the expectation.
std::pair<std::array<int, 6>, unsigned> relabel(const Constraint& c1, const Constraint& c2) {
  const std::array<VarId, 6> ids{c1.middle, c1.outer_lo, c1.outer_hi,
                                 c2.middle, c2.outer_lo, c2.outer_hi};
  std::array<int, 6> local{};
  std::array<VarId, 6> seen{};
  unsigned k = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    unsigned j = 0;
    while (j < k && seen[j] != ids[i]) ++j;
    if (j == k) seen[k++] = ids[i];
    local[i] = static_cast<int>(j);
  }
  return {local, k};
}

}  // namespace

Rational pair_expectation(const Constraint& c1, const Constraint& c2) {
  auto [local, k] = relabel(c1, c2);
  return Rational(BigInt(pair_product_sum(local, k)), BigInt(36) * pow4(k));
}

Rational second_moment_enumerated(const Instance& inst) {
  // Every pair sum is rescaled to the common denominator 36 * 4^6.
  std::unordered_map<std::uint32_t, std::int64_t> cache;
  __int128 total = 0;
  auto constraints = inst.constraints();
  for (const auto& c1 : constraints) {
    for (const auto& c2 : constraints) {
      auto [local, k] = relabel(c1, c2);
      std::uint32_t key = 0;
      for (int label : local) key = key * 8 + static_cast<std::uint32_t>(label);
      auto it = cache.find(key);
      if (it == cache.end()) {
        it = cache.emplace(key, pair_product_sum(local, k) *
                                    static_cast<std::int64_t>(pow4(6 - k)))
                 .first;
      }
      total += it->second;
    }
  }
  return Rational(to_bigint(total), BigInt(36) * pow4(6));
}

std::int64_t ProfileCounts::mid_count(VarId u, VarId v) const {
  auto it = c_mid.find({u, v});
  return it == c_mid.end() ? 0 : it->second;
}

std::int64_t ProfileCounts::outer_count(VarId u, VarId v) const {
  auto it = c_out.find({std::min(u, v), std::max(u, v)});
  return it == c_out.end() ? 0 : it->second;
}

std::int64_t ProfileCounts::s1(VarId u) const { return b[u - 1] * (b[u - 1] - 1); }
std::int64_t ProfileCounts::s2(VarId u) const { return e[u - 1] * (e[u - 1] - 1); }
std::int64_t ProfileCounts::s3(VarId u) const { return 2 * b[u - 1] * e[u - 1]; }

std::int64_t ProfileCounts::s4(VarId u, VarId v) const {
  auto cuv = mid_count(u, v), cvu = mid_count(v, u);
  return cuv * (cuv - 1) + cvu * (cvu - 1);
}

std::int64_t ProfileCounts::s5(VarId u, VarId v) const {
  auto c = outer_count(u, v);
  return c * (c - 1);
}

std::int64_t ProfileCounts::s6(VarId u, VarId v) const {
  return 2 * (mid_count(u, v) + mid_count(v, u)) * outer_count(u, v);
}

std::int64_t ProfileCounts::s7(VarId u, VarId v) const {
  return 2 * mid_count(u, v) * mid_count(v, u);
}

std::int64_t ProfileCounts::s8(const std::array<VarId, 3>& triple) const {
  auto it = per_triple.find(triple);
  if (it == per_triple.end()) return 0;
  return it->second * (it->second - 1);
}

std::vector<std::pair<VarId, VarId>> ProfileCounts::touched_pairs() const {
  std::set<std::pair<VarId, VarId>> pairs;
  for (const auto& [key, count] : c_mid) {
    pairs.insert({std::min(key.first, key.second), std::max(key.first, key.second)});
  }
  for (const auto& [key, count] : c_out) pairs.insert(key);
  return {pairs.begin(), pairs.end()};
}

ProfileCounts profile_counts(const Instance& inst) {
  ProfileCounts counts;
  counts.n = inst.num_vars();
  counts.m = inst.num_constraints();
  counts.b.assign(counts.n, 0);
  counts.e.assign(counts.n, 0);
  for (const auto& c : inst.constraints()) {
    ++counts.b[c.middle - 1];
    ++counts.e[c.outer_lo - 1];
    ++counts.e[c.outer_hi - 1];
    ++counts.c_mid[{c.middle, c.outer_lo}];
    ++counts.c_mid[{c.middle, c.outer_hi}];
    ++counts.c_out[{c.outer_lo, c.outer_hi}];
    ++counts.per_triple[c.vars()];
  }
  return counts;
}

std::array<int, 8> derive_prime_weights(const std::array<int, 8>& w) {
  std::array<int, 8> p{};
  p[0] = w[0];
  p[1] = w[1];
  p[2] = w[2];
  p[3] = w[3] - p[0] - p[1];
  p[4] = w[4] - 2 * p[1];
  p[5] = w[5] - p[2] - p[1];
  p[6] = w[6] - 2 * p[2];
  p[7] = w[7] - 2 * p[2] - p[1] - p[6] - 2 * p[5];
  return p;
}

Rational cross_term_closed_form(const Instance& inst) {
  const auto counts = profile_counts(inst);
  const auto& w = kCaseWeightsPrime;
  __int128 total = 0;  // scaled by 768
  for (VarId u = 1; u <= counts.n; ++u) {
    total += counts.s1(u) * w[0] + counts.s2(u) * w[1] + counts.s3(u) * w[2];
  }
  for (const auto& [u, v] : counts.touched_pairs()) {
    total += counts.s4(u, v) * w[3] + counts.s5(u, v) * w[4] + counts.s6(u, v) * w[5] +
             counts.s7(u, v) * w[6];
  }
  for (const auto& [triple, k] : counts.per_triple) total += counts.s8(triple) * w[7];
  return Rational(to_bigint(total), BigInt(768));
}

Rational cross_term_quadratic_form(const Instance& inst) {
  const auto counts = profile_counts(inst);
  __int128 half = 0;  // scaled by 2 * 768
  for (VarId u = 1; u <= counts.n; ++u) {
    std::int64_t b = counts.b[u - 1], e = counts.e[u - 1];
    half += 6 * (2 * b - e) * (2 * b - e) - 24 * b - 6 * e;
  }
  for (const auto& [u, v] : counts.touched_pairs()) {
    std::int64_t cu = counts.mid_count(u, v), cv = counts.mid_count(v, u);
    std::int64_t c = counts.outer_count(u, v);
    std::int64_t sym = cu + cv - 2 * c;
    // 12 ((cu - cv) / 2)^2 == 3 (cu - cv)^2
    half += 15 * sym * sym + 3 * (cu - cv) * (cu - cv) - 18 * (cu + cv) - 60 * c;
  }
  __int128 s8 = 0;
  for (const auto& [triple, k] : counts.per_triple) s8 += counts.s8(triple);
  return Rational(to_bigint(half), BigInt(2 * 768)) +
         Rational(to_bigint(s8 * kCaseWeightsPrime[7]), BigInt(768));
}

Rational second_moment_closed_form(const Instance& inst) {
  return Rational(BigInt(kDiagonalWeight) * inst.num_constraints(), BigInt(768)) +
         cross_term_closed_form(inst);
}

EnumeratedMoments enumerate_moments(const Instance& inst, std::uint32_t max_vars) {
  const std::uint32_t n = inst.num_vars();
  if (n > max_vars) {
    throw Error(ErrorCode::too_large, "4^" + std::to_string(n) + " assignments exceed the 4^" +
                                          std::to_string(max_vars) + " enumeration limit");
  }
  __int128 s1 = 0, s2 = 0, s4 = 0;
  std::vector<Color> colors(n, 0);
  for (std::uint64_t code = 0; code < pow4(n); ++code) {
    for (std::uint32_t v = 0; v < n; ++v) colors[v] = static_cast<Color>((code >> (2 * v)) & 3);
    __int128 x = x_weight_sixths(inst, colors);
    __int128 x2 = x * x;
    s1 += x;
    s2 += x2;
    s4 += x2 * x2;
  }
  const BigInt points = pow4(n);
  return {Rational(to_bigint(s1), 6 * points), Rational(to_bigint(s2), 36 * points),
          Rational(to_bigint(s4), 1296 * points)};
}

Rational second_moment_direct(const Instance& inst, std::uint32_t max_vars) {
  return enumerate_moments(inst, max_vars).second;
}

Rational fourth_moment_enumerated(const Instance& inst, std::uint32_t max_vars) {
  return enumerate_moments(inst, max_vars).fourth;
}

bool cross_term_lower_bound_check(const Instance& inst) {
  if (!is_irreducible(inst)) {
    throw Error(ErrorCode::not_irreducible, "instance contains a complete triple");
  }
  return cross_term_closed_form(inst) >=
         Rational(BigInt(-77) * inst.num_constraints(), BigInt(768));
}

// ---------------------------------------------------------------------------
// Case table
// ---------------------------------------------------------------------------

bool CaseWeightReport::all_match() const {
  return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.match; });
}

CaseWeightReport compute_case_weights() {
  constexpr VarId u = 1, v = 2, w = 3, a = 4, b = 5, c = 6, d = 7;
  const std::array<std::pair<Constraint, Constraint>, 8> reps = {{
      {normalize_constraint(u, a, b), normalize_constraint(u, c, d)},
      {normalize_constraint(a, u, b), normalize_constraint(c, u, d)},
      {normalize_constraint(u, a, b), normalize_constraint(c, u, d)},
      {normalize_constraint(u, v, a), normalize_constraint(u, v, b)},
      {normalize_constraint(a, u, v), normalize_constraint(b, u, v)},
      {normalize_constraint(u, v, a), normalize_constraint(b, u, v)},
      {normalize_constraint(u, v, a), normalize_constraint(v, u, b)},
      {normalize_constraint(u, v, w), normalize_constraint(v, u, w)},
  }};
  CaseWeightReport report;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    auto& row = report.rows[i];
    row.index = static_cast<int>(i + 1);
    row.first = reps[i].first;
    row.second = reps[i].second;
    row.scaled = 768 * pair_expectation(row.first, row.second);
    row.expected = kCaseWeights[i];
    row.match = row.scaled == Rational(row.expected);
  }
  return report;
}

CaseWeightReport verify_table2() {
  auto report = compute_case_weights();
  std::string bad;
  for (const auto& row : report.rows) {
    if (!row.match) {
      bad += " S" + std::to_string(row.index) + ": got " + to_string(row.scaled) + ", want " +
             std::to_string(row.expected) + ";";
    }
  }
  if (!bad.empty()) throw Error(ErrorCode::mismatch, "case weights disagree:" + bad);
  return report;
}

// ---------------------------------------------------------------------------
// Polynomial form
// ---------------------------------------------------------------------------

EpsilonPoint encode_epsilon(Color mid, Color lo, Color hi) {
  auto hi_bit = [](Color c) { return (c & 2) ? 1 : -1; };
  auto lo_bit = [](Color c) { return (c & 1) ? 1 : -1; };
  return {hi_bit(mid), lo_bit(mid), hi_bit(lo), lo_bit(lo), hi_bit(hi), lo_bit(hi)};
}

std::array<Color, 3> decode_epsilon(const EpsilonPoint& eps) {
  auto color = [&](int t) {
    return static_cast<Color>((eps[t] > 0 ? 2 : 0) + (eps[t + 1] > 0 ? 1 : 0));
  };
  return {color(0), color(2), color(4)};
}

std::size_t XpPolynomial::num_terms() const {
  return static_cast<std::size_t>(
      std::count_if(coefficients_.begin(), coefficients_.end(), [](const auto& c) { return c != 0; }));
}

int XpPolynomial::degree() const {
  int deg = -1;
  for (unsigned mask = 0; mask < 64; ++mask) {
    if (coefficients_[mask] != 0) deg = std::max(deg, std::popcount(mask));
  }
  return deg;
}

Rational XpPolynomial::evaluate(const EpsilonPoint& eps) const {
  Rational total = 0;
  for (unsigned mask = 0; mask < 64; ++mask) {
    if (coefficients_[mask] == 0) continue;
    int sign = 1;
    for (int t = 0; t < 6; ++t) {
      if (mask & (1u << t)) sign *= eps[t];
    }
    total += sign * coefficients_[mask];
  }
  return total;
}

XpPolynomial xp_polynomial(const Constraint& c) {
  // Integer coefficients scaled by 64 * 6.
  std::array<std::int64_t, 64> scaled{};
  for (unsigned q = 0; q < 64; ++q) {
    EpsilonPoint digits{};
    int minus_ones = 0;
    for (int t = 0; t < 6; ++t) {
      digits[t] = (q >> (5 - t)) & 1 ? 1 : -1;
      if (digits[t] < 0) ++minus_ones;
    }
    auto colors = decode_epsilon(digits);
    const std::int64_t weight =
        (minus_ones % 2 ? -1 : 1) * xp_weight_sixths(colors[0], colors[1], colors[2]);
    // prod_t (eps_t + c_t) = sum over masks S of prod_{t in S} eps_t * prod_{t not in S} c_t
    for (unsigned mask = 0; mask < 64; ++mask) {
      std::int64_t term = weight;
      for (int t = 0; t < 6; ++t) {
        if (!(mask & (1u << t))) term *= digits[t];
      }
      scaled[mask] += term;
    }
  }
  std::array<Rational, 64> coefficients;
  for (unsigned mask = 0; mask < 64; ++mask) coefficients[mask] = make_rational(scaled[mask], 384);
  return XpPolynomial(c, std::move(coefficients));
}

MonteCarloMoments monte_carlo_moments(const Instance& inst, std::uint64_t samples,
                                      std::uint64_t seed) {
  if (samples == 0) throw Error(ErrorCode::invalid_argument, "samples must be at least 1");
  detail::Rng rng(seed);
  std::vector<Color> colors(inst.num_vars());
  __int128 sum = 0, sum_sq = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (auto& c : colors) c = static_cast<Color>(rng.below(4));
    __int128 x = x_weight_sixths(inst, colors);
    sum += x;
    sum_sq += x * x;
  }
  return {Rational(to_bigint(sum), BigInt(6) * samples),
          Rational(to_bigint(sum_sq), BigInt(36) * samples), samples};
}

}  // namespace batlb
