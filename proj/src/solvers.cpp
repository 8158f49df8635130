#include "batlb/solvers.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "batlb/error.hpp"
#include "random.hpp"

namespace batlb {

namespace {

bool between(std::uint32_t mid, std::uint32_t a, std::uint32_t b) {
  return (a < mid && mid < b) || (b < mid && mid < a);
}

void require_matching(const Instance& inst, const Arrangement& arr) {
  if (arr.size() != inst.num_vars()) {
    throw Error(ErrorCode::invalid_argument, "arrangement size differs from the variable count");
  }
}

}  // namespace

std::size_t satisfied_count(const Instance& inst, const Arrangement& arr) {
  require_matching(inst, arr);
  std::size_t count = 0;
  for (const auto& c : inst.constraints()) {
    if (between(arr.position(c.middle), arr.position(c.outer_lo), arr.position(c.outer_hi))) {
      ++count;
    }
  }
  return count;
}

bool meets_target(std::size_t satisfied, std::size_t m, std::int64_t kappa) {
  if (kappa < 0) throw Error(ErrorCode::negative_parameter, "kappa must be non-negative");
  return 3 * BigInt(satisfied) >= BigInt(m) + 3 * BigInt(kappa);
}

const char* to_string(SolveMethod method) noexcept {
  switch (method) {
    case SolveMethod::brute: return "brute";
    case SolveMethod::exact_dp: return "exact_dp";
    case SolveMethod::randomized_round: return "randomized_round";
    case SolveMethod::local_search: return "local_search";
  }
  return "unknown";
}

const char* to_string(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::yes: return "YES";
    case Verdict::no: return "NO";
    case Verdict::undecided: return "UNDECIDED";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Exact solvers
// ---------------------------------------------------------------------------

SolveResult solve_brute(const Instance& inst, std::uint32_t max_vars) {
  const std::uint32_t n = inst.num_vars();
  if (n > max_vars) {
    throw Error(ErrorCode::too_large, "brute force limited to n <= " + std::to_string(max_vars));
  }
  // Position vectors are visited in lexicographic order, so the first strict
  // improvement wins ties.
  std::vector<std::uint32_t> positions(n);
  std::iota(positions.begin(), positions.end(), 1u);
  std::vector<std::uint32_t> best_positions = positions;
  std::size_t best = 0;
  bool first = true;
  do {
    std::size_t count = 0;
    for (const auto& c : inst.constraints()) {
      if (between(positions[c.middle - 1], positions[c.outer_lo - 1], positions[c.outer_hi - 1])) {
        ++count;
      }
    }
    if (first || count > best) {
      best = count;
      best_positions = positions;
      first = false;
    }
  } while (std::next_permutation(positions.begin(), positions.end()));
  return {best, Arrangement::from_positions(std::move(best_positions)), SolveMethod::brute, true};
}

namespace {

constexpr std::uint32_t kDpHardLimit = 26;

struct OuterMasks {
  std::uint32_t lo;
  std::uint32_t hi;
};

class SubsetDp {
 public:
  explicit SubsetDp(const Instance& inst)
      : n_(inst.num_vars()), full_((std::uint32_t{1} << n_) - 1), by_middle_(n_) {
    for (const auto& c : inst.constraints()) {
      by_middle_[c.middle - 1].push_back(
          {std::uint32_t{1} << (c.outer_lo - 1), std::uint32_t{1} << (c.outer_hi - 1)});
    }
    forward_.assign(std::size_t{full_} + 1, -1);
    backward_.assign(std::size_t{full_} + 1, -1);
    fixed_position_.assign(n_, 0);
  }

  // Placing v after the set S credits (v, {a, b}) iff exactly one of a, b is in S.
  int gain(std::uint32_t v, std::uint32_t placed) const {
    int g = 0;
    for (const auto& o : by_middle_[v]) g += ((placed & o.lo) != 0) != ((placed & o.hi) != 0);
    return g;
  }

  // Lexicographically smallest position vector among optimal arrangements:
  // fix variable 1 at its earliest optimal position, then variable 2, ...
  std::pair<int, std::vector<std::uint32_t>> solve() {
    if (n_ == 0) return {0, {}};
    int optimum = -1;
    for (std::uint32_t v = 0; v < n_; ++v) {
      sweep();
      if (optimum < 0) optimum = forward_[full_];
      fixed_position_[v] = earliest_position(v, optimum);
    }
    return {optimum, fixed_position_};
  }

 private:
  bool valid(std::uint32_t set) const {
    return (set & fixed_mask_) == must_contain_[static_cast<std::size_t>(std::popcount(set))];
  }

  void sweep() {
    fixed_mask_ = 0;
    must_contain_.assign(n_ + 1, 0);
    for (std::uint32_t v = 0; v < n_; ++v) {
      if (fixed_position_[v] == 0) continue;
      fixed_mask_ |= std::uint32_t{1} << v;
      for (std::uint32_t k = fixed_position_[v]; k <= n_; ++k) {
        must_contain_[k] |= std::uint32_t{1} << v;
      }
    }

    std::fill(forward_.begin(), forward_.end(), -1);
    forward_[0] = 0;
    for (std::uint32_t set = 0; set < full_; ++set) {
      const int here = forward_[set];
      if (here < 0) continue;
      for (std::uint32_t v = 0; v < n_; ++v) {
        const std::uint32_t bit = std::uint32_t{1} << v;
        if (set & bit) continue;
        const std::uint32_t next = set | bit;
        if (!valid(next)) continue;
        forward_[next] = std::max(forward_[next], here + gain(v, set));
      }
    }

    std::fill(backward_.begin(), backward_.end(), -1);
    backward_[full_] = 0;
    for (std::uint32_t set = full_; set-- > 0;) {
      if (!valid(set)) continue;
      int best = -1;
      for (std::uint32_t v = 0; v < n_; ++v) {
        const std::uint32_t bit = std::uint32_t{1} << v;
        if (set & bit) continue;
        const int rest = backward_[set | bit];
        if (rest < 0) continue;
        best = std::max(best, gain(v, set) + rest);
      }
      backward_[set] = best;
    }
  }

  std::uint32_t earliest_position(std::uint32_t v, int optimum) const {
    const std::uint32_t bit = std::uint32_t{1} << v;
    std::uint32_t earliest = n_ + 1;
    for (std::uint32_t set = 0; set <= full_; ++set) {
      if ((set & bit) || forward_[set] < 0) continue;
      const int rest = backward_[set | bit];
      if (rest < 0 || forward_[set] + gain(v, set) + rest != optimum) continue;
      earliest = std::min(earliest, static_cast<std::uint32_t>(std::popcount(set)) + 1);
    }
    return earliest;
  }

  std::uint32_t n_;
  std::uint32_t full_;
  std::vector<std::vector<OuterMasks>> by_middle_;
  std::vector<int> forward_;
  std::vector<int> backward_;
  std::vector<std::uint32_t> fixed_position_;
  std::uint32_t fixed_mask_ = 0;
  std::vector<std::uint32_t> must_contain_;
};

}  // namespace

SolveResult solve_exact_dp(const Instance& inst, std::uint32_t max_vars) {
  const std::uint32_t n = inst.num_vars();
  if (n > max_vars || n > kDpHardLimit) {
    throw Error(ErrorCode::too_large,
                "subset DP limited to n <= " + std::to_string(std::min(max_vars, kDpHardLimit)));
  }
  SubsetDp dp(inst);
  auto [best, positions] = dp.solve();
  return {static_cast<std::size_t>(best), Arrangement::from_positions(std::move(positions)),
          SolveMethod::exact_dp, true};
}

std::size_t prefix_credit(const Instance& inst, const Arrangement& arr) {
  require_matching(inst, arr);
  std::vector<std::vector<Constraint>> by_middle(inst.num_vars());
  for (const auto& c : inst.constraints()) by_middle[c.middle - 1].push_back(c);
  std::vector<bool> placed(inst.num_vars() + 1, false);
  std::size_t credit = 0;
  for (VarId v : arr.order()) {
    for (const auto& c : by_middle[v - 1]) {
      if (placed[c.outer_lo] != placed[c.outer_hi]) ++credit;
    }
    placed[v] = true;
  }
  return credit;
}

// ---------------------------------------------------------------------------
// Heuristics
// ---------------------------------------------------------------------------

Arrangement sample_compatible_arrangement(const Instance& inst, const Assignment4& phi,
                                          std::uint64_t seed) {
  if (phi.size() != inst.num_vars()) {
    throw Error(ErrorCode::invalid_argument, "assignment size differs from the variable count");
  }
  detail::Rng rng(seed);
  std::array<std::vector<VarId>, 4> blocks;
  for (VarId v = 1; v <= inst.num_vars(); ++v) blocks[phi[v]].push_back(v);
  std::vector<VarId> order;
  order.reserve(inst.num_vars());
  for (auto& block : blocks) {
    rng.shuffle(std::span<VarId>(block));
    order.insert(order.end(), block.begin(), block.end());
  }
  return Arrangement::from_order(order);
}

SolveResult randomized_round(const Instance& inst, std::uint32_t phi_trials,
                             std::uint32_t arr_trials, std::uint64_t seed) {
  if (phi_trials == 0 || arr_trials == 0) {
    throw Error(ErrorCode::invalid_argument, "trial counts must be at least 1");
  }
  detail::Rng rng(seed);
  const std::uint32_t n = inst.num_vars();

  std::vector<Color> colors(n);
  Assignment4 best_phi;
  Rational best_weight;
  for (std::uint32_t t = 0; t < phi_trials; ++t) {
    for (auto& c : colors) c = static_cast<Color>(rng.below(4));
    Assignment4 phi(colors);
    Rational w = x_weight(inst, phi);
    if (t == 0 || w > best_weight) {
      best_weight = std::move(w);
      best_phi = std::move(phi);
    }
  }

  SolveResult result;
  result.method = SolveMethod::randomized_round;
  result.optimal = false;
  for (std::uint32_t t = 0; t < arr_trials; ++t) {
    Arrangement arr = sample_compatible_arrangement(inst, best_phi, rng.next());
    std::size_t count = satisfied_count(inst, arr);
    if (t == 0 || count > result.best_count ||
        (count == result.best_count && arr < result.arrangement)) {
      result.best_count = count;
      result.arrangement = std::move(arr);
    }
  }
  return result;
}

SolveResult local_search(const Instance& inst, const Arrangement& start,
                         std::uint32_t max_rounds) {
  require_matching(inst, start);
  const std::uint32_t n = inst.num_vars();
  std::vector<std::vector<Constraint>> incident(n + 1);
  for (const auto& c : inst.constraints()) {
    incident[c.middle].push_back(c);
    incident[c.outer_lo].push_back(c);
    incident[c.outer_hi].push_back(c);
  }

  std::vector<VarId> order = start.order();
  std::vector<std::uint32_t> rank(n + 1, 0);  // 0-based index in the current order
  auto rebuild_rank = [&] {
    for (std::uint32_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  };
  rebuild_rank();

  std::vector<int> slot_score(n);
  for (std::uint32_t round = 0; round < max_rounds; ++round) {
    bool improved = false;
    for (VarId v = 1; v <= n; ++v) {
      const std::uint32_t current = rank[v];
      // Index of x once v is lifted out, then its index with v at slot s.
      auto without_v = [&](VarId x) { return rank[x] > current ? rank[x] - 1 : rank[x]; };
      std::fill(slot_score.begin(), slot_score.end(), 0);
      for (const auto& c : incident[v]) {
        for (std::uint32_t s = 0; s < n; ++s) {
          auto at = [&](VarId x) {
            if (x == v) return s;
            std::uint32_t r = without_v(x);
            return r >= s ? r + 1 : r;
          };
          if (between(at(c.middle), at(c.outer_lo), at(c.outer_hi))) ++slot_score[s];
        }
      }
      std::uint32_t best_slot = current;
      for (std::uint32_t s = 0; s < n; ++s) {
        if (slot_score[s] > slot_score[best_slot]) best_slot = s;
      }
      if (best_slot != current) {
        order.erase(order.begin() + current);
        order.insert(order.begin() + best_slot, v);
        rebuild_rank();
        improved = true;
      }
    }
    if (!improved) break;
  }

  Arrangement arr = Arrangement::from_order(order);
  std::size_t count = satisfied_count(inst, arr);
  return {count, std::move(arr), SolveMethod::local_search, false};
}

// ---------------------------------------------------------------------------
// Decision driver
// ---------------------------------------------------------------------------

DecideResult decide_batlb(const Instance& inst, std::int64_t kappa, const DecideBudget& budget) {
  DecideResult result;
  result.kernel_decision = kernelize(inst, kappa, budget.mode);
  const std::size_t m = inst.num_constraints();

  auto try_certify = [&](const Arrangement& arr) {
    std::size_t count = satisfied_count(inst, arr);
    if (!meets_target(count, m, kappa)) return false;
    result.certificate = arr;
    result.certificate_count = count;
    return true;
  };
  auto heuristic_certificate = [&] {
    auto rounded = randomized_round(inst, budget.phi_trials, budget.arr_trials, budget.seed);
    auto improved = local_search(inst, rounded.arrangement, budget.local_search_rounds);
    return try_certify(improved.arrangement);
  };

  if (result.kernel_decision.verdict == KernelVerdict::yes) {
    result.verdict = Verdict::yes;
    bool certified = heuristic_certificate();
    if (!certified && inst.num_vars() <= budget.dp_max_vars) {
      certified = try_certify(solve_exact_dp(inst, budget.dp_max_vars).arrangement);
    }
    result.existential = !certified;
    return result;
  }

  const auto& reduction = result.kernel_decision.reduction;
  if (reduction.reduced.num_vars() <= budget.dp_max_vars) {
    auto solved = solve_exact_dp(reduction.reduced, budget.dp_max_vars);
    Arrangement lifted = lift_arrangement(solved.arrangement, reduction);
    result.verdict = try_certify(lifted) ? Verdict::yes : Verdict::no;
    return result;
  }

  // Kernel too large for the exact solver; a heuristic hit still certifies YES.
  result.verdict = heuristic_certificate() ? Verdict::yes : Verdict::undecided;
  return result;
}

}  // namespace batlb
