#include "batlb/instance.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "batlb/error.hpp"
#include "random.hpp"

namespace batlb {

std::array<VarId, 3> Constraint::vars() const {
  std::array<VarId, 3> v{middle, outer_lo, outer_hi};
  std::sort(v.begin(), v.end());
  return v;
}

Constraint normalize_constraint(VarId middle, VarId a, VarId b) {
  if (middle == a || middle == b || a == b) {
    throw Error(ErrorCode::duplicate_variable,
                "constraint (" + std::to_string(middle) + ", {" + std::to_string(a) + ", " +
                    std::to_string(b) + "}) repeats a variable");
  }
  return Constraint{middle, std::min(a, b), std::max(a, b)};
}

Instance Instance::create(std::uint32_t n, std::vector<Constraint> constraints, bool dedupe) {
  for (const auto& c : constraints) {
    for (VarId v : {c.middle, c.outer_lo, c.outer_hi}) {
      if (v < 1 || v > n) {
        throw Error(ErrorCode::range, "variable " + std::to_string(v) + " outside [1, " +
                                          std::to_string(n) + "]");
      }
    }
    if (c.middle == c.outer_lo || c.middle == c.outer_hi || c.outer_lo >= c.outer_hi) {
      throw Error(ErrorCode::duplicate_variable, "constraint not in canonical form");
    }
  }
  std::sort(constraints.begin(), constraints.end());
  auto dup = std::adjacent_find(constraints.begin(), constraints.end());
  if (dup != constraints.end()) {
    if (!dedupe) {
      throw Error(ErrorCode::duplicate_constraint,
                  "duplicate constraint (" + std::to_string(dup->middle) + ", {" +
                      std::to_string(dup->outer_lo) + ", " + std::to_string(dup->outer_hi) +
                      "})");
    }
    constraints.erase(std::unique(constraints.begin(), constraints.end()), constraints.end());
  }
  return Instance(n, std::move(constraints));
}

bool Instance::contains(const Constraint& c) const {
  return std::binary_search(constraints_.begin(), constraints_.end(), c);
}

Arrangement Arrangement::from_positions(std::vector<std::uint32_t> positions) {
  std::vector<bool> seen(positions.size() + 1, false);
  for (auto p : positions) {
    if (p < 1 || p > positions.size() || seen[p]) {
      throw Error(ErrorCode::invalid_argument, "positions do not form a bijection onto 1..n");
    }
    seen[p] = true;
  }
  return Arrangement(std::move(positions));
}

Arrangement Arrangement::from_order(std::span<const VarId> order) {
  std::vector<std::uint32_t> positions(order.size(), 0);
  for (std::size_t p = 0; p < order.size(); ++p) {
    VarId v = order[p];
    if (v < 1 || v > order.size() || positions[v - 1] != 0) {
      throw Error(ErrorCode::invalid_argument, "order is not a permutation of 1..n");
    }
    positions[v - 1] = static_cast<std::uint32_t>(p + 1);
  }
  return Arrangement(std::move(positions));
}

Arrangement Arrangement::identity(std::uint32_t n) {
  std::vector<std::uint32_t> positions(n);
  std::iota(positions.begin(), positions.end(), 1u);
  return Arrangement(std::move(positions));
}

std::vector<VarId> Arrangement::order() const {
  std::vector<VarId> order(positions_.size());
  for (std::size_t v = 0; v < positions_.size(); ++v) {
    order[positions_[v] - 1] = static_cast<VarId>(v + 1);
  }
  return order;
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

std::uint64_t parse_count(std::string_view token, std::size_t line_no) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw Error(ErrorCode::syntax, "line " + std::to_string(line_no) + ": '" +
                                       std::string(token) + "' is not a non-negative integer");
  }
  return value;
}

}  // namespace

Instance parse_instance(std::string_view text, bool dedupe) {
  bool have_header = false;
  std::uint64_t n = 0;
  std::uint64_t declared_m = 0;
  std::vector<Constraint> constraints;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    auto tokens = tokenize(line);
    if (tokens.empty() || tokens[0] == "c") continue;

    const auto where = "line " + std::to_string(line_no) + ": ";
    if (tokens[0] == "p") {
      if (have_header) throw Error(ErrorCode::syntax, where + "second header line");
      if (tokens.size() != 4 || tokens[1] != "btw") {
        throw Error(ErrorCode::syntax, where + "expected 'p btw <n> <m>'");
      }
      n = parse_count(tokens[2], line_no);
      declared_m = parse_count(tokens[3], line_no);
      if (n > std::numeric_limits<std::uint32_t>::max()) {
        throw Error(ErrorCode::range, where + "variable count too large");
      }
      have_header = true;
    } else if (tokens[0] == "b") {
      if (!have_header) throw Error(ErrorCode::syntax, where + "constraint before header");
      if (tokens.size() != 4) {
        throw Error(ErrorCode::syntax, where + "expected 'b <middle> <outer> <outer>'");
      }
      std::array<std::uint64_t, 3> ids{};
      for (int k = 0; k < 3; ++k) {
        ids[k] = parse_count(tokens[k + 1], line_no);
        if (ids[k] < 1 || ids[k] > n) {
          throw Error(ErrorCode::range, where + "variable " + std::to_string(ids[k]) +
                                            " outside [1, " + std::to_string(n) + "]");
        }
      }
      try {
        constraints.push_back(normalize_constraint(static_cast<VarId>(ids[0]),
                                                   static_cast<VarId>(ids[1]),
                                                   static_cast<VarId>(ids[2])));
      } catch (const Error& e) {
        throw Error(e.code(), where + e.what());
      }
    } else {
      throw Error(ErrorCode::syntax, where + "unknown line type '" + std::string(tokens[0]) + "'");
    }
  }

  if (!have_header) throw Error(ErrorCode::syntax, "missing 'p btw <n> <m>' header");
  if (constraints.size() != declared_m) {
    throw Error(ErrorCode::count_mismatch, "header declares " + std::to_string(declared_m) +
                                               " constraints, read " +
                                               std::to_string(constraints.size()));
  }
  return Instance::create(static_cast<std::uint32_t>(n), std::move(constraints), dedupe);
}

std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  out << "p btw " << inst.num_vars() << ' ' << inst.num_constraints() << '\n';
  for (const auto& c : inst.constraints()) {
    out << "b " << c.middle << ' ' << c.outer_lo << ' ' << c.outer_hi << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

namespace {

std::uint64_t choose3(std::uint64_t n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }
std::uint64_t choose2(std::uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

// Largest x in [lo, hi] with f(x) <= target, f nondecreasing and f(lo) <= target.
template <typename F>
std::uint64_t largest_at_most(std::uint64_t lo, std::uint64_t hi, std::uint64_t target, F f) {
  while (lo < hi) {
    std::uint64_t mid = lo + (hi - lo + 1) / 2;
    if (f(mid) <= target) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

// Colex unranking of 3-subsets of {1..n}.
std::array<VarId, 3> unrank_triple(std::uint64_t rank, std::uint32_t n) {
  std::uint64_t c = largest_at_most(2, n - 1, rank, choose3);
  rank -= choose3(c);
  std::uint64_t b = largest_at_most(1, c - 1, rank, choose2);
  rank -= choose2(b);
  std::uint64_t a = rank;
  return {static_cast<VarId>(a + 1), static_cast<VarId>(b + 1), static_cast<VarId>(c + 1)};
}

Constraint unrank_constraint(std::uint64_t rank, std::uint32_t n) {
  auto t = unrank_triple(rank / 3, n);
  switch (rank % 3) {
    case 0: return Constraint{t[0], t[1], t[2]};
    case 1: return Constraint{t[1], t[0], t[2]};
    default: return Constraint{t[2], t[0], t[1]};
  }
}

}  // namespace

std::uint64_t distinct_constraint_count(std::uint32_t n) { return 3 * choose3(n); }

Instance gen_complete(std::uint32_t n) {
  if (n < 3) throw Error(ErrorCode::too_small, "complete instances need n >= 3");
  std::vector<Constraint> constraints;
  constraints.reserve(distinct_constraint_count(n));
  for (VarId a = 1; a <= n; ++a) {
    for (VarId b = a + 1; b <= n; ++b) {
      for (VarId c = b + 1; c <= n; ++c) {
        constraints.push_back({a, b, c});
        constraints.push_back({b, a, c});
        constraints.push_back({c, a, b});
      }
    }
  }
  return Instance::create(n, std::move(constraints));
}

Instance gen_random(std::uint32_t n, std::size_t m, std::uint64_t seed) {
  const std::uint64_t total = distinct_constraint_count(n);
  if (m > total) {
    throw Error(ErrorCode::too_many, std::to_string(m) + " constraints requested but only " +
                                         std::to_string(total) + " distinct ones exist");
  }
  // Floyd's sampling of m distinct ranks out of total.
  detail::Rng rng(seed);
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(m * 2);
  for (std::uint64_t j = total - m; j < total; ++j) {
    std::uint64_t t = rng.below(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::uint64_t> ranks(chosen.begin(), chosen.end());
  std::sort(ranks.begin(), ranks.end());
  std::vector<Constraint> constraints;
  constraints.reserve(m);
  for (auto r : ranks) constraints.push_back(unrank_constraint(r, n));
  return Instance::create(n, std::move(constraints));
}

PlantedInstance gen_planted(std::uint32_t n, std::size_t m, const Rational& noise,
                            std::uint64_t seed) {
  if (noise < 0 || noise > 1) {
    throw Error(ErrorCode::invalid_argument, "noise must lie in [0, 1]");
  }
  const BigInt noise_num = boost::multiprecision::numerator(noise);
  const BigInt noise_den = boost::multiprecision::denominator(noise);
  if (noise_den > BigInt(std::numeric_limits<std::uint64_t>::max())) {
    throw Error(ErrorCode::invalid_argument, "noise denominator exceeds 64 bits");
  }
  const std::uint64_t total = distinct_constraint_count(n);
  if (m > total) {
    throw Error(ErrorCode::too_many, std::to_string(m) + " constraints requested but only " +
                                         std::to_string(total) + " distinct ones exist");
  }
  // A fixed arrangement satisfies at most one constraint per 3-set.
  if (noise == 0 && m > choose3(n)) {
    throw Error(ErrorCode::too_many, "noise 0 admits at most C(n,3) = " +
                                         std::to_string(choose3(n)) + " planted constraints");
  }

  detail::Rng rng(seed);
  std::vector<VarId> order(n);
  std::iota(order.begin(), order.end(), 1u);
  rng.shuffle(std::span<VarId>(order));
  Arrangement hidden = Arrangement::from_order(order);

  const auto num = static_cast<std::uint64_t>(noise_num);
  const auto den = static_cast<std::uint64_t>(noise_den);
  std::set<Constraint> chosen;
  while (chosen.size() < m) {
    Constraint c;
    if (rng.below(den) < num) {
      c = unrank_constraint(rng.below(total), n);
    } else {
      auto t = unrank_triple(rng.below(choose3(n)), n);
      std::sort(t.begin(), t.end(), [&](VarId x, VarId y) {
        return hidden.position(x) < hidden.position(y);
      });
      c = normalize_constraint(t[1], t[0], t[2]);
    }
    chosen.insert(c);
  }
  return {Instance::create(n, {chosen.begin(), chosen.end()}), std::move(hidden)};
}

}  // namespace batlb
