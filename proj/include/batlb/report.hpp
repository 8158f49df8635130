#pragma once

#include <cstdint>

#include "json.hpp"

#include "batlb/kernelizer.hpp"
#include "batlb/sabem.hpp"
#include "batlb/solvers.hpp"
#include "batlb/verify.hpp"

// JSON renderings of the library's results. Rationals are always "p/q"
// strings and unbounded integers are decimal strings.
namespace batlb {

nlohmann::ordered_json to_json(const KernelDecision& decision);
nlohmann::ordered_json to_json(const SolveResult& result, const Instance& inst);
nlohmann::ordered_json to_json(const DecideResult& result, const Instance& inst);
nlohmann::ordered_json to_json(const CaseWeightReport& report);
nlohmann::ordered_json to_json(const VerificationReport& report);
nlohmann::ordered_json to_json(const ProfileCounts& counts);

/// Profile counts, both second-moment routes, the direct enumeration when
/// n <= 8, and Monte Carlo moments.
nlohmann::ordered_json stats_report(const Instance& inst, std::uint64_t samples, std::uint64_t seed);

}  // namespace batlb
