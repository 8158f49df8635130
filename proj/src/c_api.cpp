// extern "C" wrappers over the C++ core. Exceptions never cross this boundary.

#include "batlb/batlb.h"

#include <cstring>
#include <new>
#include <string>

#include "batlb/error.hpp"
#include "batlb/instance.hpp"
#include "batlb/kernelizer.hpp"
#include "batlb/report.hpp"
#include "batlb/sabem.hpp"
#include "batlb/solvers.hpp"
#include "batlb/verify.hpp"

struct batlb_instance {
  batlb::Instance value;
};

namespace {

thread_local std::string last_error;

batlb_status to_status(batlb::ErrorCode code) {
  using batlb::ErrorCode;
  switch (code) {
    case ErrorCode::duplicate_variable: return BATLB_ERR_DUPLICATE_VARIABLE;
    case ErrorCode::syntax: return BATLB_ERR_SYNTAX;
    case ErrorCode::range: return BATLB_ERR_RANGE;
    case ErrorCode::duplicate_constraint: return BATLB_ERR_DUPLICATE_CONSTRAINT;
    case ErrorCode::count_mismatch: return BATLB_ERR_COUNT_MISMATCH;
    case ErrorCode::too_small: return BATLB_ERR_TOO_SMALL;
    case ErrorCode::too_many: return BATLB_ERR_TOO_MANY;
    case ErrorCode::negative_parameter: return BATLB_ERR_NEGATIVE_PARAMETER;
    case ErrorCode::too_large: return BATLB_ERR_TOO_LARGE;
    case ErrorCode::not_irreducible: return BATLB_ERR_NOT_IRREDUCIBLE;
    case ErrorCode::mismatch: return BATLB_ERR_MISMATCH;
    case ErrorCode::invalid_argument: return BATLB_ERR_INVALID_ARGUMENT;
  }
  return BATLB_ERR_INTERNAL;
}

template <typename F>
batlb_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return BATLB_OK;
  } catch (const batlb::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return BATLB_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return BATLB_ERR_INTERNAL;
  }
}

void require(bool condition, const char* message) {
  if (!condition) throw batlb::Error(batlb::ErrorCode::invalid_argument, message);
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

batlb_instance* wrap(batlb::Instance inst) { return new batlb_instance{std::move(inst)}; }

batlb::KernelMode to_mode(batlb_mode mode) {
  require(mode == BATLB_MODE_BOUND || mode == BATLB_MODE_SHARP, "unknown mode");
  return mode == BATLB_MODE_SHARP ? batlb::KernelMode::sharp : batlb::KernelMode::bound;
}

batlb_solve_options resolve(const batlb_solve_options* options) {
  batlb_solve_options resolved;
  batlb_solve_options_init(&resolved);
  if (options != nullptr) resolved = *options;
  require(resolved.trials >= 1, "trials must be at least 1");
  return resolved;
}

}  // namespace

extern "C" {

BATLB_API void batlb_solve_options_init(batlb_solve_options* options) {
  if (options == nullptr) return;
  options->dp_max = batlb::kDefaultDpMaxVars;
  options->trials = 64;
  options->rounds = 50;
  options->seed = 0;
  options->allow_fallback = 1;
}

BATLB_API const char* batlb_last_error(void) { return last_error.c_str(); }

BATLB_API const char* batlb_status_name(batlb_status status) {
  switch (status) {
    case BATLB_OK: return "OK";
    case BATLB_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case BATLB_ERR_DUPLICATE_VARIABLE: return "DuplicateVariable";
    case BATLB_ERR_SYNTAX: return "SyntaxError";
    case BATLB_ERR_RANGE: return "RangeError";
    case BATLB_ERR_DUPLICATE_CONSTRAINT: return "DuplicateConstraint";
    case BATLB_ERR_COUNT_MISMATCH: return "CountMismatch";
    case BATLB_ERR_TOO_SMALL: return "TooSmall";
    case BATLB_ERR_TOO_MANY: return "TooMany";
    case BATLB_ERR_NEGATIVE_PARAMETER: return "NegativeParameter";
    case BATLB_ERR_TOO_LARGE: return "TooLarge";
    case BATLB_ERR_NOT_IRREDUCIBLE: return "NotIrreducible";
    case BATLB_ERR_MISMATCH: return "MismatchError";
    case BATLB_ERR_INTERNAL: return "InternalError";
  }
  return "Unknown";
}

BATLB_API void batlb_string_free(char* str) { delete[] str; }

BATLB_API batlb_status batlb_instance_parse(const char* text, size_t length, int dedupe,
                                            batlb_instance** out) {
  return guarded([&] {
    require(out != nullptr && (text != nullptr || length == 0), "null argument");
    *out = wrap(batlb::parse_instance(std::string_view(text ? text : "", length), dedupe != 0));
  });
}

BATLB_API batlb_status batlb_instance_gen_complete(uint32_t n, batlb_instance** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = wrap(batlb::gen_complete(n));
  });
}

BATLB_API batlb_status batlb_instance_gen_random(uint32_t n, uint64_t m, uint64_t seed,
                                                 batlb_instance** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = wrap(batlb::gen_random(n, m, seed));
  });
}

BATLB_API batlb_status batlb_instance_gen_planted(uint32_t n, uint64_t m, uint64_t noise_num,
                                                  uint64_t noise_den, uint64_t seed,
                                                  batlb_instance** out,
                                                  uint32_t* hidden_positions) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    require(noise_den != 0, "noise denominator must be positive");
    auto planted = batlb::gen_planted(
        n, m, batlb::Rational(batlb::BigInt(noise_num), batlb::BigInt(noise_den)), seed);
    if (hidden_positions != nullptr) {
      auto pos = planted.hidden.positions();
      std::copy(pos.begin(), pos.end(), hidden_positions);
    }
    *out = wrap(std::move(planted.instance));
  });
}

BATLB_API void batlb_instance_free(batlb_instance* inst) { delete inst; }

BATLB_API uint32_t batlb_instance_num_vars(const batlb_instance* inst) {
  return inst ? inst->value.num_vars() : 0;
}

BATLB_API uint64_t batlb_instance_num_constraints(const batlb_instance* inst) {
  return inst ? inst->value.num_constraints() : 0;
}

BATLB_API batlb_status batlb_instance_serialize(const batlb_instance* inst, char** out) {
  return guarded([&] {
    require(inst != nullptr && out != nullptr, "null argument");
    *out = copy_string(batlb::serialize_instance(inst->value));
  });
}

BATLB_API batlb_status batlb_instance_is_irreducible(const batlb_instance* inst, int* out) {
  return guarded([&] {
    require(inst != nullptr && out != nullptr, "null argument");
    *out = batlb::is_irreducible(inst->value) ? 1 : 0;
  });
}

BATLB_API batlb_status batlb_satisfied_count(const batlb_instance* inst,
                                             const uint32_t* positions, size_t length,
                                             uint64_t* out) {
  return guarded([&] {
    require(inst != nullptr && out != nullptr && (positions != nullptr || length == 0),
            "null argument");
    auto arr = batlb::Arrangement::from_positions(
        std::vector<std::uint32_t>(positions, positions + length));
    *out = batlb::satisfied_count(inst->value, arr);
  });
}

BATLB_API batlb_status batlb_yes_threshold(int64_t kappa, char** decimal) {
  return guarded([&] {
    require(decimal != nullptr, "null argument");
    *decimal = copy_string(batlb::yes_threshold(kappa).str());
  });
}

BATLB_API batlb_status batlb_kernelize(const batlb_instance* inst, int64_t kappa,
                                       batlb_mode mode, batlb_verdict* verdict,
                                       char** report_json, batlb_instance** kernel) {
  return guarded([&] {
    require(inst != nullptr, "null argument");
    auto decision = batlb::kernelize(inst->value, kappa, to_mode(mode));
    std::string report = batlb::to_json(decision).dump();
    if (verdict != nullptr) {
      *verdict = decision.verdict == batlb::KernelVerdict::yes ? BATLB_VERDICT_YES
                                                               : BATLB_VERDICT_KERNEL;
    }
    if (report_json != nullptr) *report_json = copy_string(report);
    if (kernel != nullptr) *kernel = decision.kernel ? wrap(std::move(*decision.kernel)) : nullptr;
  });
}

BATLB_API batlb_status batlb_solve(const batlb_instance* inst,
                                   const batlb_solve_options* options, char** report_json) {
  return guarded([&] {
    require(inst != nullptr && report_json != nullptr, "null argument");
    const auto opts = resolve(options);
    const auto& value = inst->value;
    batlb::SolveResult result;
    if (value.num_vars() <= opts.dp_max) {
      result = batlb::solve_exact_dp(value, opts.dp_max);
    } else if (opts.allow_fallback) {
      auto rounded = batlb::randomized_round(value, opts.trials, opts.trials, opts.seed);
      result = batlb::local_search(value, rounded.arrangement, opts.rounds);
    } else {
      throw batlb::Error(batlb::ErrorCode::too_large,
                         "n = " + std::to_string(value.num_vars()) + " exceeds dp_max = " +
                             std::to_string(opts.dp_max));
    }
    *report_json = copy_string(batlb::to_json(result, value).dump());
  });
}

BATLB_API batlb_status batlb_decide(const batlb_instance* inst, int64_t kappa,
                                    batlb_mode mode, const batlb_solve_options* options,
                                    batlb_verdict* verdict, char** report_json,
                                    batlb_instance** kernel) {
  return guarded([&] {
    require(inst != nullptr, "null argument");
    const auto opts = resolve(options);
    batlb::DecideBudget budget;
    budget.dp_max_vars = opts.dp_max;
    budget.phi_trials = opts.trials;
    budget.arr_trials = opts.trials;
    budget.local_search_rounds = opts.rounds;
    budget.seed = opts.seed;
    budget.mode = to_mode(mode);
    auto result = batlb::decide_batlb(inst->value, kappa, budget);
    std::string report = batlb::to_json(result, inst->value).dump();
    if (verdict != nullptr) {
      switch (result.verdict) {
        case batlb::Verdict::yes: *verdict = BATLB_VERDICT_YES; break;
        case batlb::Verdict::no: *verdict = BATLB_VERDICT_NO; break;
        case batlb::Verdict::undecided: *verdict = BATLB_VERDICT_UNDECIDED; break;
      }
    }
    if (report_json != nullptr) *report_json = copy_string(report);
    if (kernel != nullptr) {
      auto& k = result.kernel_decision.kernel;
      *kernel = k ? wrap(std::move(*k)) : nullptr;
    }
  });
}

BATLB_API batlb_status batlb_verify(const batlb_instance* inst, int* all_passed,
                                    char** report_json) {
  return guarded([&] {
    auto report = batlb::run_verification(inst ? &inst->value : nullptr);
    if (all_passed != nullptr) *all_passed = report.all_passed() ? 1 : 0;
    if (report_json != nullptr) *report_json = copy_string(batlb::to_json(report).dump());
  });
}

BATLB_API batlb_status batlb_stats(const batlb_instance* inst, uint64_t samples,
                                   uint64_t seed, char** report_json) {
  return guarded([&] {
    require(inst != nullptr && report_json != nullptr, "null argument");
    *report_json = copy_string(batlb::stats_report(inst->value, samples, seed).dump());
  });
}

}  // extern "C"
