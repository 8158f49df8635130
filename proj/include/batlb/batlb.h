/* C interface to the betweenness kernelization library.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every call returns a batlb_status; on failure
 * batlb_last_error() describes the problem for the calling thread. Strings
 * returned through char** out-parameters are NUL-terminated and must be
 * released with batlb_string_free. */
#ifndef BATLB_H
#define BATLB_H

#include <stddef.h>
#include <stdint.h>

#if defined(BATLB_BUILDING_LIBRARY)
#define BATLB_API __attribute__((visibility("default")))
#else
#define BATLB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum batlb_status {
  BATLB_OK = 0,
  BATLB_ERR_INVALID_ARGUMENT = 1,
  BATLB_ERR_DUPLICATE_VARIABLE = 2,
  BATLB_ERR_SYNTAX = 3,
  BATLB_ERR_RANGE = 4,
  BATLB_ERR_DUPLICATE_CONSTRAINT = 5,
  BATLB_ERR_COUNT_MISMATCH = 6,
  BATLB_ERR_TOO_SMALL = 7,
  BATLB_ERR_TOO_MANY = 8,
  BATLB_ERR_NEGATIVE_PARAMETER = 9,
  BATLB_ERR_TOO_LARGE = 10,
  BATLB_ERR_NOT_IRREDUCIBLE = 11,
  BATLB_ERR_MISMATCH = 12,
  BATLB_ERR_INTERNAL = 13
} batlb_status;

typedef enum batlb_mode { BATLB_MODE_BOUND = 0, BATLB_MODE_SHARP = 1 } batlb_mode;

typedef enum batlb_verdict {
  BATLB_VERDICT_YES = 0,
  BATLB_VERDICT_NO = 1,
  BATLB_VERDICT_UNDECIDED = 2,
  BATLB_VERDICT_KERNEL = 3
} batlb_verdict;

typedef struct batlb_instance batlb_instance;

typedef struct batlb_solve_options {
  uint32_t dp_max;         /* largest n handed to the exact DP */
  uint32_t trials;         /* phi and arrangement samples for the heuristic */
  uint32_t rounds;         /* local search rounds */
  uint64_t seed;
  int allow_fallback;      /* solve: heuristic instead of TOO_LARGE when n > dp_max */
} batlb_solve_options;

BATLB_API void batlb_solve_options_init(batlb_solve_options* options);

BATLB_API const char* batlb_last_error(void);
BATLB_API const char* batlb_status_name(batlb_status status);
BATLB_API void batlb_string_free(char* str);

/* Instances */
BATLB_API batlb_status batlb_instance_parse(const char* text, size_t length, int dedupe,
                                            batlb_instance** out);
BATLB_API batlb_status batlb_instance_gen_complete(uint32_t n, batlb_instance** out);
BATLB_API batlb_status batlb_instance_gen_random(uint32_t n, uint64_t m, uint64_t seed,
                                                 batlb_instance** out);
/* noise = noise_num / noise_den. hidden_positions may be NULL; otherwise it
 * receives n entries, the position of variable v at index v - 1. */
BATLB_API batlb_status batlb_instance_gen_planted(uint32_t n, uint64_t m, uint64_t noise_num,
                                                  uint64_t noise_den, uint64_t seed,
                                                  batlb_instance** out,
                                                  uint32_t* hidden_positions);
BATLB_API void batlb_instance_free(batlb_instance* inst);
BATLB_API uint32_t batlb_instance_num_vars(const batlb_instance* inst);
BATLB_API uint64_t batlb_instance_num_constraints(const batlb_instance* inst);
BATLB_API batlb_status batlb_instance_serialize(const batlb_instance* inst, char** out);
BATLB_API batlb_status batlb_instance_is_irreducible(const batlb_instance* inst, int* out);

/* positions has length batlb_instance_num_vars(inst). */
BATLB_API batlb_status batlb_satisfied_count(const batlb_instance* inst,
                                             const uint32_t* positions, size_t length,
                                             uint64_t* out);

/* Kernelization. *kernel (optional) receives the reduced instance on a
 * KERNEL verdict and NULL on YES. */
BATLB_API batlb_status batlb_yes_threshold(int64_t kappa, char** decimal);
BATLB_API batlb_status batlb_kernelize(const batlb_instance* inst, int64_t kappa,
                                       batlb_mode mode, batlb_verdict* verdict,
                                       char** report_json, batlb_instance** kernel);

/* Solving and deciding. */
BATLB_API batlb_status batlb_solve(const batlb_instance* inst,
                                   const batlb_solve_options* options, char** report_json);
BATLB_API batlb_status batlb_decide(const batlb_instance* inst, int64_t kappa,
                                    batlb_mode mode, const batlb_solve_options* options,
                                    batlb_verdict* verdict, char** report_json,
                                    batlb_instance** kernel);

/* Moment calculus. inst may be NULL for batlb_verify. */
BATLB_API batlb_status batlb_verify(const batlb_instance* inst, int* all_passed,
                                    char** report_json);
BATLB_API batlb_status batlb_stats(const batlb_instance* inst, uint64_t samples,
                                   uint64_t seed, char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* BATLB_H */
