#ifndef BELIEFREV_H
#define BELIEFREV_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BrStatus {
  BR_STATUS_OK = 0,
  BR_STATUS_NULL_POINTER = 1,
  BR_STATUS_INVALID_UTF8 = 2,
  /*
   Sentence, atom or scenario text did not parse.
   */
  BR_STATUS_PARSE = 3,
  /*
   A sentence mentions an atom outside the space.
   */
  BR_STATUS_MALFORMED_SENTENCE = 4,
  BR_STATUS_SPACE_TOO_LARGE = 5,
  BR_STATUS_INVALID_ARGUMENT = 6,
  /*
   Conditioning on something with zero probability.
   */
  BR_STATUS_ZERO_PROBABILITY = 7,
  BR_STATUS_RULE_INAPPLICABLE = 8,
  /*
   The scenario ran but stopped on an error; the trace is still returned.
   */
  BR_STATUS_SCENARIO_HALTED = 9,
  BR_STATUS_BUFFER_TOO_SMALL = 10,
  BR_STATUS_PANIC = 99,
} BrStatus;

/*
 A prior plus the evidence conditioned on so far.
 */
typedef struct BrBelief BrBelief;

/*
 A probability distribution over the worlds of a space.
 */
typedef struct BrDistribution BrDistribution;

/*
 A parsed scenario.
 */
typedef struct BrScenario BrScenario;

/*
 A frequency/confidence pair.
 */
typedef struct BrTruth {
  double frequency;
  double confidence;
} BrTruth;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread, or null after a success.
 Valid until the next library call on the same thread.
 */
const char *br_last_error(void);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void br_string_free(char *s);

/*
 Builds a distribution over `n_atoms` atoms from `2^n_atoms` raw weights in
 canonical world order (binary counting, first atom most significant, world
 0 all false). Weights are normalized.

 # Safety
 `atoms` must point to `n_atoms` NUL-terminated strings and `weights` to
 `n_weights` doubles.
 */
enum BrStatus br_distribution_new(const char *const *atoms,
                                  uintptr_t n_atoms,
                                  const double *weights,
                                  uintptr_t n_weights,
                                  struct BrDistribution **out);

/*
 # Safety
 `d` must come from this library and not have been freed. Null is ignored.
 */
void br_distribution_free(struct BrDistribution *d);

/*
 Number of worlds, i.e. the length [`br_distribution_weights`] needs.

 # Safety
 `d` must be a live handle.
 */
enum BrStatus br_distribution_world_count(const struct BrDistribution *d, uintptr_t *out);

/*
 Copies the normalized weights into `out[0..len]`.

 # Safety
 `d` must be a live handle and `out` must have room for `len` doubles.
 */
enum BrStatus br_distribution_weights(const struct BrDistribution *d, double *out, uintptr_t len);

/*
 # Safety
 `d` must be a live handle; `s` a NUL-terminated sentence.
 */
enum BrStatus br_distribution_prob(const struct BrDistribution *d, const char *s, double *out);

/*
 P(x | y). Leaves the distribution unchanged.

 # Safety
 `d` must be a live handle; `x` and `y` NUL-terminated sentences.
 */
enum BrStatus br_distribution_conditional(const struct BrDistribution *d,
                                          const char *x,
                                          const char *y,
                                          double *out);

/*
 New distribution with P(a) = m and conditionals given a and ¬a kept.

 # Safety
 `d` must be a live handle; `a` a NUL-terminated sentence.
 */
enum BrStatus br_jeffrey_update(const struct BrDistribution *d,
                                const char *a,
                                double m,
                                struct BrDistribution **out);

/*
 Same result as [`br_jeffrey_update`], computed as a mixture of conditionals.

 # Safety
 As [`br_jeffrey_update`].
 */
enum BrStatus br_virtual_update(const struct BrDistribution *d,
                                const char *a,
                                double m,
                                struct BrDistribution **out);

/*
 A belief state with `prior` and no evidence. The prior is copied.

 # Safety
 `prior` must be a live handle.
 */
enum BrStatus br_belief_new(const struct BrDistribution *prior, struct BrBelief **out);

/*
 # Safety
 `st` must come from this library and not have been freed. Null is ignored.
 */
void br_belief_free(struct BrBelief *st);

/*
 A new state that has also learned `a`. The input state is unchanged.

 # Safety
 `st` must be a live handle; `a` a NUL-terminated sentence.
 */
enum BrStatus br_belief_conditionalize(const struct BrBelief *st,
                                       const char *a,
                                       struct BrBelief **out);

/*
 # Safety
 `st` must be a live handle; `x` a NUL-terminated sentence.
 */
enum BrStatus br_belief_bel(const struct BrBelief *st, const char *x, double *out);

/*
 Number of conditioning steps taken.

 # Safety
 `st` must be a live handle.
 */
enum BrStatus br_belief_time(const struct BrBelief *st, uintptr_t *out);

/*
 # Safety
 `source` must be NUL-terminated scenario text.
 */
enum BrStatus br_scenario_parse(const char *source, struct BrScenario **out);

/*
 # Safety
 `sc` must come from this library and not have been freed. Null is ignored.
 */
void br_scenario_free(struct BrScenario *sc);

/*
 Runs a scenario and returns its trace text through `trace`, to be freed
 with [`br_string_free`]. Returns `ScenarioHalted` (with the partial trace)
 if a directive failed.

 # Safety
 `sc` must be a live handle.
 */
enum BrStatus br_scenario_run(const struct BrScenario *sc,
                              uint32_t k,
                              double tolerance,
                              char **trace);

/*
 f = positive / total, c = total / (total + k).

 # Safety
 `out` must be writable.
 */
enum BrStatus br_truth_from_counts(uint64_t positive,
                                   uint64_t total,
                                   uint32_t k,
                                   struct BrTruth *out);

/*
 Evidence weight c / (1 - c).

 # Safety
 `out` must be writable.
 */
enum BrStatus br_weight(double confidence, double *out);

/*
 Induction from M→P (`m_p`) and M→S (`m_s`) to S→P.

 # Safety
 `out` must be writable.
 */
enum BrStatus br_induction(struct BrTruth m_p, struct BrTruth m_s, uint32_t k, struct BrTruth *out);

/*
 Revision of two judgments on the same statement from distinct sources.

 # Safety
 `out` must be writable.
 */
enum BrStatus br_revise(struct BrTruth a, struct BrTruth b, struct BrTruth *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BELIEFREV_H */
