#ifndef LOOPFORGE_H
#define LOOPFORGE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LfStatus {
  LF_STATUS_OK = 0,
  LF_STATUS_NULL_POINTER = 1,
  LF_STATUS_INVALID_UTF8 = 2,
  LF_STATUS_PARSE = 3,
  LF_STATUS_PRECONDITION = 4,
  LF_STATUS_BUDGET_EXHAUSTED = 5,
  LF_STATUS_INTERNAL = 6,
} LfStatus;

/**
 * Opaque word handle.
 */
typedef struct LfWord LfWord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code. Never free the result.
 */
const char *lf_status_message(enum LfStatus status);

/**
 * Parse a word such as `"v 2 1 0 2 v"` over `n` punctures.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum LfStatus lf_word_parse(const char *text, uint16_t n, struct LfWord **out);

/**
 * # Safety
 * `word` must come from this library and not be freed twice.
 */
void lf_word_free(struct LfWord *word);

/**
 * Number of inner letters.
 *
 * # Safety
 * `word` must be a live handle.
 */
size_t lf_word_len(const struct LfWord *word);

/**
 * Text form of a word; release with `lf_string_free`.
 *
 * # Safety
 * `word` must be a live handle and `out` a valid pointer.
 */
enum LfStatus lf_word_to_string(const struct LfWord *word, char **out);

/**
 * Reduced form of `word` as a new handle, plus the parity of the stripped
 * prefix (always 0 for x-words).
 *
 * # Safety
 * `word` must be a live handle; `out` and `parity` valid pointers.
 */
enum LfStatus lf_word_reduce(const struct LfWord *word, struct LfWord **out, uint8_t *parity);

/**
 * Minimal self-intersection number. On budget exhaustion `value` holds the
 * best upper bound found, `exact` is false and the status says so.
 *
 * # Safety
 * `word` must be a live handle; `value` and `exact` valid pointers.
 */
enum LfStatus lf_self_intersection(const struct LfWord *word,
                                   uint64_t budget,
                                   uint32_t *value,
                                   bool *exact);

/**
 * Number of expansion vectors of length `l` whose winding bound is below
 * `k`, as a decimal string; release with `lf_string_free`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum LfStatus lf_count_expansions(uint64_t l, uint64_t k, char **out);

/**
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void lf_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LOOPFORGE_H */
