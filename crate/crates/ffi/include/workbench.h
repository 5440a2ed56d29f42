/* C interface to the workbench.
 *
 * Categories and simplicial sets are opaque handles; everything else crosses
 * as NUL-terminated UTF-8 JSON. Every call returns a wb_status. After a
 * failure, wb_last_error() describes it. Strings returned by the library are
 * released with wb_string_free, handles with their own _free function.
 */
#ifndef WORKBENCH_H
#define WORKBENCH_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wb_status {
    WB_OK = 0,
    WB_NULL_ARGUMENT = 1,
    WB_INVALID_UTF8 = 2,
    WB_MALFORMED = 3,
    WB_SIZE_LIMIT = 4,
    WB_INVALID = 5,
    WB_UNKNOWN_SUITE = 6,
    WB_PANIC = 7
} wb_status;

typedef struct WbCategory WbCategory;
typedef struct WbSSet WbSSet;

/* Message of the last failed call on this thread, empty after a success.
 * Valid until the next call on the same thread. */
const char *wb_last_error(void);

/* Library version; static storage. */
const char *wb_version(void);

/* Releases a string returned by the library. NULL is ignored. */
void wb_string_free(char *s);

wb_status wb_category_from_json(const char *json, WbCategory **out);
void wb_category_free(WbCategory *c);
wb_status wb_category_counts(const WbCategory *c, size_t *objects, size_t *morphisms);
wb_status wb_category_classify(const WbCategory *c, bool *is_poset, bool *is_acyclic);
wb_status wb_category_to_json(const WbCategory *c, char **out);

/* The nerve, truncated at dimension trunc. */
wb_status wb_nerve(const WbCategory *c, size_t trunc, WbSSet **out);

/* Whether the functor i : A -> B is a Dwyer map; a, b, i are JSON. */
wb_status wb_dwyer_check(const char *a, const char *b, const char *i, bool *is_dwyer);

wb_status wb_sset_from_json(const char *json, WbSSet **out);
void wb_sset_free(WbSSet *x);
wb_status wb_sset_to_json(const WbSSet *x, char **out);
wb_status wb_sset_subdivide(const WbSSet *x, WbSSet **out);
wb_status wb_sset_categorify(const WbSSet *x, WbCategory **out);

/* Betti numbers in degrees 0 .. len - 1, written to betti[0 .. len). */
wb_status wb_sset_betti(const WbSSet *x, size_t *betti, size_t len);

/* Runs a verification suite; bound 0 selects its default. */
wb_status wb_verify(const char *suite, uint64_t seed, size_t bound, bool *passed, char **report);

#ifdef __cplusplus
}
#endif

#endif
