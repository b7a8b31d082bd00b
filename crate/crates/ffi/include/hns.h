#ifndef HNS_H
#define HNS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HnsStatus {
  HNS_STATUS_OK = 0,
  HNS_STATUS_NULL_ARGUMENT = 1,
  HNS_STATUS_INVALID_UTF8 = 2,
  HNS_STATUS_PARSE_ERROR = 3,
  HNS_STATUS_VERIFY_MISMATCH = 4,
  HNS_STATUS_MISSING_FC = 5,
  HNS_STATUS_TRUNCATED_FC = 6,
  HNS_STATUS_CONFIG_ERROR = 7,
  HNS_STATUS_SIM_ERROR = 8,
  HNS_STATUS_UNKNOWN_CODE = 9,
  HNS_STATUS_PANIC = 10,
} HnsStatus;

typedef enum HnsEncoding {
  HNS_ENCODING_HEX = 0,
  HNS_ENCODING_BASE64 = 1,
} HnsEncoding;

/**
 * Opaque parsed name.
 */
typedef struct HnsName HnsName;

/**
 * Opaque application category registry.
 */
typedef struct HnsRegistry HnsRegistry;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer is
 * valid until the next `hns_*` call on the same thread.
 */
const char *hns_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void hns_string_free(char *s);

/**
 * Parses canonical name text. `lenient` accepts truncated hex digests.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum HnsStatus hns_name_parse(const char *text, bool lenient, struct HnsName **out);

/**
 * # Safety
 * `name` must be NULL or a handle from this library, not yet freed.
 */
void hns_name_free(struct HnsName *name);

/**
 * Canonical text of `name`.
 *
 * # Safety
 * `name` must be a live handle; `out` must be writable.
 */
enum HnsStatus hns_name_serialize(const struct HnsName *name, char **out);

/**
 * Structured JSON dump of `name`.
 *
 * # Safety
 * `name` must be a live handle; `out` must be writable.
 */
enum HnsStatus hns_name_to_json(const struct HnsName *name, char **out);

/**
 * New handle: `name` with a freshly computed flat component.
 *
 * # Safety
 * `name` must be a live handle; `out` must be writable.
 */
enum HnsStatus hns_name_with_fc(const struct HnsName *name,
                                enum HnsEncoding encoding,
                                struct HnsName **out);

/**
 * `HNS_STATUS_OK` when every stored digest matches the recomputed one.
 * With `lenient`, truncated digests pass on a hex-prefix match.
 *
 * # Safety
 * `name` must be a live handle.
 */
enum HnsStatus hns_name_verify(const struct HnsName *name, bool lenient);

/**
 * The built-in registry.
 */
struct HnsRegistry *hns_registry_default(void);

/**
 * Registry from `CODE<TAB>Title<TAB>Description` lines.
 *
 * # Safety
 * `tsv` must be a NUL-terminated string; `out` must be writable.
 */
enum HnsStatus hns_registry_from_tsv(const char *tsv, struct HnsRegistry **out);

/**
 * # Safety
 * `registry` must be NULL or a handle from this library, not yet freed.
 */
void hns_registry_free(struct HnsRegistry *registry);

/**
 * Number of categories; 0 for NULL.
 *
 * # Safety
 * `registry` must be NULL or a live handle.
 */
size_t hns_registry_len(const struct HnsRegistry *registry);

/**
 * Title of the category registered under `code`.
 *
 * # Safety
 * `registry` must be a live handle, `code` a NUL-terminated string and
 * `title_out` writable.
 */
enum HnsStatus hns_registry_lookup(const struct HnsRegistry *registry,
                                   const char *code,
                                   char **title_out);

/**
 * Runs a scenario document. `seed` overrides the scenario seed unless NULL.
 * `metrics_out` receives the JSON metrics report; `trace_out`, if not NULL,
 * receives the effect trace.
 *
 * # Safety
 * `scenario_json` must be a NUL-terminated string; `seed` NULL or readable;
 * `metrics_out` writable; `trace_out` NULL or writable.
 */
enum HnsStatus hns_sim_run_json(const char *scenario_json,
                                const uint64_t *seed,
                                char **metrics_out,
                                char **trace_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HNS_H */
