#ifndef COMPAT_COMPAT_H
#define COMPAT_COMPAT_H

/* C interface to the compatible-ordering library. All documents cross the
 * boundary as UTF-8 JSON text. Every call returns a compat_status; on
 * COMPAT_INPUT_ERROR and COMPAT_INTERNAL_ERROR the message is available from
 * compat_last_error() on the same thread until the next call. */

#include <stddef.h>

#if defined(COMPAT_BUILDING_LIBRARY)
#define COMPAT_API __attribute__((visibility("default")))
#else
#define COMPAT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum compat_status {
  COMPAT_YES = 0,           /* yes, valid, done */
  COMPAT_NO = 1,            /* no, invalid, unreachable */
  COMPAT_INPUT_ERROR = 2,   /* malformed request or document */
  COMPAT_UNKNOWN = 3,       /* search stopped at a resource limit */
  COMPAT_INTERNAL_ERROR = 4 /* a result failed its own certificate check */
} compat_status;

typedef struct compat_instance compat_instance;
typedef struct compat_result compat_result;

COMPAT_API const char* compat_version(void);
/* {"version": ..., "schemas": {format: version, ...}} */
COMPAT_API const char* compat_schema_versions(void);
COMPAT_API const char* compat_last_error(void);

COMPAT_API compat_status compat_instance_parse(const char* json, compat_instance** out);
COMPAT_API void compat_instance_free(compat_instance* inst);
COMPAT_API size_t compat_instance_vertex_count(const compat_instance* inst);
COMPAT_API int compat_instance_k(const compat_instance* inst);

/* method: "auto", "brute", "k1", "trivial" or "treewidth" (heuristic
 * decomposition). Modular solving needs a decomposition; use compat_call.
 * max_nodes = 0 means unlimited. */
COMPAT_API compat_status compat_solve(const compat_instance* inst, const char* method, int threads,
                                      unsigned long long max_nodes, compat_result** out);
COMPAT_API compat_status compat_verify(const compat_instance* inst, const char* ordering_json, int partial,
                                       compat_result** out);

/* Generic entry point: op is one of co.solve, co.verify, co.reduce,
 * arr.solve, arr.verify, ramp.reduce, ramp.solve, ramp.verify, ramp.render,
 * gen.random, version. The request is a JSON object. */
COMPAT_API compat_status compat_call(const char* op, const char* request_json, compat_result** out);

/* The result document, valid until compat_result_free. */
COMPAT_API const char* compat_result_json(const compat_result* result);
COMPAT_API void compat_result_free(compat_result* result);

#ifdef __cplusplus
}
#endif

#endif
