#ifndef TILTBENCH_H
#define TILTBENCH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TbStatus {
  TB_STATUS_OK = 0,
  TB_STATUS_NULL_ARGUMENT = 1,
  TB_STATUS_INVALID_UTF8 = 2,
  TB_STATUS_VALIDATION = 3,
  TB_STATUS_CAP_EXCEEDED = 4,
  TB_STATUS_UNSUPPORTED = 5,
  TB_STATUS_INVALID_ARGUMENT = 6,
  TB_STATUS_IO = 7,
  TB_STATUS_BUFFER_TOO_SMALL = 8,
  TB_STATUS_INTERNAL = 9,
} TbStatus;

/**
 * A loaded algebra.
 */
typedef struct TbAlgebra TbAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Loads a builtin dataset: `ex1`, `ex2`, `a4` or `kx2`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TbStatus tb_algebra_load_builtin(const char *name, struct TbAlgebra **out);

/**
 * Loads a format A or format B input file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TbStatus tb_algebra_load_file(const char *path, struct TbAlgebra **out);

/**
 * Parses input text held in memory.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TbStatus tb_algebra_load_text(const char *text, struct TbAlgebra **out);

/**
 * # Safety
 * `alg` must come from a load function and not be used afterwards.
 */
void tb_algebra_free(struct TbAlgebra *alg);

/**
 * # Safety
 * `alg` must be a live handle and `out` a valid pointer.
 */
enum TbStatus tb_algebra_dim(const struct TbAlgebra *alg, size_t *out);

/**
 * # Safety
 * `alg` must be a live handle and `out` a valid pointer.
 */
enum TbStatus tb_algebra_num_simples(const struct TbAlgebra *alg, size_t *out);

/**
 * Writes the Cartan matrix row-major into `buf` of length `len`. The
 * required length (`n * n`) is stored in `needed` in every case;
 * `BufferTooSmall` is returned when `len` is smaller.
 *
 * # Safety
 * `buf` must hold `len` elements (may be null when `len` is 0) and `needed`
 * must be a valid pointer.
 */
enum TbStatus tb_algebra_cartan(const struct TbAlgebra *alg,
                                size_t *buf,
                                size_t len,
                                size_t *needed);

/**
 * Runs the full analysis and returns the JSON report in `*out`.
 * `take` is a comma-separated list of simple labels, `target` a label.
 * `cap` of 0 selects the default dimension cap.
 *
 * # Safety
 * String arguments must be NUL-terminated, `alg` a live handle and `out` a
 * valid pointer. The returned string must be freed with `tb_string_free`.
 */
enum TbStatus tb_analyze_json(const struct TbAlgebra *alg,
                              const char *take,
                              const char *target,
                              size_t steps,
                              size_t tilt_t,
                              size_t cap,
                              char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void tb_string_free(char *s);

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next call into the library on this thread.
 */
const char *tb_last_error(void);

/**
 * Library version, static storage.
 */
const char *tb_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TILTBENCH_H */
