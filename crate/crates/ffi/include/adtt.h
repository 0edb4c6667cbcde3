#ifndef ADTT_H
#define ADTT_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum AdttStatus {
  ADTT_STATUS_OK = 0,
  ADTT_STATUS_NULL_POINTER = 1,
  ADTT_STATUS_INVALID_ARGUMENT = 2,
  ADTT_STATUS_DIMENSION_MISMATCH = 3,
  ADTT_STATUS_IO = 4,
  ADTT_STATUS_FORMAT = 5,
  ADTT_STATUS_DOMAIN = 6,
  ADTT_STATUS_BUFFER_TOO_SMALL = 7,
  ADTT_STATUS_INTERNAL = 8,
} AdttStatus;

/**
 * Values accepted by the `kernel` argument of [`adtt_compress`].
 */
typedef enum AdttKernel {
  ADTT_KERNEL_EXACT_DTT = 0,
  ADTT_KERNEL_PROPOSED = 1,
} AdttKernel;

/**
 * Values accepted by the `metric` argument of [`adtt_quality`].
 */
typedef enum AdttMetric {
  ADTT_METRIC_SSIM = 0,
  ADTT_METRIC_SR_SIM = 1,
} AdttMetric;

/**
 * Opaque 8-bit grayscale image.
 */
typedef struct AdttImage AdttImage;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of the calling thread into `buf` as a
 * NUL-terminated string, truncating to `len` bytes. Returns the length the
 * full message needs including the terminator, or 0 if there is none.
 *
 * # Safety
 * `buf` must be null or point to `len` writable bytes.
 */
size_t adtt_last_error_message(char *buf, size_t len);

/**
 * Creates an image from `width * height` row-major samples.
 *
 * # Safety
 * `data` must point to `len` readable bytes; `out` must be writable.
 */
enum AdttStatus adtt_image_from_raw(size_t width,
                                    size_t height,
                                    const uint8_t *data,
                                    size_t len,
                                    struct AdttImage **out);

/**
 * Reads a binary (P5) PGM file.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be writable.
 */
enum AdttStatus adtt_image_load_pgm(const char *path, struct AdttImage **out);

/**
 * Writes an image as binary PGM.
 *
 * # Safety
 * `img` must be a live handle; `path` a NUL-terminated string.
 */
enum AdttStatus adtt_image_save_pgm(const struct AdttImage *img, const char *path);

/**
 * Releases an image. Null is ignored.
 *
 * # Safety
 * `img` must be null or a handle not yet freed.
 */
void adtt_image_free(struct AdttImage *img);

/**
 * Width in pixels, 0 for a null handle.
 *
 * # Safety
 * `img` must be null or a live handle.
 */
size_t adtt_image_width(const struct AdttImage *img);

/**
 * Height in pixels, 0 for a null handle.
 *
 * # Safety
 * `img` must be null or a live handle.
 */
size_t adtt_image_height(const struct AdttImage *img);

/**
 * Row-major samples, valid until the handle is freed. Null for a null handle.
 *
 * # Safety
 * `img` must be null or a live handle.
 */
const uint8_t *adtt_image_data(const struct AdttImage *img);

/**
 * Multiplier-free forward transform of 8 samples.
 *
 * # Safety
 * `input` and `output` must each point to 8 `int32_t`; they may alias.
 */
enum AdttStatus adtt_forward_fast(const int32_t *input, int32_t *output);

/**
 * Multiplier-free integer inverse of 8 coefficients, before the diagonal
 * inverse scale is applied.
 *
 * # Safety
 * `input` and `output` must each point to 8 `int32_t`; they may alias.
 */
enum AdttStatus adtt_inverse_fast(const int32_t *input, int32_t *output);

/**
 * Writes the `n x n` exact orthonormal DTT matrix row-major into `out`.
 *
 * # Safety
 * `out` must point to `len` writable doubles.
 */
enum AdttStatus adtt_dtt_matrix(size_t n, double *out, size_t len);

/**
 * Compresses `img` blockwise keeping the first `r` zigzag coefficients
 * (1..=64) and stores the reconstruction in a new handle.
 *
 * # Safety
 * `img` must be a live handle; `out` must be writable.
 */
enum AdttStatus adtt_compress(const struct AdttImage *img,
                              uint32_t kernel,
                              uint32_t r,
                              struct AdttImage **out);

/**
 * Full-reference quality score of `test` against `reference`.
 *
 * # Safety
 * Both handles must be live; `score` must be writable.
 */
enum AdttStatus adtt_quality(uint32_t metric,
                             const struct AdttImage *reference,
                             const struct AdttImage *test,
                             double *score);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ADTT_H */
