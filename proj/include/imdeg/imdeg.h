/* Copyright 2026 the imdeg authors. All rights reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* imdeg: taxonomy-annotated image degradation engine.
 *
 * C interface of the shared library.  Conventions:
 *  - every fallible call returns imdeg_status; IMDEG_OK is 0,
 *  - on failure, imdeg_last_error() returns a thread-local message,
 *  - objects are opaque handles created into an out-parameter and released
 *    with their _destroy function; destroy functions accept NULL,
 *  - strings returned as const char* stay owned by the library (valid while
 *    the handle they came from lives); strings returned as char** are owned
 *    by the caller and released with imdeg_string_free().
 */

#ifndef IMDEG_IMDEG_H_
#define IMDEG_IMDEG_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(IMDEG_BUILDING_SHARED) && defined(__GNUC__)
#define IMDEG_API __attribute__((visibility("default")))
#else
#define IMDEG_API
#endif

typedef enum imdeg_status {
  IMDEG_OK = 0,
  IMDEG_ERR_IO = 1,              /* file could not be read or written */
  IMDEG_ERR_FORMAT = 2,          /* file exists but is malformed */
  IMDEG_ERR_ARGUMENT = 3,        /* invalid argument value */
  IMDEG_ERR_NOT_FOUND = 4,       /* unknown backend/term/metric/key */
  IMDEG_ERR_UNAVAILABLE = 5,     /* operator cannot run in this build/env */
  IMDEG_ERR_SHAPE = 6,           /* image dimensions violate a precondition */
  IMDEG_ERR_DEGENERATE_AXIS = 7, /* severity axis unusable for this request */
  IMDEG_ERR_METRIC_MISMATCH = 8, /* document carries a different metric */
  IMDEG_ERR_INTERNAL = 9         /* invariant violation; report as a bug */
} imdeg_status;

/* Library version string, e.g. "1.0.0". */
IMDEG_API const char* imdeg_version(void);

/* Versions of the image codecs linked into the library. */
IMDEG_API const char* imdeg_codec_versions(void);

/* Short identifier of a status value, e.g. "not_found". */
IMDEG_API const char* imdeg_status_name(imdeg_status status);

/* Message of the calling thread's most recent failure ("" if none). */
IMDEG_API const char* imdeg_last_error(void);

/* Releases a string returned through a char** out-parameter. */
IMDEG_API void imdeg_string_free(char* text);

/* ---- Context ----------------------------------------------------------- */

typedef struct imdeg_ctx imdeg_ctx;

/* Creates a context with the built-in taxonomy registry and parameter
 * schedules.  Texture assets are picked up from $IMDEG_ASSETS if set. */
IMDEG_API imdeg_status imdeg_ctx_create(imdeg_ctx** out);

/* Creates a context from explicit data files.  NULL keeps the built-in
 * registry/schedules; assets_dir NULL falls back to $IMDEG_ASSETS. */
IMDEG_API imdeg_status imdeg_ctx_create_custom(const char* registry_csv_path,
                                               const char* schedules_json_path,
                                               const char* assets_dir, imdeg_ctx** out);

IMDEG_API void imdeg_ctx_destroy(imdeg_ctx* ctx);

/* SHA-256 of the schedule data the context runs on. */
IMDEG_API const char* imdeg_ctx_schedule_hash(const imdeg_ctx* ctx);

/* ---- Images ------------------------------------------------------------ */

/* Interleaved RGB, row-major, float samples in [0, 1]. */
typedef struct imdeg_image imdeg_image;

/* Loads a PNG or JPEG file (sniffed by signature).  Grayscale is expanded
 * to RGB; an alpha channel is dropped. */
IMDEG_API imdeg_status imdeg_image_load(const char* path, imdeg_image** out);

/* Creates a black image of the given size. */
IMDEG_API imdeg_status imdeg_image_create(int width, int height, imdeg_image** out);

IMDEG_API void imdeg_image_destroy(imdeg_image* image);

IMDEG_API int imdeg_image_width(const imdeg_image* image);
IMDEG_API int imdeg_image_height(const imdeg_image* image);

/* Pixel buffer of width*height*3 floats; owned by the image. */
IMDEG_API float* imdeg_image_data(imdeg_image* image);

IMDEG_API imdeg_status imdeg_image_save_png(const imdeg_image* image, const char* path);
IMDEG_API imdeg_status imdeg_image_save_jpeg(const imdeg_image* image, const char* path,
                                             int quality);

/* ---- Degradation ------------------------------------------------------- */

/* One chain element: an operator at a native severity (1..5) plus the seed
 * keying its random draws.  Deterministic operators ignore the seed. */
typedef struct imdeg_chain_step {
  const char* backend;
  const char* term;
  int severity;
  uint64_t seed;
} imdeg_chain_step;

/* Applies one degradation.  The output is a new image of the input's shape
 * with samples clamped to [0, 1]. */
IMDEG_API imdeg_status imdeg_apply(imdeg_ctx* ctx, const imdeg_image* input,
                                   const imdeg_chain_step* step, imdeg_image** out);

/* Applies a chain left to right.  Each element draws from a stream keyed by
 * (its seed, its chain position), so repeating an operator in a chain does
 * not replay the same noise. */
IMDEG_API imdeg_status imdeg_apply_chain(imdeg_ctx* ctx, const imdeg_image* input,
                                         const imdeg_chain_step* steps, size_t n_steps,
                                         imdeg_image** out);

/* ---- Metrics ----------------------------------------------------------- */

/* PSNR in dB on unit-range samples (near-identical pairs read exactly 50). */
IMDEG_API imdeg_status imdeg_psnr(const imdeg_image* a, const imdeg_image* b, double* out);

/* Mean SSIM (11x11 Gaussian window, reference parameterization).  Both
 * dimensions must be at least 11. */
IMDEG_API imdeg_status imdeg_ssim(const imdeg_image* a, const imdeg_image* b, double* out);

/* ---- Operator inventory ------------------------------------------------ */

/* Monotonicity designation values in imdeg_operator_info.monotone. */
enum {
  IMDEG_MONOTONE_NONE = 0,
  IMDEG_MONOTONE_NON_STRICT = 1,
  IMDEG_MONOTONE_STRICT = 2
};

typedef struct imdeg_operator_info {
  const char* backend; /* owned by the context */
  const char* term;
  int tier;       /* 1 = core, 2 = extended */
  int stochastic; /* 1 when the operator draws random numbers */
  int monotone;   /* IMDEG_MONOTONE_* */
  int available;  /* 0 when running it would return IMDEG_ERR_UNAVAILABLE */
  const char* availability_note; /* why it is unavailable; "" otherwise */
  /* Taxonomy annotation: */
  const char* group;      /* canonical group id, e.g. "G1" */
  const char* group_name; /* e.g. "Noise" */
  const char* cause;      /* source stage code, e.g. "S" or "S/R" */
  const char* effect;     /* effect code, e.g. "N"; "--" for none */
  const char* tv_subtype; /* temporal subtype key; "" unless annotated */
} imdeg_operator_info;

/* Number of operators of one backend, or of all backends (backend NULL or
 * ""). */
IMDEG_API imdeg_status imdeg_operator_count(const imdeg_ctx* ctx, const char* backend,
                                            size_t* out);

/* Info for the index-th operator of the selection (same order as the
 * count). */
IMDEG_API imdeg_status imdeg_operator_info_at(const imdeg_ctx* ctx, const char* backend,
                                              size_t index, imdeg_operator_info* out);

/* Info for one operator by key (tolerant of case/punctuation variants). */
IMDEG_API imdeg_status imdeg_operator_info_get(const imdeg_ctx* ctx, const char* backend,
                                               const char* term, imdeg_operator_info* out);

/* ---- Severity calibration ---------------------------------------------- */

typedef struct imdeg_calibration imdeg_calibration;

enum {
  IMDEG_STEP_LAST = 0, /* extrapolation step = d5 - d4 */
  IMDEG_STEP_MEAN = 1  /* extrapolation step = (d5 - d1) / 4 */
};

/* Measures the mean strength of (backend, term) on a reference image set at
 * every native severity under `metric` ("psnr", "1-ssim", or
 * "external:<name>"), then derives a canonical axis with m_max extrapolated
 * levels.  External metrics do not run in-process: their per-image scores
 * are read from scores_path (keys "<image_stem>_<backend>_<term>_s<level>");
 * built-in metrics ignore scores_path.  jobs <= 0 uses all hardware
 * threads. */
IMDEG_API imdeg_status imdeg_calibrate(imdeg_ctx* ctx, const char* const* image_paths,
                                       size_t n_images, const char* backend, const char* term,
                                       const char* metric, const char* scores_path,
                                       uint64_t seed, int jobs, int m_max, int step_policy,
                                       imdeg_calibration** out);

IMDEG_API imdeg_status imdeg_calibration_load(const char* path, imdeg_calibration** out);
IMDEG_API imdeg_status imdeg_calibration_save(const imdeg_calibration* calibration,
                                              const char* path);
IMDEG_API void imdeg_calibration_destroy(imdeg_calibration* calibration);

IMDEG_API const char* imdeg_calibration_backend(const imdeg_calibration* calibration);
IMDEG_API const char* imdeg_calibration_term(const imdeg_calibration* calibration);
IMDEG_API const char* imdeg_calibration_metric(const imdeg_calibration* calibration);

/* Total canonical levels (5 native + extrapolated). */
IMDEG_API size_t imdeg_calibration_level_count(const imdeg_calibration* calibration);

/* Canonical level strength L_k, 1-based. */
IMDEG_API imdeg_status imdeg_calibration_level(const imdeg_calibration* calibration,
                                               int canonical_level, double* out);

/* Mean native strength d_l, 1-based native level. */
IMDEG_API imdeg_status imdeg_calibration_native_strength(const imdeg_calibration* calibration,
                                                         int native_level, double* out);

IMDEG_API double imdeg_calibration_step_delta(const imdeg_calibration* calibration);

/* Projects canonical level k onto the native schedule: nearest native
 * strength (ties toward the weaker level).  Levels past the native range
 * map to the strongest native level and set *saturated. */
IMDEG_API imdeg_status imdeg_map_canonical(const imdeg_calibration* calibration,
                                           int canonical_level, int* native_level,
                                           int* saturated);

/* Convenience: map a canonical level and apply the resulting native
 * degradation in one call.  native_level/saturated may be NULL. */
IMDEG_API imdeg_status imdeg_apply_canonical(imdeg_ctx* ctx, const imdeg_image* input,
                                             const imdeg_calibration* calibration,
                                             int canonical_level, uint64_t seed,
                                             imdeg_image** out, int* native_level,
                                             int* saturated);

/* ---- Benchmark generation ---------------------------------------------- */

typedef struct imdeg_generate_options {
  /* "round_robin", "cartesian", "chain_factorial", or "random_chains". */
  const char* protocol;
  const char* input_dir;  /* source images; ids are file stems */
  const char* output_dir; /* receives degraded images + manifest.jsonl */
  /* Operator selection for round_robin/cartesian: a backend name (NULL/"" =
   * all backends) optionally narrowed to a comma-separated term list. */
  const char* backend;
  const char* terms;
  /* chain_factorial: ordered template "backend/term,backend/term,...". */
  const char* chain;
  /* random_chains: number of distinct groups per chain (default 2). */
  int chain_length;
  uint64_t seed;
  int jobs;    /* <= 0: all hardware threads */
  int measure; /* 1: record psnr / 1-ssim strengths in the manifest */
  /* 1: plan gated operators too; their records fail with a note.  Default
   * covers runnable operators only. */
  int include_unavailable;
  const char* format; /* "png" (default) or "jpeg" */
  int jpeg_quality;   /* 1..100; 0 = default 95 */
} imdeg_generate_options;

typedef struct imdeg_generate_summary {
  size_t total;
  size_t ok;
  size_t failed;
  char manifest_path[1024];
} imdeg_generate_summary;

/* Plans and executes a benchmark generation run.  Individual assignment
 * failures become "failed" manifest records; the call itself only fails on
 * configuration or I/O problems. */
IMDEG_API imdeg_status imdeg_generate(imdeg_ctx* ctx, const imdeg_generate_options* options,
                                      imdeg_generate_summary* out);

/* ---- Severity reports --------------------------------------------------- */

typedef struct imdeg_report_options {
  /* Exactly one of the two sources must be set: */
  const char* calibration_dir; /* directory of calibration documents */
  const char* manifest_path;   /* manifest with measured strengths */
  /* Optional externally computed scores (e.g. a learned perceptual
   * distance), merged as an additional metric column.  Keys are output
   * stems or direct "<backend>:<term>:s<level>" cells. */
  const char* scores_path;
  const char* out_csv;  /* optional: write the table as CSV here */
  const char* out_text; /* optional: write the aligned table here */
} imdeg_report_options;

typedef struct imdeg_report_summary {
  size_t rows;
  size_t non_monotone_rows; /* rows whose means move against the metric */
  size_t warnings;
} imdeg_report_summary;

/* Builds the per-operator severity table.  When text_out is non-NULL it
 * receives the rendered table (free with imdeg_string_free). */
IMDEG_API imdeg_status imdeg_report(imdeg_ctx* ctx, const imdeg_report_options* options,
                                    char** text_out, imdeg_report_summary* out);

/* ---- Registry validation ------------------------------------------------ */

/* Checks the taxonomy registry against the shipped operator set: unique
 * rows, total coverage, known groups, and temporal-subtype annotations where
 * required.  violations_out (optional, imdeg_string_free) receives one
 * violation per line; *count receives the number of violations. */
IMDEG_API imdeg_status imdeg_validate(const imdeg_ctx* ctx, char** violations_out,
                                      size_t* count);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* IMDEG_IMDEG_H_ */
