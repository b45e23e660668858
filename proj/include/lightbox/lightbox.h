/*
 * Copyright (c) 2026, The Lightbox Authors.
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
#ifndef LIGHTBOX_H
#define LIGHTBOX_H

/*
 * C interface to the lightbox daylight/view surrogate toolkit.
 *
 * Every function returning lbx_status reports failure through the status
 * and a thread-local message readable with lbx_last_error(). Handles are
 * opaque; each *_free accepts NULL. Handles are immutable after creation
 * and may be shared between threads for read-only calls.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LIGHTBOX_BUILDING)
#    define LBX_API __declspec(dllexport)
#  else
#    define LBX_API __declspec(dllimport)
#  endif
#else
#  define LBX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define LBX_METRIC_COUNT 8
#define LBX_FEATURE_COUNT 11
#define LBX_DIGEST_SIZE 65 /* 64 hex chars + NUL */

typedef enum lbx_status {
  LBX_OK = 0,
  LBX_ERR_INVALID_ARGUMENT = 1,
  LBX_ERR_VALIDATION = 2,
  LBX_ERR_IO = 3,
  LBX_ERR_OUT_OF_RANGE = 4,
  LBX_ERR_INTERNAL = 5
} lbx_status;

typedef enum lbx_orientation { LBX_NORTH = 0, LBX_EAST = 1, LBX_SOUTH = 2, LBX_WEST = 3 } lbx_orientation;
typedef enum lbx_shading { LBX_SHADING_NONE = 0, LBX_SHADING_LOUVRE = 1 } lbx_shading;
typedef enum lbx_divisions { LBX_DIVISIONS_ONE = 0, LBX_DIVISIONS_THREE = 1 } lbx_divisions;
typedef enum lbx_oracle { LBX_ORACLE_PROXY = 0, LBX_ORACLE_INGEST = 1 } lbx_oracle;
typedef enum lbx_optimizer { LBX_OPT_SGD_MOMENTUM = 0, LBX_OPT_ADAM = 1 } lbx_optimizer;

/* Metric slots, in file/report order. */
enum {
  LBX_METRIC_UDI = 0,
  LBX_METRIC_MDA = 1,
  LBX_METRIC_SDA = 2,
  LBX_METRIC_ASE = 3,
  LBX_METRIC_SVD = 4,
  LBX_METRIC_VIEW_RANGE = 5,
  LBX_METRIC_VIEW_DEPTH = 6,
  LBX_METRIC_VIEW_FACTOR = 7
};

typedef struct lbx_room_config {
  double width;  /* m, along the glazed wall */
  double depth;  /* m */
  double height; /* m */
  int orientation; /* lbx_orientation */
  double reflectance;
  int shading;   /* lbx_shading */
  double sill_height;
  double window_height;
  int divisions; /* lbx_divisions */
  double glazing_transmittance;
} lbx_room_config;

typedef struct lbx_grid_params {
  double spacing;
  double workplane;
  double wall_offset;
} lbx_grid_params;

typedef struct lbx_range {
  double lo;
  double hi;
} lbx_range;

typedef struct lbx_bounds {
  lbx_range width;
  lbx_range depth;
  lbx_range reflectance;
  lbx_range sill_height;
  lbx_range window_height;
} lbx_bounds;

typedef struct lbx_view_result {
  double view_factor;
  double view_depth;
  double view_range;
  int quality_views_pass;
  size_t points;
} lbx_view_result;

typedef struct lbx_label_options {
  int oracle; /* lbx_oracle */
  uint64_t seed;
  lbx_grid_params grid;
  const char* labels_path; /* required for LBX_ORACLE_INGEST */
  unsigned threads;        /* 0: hardware concurrency */
} lbx_label_options;

typedef struct lbx_train_config {
  size_t epochs;
  size_t batch_size;
  size_t hidden;
  double learning_rate;
  double momentum;
  int optimizer; /* lbx_optimizer */
  uint64_t seed;
  double train_fraction;
} lbx_train_config;

typedef struct lbx_eval_summary {
  size_t n;
  double mae[LBX_METRIC_COUNT];
  double mse[LBX_METRIC_COUNT];
  double max_abs_residual[LBX_METRIC_COUNT];
  double mean_mae;
} lbx_eval_summary;

typedef struct lbx_model_info {
  size_t inputs;
  size_t hidden;
  size_t outputs;
  lbx_train_config train;
  lbx_grid_params grid;
  lbx_bounds bounds;
  size_t epochs_recorded;
} lbx_model_info;

typedef struct lbx_space lbx_space;
typedef struct lbx_dataset lbx_dataset;
typedef struct lbx_model lbx_model;
typedef struct lbx_eval lbx_eval;
typedef struct lbx_shap lbx_shap;

/* --- general --------------------------------------------------------------- */

LBX_API const char* lbx_version(void);
/* Message for the last failing call on this thread ("" if none). */
LBX_API const char* lbx_last_error(void);
LBX_API const char* lbx_metric_name(size_t metric);
LBX_API lbx_status lbx_file_digest(const char* path, char out[LBX_DIGEST_SIZE]);

LBX_API void lbx_grid_defaults(lbx_grid_params* out);
LBX_API void lbx_train_defaults(lbx_train_config* out);
LBX_API void lbx_label_defaults(lbx_label_options* out);
/* Mid-range room: 6 x 7 m, south, single full-width window. */
LBX_API void lbx_room_defaults(lbx_room_config* out);
LBX_API lbx_status lbx_room_validate(const lbx_room_config* room);

/* --- design spaces --------------------------------------------------------- */

/* "table1" or "table4". */
LBX_API lbx_status lbx_space_preset(const char* name, lbx_space** out);
LBX_API lbx_status lbx_space_load(const char* path, lbx_space** out);
LBX_API lbx_status lbx_space_parse(const char* text, lbx_space** out);
LBX_API size_t lbx_space_size(const lbx_space* space);
LBX_API lbx_status lbx_space_bounds(const lbx_space* space, lbx_bounds* out);
/* Configuration at enumeration position index. */
LBX_API lbx_status lbx_space_config(const lbx_space* space, size_t index, lbx_room_config* out);
LBX_API void lbx_space_free(lbx_space* space);

/* --- geometry -------------------------------------------------------------- */

LBX_API lbx_status lbx_view_metrics(const lbx_room_config* room, const lbx_grid_params* grid, lbx_view_result* out);
/* Per-point CSV: x,y,solid_angle,rating,factor_compliant,depth_compliant,range_compliant */
LBX_API lbx_status lbx_view_export(const lbx_room_config* room, const lbx_grid_params* grid, const char* path);

/* --- datasets -------------------------------------------------------------- */

/* Unlabeled dataset holding every configuration of space. */
LBX_API lbx_status lbx_dataset_from_space(const lbx_space* space, const char* source, lbx_dataset** out);
LBX_API lbx_status lbx_dataset_load(const char* path, lbx_dataset** out);
LBX_API lbx_status lbx_dataset_save(const lbx_dataset* dataset, const char* path);
LBX_API lbx_status lbx_dataset_label(const lbx_dataset* configs, const lbx_label_options* options, lbx_dataset** out);
LBX_API size_t lbx_dataset_size(const lbx_dataset* dataset);
LBX_API int lbx_dataset_is_labeled(const lbx_dataset* dataset);
/* metrics may be NULL; for unlabeled datasets it is zero-filled. */
LBX_API lbx_status lbx_dataset_row(const lbx_dataset* dataset, size_t position, size_t* id, lbx_room_config* room,
                                   double metrics[LBX_METRIC_COUNT]);
/* Seeded sample of n rows without replacement (all rows if n >= size). */
LBX_API lbx_status lbx_dataset_sample(const lbx_dataset* dataset, size_t n, uint64_t seed, lbx_dataset** out);
/* The split a training run with this seed/fraction uses; either output may be NULL. */
LBX_API lbx_status lbx_dataset_split(const lbx_dataset* dataset, double fraction, uint64_t seed, lbx_dataset** train,
                                     lbx_dataset** test);
LBX_API void lbx_dataset_free(lbx_dataset* dataset);

/* --- models ---------------------------------------------------------------- */

/* Splits by config->train_fraction, trains, and (if holdout != NULL)
   evaluates the held-out part. */
LBX_API lbx_status lbx_model_train(const lbx_dataset* labeled, const lbx_train_config* config, lbx_model** out,
                                   lbx_eval** holdout);
LBX_API lbx_status lbx_model_load(const char* path, lbx_model** out);
LBX_API lbx_status lbx_model_save(const lbx_model* model, const char* path);
LBX_API lbx_status lbx_model_digest(const lbx_model* model, char out[LBX_DIGEST_SIZE]);
LBX_API lbx_status lbx_model_info_get(const lbx_model* model, lbx_model_info* out);
LBX_API lbx_status lbx_model_loss_history(const lbx_model* model, double* out, size_t capacity, size_t* count);
/* clamped (nullable) is set when an input lay outside the training bounds. */
LBX_API lbx_status lbx_model_predict(const lbx_model* model, const lbx_room_config* room,
                                     double out[LBX_METRIC_COUNT], int* clamped);
LBX_API lbx_status lbx_model_validate(const lbx_model* model, const lbx_dataset* labeled, lbx_eval** out);
LBX_API void lbx_model_free(lbx_model* model);

LBX_API lbx_status lbx_eval_summary_get(const lbx_eval* eval, lbx_eval_summary* out);
LBX_API lbx_status lbx_eval_residual(const lbx_eval* eval, size_t sample, size_t metric, double* out);
/* Eight-row MAE/MSE table with reference columns. */
LBX_API lbx_status lbx_eval_write(const lbx_eval* eval, const char* path);
/* Text block: quantiles and histogram of |residual| for one metric. Returns
   the needed length (excluding NUL); writes at most capacity bytes. */
LBX_API size_t lbx_eval_residual_text(const lbx_eval* eval, size_t metric, char* out, size_t capacity);
LBX_API void lbx_eval_free(lbx_eval* eval);

/* --- explanations ---------------------------------------------------------- */

/* Exact grouped Shapley values for every row of samples against the rows of
   background (labels ignored). per_feature != 0 uses one group per input. */
LBX_API lbx_status lbx_explain(const lbx_model* model, const lbx_dataset* samples, const lbx_dataset* background,
                               int per_feature, lbx_shap** out);
LBX_API lbx_status lbx_explain_room(const lbx_model* model, const lbx_room_config* room,
                                    const lbx_dataset* background, lbx_shap** out);
LBX_API size_t lbx_shap_groups(const lbx_shap* shap);
LBX_API size_t lbx_shap_samples(const lbx_shap* shap);
LBX_API const char* lbx_shap_group_name(const lbx_shap* shap, size_t group);
LBX_API double lbx_shap_base(const lbx_shap* shap, size_t sample, size_t metric);
LBX_API double lbx_shap_value(const lbx_shap* shap, size_t sample, size_t group, size_t metric);
LBX_API double lbx_shap_prediction(const lbx_shap* shap, size_t sample, size_t metric);
LBX_API double lbx_shap_mean_abs(const lbx_shap* shap, size_t group, size_t metric);
/* Group index at rank (0 = most influential) for metric; metric ==
   LBX_METRIC_COUNT ranks by the average over all metrics. */
LBX_API size_t lbx_shap_rank(const lbx_shap* shap, size_t metric, size_t rank);
LBX_API lbx_status lbx_shap_write_summary(const lbx_shap* shap, const char* path);
LBX_API lbx_status lbx_shap_write_scatter(const lbx_shap* shap, const char* path);
LBX_API void lbx_shap_free(lbx_shap* shap);

#ifdef __cplusplus
}
#endif

#endif /* LIGHTBOX_H */
