// Copyright 2026 The TCN Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// SPDX-License-Identifier: Apache-2.0

#ifndef TCN_TCN_C_H_
#define TCN_TCN_C_H_

/* C interface to the temporal convolutional network library.
 *
 * Every fallible function returns a tcn_status; on failure a one-line
 * description is available from tcn_last_error() on the same thread until
 * the next failing call. Handles are opaque and owned by the caller, who
 * releases them with the matching *_free function (NULL is accepted).
 * Strings returned through char** are released with tcn_string_free.
 * Distinct handles may be used concurrently from different threads. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TCN_API __declspec(dllexport)
#else
#define TCN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tcn_status {
  TCN_OK = 0,
  TCN_ERR_CONFIG = 1,           /* invalid spec, hyperparameter or shape */
  TCN_ERR_DATA = 2,             /* inconsistent or out-of-range data */
  TCN_ERR_PARSE = 3,            /* malformed file; message has a location */
  TCN_ERR_IO = 4,               /* file system failure */
  TCN_ERR_INVALID_ARGUMENT = 5, /* NULL or otherwise unusable argument */
  TCN_ERR_INTERNAL = 6
} tcn_status;

typedef struct tcn_config tcn_config;
typedef struct tcn_dataset tcn_dataset;
typedef struct tcn_model tcn_model;
typedef struct tcn_report tcn_report;

TCN_API const char* tcn_version(void);
TCN_API const char* tcn_status_name(tcn_status status);
/* Message of the last failure on this thread ("" if none). */
TCN_API const char* tcn_last_error(void);
TCN_API void tcn_string_free(char* s);

/* ---- receptive fields ------------------------------------------------- */

/* d * (2^L - 1) + 1 */
TCN_API tcn_status tcn_receptive_field_ed(int d, int L, int64_t* out);
/* B * 2^L */
TCN_API tcn_status tcn_receptive_field_dilated(int B, int L, int64_t* out);

/* ---- synthetic data --------------------------------------------------- */

typedef struct tcn_synth_options {
  int num_train;       /* default 50 */
  int num_test;        /* default 10 */
  int seq_len;         /* default 150 */
  int shift;           /* feature delay in frames; 0 = composition data */
  uint64_t seed;       /* default 0 */
  int binary_features; /* nonzero: .tcnf feature files, else CSV */
} tcn_synth_options;

TCN_API void tcn_synth_options_default(tcn_synth_options* options);
/* Writes a dataset directory (manifest.txt, train/, test/) and
 * transitions.txt with the Markov table used. */
TCN_API tcn_status tcn_synth_write(const tcn_synth_options* options,
                                   const char* out_dir);

/* ---- run configuration ------------------------------------------------ */

/* Empty configuration with every default; "model" and the shape keys must
 * be set before it validates. */
TCN_API tcn_status tcn_config_create(tcn_config** out);
TCN_API tcn_status tcn_config_read(const char* path, tcn_config** out);
TCN_API tcn_status tcn_config_clone(const tcn_config* config,
                                    tcn_config** out);
TCN_API tcn_status tcn_config_set(tcn_config* config, const char* key,
                                  const char* value);
TCN_API tcn_status tcn_config_validate(const tcn_config* config);
/* Every key as key=value lines. */
TCN_API tcn_status tcn_config_format(const tcn_config* config, char** text);
/* IoU thresholds as fractions; *count receives the number written or, when
 * taus is NULL, the number available. */
TCN_API tcn_status tcn_config_taus(const tcn_config* config, double* taus,
                                   size_t* count);
/* -1 when no background class is configured. */
TCN_API tcn_status tcn_config_background_id(const tcn_config* config,
                                            int* out);
TCN_API void tcn_config_free(tcn_config* config);

/* ---- datasets --------------------------------------------------------- */

/* Loads every sequence of `split` ("train", "val", "test"; NULL or "" for
 * all) from a dataset directory. */
TCN_API tcn_status tcn_dataset_open(const char* dir, const char* split,
                                    tcn_dataset** out);
TCN_API size_t tcn_dataset_size(const tcn_dataset* dataset);
TCN_API int tcn_dataset_feature_dim(const tcn_dataset* dataset);
TCN_API int tcn_dataset_num_classes(const tcn_dataset* dataset);
/* NULL when index is out of range. Owned by the dataset. */
TCN_API const char* tcn_dataset_sequence_name(const tcn_dataset* dataset,
                                              size_t index);
TCN_API void tcn_dataset_free(tcn_dataset* dataset);

/* ---- models ----------------------------------------------------------- */

typedef void (*tcn_epoch_callback)(int epoch, double loss, void* user);

/* Builds the model described by `config` for the dataset's dimensions and
 * trains it. `on_epoch` may be NULL. */
TCN_API tcn_status tcn_train(const tcn_config* config,
                             const tcn_dataset* train_set,
                             tcn_epoch_callback on_epoch, void* user,
                             tcn_model** out);
TCN_API tcn_status tcn_model_save(const tcn_model* model, const char* path);
TCN_API tcn_status tcn_model_load(const char* path, tcn_model** out);
/* Per-epoch mean training loss; the pointer is owned by the model. */
TCN_API tcn_status tcn_model_loss_curve(const tcn_model* model,
                                        const double** values, size_t* count);
/* Architecture and shape as key=value lines. */
TCN_API tcn_status tcn_model_describe(const tcn_model* model, char** text);
TCN_API tcn_status tcn_model_receptive_field(const tcn_model* model,
                                             int64_t* out);
TCN_API int tcn_model_num_classes(const tcn_model* model);
TCN_API int tcn_model_input_dim(const tcn_model* model);
TCN_API void tcn_model_free(tcn_model* model);

/* Inference on one sequence. `features` holds frames x dim floats,
 * frame-major. Writes `frames` labels and, when probs is not NULL,
 * frames x num_classes probabilities, frame-major. */
TCN_API tcn_status tcn_predict(const tcn_model* model, const float* features,
                               size_t frames, size_t dim, int* labels,
                               float* probs);
/* Predicts every sequence of the dataset and writes a prediction directory
 * (predictions.txt, <name>.labels, <name>.probs.tcnf). */
TCN_API tcn_status tcn_predict_dataset(const tcn_model* model,
                                       const tcn_dataset* dataset,
                                       const char* out_dir);

/* ---- evaluation ------------------------------------------------------- */

typedef struct tcn_eval_options {
  const double* taus; /* fractions in (0, 1]; NULL selects 0.10,0.25,0.50 */
  size_t num_taus;
  int background_id; /* class left out of F1 and edit; -1 for none */
} tcn_eval_options;

TCN_API void tcn_eval_options_default(tcn_eval_options* options);
/* Scores a prediction directory against a dataset directory; predictions
 * are matched to ground truth by sequence name. */
TCN_API tcn_status tcn_eval_dirs(const char* pred_dir, const char* truth_dir,
                                 const tcn_eval_options* options,
                                 tcn_report** out);
/* Runs `model` on `dataset` and scores it, without touching the disk. */
TCN_API tcn_status tcn_eval_model(const tcn_model* model,
                                  const tcn_dataset* dataset,
                                  const tcn_eval_options* options,
                                  tcn_report** out);
/* One sequence of labels; no detection scores. */
TCN_API tcn_status tcn_eval_labels(const int* pred, const int* truth,
                                   size_t frames,
                                   const tcn_eval_options* options,
                                   tcn_report** out);
TCN_API tcn_status tcn_report_text(const tcn_report* report, char** text);
TCN_API tcn_status tcn_report_json(const tcn_report* report, char** text);
/* Looks up a flat key such as "accuracy", "F1@25" or "mAP@mid[max]";
 * TCN_ERR_INVALID_ARGUMENT when the key is absent. */
TCN_API tcn_status tcn_report_get(const tcn_report* report, const char* key,
                                  double* value);
TCN_API void tcn_report_free(tcn_report* report);

/* ---- timelines -------------------------------------------------------- */

/* Renders ground truth plus each prediction label file as stacked rows.
 * The format follows out_path: ".svg" for SVG, anything else text. */
TCN_API tcn_status tcn_timeline_render(const char* truth_path,
                                       const char* const* pred_paths,
                                       size_t num_preds, const char* out_path);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* TCN_TCN_C_H_ */
