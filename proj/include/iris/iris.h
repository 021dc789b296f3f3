#ifndef IRIS_IRIS_H
#define IRIS_IRIS_H

#include <stddef.h>
#include <stdint.h>

#if defined(IRIS_BUILDING_LIBRARY)
#define IRIS_API __attribute__((visibility("default")))
#else
#define IRIS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every fallible call returns a status. On failure the calling thread's
   iris_last_error() holds the message until its next failing call. */
typedef enum iris_status {
  IRIS_OK = 0,
  IRIS_E_INVALID_ARGUMENT = 1,
  IRIS_E_VALIDATION = 2,
  IRIS_E_IO = 3,
  IRIS_E_NOT_FOUND = 4,
  IRIS_E_RUNTIME = 5
} iris_status;

typedef enum iris_label { IRIS_PRESENT = 0, IRIS_ABSENT = 1 } iris_label;
typedef enum iris_condition { IRIS_HOT = 0, IRIS_ROOM = 1 } iris_condition;
typedef enum iris_colormap { IRIS_GRAYSCALE = 0, IRIS_MAGMA = 1, IRIS_VIRIDIS = 2 } iris_colormap;
typedef enum iris_strategy { IRIS_SINGLE = 0, IRIS_CENTROID = 1 } iris_strategy;
typedef enum iris_report_format {
  IRIS_REPORT_JSON = 0,
  IRIS_REPORT_TABLE = 1,
  IRIS_REPORT_CONFUSION = 2
} iris_report_format;

IRIS_API const char* iris_last_error(void);
IRIS_API const char* iris_version(void);
IRIS_API const char* iris_status_name(iris_status status);

/* Case-insensitive name lookups; unknown names give IRIS_E_INVALID_ARGUMENT. */
IRIS_API iris_status iris_parse_colormap(const char* name, iris_colormap* out);
IRIS_API iris_status iris_parse_strategy(const char* name, iris_strategy* out);
IRIS_API iris_status iris_parse_report_format(const char* name, iris_report_format* out);
IRIS_API const char* iris_colormap_name(iris_colormap c);
IRIS_API const char* iris_strategy_name(iris_strategy s);
IRIS_API const char* iris_label_name(iris_label l);
IRIS_API const char* iris_condition_name(iris_condition c);

/* Caller-owned strings returned by the library. */
IRIS_API void iris_string_free(char* s);

/* ---- dataset ---- */

typedef struct iris_manifest iris_manifest;

/* root may be NULL (header root_dir, then IRIS_DATA_DIR, then the manifest's
   directory). */
IRIS_API iris_status iris_manifest_load(const char* path, const char* root, iris_manifest** out);
IRIS_API void iris_manifest_free(iris_manifest* m);
IRIS_API size_t iris_manifest_size(const iris_manifest* m);
IRIS_API const char* iris_manifest_root(const iris_manifest* m);
/* Any out pointer may be NULL. Strings live as long as the manifest. */
IRIS_API iris_status iris_manifest_record(const iris_manifest* m, size_t index, const char** sample_id,
                                          const char** image_path, iris_label* label,
                                          iris_condition* condition);
/* counts[label][condition] */
IRIS_API void iris_manifest_counts(const iris_manifest* m, size_t counts[2][2]);

/* ---- synth ---- */

typedef struct iris_synth_options {
  uint32_t width;
  uint32_t height;
  double noise_sigma;
  size_t jobs;
} iris_synth_options;

IRIS_API void iris_synth_options_default(iris_synth_options* opts);
/* Writes images/ and manifest.jsonl under out_dir. out may be NULL. */
IRIS_API iris_status iris_synth_dataset(const char* out_dir, size_t n_per_cell, uint64_t seed,
                                        const iris_synth_options* opts, iris_manifest** out);

/* ---- preprocess ---- */

typedef struct iris_preprocess_config {
  iris_colormap colormap;
  double crop_fraction;
  uint32_t output_size;
  double clip_lo_pct;
  double clip_hi_pct;
} iris_preprocess_config;

typedef struct iris_image iris_image;

IRIS_API void iris_preprocess_config_default(iris_preprocess_config* cfg);
IRIS_API iris_status iris_preprocess_config_validate(const iris_preprocess_config* cfg);
/* Reads a 16-bit PGM or grayscale PNG and runs the full pipeline. */
IRIS_API iris_status iris_preprocess_file(const char* path, const iris_preprocess_config* cfg,
                                          iris_image** out);
IRIS_API iris_status iris_image_from_rgb(uint32_t width, uint32_t height, const uint8_t* rgb,
                                         iris_image** out);
IRIS_API void iris_image_free(iris_image* img);
/* rgb points at width*height*3 interleaved bytes owned by the image. */
IRIS_API void iris_image_info(const iris_image* img, uint32_t* width, uint32_t* height,
                              const uint8_t** rgb);
IRIS_API iris_status iris_image_write_png(const iris_image* img, const char* path);

/* Content keys as 64 lowercase hex digits plus NUL. */
IRIS_API iris_status iris_image_key(const iris_image* img, char hex[65]);
IRIS_API iris_status iris_text_key(const char* utf8, char hex[65]);

typedef struct iris_batch_options {
  size_t jobs;
  int skip_errors;
} iris_batch_options;

IRIS_API void iris_batch_options_default(iris_batch_options* opts);

/* Preprocesses every record into out_dir/<sample_id>.png and writes
   index_path (JSON Lines: sample_id, png, content_key, or error). Returns the
   number of failures through failures (may be NULL); fails on the first bad
   record unless skip_errors. */
IRIS_API iris_status iris_preprocess_manifest(const iris_manifest* m, const iris_preprocess_config* cfg,
                                              const iris_batch_options* opts, const char* out_dir,
                                              const char* index_path, size_t* failures);

/* ---- embedding providers ---- */

typedef struct iris_provider iris_provider;
typedef struct iris_cache iris_cache;

IRIS_API iris_status iris_provider_stub(uint64_t seed, uint32_t dim, iris_provider** out);
IRIS_API iris_status iris_provider_cache_file(const char* cache_path, iris_provider** out);
/* The provider keeps its own copy of the cache contents. */
IRIS_API iris_status iris_provider_from_cache(const iris_cache* cache, iris_provider** out);
/* ONNX image graph [1,3,S,S] and text graph [1,77] (token ids as float),
   both with output [1,D]; merges is the BPE merges file (.txt or .gz). */
IRIS_API iris_status iris_provider_graph(const char* image_graph, const char* text_graph,
                                         const char* merges, uint32_t input_size,
                                         iris_provider** out);
IRIS_API void iris_provider_free(iris_provider* p);
IRIS_API uint32_t iris_provider_dim(const iris_provider* p);
IRIS_API const char* iris_provider_id(const iris_provider* p);
/* Raw (unnormalized) embedding into out[0..dim). cap must be >= dim. */
IRIS_API iris_status iris_embed_image(const iris_provider* p, const iris_image* img, double* out,
                                      size_t cap);
IRIS_API iris_status iris_embed_text(const iris_provider* p, const char* utf8, double* out, size_t cap);

/* ---- prompt banks ---- */

typedef struct iris_bank iris_bank;

IRIS_API iris_status iris_bank_load(const char* path, iris_bank** out);
IRIS_API iris_status iris_bank_load_default(iris_colormap variant, iris_bank** out);
IRIS_API void iris_bank_free(iris_bank* b);
IRIS_API iris_colormap iris_bank_variant(const iris_bank* b);
IRIS_API size_t iris_bank_count(const iris_bank* b, iris_label label);
IRIS_API const char* iris_bank_prompt(const iris_bank* b, iris_label label, size_t index);

/* ---- classification ---- */

typedef struct iris_predictions iris_predictions;

IRIS_API iris_status iris_classify(const iris_manifest* m, const iris_preprocess_config* cfg,
                                   const iris_provider* p, iris_strategy strategy, const iris_bank* bank,
                                   const iris_batch_options* opts, iris_predictions** out);
IRIS_API void iris_predictions_free(iris_predictions* r);
IRIS_API size_t iris_predictions_size(const iris_predictions* r);
IRIS_API iris_status iris_predictions_get(const iris_predictions* r, size_t index, const char** sample_id,
                                          iris_label* label, double* score_present, double* score_absent,
                                          double* margin);
IRIS_API size_t iris_predictions_failure_count(const iris_predictions* r);
IRIS_API iris_status iris_predictions_failure(const iris_predictions* r, size_t index,
                                              const char** sample_id, const char** message);
/* Single strategy only: the chosen prompt per class and its bank index. */
IRIS_API int iris_predictions_has_selection(const iris_predictions* r);
IRIS_API iris_status iris_predictions_selection(const iris_predictions* r, iris_label label,
                                                size_t* index, const char** prompt,
                                                double* mean_similarity);
/* JSON object with chosen prompts and per-prompt mean similarities. */
IRIS_API iris_status iris_predictions_selection_json(const iris_predictions* r, char** out);
IRIS_API iris_status iris_predictions_write(const iris_predictions* r, const char* path);
IRIS_API iris_status iris_predictions_read(const char* path, iris_predictions** out);

/* ---- evaluation ---- */

typedef struct iris_confusion {
  size_t tp, fp, fn, tn;
} iris_confusion;

typedef struct iris_metrics {
  double accuracy, f1, recall, precision; /* percent, unrounded */
  int recall_undefined, precision_undefined, f1_undefined;
} iris_metrics;

IRIS_API iris_status iris_compute_metrics(const iris_confusion* cm, iris_metrics* out);
IRIS_API iris_status iris_score_predictions(const iris_predictions* r, const iris_manifest* m,
                                            iris_confusion* out);
/* Two-decimal display form into buf. */
IRIS_API iris_status iris_format_percent(double v, char* buf, size_t cap);

typedef struct iris_grid_cell {
  iris_colormap colormap;
  iris_strategy strategy;
} iris_grid_cell;

typedef struct iris_report iris_report;

/* cells == NULL evaluates the full 3x2 grid. banks must cover every colormap
   in the grid, one bank per variant. base_cfg's colormap is overridden per
   cell. */
IRIS_API iris_status iris_evaluate(const iris_manifest* m, const iris_grid_cell* cells, size_t n_cells,
                                   const iris_provider* p, const iris_bank* const* banks, size_t n_banks,
                                   const iris_preprocess_config* base_cfg, const iris_batch_options* opts,
                                   iris_report** out);
IRIS_API void iris_report_free(iris_report* r);
IRIS_API size_t iris_report_rows(const iris_report* r);
/* ok is 0 for a cell that failed; see iris_report_row_error. */
IRIS_API iris_status iris_report_row(const iris_report* r, size_t index, iris_colormap* colormap,
                                     iris_strategy* strategy, iris_condition* condition, int* ok,
                                     iris_confusion* cm, iris_metrics* metrics);
IRIS_API const char* iris_report_row_error(const iris_report* r, size_t index);
IRIS_API iris_status iris_report_render(const iris_report* r, iris_report_format format, char** out);
IRIS_API iris_status iris_report_parse_json(const char* text, iris_report** out);

/* ---- embedding cache ---- */

IRIS_API iris_status iris_cache_create(uint32_t dim, const char* provider_id, iris_cache** out);
IRIS_API iris_status iris_cache_read(const char* path, iris_cache** out);
IRIS_API iris_status iris_cache_write(const iris_cache* c, const char* path);
IRIS_API void iris_cache_free(iris_cache* c);
IRIS_API uint32_t iris_cache_dim(const iris_cache* c);
IRIS_API const char* iris_cache_provider_id(const iris_cache* c);
IRIS_API size_t iris_cache_size(const iris_cache* c);
/* Adds every entry of src; dims and provider ids must agree. */
IRIS_API iris_status iris_cache_merge(iris_cache* dst, const iris_cache* src);
IRIS_API iris_status iris_cache_insert(iris_cache* c, const char* hex_key, const float* vec, size_t dim);
/* Embed with p and store under the content key. p's dim must match. */
IRIS_API iris_status iris_cache_add_image(iris_cache* c, const iris_provider* p, const iris_image* img);
IRIS_API iris_status iris_cache_add_text(iris_cache* c, const iris_provider* p, const char* utf8);

#ifdef __cplusplus
}
#endif

#endif
