#include "iris/iris.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <json.hpp>
#include <memory>
#include <string>

#include "batch.hpp"
#include "cache.hpp"
#include "eval.hpp"
#include "graph_provider.hpp"
#include "hash.hpp"
#include "imageio.hpp"
#include "synth.hpp"

struct iris_manifest {
  iris::DatasetManifest m;
  std::string root;
};

struct iris_image {
  iris::RgbImage img;
};

struct iris_provider {
  std::shared_ptr<const iris::EmbeddingProvider> p;
  std::string id;
};

struct iris_bank {
  iris::PromptBank bank;
};

struct iris_predictions {
  iris::BatchResult r;
};

struct iris_report {
  iris::EvalReport report;
};

struct iris_cache {
  iris::EmbeddingCache cache;
};

namespace {

thread_local std::string g_last_error;

iris_status status_of(iris::ErrorKind k) {
  switch (k) {
    case iris::ErrorKind::InvalidArgument: return IRIS_E_INVALID_ARGUMENT;
    case iris::ErrorKind::Validation: return IRIS_E_VALIDATION;
    case iris::ErrorKind::Io: return IRIS_E_IO;
    case iris::ErrorKind::NotFound: return IRIS_E_NOT_FOUND;
    case iris::ErrorKind::Runtime: return IRIS_E_RUNTIME;
  }
  return IRIS_E_RUNTIME;
}

iris_status fail(iris_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

template <typename Fn>
iris_status guard(Fn&& fn) {
  try {
    fn();
    return IRIS_OK;
  } catch (const iris::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(IRIS_E_RUNTIME, "out of memory");
  } catch (const std::exception& e) {
    return fail(IRIS_E_RUNTIME, e.what());
  }
}

void need(const void* p, const char* what) {
  if (!p) throw iris::Error(iris::ErrorKind::InvalidArgument, std::string(what) + " is null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void copy_hex(const iris::Digest& d, char hex[65]) {
  const std::string h = iris::to_hex(d);
  std::memcpy(hex, h.c_str(), 65);
}

iris::PreprocessConfig to_core(const iris_preprocess_config* c) {
  iris::PreprocessConfig cfg;
  if (!c) return cfg;
  if (c->colormap < IRIS_GRAYSCALE || c->colormap > IRIS_VIRIDIS) {
    throw iris::Error(iris::ErrorKind::InvalidArgument, "unknown colormap");
  }
  cfg.colormap = static_cast<iris::ColormapMode>(c->colormap);
  cfg.crop_fraction = c->crop_fraction;
  cfg.output_size = c->output_size;
  cfg.clip_lo_pct = c->clip_lo_pct;
  cfg.clip_hi_pct = c->clip_hi_pct;
  return cfg;
}

iris::BatchOptions to_core(const iris_batch_options* o) {
  iris::BatchOptions opts;
  if (o) {
    opts.jobs = o->jobs;
    opts.skip_errors = o->skip_errors != 0;
  }
  return opts;
}

iris_confusion to_c(const iris::ConfusionMatrix& cm) { return {cm.tp, cm.fp, cm.fn, cm.tn}; }

iris_metrics to_c(const iris::MetricSet& m) {
  return {m.accuracy,         m.f1, m.recall, m.precision, m.recall_undefined,
          m.precision_undefined, m.f1_undefined};
}

iris_provider* wrap(std::shared_ptr<const iris::EmbeddingProvider> p) {
  auto* out = new iris_provider;
  out->id = p->provider_id();
  out->p = std::move(p);
  return out;
}

bool label_ok(iris_label l) { return l == IRIS_PRESENT || l == IRIS_ABSENT; }

bool safe_file_stem(const std::string& s) {
  if (s.empty() || s == "." || s == "..") return false;
  for (char c : s) {
    if (c == '/' || c == '\\' || c == '\0') return false;
  }
  return true;
}

iris_status copy_embedding(const iris::Embedding& e, double* out, size_t cap) {
  if (cap < e.dim()) {
    return fail(IRIS_E_INVALID_ARGUMENT,
                "buffer too small: need " + std::to_string(e.dim()) + ", have " + std::to_string(cap));
  }
  std::copy(e.values().begin(), e.values().end(), out);
  return IRIS_OK;
}

}  // namespace

extern "C" {

const char* iris_last_error(void) { return g_last_error.c_str(); }

const char* iris_version(void) { return "1.0.0"; }

const char* iris_status_name(iris_status status) {
  switch (status) {
    case IRIS_OK: return "ok";
    case IRIS_E_INVALID_ARGUMENT: return "invalid_argument";
    case IRIS_E_VALIDATION: return "validation";
    case IRIS_E_IO: return "io";
    case IRIS_E_NOT_FOUND: return "not_found";
    case IRIS_E_RUNTIME: return "runtime";
  }
  return "unknown";
}

iris_status iris_parse_colormap(const char* name, iris_colormap* out) {
  return guard([&] {
    need(name, "name");
    need(out, "out");
    const auto v = iris::parse_colormap(name);
    if (!v) throw iris::Error(iris::ErrorKind::InvalidArgument, std::string("unknown colormap: ") + name);
    *out = static_cast<iris_colormap>(*v);
  });
}

iris_status iris_parse_strategy(const char* name, iris_strategy* out) {
  return guard([&] {
    need(name, "name");
    need(out, "out");
    const auto v = iris::parse_strategy(name);
    if (!v) throw iris::Error(iris::ErrorKind::InvalidArgument, std::string("unknown strategy: ") + name);
    *out = static_cast<iris_strategy>(*v);
  });
}

iris_status iris_parse_report_format(const char* name, iris_report_format* out) {
  return guard([&] {
    need(name, "name");
    need(out, "out");
    *out = static_cast<iris_report_format>(iris::parse_report_format(name));
  });
}

// to_string returns views of string literals, so data() is NUL-terminated.
const char* iris_colormap_name(iris_colormap c) {
  if (c < IRIS_GRAYSCALE || c > IRIS_VIRIDIS) return "unknown";
  return iris::to_string(static_cast<iris::ColormapMode>(c)).data();
}

const char* iris_strategy_name(iris_strategy s) {
  if (s != IRIS_SINGLE && s != IRIS_CENTROID) return "unknown";
  return iris::to_string(static_cast<iris::StrategyKind>(s)).data();
}

const char* iris_label_name(iris_label l) {
  if (!label_ok(l)) return "unknown";
  return iris::to_string(static_cast<iris::ClassLabel>(l)).data();
}

const char* iris_condition_name(iris_condition c) {
  if (c != IRIS_HOT && c != IRIS_ROOM) return "unknown";
  return iris::to_string(static_cast<iris::Condition>(c)).data();
}

void iris_string_free(char* s) { std::free(s); }

// ---- dataset

iris_status iris_manifest_load(const char* path, const char* root, iris_manifest** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    std::optional<std::filesystem::path> override;
    if (root) override = root;
    auto h = std::make_unique<iris_manifest>();
    h->m = iris::load_manifest(path, override);
    h->root = h->m.root_dir.string();
    *out = h.release();
  });
}

void iris_manifest_free(iris_manifest* m) { delete m; }

size_t iris_manifest_size(const iris_manifest* m) { return m ? m->m.records.size() : 0; }

const char* iris_manifest_root(const iris_manifest* m) { return m ? m->root.c_str() : ""; }

iris_status iris_manifest_record(const iris_manifest* m, size_t index, const char** sample_id,
                                 const char** image_path, iris_label* label, iris_condition* condition) {
  return guard([&] {
    need(m, "manifest");
    if (index >= m->m.records.size()) {
      throw iris::Error(iris::ErrorKind::InvalidArgument, "record index out of range");
    }
    const iris::SampleRecord& r = m->m.records[index];
    if (sample_id) *sample_id = r.sample_id.c_str();
    if (image_path) *image_path = r.image_path.c_str();
    if (label) *label = static_cast<iris_label>(r.label);
    if (condition) *condition = static_cast<iris_condition>(r.condition);
  });
}

void iris_manifest_counts(const iris_manifest* m, size_t counts[2][2]) {
  if (!counts) return;
  const iris::ManifestSummary s = m ? iris::summarize(m->m) : iris::ManifestSummary{};
  for (int l = 0; l < 2; ++l) {
    for (int c = 0; c < 2; ++c) counts[l][c] = s.counts[l][c];
  }
}

// ---- synth

void iris_synth_options_default(iris_synth_options* opts) {
  if (!opts) return;
  const iris::SynthOptions d;
  opts->width = static_cast<uint32_t>(d.width);
  opts->height = static_cast<uint32_t>(d.height);
  opts->noise_sigma = d.noise_sigma;
  opts->jobs = d.jobs;
}

iris_status iris_synth_dataset(const char* out_dir, size_t n_per_cell, uint64_t seed,
                               const iris_synth_options* opts, iris_manifest** out) {
  return guard([&] {
    need(out_dir, "out_dir");
    iris::SynthOptions o;
    if (opts) {
      o.width = opts->width;
      o.height = opts->height;
      o.noise_sigma = opts->noise_sigma;
      o.jobs = opts->jobs;
    }
    iris::DatasetManifest m = iris::generate_dataset(out_dir, n_per_cell, seed, o);
    if (out) {
      auto h = std::make_unique<iris_manifest>();
      h->m = std::move(m);
      h->root = h->m.root_dir.string();
      *out = h.release();
    }
  });
}

// ---- preprocess

void iris_preprocess_config_default(iris_preprocess_config* cfg) {
  if (!cfg) return;
  const iris::PreprocessConfig d;
  cfg->colormap = static_cast<iris_colormap>(d.colormap);
  cfg->crop_fraction = d.crop_fraction;
  cfg->output_size = d.output_size;
  cfg->clip_lo_pct = d.clip_lo_pct;
  cfg->clip_hi_pct = d.clip_hi_pct;
}

iris_status iris_preprocess_config_validate(const iris_preprocess_config* cfg) {
  return guard([&] {
    need(cfg, "config");
    to_core(cfg).validate();
  });
}

iris_status iris_preprocess_file(const char* path, const iris_preprocess_config* cfg, iris_image** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    const iris::PreprocessConfig c = to_core(cfg);
    c.validate();
    *out = new iris_image{iris::preprocess_pipeline(iris::read_thermal(path), c)};
  });
}

iris_status iris_image_from_rgb(uint32_t width, uint32_t height, const uint8_t* rgb, iris_image** out) {
  return guard([&] {
    need(rgb, "rgb");
    need(out, "out");
    const std::size_t n = static_cast<std::size_t>(width) * height * 3;
    *out = new iris_image{iris::RgbImage(width, height, std::vector<std::uint8_t>(rgb, rgb + n))};
  });
}

void iris_image_free(iris_image* img) { delete img; }

void iris_image_info(const iris_image* img, uint32_t* width, uint32_t* height, const uint8_t** rgb) {
  if (!img) return;
  if (width) *width = static_cast<uint32_t>(img->img.width());
  if (height) *height = static_cast<uint32_t>(img->img.height());
  if (rgb) *rgb = img->img.bytes().data();
}

iris_status iris_image_write_png(const iris_image* img, const char* path) {
  return guard([&] {
    need(img, "image");
    need(path, "path");
    iris::write_png_rgb(path, img->img);
  });
}

iris_status iris_image_key(const iris_image* img, char hex[65]) {
  return guard([&] {
    need(img, "image");
    need(hex, "hex");
    copy_hex(iris::image_key(img->img), hex);
  });
}

iris_status iris_text_key(const char* utf8, char hex[65]) {
  return guard([&] {
    need(utf8, "text");
    need(hex, "hex");
    copy_hex(iris::text_key(utf8), hex);
  });
}

void iris_batch_options_default(iris_batch_options* opts) {
  if (!opts) return;
  opts->jobs = 1;
  opts->skip_errors = 0;
}

iris_status iris_preprocess_manifest(const iris_manifest* m, const iris_preprocess_config* cfg,
                                     const iris_batch_options* opts, const char* out_dir,
                                     const char* index_path, size_t* failures) {
  return guard([&] {
    need(m, "manifest");
    need(out_dir, "out_dir");
    need(index_path, "index_path");
    const iris::PreprocessConfig c = to_core(cfg);
    const iris::BatchOptions o = to_core(opts);
    for (const auto& r : m->m.records) {
      if (!safe_file_stem(r.sample_id)) {
        throw iris::Error(iris::ErrorKind::Validation,
                          "sample '" + r.sample_id + "': id is not usable as a file name");
      }
    }
    std::vector<iris::PreparedImage> prepared = iris::prepare_images(m->m, c, o.jobs);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw iris::Error(iris::ErrorKind::Io, std::string("cannot create ") + out_dir);

    std::string index;
    size_t n_failed = 0;
    for (auto& p : prepared) {
      nlohmann::ordered_json line;
      line["sample_id"] = p.sample_id;
      if (!p.image) {
        if (!o.skip_errors) throw iris::Error(p.error_kind, "sample '" + p.sample_id + "': " + p.error);
        ++n_failed;
        line["error"] = p.error;
      } else {
        const std::string name = p.sample_id + ".png";
        iris::write_png_rgb(std::filesystem::path(out_dir) / name, *p.image);
        line["png"] = name;
        line["content_key"] = iris::to_hex(iris::image_key(*p.image));
      }
      index += line.dump() + "\n";
    }
    std::ofstream f(index_path, std::ios::binary);
    if (!f) throw iris::Error(iris::ErrorKind::Io, std::string("cannot write ") + index_path);
    f << index;
    if (!f) throw iris::Error(iris::ErrorKind::Io, std::string("write failed: ") + index_path);
    if (failures) *failures = n_failed;
  });
}

// ---- providers

iris_status iris_provider_stub(uint64_t seed, uint32_t dim, iris_provider** out) {
  return guard([&] {
    need(out, "out");
    if (dim < 1) throw iris::Error(iris::ErrorKind::InvalidArgument, "dim must be >= 1");
    *out = wrap(iris::make_stub_provider(seed, dim));
  });
}

iris_status iris_provider_cache_file(const char* cache_path, iris_provider** out) {
  return guard([&] {
    need(cache_path, "cache_path");
    need(out, "out");
    auto cache = std::make_shared<const iris::EmbeddingCache>(iris::cache_read(cache_path));
    *out = wrap(iris::make_cache_provider(std::move(cache)));
  });
}

iris_status iris_provider_from_cache(const iris_cache* c, iris_provider** out) {
  return guard([&] {
    need(c, "cache");
    need(out, "out");
    *out = wrap(iris::make_cache_provider(std::make_shared<const iris::EmbeddingCache>(c->cache)));
  });
}

iris_status iris_provider_graph(const char* image_graph, const char* text_graph, const char* merges,
                                uint32_t input_size, iris_provider** out) {
  return guard([&] {
    need(image_graph, "image_graph");
    need(text_graph, "text_graph");
    need(merges, "merges");
    need(out, "out");
    iris::GraphProviderConfig cfg;
    cfg.image_graph = image_graph;
    cfg.text_graph = text_graph;
    cfg.tokenizer_merges = merges;
    if (input_size) cfg.input_size = input_size;
    *out = wrap(iris::make_graph_provider(cfg));
  });
}

void iris_provider_free(iris_provider* p) { delete p; }

uint32_t iris_provider_dim(const iris_provider* p) {
  return p ? static_cast<uint32_t>(p->p->dim()) : 0;
}

const char* iris_provider_id(const iris_provider* p) { return p ? p->id.c_str() : ""; }

iris_status iris_embed_image(const iris_provider* p, const iris_image* img, double* out, size_t cap) {
  iris::Embedding e;
  const iris_status s = guard([&] {
    need(p, "provider");
    need(img, "image");
    need(out, "out");
    e = p->p->embed_image(img->img);
  });
  return s != IRIS_OK ? s : copy_embedding(e, out, cap);
}

iris_status iris_embed_text(const iris_provider* p, const char* utf8, double* out, size_t cap) {
  iris::Embedding e;
  const iris_status s = guard([&] {
    need(p, "provider");
    need(utf8, "text");
    need(out, "out");
    e = p->p->embed_text(utf8);
  });
  return s != IRIS_OK ? s : copy_embedding(e, out, cap);
}

// ---- banks

iris_status iris_bank_load(const char* path, iris_bank** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new iris_bank{iris::load_prompt_bank(path)};
  });
}

iris_status iris_bank_load_default(iris_colormap variant, iris_bank** out) {
  return guard([&] {
    need(out, "out");
    if (variant < IRIS_GRAYSCALE || variant > IRIS_VIRIDIS) {
      throw iris::Error(iris::ErrorKind::InvalidArgument, "unknown colormap");
    }
    const auto mode = static_cast<iris::ColormapMode>(variant);
    iris::PromptBank b = iris::load_prompt_bank(iris::default_bank_path(mode));
    if (b.variant != mode) {
      throw iris::Error(iris::ErrorKind::Validation, "default bank variant mismatch");
    }
    *out = new iris_bank{std::move(b)};
  });
}

void iris_bank_free(iris_bank* b) { delete b; }

iris_colormap iris_bank_variant(const iris_bank* b) {
  return b ? static_cast<iris_colormap>(b->bank.variant) : IRIS_GRAYSCALE;
}

size_t iris_bank_count(const iris_bank* b, iris_label label) {
  if (!b || !label_ok(label)) return 0;
  return b->bank.of(static_cast<iris::ClassLabel>(label)).size();
}

const char* iris_bank_prompt(const iris_bank* b, iris_label label, size_t index) {
  if (!b || !label_ok(label)) return nullptr;
  const auto& v = b->bank.of(static_cast<iris::ClassLabel>(label));
  return index < v.size() ? v[index].c_str() : nullptr;
}

// ---- classification

iris_status iris_classify(const iris_manifest* m, const iris_preprocess_config* cfg, const iris_provider* p,
                          iris_strategy strategy, const iris_bank* bank, const iris_batch_options* opts,
                          iris_predictions** out) {
  return guard([&] {
    need(m, "manifest");
    need(p, "provider");
    need(bank, "bank");
    need(out, "out");
    if (strategy != IRIS_SINGLE && strategy != IRIS_CENTROID) {
      throw iris::Error(iris::ErrorKind::InvalidArgument, "unknown strategy");
    }
    const iris::PreprocessConfig c = to_core(cfg);
    *out = new iris_predictions{iris::classify_batch(m->m, c, *p->p,
                                                     static_cast<iris::StrategyKind>(strategy),
                                                     bank->bank, to_core(opts))};
  });
}

void iris_predictions_free(iris_predictions* r) { delete r; }

size_t iris_predictions_size(const iris_predictions* r) { return r ? r->r.predictions.size() : 0; }

iris_status iris_predictions_get(const iris_predictions* r, size_t index, const char** sample_id,
                                 iris_label* label, double* score_present, double* score_absent,
                                 double* margin) {
  return guard([&] {
    need(r, "predictions");
    if (index >= r->r.predictions.size()) {
      throw iris::Error(iris::ErrorKind::InvalidArgument, "prediction index out of range");
    }
    const iris::Prediction& p = r->r.predictions[index];
    if (sample_id) *sample_id = p.sample_id.c_str();
    if (label) *label = static_cast<iris_label>(p.label);
    if (score_present) *score_present = p.score_present;
    if (score_absent) *score_absent = p.score_absent;
    if (margin) *margin = p.margin;
  });
}

size_t iris_predictions_failure_count(const iris_predictions* r) { return r ? r->r.failures.size() : 0; }

iris_status iris_predictions_failure(const iris_predictions* r, size_t index, const char** sample_id,
                                     const char** message) {
  return guard([&] {
    need(r, "predictions");
    if (index >= r->r.failures.size()) {
      throw iris::Error(iris::ErrorKind::InvalidArgument, "failure index out of range");
    }
    if (sample_id) *sample_id = r->r.failures[index].sample_id.c_str();
    if (message) *message = r->r.failures[index].message.c_str();
  });
}

int iris_predictions_has_selection(const iris_predictions* r) {
  return r && r->r.selection.has_value() ? 1 : 0;
}

iris_status iris_predictions_selection(const iris_predictions* r, iris_label label, size_t* index,
                                       const char** prompt, double* mean_similarity) {
  return guard([&] {
    need(r, "predictions");
    if (!r->r.selection) throw iris::Error(iris::ErrorKind::NotFound, "no prompt selection");
    if (!label_ok(label)) throw iris::Error(iris::ErrorKind::InvalidArgument, "unknown label");
    const auto& s = *r->r.selection;
    const std::size_t l = static_cast<std::size_t>(label);
    if (index) *index = s.index[l];
    if (prompt) *prompt = s.prompt[l].c_str();
    if (mean_similarity) *mean_similarity = s.mean_similarity[l][s.index[l]];
  });
}

iris_status iris_predictions_selection_json(const iris_predictions* r, char** out) {
  return guard([&] {
    need(r, "predictions");
    need(out, "out");
    if (!r->r.selection) throw iris::Error(iris::ErrorKind::NotFound, "no prompt selection");
    const auto& s = *r->r.selection;
    nlohmann::ordered_json j;
    for (iris::ClassLabel c : iris::kAllLabels) {
      const std::size_t l = static_cast<std::size_t>(c);
      nlohmann::ordered_json e;
      e["index"] = s.index[l];
      e["prompt"] = s.prompt[l];
      e["mean_similarity"] = s.mean_similarity[l];
      j[std::string(iris::to_string(c))] = e;
    }
    *out = dup_string(j.dump(2) + "\n");
  });
}

iris_status iris_predictions_write(const iris_predictions* r, const char* path) {
  return guard([&] {
    need(r, "predictions");
    need(path, "path");
    iris::write_predictions(std::filesystem::path(path), r->r.predictions);
  });
}

iris_status iris_predictions_read(const char* path, iris_predictions** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    auto h = std::make_unique<iris_predictions>();
    h->r.predictions = iris::read_predictions(path);
    *out = h.release();
  });
}

// ---- evaluation

iris_status iris_compute_metrics(const iris_confusion* cm, iris_metrics* out) {
  return guard([&] {
    need(cm, "confusion");
    need(out, "out");
    *out = to_c(iris::compute_metrics({cm->tp, cm->fp, cm->fn, cm->tn}));
  });
}

iris_status iris_score_predictions(const iris_predictions* r, const iris_manifest* m, iris_confusion* out) {
  return guard([&] {
    need(r, "predictions");
    need(m, "manifest");
    need(out, "out");
    *out = to_c(iris::confusion(r->r.predictions, m->m));
  });
}

iris_status iris_format_percent(double v, char* buf, size_t cap) {
  return guard([&] {
    need(buf, "buf");
    const std::string s = iris::format_percent(v);
    if (cap < s.size() + 1) throw iris::Error(iris::ErrorKind::InvalidArgument, "buffer too small");
    std::memcpy(buf, s.c_str(), s.size() + 1);
  });
}

iris_status iris_evaluate(const iris_manifest* m, const iris_grid_cell* cells, size_t n_cells,
                          const iris_provider* p, const iris_bank* const* banks, size_t n_banks,
                          const iris_preprocess_config* base_cfg, const iris_batch_options* opts,
                          iris_report** out) {
  return guard([&] {
    need(m, "manifest");
    need(p, "provider");
    need(out, "out");
    if (n_banks > 0) need(banks, "banks");
    std::vector<iris::GridCell> grid;
    if (!cells) {
      grid = iris::full_grid();
    } else {
      for (size_t i = 0; i < n_cells; ++i) {
        const auto& c = cells[i];
        if (c.colormap < IRIS_GRAYSCALE || c.colormap > IRIS_VIRIDIS ||
            (c.strategy != IRIS_SINGLE && c.strategy != IRIS_CENTROID)) {
          throw iris::Error(iris::ErrorKind::InvalidArgument, "bad grid cell");
        }
        grid.push_back({static_cast<iris::ColormapMode>(c.colormap),
                        static_cast<iris::StrategyKind>(c.strategy)});
      }
    }
    std::map<iris::ColormapMode, iris::PromptBank> bank_map;
    for (size_t i = 0; i < n_banks; ++i) {
      need(banks[i], "bank");
      if (!bank_map.emplace(banks[i]->bank.variant, banks[i]->bank).second) {
        throw iris::Error(iris::ErrorKind::InvalidArgument,
                          "two banks for variant " + std::string(iris::to_string(banks[i]->bank.variant)));
      }
    }
    *out = new iris_report{
        iris::evaluate_grid(m->m, grid, *p->p, bank_map, to_core(base_cfg), to_core(opts))};
  });
}

void iris_report_free(iris_report* r) { delete r; }

size_t iris_report_rows(const iris_report* r) { return r ? r->report.rows.size() : 0; }

iris_status iris_report_row(const iris_report* r, size_t index, iris_colormap* colormap,
                            iris_strategy* strategy, iris_condition* condition, int* ok,
                            iris_confusion* cm, iris_metrics* metrics) {
  return guard([&] {
    need(r, "report");
    if (index >= r->report.rows.size()) {
      throw iris::Error(iris::ErrorKind::InvalidArgument, "row index out of range");
    }
    const iris::ReportRow& row = r->report.rows[index];
    if (colormap) *colormap = static_cast<iris_colormap>(row.key.colormap);
    if (strategy) *strategy = static_cast<iris_strategy>(row.key.strategy);
    if (condition) *condition = static_cast<iris_condition>(row.key.condition);
    if (ok) *ok = row.ok ? 1 : 0;
    if (cm) *cm = to_c(row.cm);
    if (metrics) *metrics = to_c(row.metrics);
  });
}

const char* iris_report_row_error(const iris_report* r, size_t index) {
  if (!r || index >= r->report.rows.size()) return "";
  return r->report.rows[index].error.c_str();
}

iris_status iris_report_render(const iris_report* r, iris_report_format format, char** out) {
  return guard([&] {
    need(r, "report");
    need(out, "out");
    if (format < IRIS_REPORT_JSON || format > IRIS_REPORT_CONFUSION) {
      throw iris::Error(iris::ErrorKind::InvalidArgument, "unknown report format");
    }
    *out = dup_string(iris::render_report(r->report, static_cast<iris::ReportFormat>(format)));
  });
}

iris_status iris_report_parse_json(const char* text, iris_report** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = new iris_report{iris::parse_report_json(text)};
  });
}

// ---- cache

iris_status iris_cache_create(uint32_t dim, const char* provider_id, iris_cache** out) {
  return guard([&] {
    need(provider_id, "provider_id");
    need(out, "out");
    if (dim < 1) throw iris::Error(iris::ErrorKind::InvalidArgument, "dim must be >= 1");
    *out = new iris_cache{iris::EmbeddingCache(dim, provider_id)};
  });
}

iris_status iris_cache_read(const char* path, iris_cache** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new iris_cache{iris::cache_read(path)};
  });
}

iris_status iris_cache_write(const iris_cache* c, const char* path) {
  return guard([&] {
    need(c, "cache");
    need(path, "path");
    iris::cache_write(path, c->cache);
  });
}

void iris_cache_free(iris_cache* c) { delete c; }

uint32_t iris_cache_dim(const iris_cache* c) { return c ? c->cache.header().dim : 0; }

const char* iris_cache_provider_id(const iris_cache* c) {
  return c ? c->cache.header().provider_id.c_str() : "";
}

size_t iris_cache_size(const iris_cache* c) { return c ? c->cache.size() : 0; }

iris_status iris_cache_merge(iris_cache* dst, const iris_cache* src) {
  return guard([&] {
    need(dst, "dst");
    need(src, "src");
    dst->cache.merge(src->cache);
  });
}

iris_status iris_cache_insert(iris_cache* c, const char* hex_key, const float* vec, size_t dim) {
  return guard([&] {
    need(c, "cache");
    need(hex_key, "key");
    need(vec, "vec");
    c->cache.insert(iris::digest_from_hex(hex_key), std::vector<float>(vec, vec + dim));
  });
}

iris_status iris_cache_add_image(iris_cache* c, const iris_provider* p, const iris_image* img) {
  return guard([&] {
    need(c, "cache");
    need(p, "provider");
    need(img, "image");
    c->cache.require_dim(p->p->dim());
    c->cache.insert(iris::image_key(img->img), p->p->embed_image(img->img));
  });
}

iris_status iris_cache_add_text(iris_cache* c, const iris_provider* p, const char* utf8) {
  return guard([&] {
    need(c, "cache");
    need(p, "provider");
    need(utf8, "text");
    c->cache.require_dim(p->p->dim());
    c->cache.insert(iris::text_key(utf8), p->p->embed_text(utf8));
  });
}

}  // extern "C"
