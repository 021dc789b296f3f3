// iris: command-line front end over the libiris C API.
//
// Exit codes: 0 success, 1 usage or validation error, 2 I/O or runtime error.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "iris/iris.h"

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct Failure {
  int code;
  std::string message;
};

int exit_code_for(iris_status s) {
  return s == IRIS_E_INVALID_ARGUMENT || s == IRIS_E_VALIDATION ? kExitValidation : kExitRuntime;
}

void check(iris_status s) {
  if (s != IRIS_OK) throw Failure{exit_code_for(s), iris_last_error()};
}

[[noreturn]] void usage_error(const std::string& msg) { throw Failure{kExitValidation, msg}; }

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Manifest = std::unique_ptr<iris_manifest, Deleter<iris_manifest, iris_manifest_free>>;
using Provider = std::unique_ptr<iris_provider, Deleter<iris_provider, iris_provider_free>>;
using Bank = std::unique_ptr<iris_bank, Deleter<iris_bank, iris_bank_free>>;
using Predictions = std::unique_ptr<iris_predictions, Deleter<iris_predictions, iris_predictions_free>>;
using Report = std::unique_ptr<iris_report, Deleter<iris_report, iris_report_free>>;
using Cache = std::unique_ptr<iris_cache, Deleter<iris_cache, iris_cache_free>>;
using Image = std::unique_ptr<iris_image, Deleter<iris_image, iris_image_free>>;
using CString = std::unique_ptr<char, Deleter<char, iris_string_free>>;

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{kExitRuntime, "cannot write " + path.string()};
  out << text;
  if (!out) throw Failure{kExitRuntime, "write failed: " + path.string()};
}

void make_out_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Failure{kExitRuntime, "cannot create " + dir.string() + ": " + ec.message()};
}

// Options shared by several subcommands. Defaults mirror the library's.
struct Options {
  std::string out;
  std::string manifest;
  std::string root;
  std::vector<std::string> colormaps;
  double crop_fraction = 0.50;
  unsigned size = 224;
  double clip_lo = 0.0;
  double clip_hi = 100.0;
  std::vector<std::string> banks;
  std::vector<std::string> strategies;
  std::string provider = "stub";
  std::uint64_t seed = 0;
  unsigned dim = 512;
  std::string cache;
  std::string image_graph;
  std::string text_graph;
  std::string tokenizer;
  std::size_t jobs = 1;
  bool skip_errors = false;
  // synth
  std::size_t n_per_cell = 10;
  unsigned width = 640;
  unsigned height = 512;
  double noise = 25.0;
};

void add_manifest_opts(CLI::App* cmd, Options& o) {
  cmd->add_option("--manifest", o.manifest, "Dataset manifest (JSON Lines)")->required();
  cmd->add_option("--root", o.root, "Image root directory (default: manifest root_dir, IRIS_DATA_DIR, "
                                    "then the manifest's directory)");
}

void add_preprocess_opts(CLI::App* cmd, Options& o, bool repeatable_colormap) {
  auto* cm = cmd->add_option("--colormap", o.colormaps,
                             repeatable_colormap ? "Colormap(s) to run; repeatable"
                                                 : "grayscale | magma | viridis (default magma)");
  if (!repeatable_colormap) cm->expected(1);
  cmd->add_option("--crop-fraction", o.crop_fraction, "Center zoom crop fraction in (0, 1]")
      ->capture_default_str();
  cmd->add_option("--size", o.size, "Output side in pixels")->capture_default_str();
  cmd->add_option("--clip-lo", o.clip_lo, "Lower clip percentile")->capture_default_str();
  cmd->add_option("--clip-hi", o.clip_hi, "Upper clip percentile")->capture_default_str();
}

void add_provider_opts(CLI::App* cmd, Options& o, bool allow_cache) {
  std::vector<std::string> kinds{"stub", "graph"};
  if (allow_cache) kinds.insert(kinds.begin() + 1, "cache");
  cmd->add_option("--provider", o.provider, "Embedding provider")
      ->check(CLI::IsMember(kinds))
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "Stub provider seed")->capture_default_str();
  cmd->add_option("--dim", o.dim, "Stub provider dimension")->capture_default_str();
  if (allow_cache) cmd->add_option("--cache", o.cache, "Embedding cache file (provider=cache)");
  cmd->add_option("--image-graph", o.image_graph, "ONNX image encoder (provider=graph)");
  cmd->add_option("--text-graph", o.text_graph, "ONNX text encoder (provider=graph)");
  cmd->add_option("--tokenizer", o.tokenizer, "BPE merges file, .txt or .gz (provider=graph)");
}

void add_batch_opts(CLI::App* cmd, Options& o) {
  cmd->add_option("--jobs", o.jobs, "Worker threads; outputs do not depend on it")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_flag("--skip-errors", o.skip_errors, "Record unreadable samples and continue");
}

iris_colormap colormap_of(const std::string& name) {
  iris_colormap c;
  check(iris_parse_colormap(name.c_str(), &c));
  return c;
}

iris_strategy strategy_of(const std::string& name) {
  iris_strategy s;
  check(iris_parse_strategy(name.c_str(), &s));
  return s;
}

iris_preprocess_config preprocess_config(const Options& o, iris_colormap cm) {
  iris_preprocess_config cfg;
  iris_preprocess_config_default(&cfg);
  cfg.colormap = cm;
  cfg.crop_fraction = o.crop_fraction;
  cfg.output_size = o.size;
  cfg.clip_lo_pct = o.clip_lo;
  cfg.clip_hi_pct = o.clip_hi;
  check(iris_preprocess_config_validate(&cfg));
  return cfg;
}

ojson preprocess_json(const Options& o) {
  return {{"crop_fraction", o.crop_fraction},
          {"output_size", o.size},
          {"clip_lo_pct", o.clip_lo},
          {"clip_hi_pct", o.clip_hi}};
}

iris_batch_options batch_options(const Options& o) {
  iris_batch_options b;
  iris_batch_options_default(&b);
  b.jobs = o.jobs;
  b.skip_errors = o.skip_errors ? 1 : 0;
  return b;
}

Manifest load_manifest(const Options& o) {
  iris_manifest* m = nullptr;
  check(iris_manifest_load(o.manifest.c_str(), o.root.empty() ? nullptr : o.root.c_str(), &m));
  return Manifest(m);
}

ojson manifest_json(const Options& o, const iris_manifest* m) {
  return {{"path", o.manifest}, {"root", iris_manifest_root(m)}, {"records", iris_manifest_size(m)}};
}

Provider make_provider(const Options& o) {
  iris_provider* p = nullptr;
  if (o.provider == "stub") {
    check(iris_provider_stub(o.seed, o.dim, &p));
  } else if (o.provider == "cache") {
    if (o.cache.empty()) usage_error("--provider cache needs --cache");
    check(iris_provider_cache_file(o.cache.c_str(), &p));
  } else {
    if (o.image_graph.empty() || o.text_graph.empty() || o.tokenizer.empty()) {
      usage_error("--provider graph needs --image-graph, --text-graph and --tokenizer");
    }
    check(iris_provider_graph(o.image_graph.c_str(), o.text_graph.c_str(), o.tokenizer.c_str(), o.size,
                              &p));
  }
  return Provider(p);
}

ojson provider_json(const Options& o, const iris_provider* p) {
  ojson j{{"kind", o.provider}, {"id", iris_provider_id(p)}, {"dim", iris_provider_dim(p)}};
  if (o.provider == "stub") {
    j["seed"] = o.seed;
  } else if (o.provider == "cache") {
    j["cache"] = o.cache;
  } else {
    j["image_graph"] = o.image_graph;
    j["text_graph"] = o.text_graph;
    j["tokenizer"] = o.tokenizer;
  }
  return j;
}

// Explicit --bank files first (one per variant), then the shipped default for
// each remaining colormap in `needed`.
struct BankSet {
  std::vector<Bank> banks;
  ojson sources = ojson::object();

  const iris_bank* find(iris_colormap c) const {
    for (const auto& b : banks) {
      if (iris_bank_variant(b.get()) == c) return b.get();
    }
    return nullptr;
  }
};

BankSet load_banks(const Options& o, const std::vector<iris_colormap>& needed) {
  BankSet set;
  for (const auto& path : o.banks) {
    iris_bank* b = nullptr;
    check(iris_bank_load(path.c_str(), &b));
    Bank bank(b);
    const iris_colormap v = iris_bank_variant(b);
    if (set.find(v)) usage_error("more than one --bank for variant " + std::string(iris_colormap_name(v)));
    set.sources[iris_colormap_name(v)] = path;
    set.banks.push_back(std::move(bank));
  }
  for (iris_colormap c : needed) {
    if (set.find(c)) continue;
    iris_bank* b = nullptr;
    check(iris_bank_load_default(c, &b));
    set.sources[iris_colormap_name(c)] = "default";
    set.banks.emplace_back(b);
  }
  return set;
}

std::vector<iris_colormap> colormaps_or(const Options& o, std::vector<iris_colormap> fallback) {
  if (o.colormaps.empty()) return fallback;
  std::vector<iris_colormap> out;
  for (const auto& name : o.colormaps) {
    const iris_colormap c = colormap_of(name);
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  return out;
}

ojson run_config(const std::string& subcommand, const std::vector<std::string>& argv) {
  return {{"run_config_version", 1},
          {"iris_version", iris_version()},
          {"subcommand", subcommand},
          {"argv", argv}};
}

void finish(const fs::path& out_dir, const ojson& cfg) {
  write_text(out_dir / "run_config.json", cfg.dump(2) + "\n");
}

// ---- subcommands

void cmd_synth(const Options& o, ojson cfg) {
  const fs::path out(o.out);
  iris_synth_options so;
  iris_synth_options_default(&so);
  so.width = o.width;
  so.height = o.height;
  so.noise_sigma = o.noise;
  so.jobs = o.jobs;
  iris_manifest* m = nullptr;
  check(iris_synth_dataset(o.out.c_str(), o.n_per_cell, o.seed, &so, &m));
  Manifest manifest(m);
  cfg["synth"] = {{"n_per_cell", o.n_per_cell},
                  {"seed", o.seed},
                  {"width", o.width},
                  {"height", o.height},
                  {"noise_sigma", o.noise}};
  cfg["outputs"] = {"manifest.jsonl", "images/"};
  finish(out, cfg);
  std::printf("wrote %zu images and %s\n", iris_manifest_size(m), (out / "manifest.jsonl").c_str());
}

void cmd_preprocess(const Options& o, ojson cfg) {
  if (o.colormaps.size() > 1) usage_error("preprocess takes one --colormap");
  const iris_colormap cm = colormaps_or(o, {IRIS_MAGMA}).front();
  const iris_preprocess_config pc = preprocess_config(o, cm);
  Manifest m = load_manifest(o);
  const fs::path out(o.out);
  make_out_dir(out);
  const iris_batch_options bo = batch_options(o);
  std::size_t failures = 0;
  check(iris_preprocess_manifest(m.get(), &pc, &bo, (out / "images").c_str(),
                                 (out / "index.jsonl").c_str(), &failures));
  cfg["manifest"] = manifest_json(o, m.get());
  cfg["preprocess"] = preprocess_json(o);
  cfg["preprocess"]["colormap"] = iris_colormap_name(cm);
  cfg["jobs"] = o.jobs;
  cfg["skip_errors"] = o.skip_errors;
  cfg["outputs"] = {"images/", "index.jsonl"};
  finish(out, cfg);
  std::printf("preprocessed %zu images (%zu failed) into %s\n", iris_manifest_size(m.get()) - failures,
              failures, (out / "images").c_str());
}

void cmd_classify(const Options& o, ojson cfg) {
  if (o.colormaps.size() > 1) usage_error("classify takes one --colormap");
  if (o.strategies.size() > 1) usage_error("classify takes one --strategy");
  const iris_colormap cm = colormaps_or(o, {IRIS_MAGMA}).front();
  const iris_strategy strategy = o.strategies.empty() ? IRIS_CENTROID : strategy_of(o.strategies.front());
  const iris_preprocess_config pc = preprocess_config(o, cm);
  if (o.banks.size() > 1) usage_error("classify takes one --bank");
  BankSet banks = load_banks(o, {cm});
  const iris_bank* bank = banks.find(cm);
  if (!bank) {
    usage_error("bank variant " + std::string(iris_colormap_name(iris_bank_variant(banks.banks[0].get()))) +
                " does not match --colormap " + iris_colormap_name(cm));
  }
  Manifest m = load_manifest(o);
  Provider p = make_provider(o);
  const fs::path out(o.out);
  make_out_dir(out);

  const iris_batch_options bo = batch_options(o);
  iris_predictions* r = nullptr;
  check(iris_classify(m.get(), &pc, p.get(), strategy, bank, &bo, &r));
  Predictions preds(r);
  check(iris_predictions_write(r, (out / "predictions.jsonl").c_str()));

  cfg["manifest"] = manifest_json(o, m.get());
  cfg["preprocess"] = preprocess_json(o);
  cfg["preprocess"]["colormap"] = iris_colormap_name(cm);
  cfg["strategy"] = iris_strategy_name(strategy);
  cfg["banks"] = banks.sources;
  cfg["provider"] = provider_json(o, p.get());
  cfg["jobs"] = o.jobs;
  cfg["skip_errors"] = o.skip_errors;
  ojson outputs{"predictions.jsonl"};
  if (iris_predictions_has_selection(r)) {
    char* s = nullptr;
    check(iris_predictions_selection_json(r, &s));
    CString sel(s);
    write_text(out / "selection.json", sel.get());
    outputs.push_back("selection.json");
  }
  const std::size_t n_fail = iris_predictions_failure_count(r);
  if (n_fail > 0) {
    std::string lines;
    for (std::size_t i = 0; i < n_fail; ++i) {
      const char* id = nullptr;
      const char* msg = nullptr;
      check(iris_predictions_failure(r, i, &id, &msg));
      lines += ojson{{"sample_id", id}, {"error", msg}}.dump() + "\n";
      std::fprintf(stderr, "skipped %s: %s\n", id, msg);
    }
    write_text(out / "failures.jsonl", lines);
    outputs.push_back("failures.jsonl");
  }
  cfg["outputs"] = outputs;
  finish(out, cfg);
  std::printf("classified %zu samples (%zu failed) into %s\n", iris_predictions_size(r), n_fail,
              (out / "predictions.jsonl").c_str());
}

void cmd_evaluate(const Options& o, ojson cfg) {
  const std::vector<iris_colormap> cms = colormaps_or(o, {IRIS_GRAYSCALE, IRIS_MAGMA, IRIS_VIRIDIS});
  std::vector<iris_strategy> strategies;
  for (const auto& s : o.strategies) {
    const iris_strategy v = strategy_of(s);
    if (std::find(strategies.begin(), strategies.end(), v) == strategies.end()) strategies.push_back(v);
  }
  if (strategies.empty()) strategies = {IRIS_SINGLE, IRIS_CENTROID};
  std::vector<iris_grid_cell> grid;
  for (iris_colormap c : cms) {
    for (iris_strategy s : strategies) grid.push_back({c, s});
  }
  const iris_preprocess_config pc = preprocess_config(o, IRIS_MAGMA);
  BankSet banks = load_banks(o, cms);
  std::vector<const iris_bank*> bank_ptrs;
  for (const auto& b : banks.banks) bank_ptrs.push_back(b.get());
  Manifest m = load_manifest(o);
  Provider p = make_provider(o);
  const fs::path out(o.out);
  make_out_dir(out);

  const iris_batch_options bo = batch_options(o);
  iris_report* r = nullptr;
  check(iris_evaluate(m.get(), grid.data(), grid.size(), p.get(), bank_ptrs.data(), bank_ptrs.size(), &pc,
                      &bo, &r));
  Report report(r);
  const std::pair<iris_report_format, const char*> files[] = {
      {IRIS_REPORT_JSON, "report.json"}, {IRIS_REPORT_TABLE, "report.txt"}, {IRIS_REPORT_CONFUSION, "confusion.txt"}};
  for (const auto& [fmt, name] : files) {
    char* s = nullptr;
    check(iris_report_render(r, fmt, &s));
    CString text(s);
    write_text(out / name, text.get());
    if (fmt == IRIS_REPORT_TABLE) std::fputs(text.get(), stdout);
  }

  ojson grid_json = ojson::array();
  for (const auto& c : grid) {
    grid_json.push_back({{"colormap", iris_colormap_name(c.colormap)},
                         {"strategy", iris_strategy_name(c.strategy)}});
  }
  cfg["manifest"] = manifest_json(o, m.get());
  cfg["preprocess"] = preprocess_json(o);
  cfg["grid"] = grid_json;
  cfg["banks"] = banks.sources;
  cfg["provider"] = provider_json(o, p.get());
  cfg["jobs"] = o.jobs;
  cfg["skip_errors"] = o.skip_errors;
  cfg["outputs"] = {"report.json", "report.txt", "confusion.txt"};
  finish(out, cfg);

  std::size_t failed = 0;
  for (std::size_t i = 0; i < iris_report_rows(r); ++i) {
    int ok = 1;
    check(iris_report_row(r, i, nullptr, nullptr, nullptr, &ok, nullptr, nullptr));
    if (!ok) {
      ++failed;
      std::fprintf(stderr, "cell failed: %s\n", iris_report_row_error(r, i));
    }
  }
  if (failed > 0) throw Failure{kExitRuntime, std::to_string(failed) + " report row(s) failed"};
}

// Embeds every manifest image (per colormap) and every prompt of the matching
// banks into out/embeddings.cache, merging into an existing file there.
void cmd_build_cache(const Options& o, ojson cfg) {
  const std::vector<iris_colormap> cms = colormaps_or(o, {IRIS_MAGMA});
  BankSet banks = load_banks(o, cms);
  Manifest m = load_manifest(o);
  Provider p = make_provider(o);
  const fs::path out(o.out);
  make_out_dir(out);
  const fs::path cache_path = out / "embeddings.cache";

  iris_cache* c = nullptr;
  const bool existing = fs::exists(cache_path);
  if (existing) {
    check(iris_cache_read(cache_path.c_str(), &c));
  } else {
    check(iris_cache_create(iris_provider_dim(p.get()), iris_provider_id(p.get()), &c));
  }
  Cache cache(c);
  if (existing) {
    if (iris_cache_dim(c) != iris_provider_dim(p.get())) {
      usage_error("dim mismatch: cache has " + std::to_string(iris_cache_dim(c)) + ", provider has " +
                  std::to_string(iris_provider_dim(p.get())));
    }
    if (std::string(iris_cache_provider_id(c)) != iris_provider_id(p.get())) {
      usage_error("provider mismatch: cache has '" + std::string(iris_cache_provider_id(c)) +
                  "', provider is '" + iris_provider_id(p.get()) + "'");
    }
  }

  std::size_t images = 0;
  std::size_t prompts = 0;
  for (iris_colormap cm : cms) {
    const iris_preprocess_config pc = preprocess_config(o, cm);
    for (std::size_t i = 0; i < iris_manifest_size(m.get()); ++i) {
      const char* id = nullptr;
      const char* rel = nullptr;
      check(iris_manifest_record(m.get(), i, &id, &rel, nullptr, nullptr));
      const fs::path path = fs::path(iris_manifest_root(m.get())) / rel;
      iris_image* img = nullptr;
      const iris_status s = iris_preprocess_file(path.c_str(), &pc, &img);
      if (s != IRIS_OK) {
        const std::string msg = "sample '" + std::string(id) + "': " + iris_last_error();
        if (!o.skip_errors) throw Failure{exit_code_for(s), msg};
        std::fprintf(stderr, "skipped %s\n", msg.c_str());
        continue;
      }
      Image image(img);
      check(iris_cache_add_image(c, p.get(), img));
      ++images;
    }
    const iris_bank* bank = banks.find(cm);
    for (iris_label l : {IRIS_PRESENT, IRIS_ABSENT}) {
      for (std::size_t k = 0; k < iris_bank_count(bank, l); ++k) {
        check(iris_cache_add_text(c, p.get(), iris_bank_prompt(bank, l, k)));
        ++prompts;
      }
    }
  }
  check(iris_cache_write(c, cache_path.c_str()));

  cfg["manifest"] = manifest_json(o, m.get());
  cfg["preprocess"] = preprocess_json(o);
  ojson names = ojson::array();
  for (iris_colormap cm : cms) names.push_back(iris_colormap_name(cm));
  cfg["preprocess"]["colormaps"] = names;
  cfg["banks"] = banks.sources;
  cfg["provider"] = provider_json(o, p.get());
  cfg["skip_errors"] = o.skip_errors;
  cfg["outputs"] = {"embeddings.cache"};
  finish(out, cfg);
  std::printf("embedded %zu images and %zu prompts; cache holds %zu entries (dim %u)\n", images, prompts,
              iris_cache_size(c), iris_cache_dim(c));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero-shot thermal image classification toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", iris_version());
  Options o;

  auto* synth = app.add_subcommand("synth", "Generate a labeled synthetic thermal dataset");
  synth->add_option("--out", o.out, "Output directory")->required();
  synth->add_option("--n-per-cell", o.n_per_cell, "Images per (condition, label) cell")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  synth->add_option("--width", o.width, "Frame width")->capture_default_str();
  synth->add_option("--height", o.height, "Frame height")->capture_default_str();
  synth->add_option("--noise", o.noise, "Per-pixel noise sigma in counts")->capture_default_str();
  synth->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();

  auto* pre = app.add_subcommand("preprocess", "Write model-ready PNGs and a content-key index");
  add_manifest_opts(pre, o);
  add_preprocess_opts(pre, o, false);
  add_batch_opts(pre, o);
  pre->add_option("--out", o.out, "Output directory")->required();

  auto* cls = app.add_subcommand("classify", "Zero-shot classify every manifest image");
  add_manifest_opts(cls, o);
  add_preprocess_opts(cls, o, false);
  cls->add_option("--bank", o.banks, "Prompt bank file (default: shipped bank for the colormap)");
  cls->add_option("--strategy", o.strategies, "single | centroid (default centroid)")->expected(1);
  add_provider_opts(cls, o, true);
  add_batch_opts(cls, o);
  cls->add_option("--out", o.out, "Output directory")->required();

  auto* ev = app.add_subcommand("evaluate", "Score the colormap x strategy grid per condition");
  add_manifest_opts(ev, o);
  add_preprocess_opts(ev, o, true);
  ev->add_option("--bank", o.banks, "Prompt bank file; repeatable, one per variant");
  ev->add_option("--strategy", o.strategies, "Strategy to run; repeatable (default both)");
  add_provider_opts(ev, o, true);
  add_batch_opts(ev, o);
  ev->add_option("--out", o.out, "Output directory")->required();

  auto* bc = app.add_subcommand("build-cache", "Embed manifest images and bank prompts into a cache");
  add_manifest_opts(bc, o);
  add_preprocess_opts(bc, o, true);
  bc->add_option("--bank", o.banks, "Prompt bank file; repeatable, one per variant");
  add_provider_opts(bc, o, false);
  bc->add_flag("--skip-errors", o.skip_errors, "Skip unreadable images");
  bc->add_option("--out", o.out, "Output directory (embeddings.cache is merged if present)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  const std::vector<std::string> args(argv + 1, argv + argc);
  try {
    CLI::App* cmd = app.get_subcommands().front();
    const ojson cfg = run_config(cmd->get_name(), args);
    if (cmd == synth) cmd_synth(o, cfg);
    else if (cmd == pre) cmd_preprocess(o, cfg);
    else if (cmd == cls) cmd_classify(o, cfg);
    else if (cmd == ev) cmd_evaluate(o, cfg);
    else cmd_build_cache(o, cfg);
  } catch (const Failure& f) {
    std::fprintf(stderr, "iris: %s\n", f.message.c_str());
    return f.code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "iris: %s\n", e.what());
    return kExitRuntime;
  }
  return kExitOk;
}
