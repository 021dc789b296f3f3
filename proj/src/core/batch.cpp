#include "batch.hpp"

#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "imageio.hpp"
#include "parallel.hpp"

namespace iris {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

template <typename Fn>
void capture(Fn&& fn, std::string& error, ErrorKind& kind) {
  try {
    fn();
  } catch (const Error& e) {
    error = e.what();
    kind = e.kind();
  } catch (const std::exception& e) {
    error = e.what();
    kind = ErrorKind::Runtime;
  }
}

}  // namespace

std::vector<PreparedImage> prepare_images(const DatasetManifest& manifest,
                                          const PreprocessConfig& cfg, std::size_t jobs) {
  cfg.validate();
  std::vector<PreparedImage> out(manifest.records.size());
  parallel_for(out.size(), jobs, [&](std::size_t i) {
    const SampleRecord& r = manifest.records[i];
    PreparedImage& p = out[i];
    p.sample_id = r.sample_id;
    capture([&] { p.image = preprocess_pipeline(read_thermal(manifest.resolve(r)), cfg); },
            p.error, p.error_kind);
  });
  return out;
}

BatchResult classify_batch(const DatasetManifest& manifest, const PreprocessConfig& cfg,
                           const EmbeddingProvider& provider, StrategyKind strategy,
                           const PromptBank& bank, const BatchOptions& options) {
  std::vector<PreparedImage> prepared = prepare_images(manifest, cfg, options.jobs);

  std::vector<std::optional<Embedding>> embeddings(prepared.size());
  parallel_for(prepared.size(), options.jobs, [&](std::size_t i) {
    PreparedImage& p = prepared[i];
    if (!p.image) return;
    capture([&] { embeddings[i] = l2_normalize(provider.embed_image(*p.image)); }, p.error,
            p.error_kind);
  });

  BatchResult result;
  std::vector<Embedding> ok;
  for (std::size_t i = 0; i < prepared.size(); ++i) {
    if (embeddings[i]) {
      ok.push_back(*embeddings[i]);
      continue;
    }
    SampleFailure f{prepared[i].sample_id, prepared[i].error, prepared[i].error_kind};
    if (!options.skip_errors) {
      throw Error(f.kind, "sample '" + f.sample_id + "': " + f.message);
    }
    result.failures.push_back(std::move(f));
  }
  if (ok.empty()) return result;

  std::optional<ClassRepresentations> reps;
  if (strategy == StrategyKind::Centroid) {
    reps.emplace(build_centroids(bank, provider));
  } else {
    result.selection = select_single_prompt(bank, std::span<const Embedding>(ok), provider);
    reps.emplace(single_prompt_representations(*result.selection, provider));
  }

  for (std::size_t i = 0; i < prepared.size(); ++i) {
    if (embeddings[i]) {
      result.predictions.push_back(classify_one(*embeddings[i], *reps, prepared[i].sample_id));
    }
  }
  return result;
}

void write_predictions(std::ostream& out, const std::vector<Prediction>& predictions) {
  for (const auto& p : predictions) {
    ordered_json line;
    line["sample_id"] = p.sample_id;
    line["label"] = to_string(p.label);
    line["score_present"] = p.score_present;
    line["score_absent"] = p.score_absent;
    line["margin"] = p.margin;
    out << line.dump() << '\n';
  }
}

void write_predictions(const fs::path& path, const std::vector<Prediction>& predictions) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write predictions " + path.string());
  write_predictions(out, predictions);
  if (!out) throw Error(ErrorKind::Io, "write failed: " + path.string());
}

std::vector<Prediction> read_predictions(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open predictions " + path.string());
  std::vector<Prediction> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    try {
      const json obj = json::parse(line);
      Prediction p;
      p.sample_id = obj.at("sample_id").get<std::string>();
      const auto label = parse_label(obj.at("label").get<std::string>());
      if (!label) throw Error(ErrorKind::Validation, where + ": unknown label");
      p.label = *label;
      p.score_present = obj.at("score_present").get<double>();
      p.score_absent = obj.at("score_absent").get<double>();
      p.margin = obj.at("margin").get<double>();
      out.push_back(std::move(p));
    } catch (const json::exception& e) {
      throw Error(ErrorKind::Validation, where + ": " + e.what());
    }
  }
  return out;
}

}  // namespace iris
