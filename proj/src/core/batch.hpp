#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "classify.hpp"
#include "dataset.hpp"
#include "embed.hpp"
#include "preprocess.hpp"
#include "prompts.hpp"

namespace iris {

struct BatchOptions {
  std::size_t jobs = 1;
  // Record per-sample failures and keep going instead of throwing.
  bool skip_errors = false;
};

struct SampleFailure {
  std::string sample_id;
  std::string message;
  ErrorKind kind = ErrorKind::Runtime;
};

// Model-ready image for one manifest record, or the reason it failed.
struct PreparedImage {
  std::string sample_id;
  std::optional<RgbImage> image;
  std::string error;
  ErrorKind error_kind = ErrorKind::Runtime;
};

// Reads and preprocesses every record, preserving manifest order. Failures
// are recorded, never thrown.
std::vector<PreparedImage> prepare_images(const DatasetManifest& manifest,
                                          const PreprocessConfig& cfg, std::size_t jobs = 1);

struct BatchResult {
  std::vector<Prediction> predictions;  // manifest order, failures omitted
  std::vector<SampleFailure> failures;
  std::optional<SinglePromptSelection> selection;  // set for the single strategy
};

// Preprocess, embed and classify every record. With the single strategy the
// prompt is chosen against all images of this batch. In fail-fast mode the
// first failing record (in manifest order) raises an Error naming its
// sample_id.
BatchResult classify_batch(const DatasetManifest& manifest, const PreprocessConfig& cfg,
                           const EmbeddingProvider& provider, StrategyKind strategy,
                           const PromptBank& bank, const BatchOptions& options = {});

// JSON Lines, one object per prediction with fields in the order
// sample_id, label, score_present, score_absent, margin.
void write_predictions(std::ostream& out, const std::vector<Prediction>& predictions);
void write_predictions(const std::filesystem::path& path, const std::vector<Prediction>& predictions);
std::vector<Prediction> read_predictions(const std::filesystem::path& path);

}  // namespace iris
