#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "batch.hpp"
#include "classify.hpp"
#include "dataset.hpp"
#include "prompts.hpp"

namespace iris {

// `present` is the positive class.
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const noexcept { return tp + fp + fn + tn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

// Percentages in [0, 100], unrounded. An undefined ratio is reported as 0.0
// with its flag set.
struct MetricSet {
  double accuracy = 0.0;
  double f1 = 0.0;
  double recall = 0.0;
  double precision = 0.0;
  bool recall_undefined = false;
  bool precision_undefined = false;
  bool f1_undefined = false;

  bool operator==(const MetricSet&) const = default;
};

// Counts predictions against manifest ground truth. Throws Validation for a
// prediction whose sample_id is not in the manifest or appears twice.
ConfusionMatrix confusion(std::span<const Prediction> predictions, const DatasetManifest& manifest);

// Throws InvalidArgument when the matrix is empty.
MetricSet compute_metrics(const ConfusionMatrix& cm);

// Two-decimal display form ("83.00").
std::string format_percent(double v);

struct GridCell {
  ColormapMode colormap = ColormapMode::Magma;
  StrategyKind strategy = StrategyKind::Centroid;

  auto operator<=>(const GridCell&) const = default;
};

// All 3 colormaps x 2 strategies.
std::vector<GridCell> full_grid();

struct ReportKey {
  ColormapMode colormap = ColormapMode::Magma;
  StrategyKind strategy = StrategyKind::Centroid;
  Condition condition = Condition::Hot;

  auto operator<=>(const ReportKey&) const = default;
};

struct ReportRow {
  ReportKey key;
  bool ok = true;
  std::string error;  // set when !ok
  ConfusionMatrix cm;
  MetricSet metrics;
  std::optional<std::array<std::string, 2>> selected_prompts;  // single strategy only

  bool operator==(const ReportRow&) const = default;
};

// Rows sorted by key, keys unique.
struct EvalReport {
  std::vector<ReportRow> rows;

  const ReportRow* find(const ReportKey& key) const;
  bool operator==(const EvalReport&) const = default;
};

// For every grid cell and every condition present in the manifest, classify
// the condition's records and score them. A cell that fails is recorded as
// failed; other cells still run. `banks` must cover every grid colormap.
EvalReport evaluate_grid(const DatasetManifest& manifest, std::span<const GridCell> grid,
                         const EmbeddingProvider& provider,
                         const std::map<ColormapMode, PromptBank>& banks,
                         const PreprocessConfig& base_cfg, const BatchOptions& options = {});

enum class ReportFormat { Json, Table, Confusion };

// Throws InvalidArgument for an unknown name ("json", "table", "confusion").
ReportFormat parse_report_format(std::string_view name);

std::string render_report(const EvalReport& report, ReportFormat format);

// Inverse of render_report(..., Json).
EvalReport parse_report_json(std::string_view text);

}  // namespace iris
