#include "eval.hpp"

#include <algorithm>
#include <cstdio>
#include <json.hpp>
#include <set>
#include <sstream>
#include <unordered_set>

namespace iris {

using nlohmann::json;
using nlohmann::ordered_json;

ConfusionMatrix confusion(std::span<const Prediction> predictions, const DatasetManifest& manifest) {
  ConfusionMatrix cm;
  std::unordered_set<std::string> seen;
  for (const auto& p : predictions) {
    const SampleRecord* r = manifest.find(p.sample_id);
    if (!r) throw Error(ErrorKind::Validation, "prediction for unknown sample '" + p.sample_id + "'");
    if (!seen.insert(p.sample_id).second) {
      throw Error(ErrorKind::Validation, "duplicate prediction for sample '" + p.sample_id + "'");
    }
    const bool truth = r->label == ClassLabel::Present;
    const bool pred = p.label == ClassLabel::Present;
    if (truth && pred) ++cm.tp;
    else if (!truth && pred) ++cm.fp;
    else if (truth && !pred) ++cm.fn;
    else ++cm.tn;
  }
  return cm;
}

MetricSet compute_metrics(const ConfusionMatrix& cm) {
  const std::size_t n = cm.total();
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "metrics of an empty confusion matrix");
  MetricSet m;
  m.accuracy = 100.0 * static_cast<double>(cm.tp + cm.tn) / static_cast<double>(n);
  if (cm.tp + cm.fn > 0) {
    m.recall = 100.0 * static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
  } else {
    m.recall_undefined = true;
  }
  if (cm.tp + cm.fp > 0) {
    m.precision = 100.0 * static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp);
  } else {
    m.precision_undefined = true;
  }
  if (!m.recall_undefined && !m.precision_undefined && m.precision + m.recall > 0.0) {
    m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
  } else {
    m.f1_undefined = true;
  }
  return m;
}

std::string format_percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::vector<GridCell> full_grid() {
  std::vector<GridCell> grid;
  for (ColormapMode c : kAllColormaps) {
    for (StrategyKind s : kAllStrategies) grid.push_back({c, s});
  }
  return grid;
}

const ReportRow* EvalReport::find(const ReportKey& key) const {
  const auto it = std::lower_bound(rows.begin(), rows.end(), key,
                                   [](const ReportRow& r, const ReportKey& k) { return r.key < k; });
  return it != rows.end() && it->key == key ? &*it : nullptr;
}

EvalReport evaluate_grid(const DatasetManifest& manifest, std::span<const GridCell> grid,
                         const EmbeddingProvider& provider,
                         const std::map<ColormapMode, PromptBank>& banks,
                         const PreprocessConfig& base_cfg, const BatchOptions& options) {
  const std::set<GridCell> cells(grid.begin(), grid.end());
  for (const GridCell& cell : cells) {
    if (!banks.count(cell.colormap)) {
      throw Error(ErrorKind::InvalidArgument,
                  "no prompt bank for colormap " + std::string(to_string(cell.colormap)));
    }
  }
  const ManifestSummary summary = summarize(manifest);
  BatchOptions batch_opts = options;
  batch_opts.skip_errors = false;

  EvalReport report;
  for (const GridCell& cell : cells) {
    PreprocessConfig cfg = base_cfg;
    cfg.colormap = cell.colormap;
    for (Condition cond : kAllConditions) {
      if (summary.at(ClassLabel::Present, cond) + summary.at(ClassLabel::Absent, cond) == 0) continue;
      ReportRow row;
      row.key = {cell.colormap, cell.strategy, cond};
      try {
        const DatasetManifest subset = filter_by_condition(manifest, cond);
        const BatchResult batch = classify_batch(subset, cfg, provider, cell.strategy,
                                                 banks.at(cell.colormap), batch_opts);
        row.cm = confusion(batch.predictions, subset);
        row.metrics = compute_metrics(row.cm);
        if (batch.selection) {
          row.selected_prompts = std::array{batch.selection->of(ClassLabel::Present),
                                            batch.selection->of(ClassLabel::Absent)};
        }
      } catch (const std::exception& e) {
        row = ReportRow{};
        row.key = {cell.colormap, cell.strategy, cond};
        row.ok = false;
        row.error = e.what();
      }
      report.rows.push_back(std::move(row));
    }
  }
  std::sort(report.rows.begin(), report.rows.end(),
            [](const ReportRow& a, const ReportRow& b) { return a.key < b.key; });
  return report;
}

ReportFormat parse_report_format(std::string_view name) {
  const std::string n = to_lower_ascii(name);
  if (n == "json") return ReportFormat::Json;
  if (n == "table") return ReportFormat::Table;
  if (n == "confusion") return ReportFormat::Confusion;
  throw Error(ErrorKind::InvalidArgument, "unknown report format '" + std::string(name) + "'");
}

namespace {

constexpr int kReportVersion = 1;

std::string display_name(ColormapMode c) {
  std::string s(to_string(c));
  s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

std::string display_name(StrategyKind s) {
  std::string out(to_string(s));
  out[0] = static_cast<char>(out[0] - 'a' + 'A');
  return out;
}

std::string pad(std::string s, std::size_t width, bool right) {
  if (s.size() >= width) return s;
  const std::string fill(width - s.size(), ' ');
  return right ? fill + s : s + fill;
}

std::string render_json(const EvalReport& report) {
  ordered_json doc;
  doc["report_version"] = kReportVersion;
  doc["rows"] = ordered_json::array();
  for (const auto& r : report.rows) {
    ordered_json row;
    row["colormap"] = to_string(r.key.colormap);
    row["strategy"] = to_string(r.key.strategy);
    row["condition"] = to_string(r.key.condition);
    row["status"] = r.ok ? "ok" : "failed";
    if (!r.ok) {
      row["error"] = r.error;
    } else {
      row["confusion"] = {{"tp", r.cm.tp}, {"fp", r.cm.fp}, {"fn", r.cm.fn}, {"tn", r.cm.tn}};
      row["metrics"] = {{"accuracy", r.metrics.accuracy},
                        {"f1", r.metrics.f1},
                        {"recall", r.metrics.recall},
                        {"precision", r.metrics.precision},
                        {"recall_undefined", r.metrics.recall_undefined},
                        {"precision_undefined", r.metrics.precision_undefined},
                        {"f1_undefined", r.metrics.f1_undefined}};
      if (r.selected_prompts) {
        row["selected_prompts"] = {{"present", (*r.selected_prompts)[0]},
                                   {"absent", (*r.selected_prompts)[1]}};
      }
    }
    doc["rows"].push_back(std::move(row));
  }
  return doc.dump(2) + "\n";
}

std::string metric_cell(const ReportRow* row, double v, bool undefined) {
  if (!row) return "-";
  if (!row->ok) return "fail";
  return undefined ? "n/a" : format_percent(v);
}

// Rows per (colormap, strategy), one column group per condition.
std::string render_table(const EvalReport& report) {
  constexpr std::size_t kName = 12;
  constexpr std::size_t kCol = 8;
  std::ostringstream os;
  const std::string groups[] = {"Hot", "Room Temperature"};
  os << pad("", 2 * kName, false);
  for (const auto& g : groups) os << " |" << pad(" " + g, 4 * kCol, false);
  os << '\n' << pad("Preproc.", kName, false) << pad("Prompting", kName, false);
  for (int g = 0; g < 2; ++g) {
    os << " |";
    for (const char* m : {"Acc", "F1", "Rec", "Prec"}) os << pad(m, kCol, true);
  }
  os << '\n' << std::string(2 * kName + 2 * (2 + 4 * kCol), '-') << '\n';

  std::set<GridCell> cells;
  for (const auto& r : report.rows) cells.insert({r.key.colormap, r.key.strategy});
  for (const GridCell& cell : cells) {
    os << pad(display_name(cell.colormap), kName, false)
       << pad(display_name(cell.strategy), kName, false);
    for (Condition cond : kAllConditions) {
      const ReportRow* row = report.find({cell.colormap, cell.strategy, cond});
      os << " |";
      const MetricSet m = row ? row->metrics : MetricSet{};
      os << pad(metric_cell(row, m.accuracy, false), kCol, true)
         << pad(metric_cell(row, m.f1, m.f1_undefined), kCol, true)
         << pad(metric_cell(row, m.recall, m.recall_undefined), kCol, true)
         << pad(metric_cell(row, m.precision, m.precision_undefined), kCol, true);
    }
    os << '\n';
  }
  return os.str();
}

std::string render_confusion(const EvalReport& report) {
  std::ostringstream os;
  bool first = true;
  for (const auto& r : report.rows) {
    if (!first) os << '\n';
    first = false;
    os << to_string(r.key.colormap) << " / " << to_string(r.key.strategy) << " / "
       << to_string(r.key.condition) << '\n';
    if (!r.ok) {
      os << "  failed: " << r.error << '\n';
      continue;
    }
    os << pad("", 16, false) << pad("pred present", 14, true) << pad("pred absent", 14, true) << '\n'
       << pad("  true present", 16, false) << pad(std::to_string(r.cm.tp), 14, true)
       << pad(std::to_string(r.cm.fn), 14, true) << '\n'
       << pad("  true absent", 16, false) << pad(std::to_string(r.cm.fp), 14, true)
       << pad(std::to_string(r.cm.tn), 14, true) << '\n';
  }
  return os.str();
}

template <typename T>
T parse_field(const json& obj, const char* key, std::optional<T> (*parse)(std::string_view)) {
  const std::string s = obj.at(key).get<std::string>();
  const auto v = parse(s);
  if (!v) throw Error(ErrorKind::Validation, std::string("report: bad ") + key + " '" + s + "'");
  return *v;
}

}  // namespace

std::string render_report(const EvalReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json: return render_json(report);
    case ReportFormat::Table: return render_table(report);
    case ReportFormat::Confusion: return render_confusion(report);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown report format");
}

EvalReport parse_report_json(std::string_view text) {
  EvalReport report;
  try {
    const json doc = json::parse(text);
    if (doc.at("report_version").get<int>() != kReportVersion) {
      throw Error(ErrorKind::Validation, "unsupported report_version");
    }
    for (const auto& obj : doc.at("rows")) {
      ReportRow r;
      r.key.colormap = parse_field<ColormapMode>(obj, "colormap", parse_colormap);
      r.key.strategy = parse_field<StrategyKind>(obj, "strategy", parse_strategy);
      r.key.condition = parse_field<Condition>(obj, "condition", parse_condition);
      const std::string status = obj.at("status").get<std::string>();
      r.ok = status == "ok";
      if (!r.ok) {
        r.error = obj.at("error").get<std::string>();
      } else {
        const auto& c = obj.at("confusion");
        r.cm = {c.at("tp").get<std::size_t>(), c.at("fp").get<std::size_t>(),
                c.at("fn").get<std::size_t>(), c.at("tn").get<std::size_t>()};
        const auto& m = obj.at("metrics");
        r.metrics.accuracy = m.at("accuracy").get<double>();
        r.metrics.f1 = m.at("f1").get<double>();
        r.metrics.recall = m.at("recall").get<double>();
        r.metrics.precision = m.at("precision").get<double>();
        r.metrics.recall_undefined = m.at("recall_undefined").get<bool>();
        r.metrics.precision_undefined = m.at("precision_undefined").get<bool>();
        r.metrics.f1_undefined = m.at("f1_undefined").get<bool>();
        if (obj.contains("selected_prompts")) {
          const auto& s = obj.at("selected_prompts");
          r.selected_prompts = std::array{s.at("present").get<std::string>(),
                                          s.at("absent").get<std::string>()};
        }
      }
      report.rows.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Validation, std::string("report: ") + e.what());
  }
  std::sort(report.rows.begin(), report.rows.end(),
            [](const ReportRow& a, const ReportRow& b) { return a.key < b.key; });
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    if (report.rows[i].key == report.rows[i - 1].key) {
      throw Error(ErrorKind::Validation, "report: duplicate row key");
    }
  }
  return report;
}

}  // namespace iris
