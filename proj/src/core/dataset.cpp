#include "dataset.hpp"

#include <cstdlib>
#include <fstream>
#include <iterator>
#include <json.hpp>
#include <unordered_set>

namespace iris {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void fail(std::string_view source, std::size_t line, const std::string& why) {
  throw Error(ErrorKind::Validation,
              std::string(source) + ":" + std::to_string(line) + ": " + why);
}

std::string required_string(const json& obj, const char* field, std::string_view source,
                            std::size_t line) {
  const auto it = obj.find(field);
  if (it == obj.end()) fail(source, line, std::string("missing required field '") + field + "'");
  if (!it->is_string()) fail(source, line, std::string("field '") + field + "' must be a string");
  return it->get<std::string>();
}

bool blank(std::string_view s) {
  return s.find_first_not_of(" \t\r") == std::string_view::npos;
}

}  // namespace

const SampleRecord* DatasetManifest::find(std::string_view sample_id) const {
  for (const auto& r : records) {
    if (r.sample_id == sample_id) return &r;
  }
  return nullptr;
}

DatasetManifest parse_manifest(std::string_view text, std::string_view source,
                               const fs::path& root_dir) {
  DatasetManifest m;
  m.root_dir = root_dir;
  std::unordered_set<std::string> ids;
  std::unordered_set<std::string> paths;
  bool have_header = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (blank(line)) continue;

    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      fail(source, line_no, std::string("parse error: ") + e.what());
    }
    if (!obj.is_object()) fail(source, line_no, "expected a JSON object");

    if (!have_header) {
      const auto v = obj.find("manifest_version");
      if (v == obj.end()) fail(source, line_no, "missing manifest_version header");
      if (!v->is_number_integer() || v->get<int>() != kManifestVersion) {
        fail(source, line_no, "unsupported manifest_version " + v->dump());
      }
      have_header = true;
      continue;
    }

    SampleRecord r;
    r.sample_id = required_string(obj, "sample_id", source, line_no);
    r.image_path = required_string(obj, "image_path", source, line_no);
    const std::string label = required_string(obj, "label", source, line_no);
    const std::string condition = required_string(obj, "condition", source, line_no);
    if (r.sample_id.empty()) fail(source, line_no, "empty sample_id");
    if (r.image_path.empty()) fail(source, line_no, "empty image_path for '" + r.sample_id + "'");
    const auto l = parse_label(label);
    if (!l) fail(source, line_no, "unknown label '" + label + "' for '" + r.sample_id + "'");
    const auto c = parse_condition(condition);
    if (!c) fail(source, line_no, "unknown condition '" + condition + "' for '" + r.sample_id + "'");
    r.label = *l;
    r.condition = *c;
    if (!ids.insert(r.sample_id).second) {
      fail(source, line_no, "duplicate sample_id '" + r.sample_id + "'");
    }
    if (!paths.insert(r.image_path).second) {
      fail(source, line_no, "duplicate image_path '" + r.image_path + "'");
    }
    m.records.push_back(std::move(r));
  }
  if (!have_header) fail(source, line_no, "missing manifest_version header");
  if (m.records.empty()) {
    throw Error(ErrorKind::Validation, std::string(source) + ": empty manifest");
  }
  return m;
}

DatasetManifest load_manifest(const fs::path& path, const std::optional<fs::path>& root_override) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open manifest " + path.string());
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  const fs::path manifest_dir = path.parent_path().empty() ? fs::path(".") : path.parent_path();

  // Peek the header for root_dir before full validation.
  fs::path root = manifest_dir;
  if (const char* env = std::getenv("IRIS_DATA_DIR"); env && *env) root = env;
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos) {
    const std::size_t eol = text.find('\n', first);
    const json header = json::parse(text.substr(first, eol - first), nullptr, false);
    if (header.is_object() && header.contains("root_dir") && header["root_dir"].is_string()) {
      root = manifest_dir / header["root_dir"].get<std::string>();
    }
  }
  if (root_override) root = *root_override;
  return parse_manifest(text, path.string(), root);
}

void write_manifest(const fs::path& path, const DatasetManifest& manifest) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write manifest " + path.string());
  out << json{{"manifest_version", kManifestVersion}}.dump() << '\n';
  for (const auto& r : manifest.records) {
    // Field order fixed for diff-friendly files.
    out << "{\"sample_id\":" << json(r.sample_id).dump()
        << ",\"image_path\":" << json(r.image_path).dump() << ",\"label\":\""
        << to_string(r.label) << "\",\"condition\":\"" << to_string(r.condition) << "\"}\n";
  }
  if (!out) throw Error(ErrorKind::Io, "write failed: " + path.string());
}

std::size_t ManifestSummary::total() const {
  std::size_t n = 0;
  for (const auto& row : counts) {
    for (std::size_t c : row) n += c;
  }
  return n;
}

ManifestSummary summarize(const DatasetManifest& manifest) {
  ManifestSummary s;
  for (const auto& r : manifest.records) {
    ++s.counts[static_cast<std::size_t>(r.label)][static_cast<std::size_t>(r.condition)];
  }
  return s;
}

DatasetManifest filter_by_condition(const DatasetManifest& manifest, Condition condition) {
  DatasetManifest out;
  out.root_dir = manifest.root_dir;
  for (const auto& r : manifest.records) {
    if (r.condition == condition) out.records.push_back(r);
  }
  return out;
}

}  // namespace iris
