#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "types.hpp"

namespace iris {

struct SampleRecord {
  std::string sample_id;
  std::string image_path;  // relative to the manifest root
  ClassLabel label = ClassLabel::Present;
  Condition condition = Condition::Hot;

  bool operator==(const SampleRecord&) const = default;
};

struct DatasetManifest {
  std::vector<SampleRecord> records;
  std::filesystem::path root_dir;

  std::filesystem::path resolve(const SampleRecord& r) const { return root_dir / r.image_path; }
  const SampleRecord* find(std::string_view sample_id) const;

  bool operator==(const DatasetManifest&) const = default;
};

inline constexpr int kManifestVersion = 1;

// Manifest files are JSON Lines. The first non-blank line is the header
// {"manifest_version": 1} with an optional "root_dir" (resolved against the
// manifest's directory); each further line is one record with string fields
// sample_id, image_path, label, condition.
//
// Root precedence: root_override, then the header's root_dir, then
// IRIS_DATA_DIR, then the manifest's own directory.
DatasetManifest load_manifest(const std::filesystem::path& path,
                              const std::optional<std::filesystem::path>& root_override = {});

// Same parser over in-memory text; `source` names the input in error messages.
DatasetManifest parse_manifest(std::string_view text, std::string_view source,
                               const std::filesystem::path& root_dir);

// Writes the header (without root_dir) and one line per record.
void write_manifest(const std::filesystem::path& path, const DatasetManifest& manifest);

// counts[label][condition], indexed by enum value.
struct ManifestSummary {
  std::array<std::array<std::size_t, 2>, 2> counts{};

  std::size_t at(ClassLabel l, Condition c) const {
    return counts[static_cast<std::size_t>(l)][static_cast<std::size_t>(c)];
  }
  std::size_t total() const;
};

ManifestSummary summarize(const DatasetManifest& manifest);

DatasetManifest filter_by_condition(const DatasetManifest& manifest, Condition condition);

}  // namespace iris
