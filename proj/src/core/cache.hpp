#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "embed.hpp"
#include "hash.hpp"

namespace iris {

inline constexpr std::uint32_t kCacheFormatVersion = 1;

struct CacheHeader {
  std::uint32_t format_version = kCacheFormatVersion;
  std::uint32_t dim = 0;
  std::string provider_id;

  bool operator==(const CacheHeader&) const = default;
};

// Content-addressed embedding store. Entries are kept sorted by key, which
// also fixes their order on disk.
class EmbeddingCache {
 public:
  EmbeddingCache() = default;
  EmbeddingCache(std::uint32_t dim, std::string provider_id);

  const CacheHeader& header() const noexcept { return header_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const std::map<Digest, std::vector<float>>& entries() const noexcept { return entries_; }

  // Inserting an existing key replaces its vector. Throws Validation on a
  // dim mismatch.
  void insert(const Digest& key, std::vector<float> vec);
  void insert(const Digest& key, const Embedding& e);

  // Throws NotFound naming the hex key.
  const std::vector<float>& at(const Digest& key) const;
  bool contains(const Digest& key) const { return entries_.count(key) != 0; }

  // Adds every entry of `other`. Headers must agree on dim and provider_id.
  void merge(const EmbeddingCache& other);

  // Throws Validation unless dim == `dim`.
  void require_dim(std::size_t dim) const;

  bool operator==(const EmbeddingCache&) const = default;

 private:
  CacheHeader header_;
  std::map<Digest, std::vector<float>> entries_;
};

// Binary layout, all integers little-endian:
//   "IRIS" | u32 format_version | u32 dim | u32 len + provider_id bytes |
//   u64 entry_count | entry_count x (32-byte key | dim x f32)
void cache_write(const std::filesystem::path& path, const EmbeddingCache& cache);
EmbeddingCache cache_read(const std::filesystem::path& path);

// Serves vectors by content key (image_key / text_key). A lookup miss throws
// NotFound naming the key.
std::unique_ptr<EmbeddingProvider> make_cache_provider(std::shared_ptr<const EmbeddingCache> cache);

}  // namespace iris
