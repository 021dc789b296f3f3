#include "cache.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "types.hpp"

namespace iris {

namespace fs = std::filesystem;

namespace {

constexpr char kMagic[4] = {'I', 'R', 'I', 'S'};
constexpr std::uint32_t kMaxDim = 1u << 20;

class ByteWriter {
 public:
  void raw(const void* p, std::size_t n) {
    const auto* b = static_cast<const char*>(p);
    buf_.insert(buf_.end(), b, b + n);
  }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<char>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<char>(v >> (8 * i)));
  }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }

  const std::string& bytes() const { return buf_; }

 private:
  std::string buf_;
};

class ByteReader {
 public:
  ByteReader(const std::string& buf, const fs::path& path) : buf_(buf), path_(path) {}

  const char* take(std::size_t n) {
    if (buf_.size() - pos_ < n) {
      throw Error(ErrorKind::Validation, path_.string() + ": truncated cache file");
    }
    const char* p = buf_.data() + pos_;
    pos_ += n;
    return p;
  }
  std::uint32_t u32() {
    const auto* p = reinterpret_cast<const unsigned char*>(take(4));
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    const auto* p = reinterpret_cast<const unsigned char*>(take(8));
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return v;
  }
  float f32() { return std::bit_cast<float>(u32()); }
  std::size_t remaining() const { return buf_.size() - pos_; }

 private:
  const std::string& buf_;
  const fs::path& path_;
  std::size_t pos_ = 0;
};

class CacheProvider final : public EmbeddingProvider {
 public:
  explicit CacheProvider(std::shared_ptr<const EmbeddingCache> cache) : cache_(std::move(cache)) {
    if (!cache_) throw Error(ErrorKind::InvalidArgument, "null cache");
  }

  Embedding embed_image(const RgbImage& img) const override { return lookup(image_key(img), "image"); }
  Embedding embed_text(std::string_view text) const override {
    return lookup(text_key(text), "text");
  }
  std::size_t dim() const override { return cache_->header().dim; }
  std::string provider_id() const override { return cache_->header().provider_id; }

 private:
  Embedding lookup(const Digest& key, const char* what) const {
    const auto it = cache_->entries().find(key);
    if (it == cache_->entries().end()) {
      throw Error(ErrorKind::NotFound, std::string("cache has no ") + what + " entry for key " + to_hex(key));
    }
    return Embedding(std::vector<double>(it->second.begin(), it->second.end()));
  }

  std::shared_ptr<const EmbeddingCache> cache_;
};

}  // namespace

EmbeddingCache::EmbeddingCache(std::uint32_t dim, std::string provider_id) {
  if (dim < 1 || dim > kMaxDim) throw Error(ErrorKind::InvalidArgument, "cache dim out of range");
  header_.dim = dim;
  header_.provider_id = std::move(provider_id);
}

void EmbeddingCache::insert(const Digest& key, std::vector<float> vec) {
  if (vec.size() != header_.dim) {
    throw Error(ErrorKind::Validation, "embedding dim " + std::to_string(vec.size()) +
                                           " does not match cache dim " +
                                           std::to_string(header_.dim));
  }
  entries_[key] = std::move(vec);
}

void EmbeddingCache::insert(const Digest& key, const Embedding& e) {
  insert(key, std::vector<float>(e.values().begin(), e.values().end()));
}

const std::vector<float>& EmbeddingCache::at(const Digest& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw Error(ErrorKind::NotFound, "no cache entry for key " + to_hex(key));
  return it->second;
}

void EmbeddingCache::require_dim(std::size_t dim) const {
  if (dim != header_.dim) {
    throw Error(ErrorKind::Validation, "dim mismatch: cache has " + std::to_string(header_.dim) +
                                           ", provider has " + std::to_string(dim));
  }
}

void EmbeddingCache::merge(const EmbeddingCache& other) {
  require_dim(other.header().dim);
  if (other.header().provider_id != header_.provider_id) {
    throw Error(ErrorKind::Validation, "provider mismatch: '" + header_.provider_id + "' vs '" +
                                           other.header().provider_id + "'");
  }
  for (const auto& [k, v] : other.entries()) entries_[k] = v;
}

void cache_write(const fs::path& path, const EmbeddingCache& cache) {
  const CacheHeader& h = cache.header();
  if (h.dim < 1) throw Error(ErrorKind::InvalidArgument, "cannot write cache without a dim");
  ByteWriter w;
  w.raw(kMagic, sizeof kMagic);
  w.u32(h.format_version);
  w.u32(h.dim);
  w.u32(static_cast<std::uint32_t>(h.provider_id.size()));
  w.raw(h.provider_id.data(), h.provider_id.size());
  w.u64(cache.size());
  for (const auto& [key, vec] : cache.entries()) {
    w.raw(key.data(), key.size());
    for (float f : vec) w.f32(f);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write cache " + path.string());
  out.write(w.bytes().data(), static_cast<std::streamsize>(w.bytes().size()));
  if (!out) throw Error(ErrorKind::Io, "write failed: " + path.string());
}

EmbeddingCache cache_read(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open cache " + path.string());
  const std::string buf{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  ByteReader r(buf, path);

  if (std::memcmp(r.take(4), kMagic, 4) != 0) {
    throw Error(ErrorKind::Validation, path.string() + ": bad magic, not an IRIS cache");
  }
  const std::uint32_t version = r.u32();
  if (version != kCacheFormatVersion) {
    throw Error(ErrorKind::Validation, path.string() + ": unsupported cache format_version " +
                                           std::to_string(version));
  }
  const std::uint32_t dim = r.u32();
  if (dim < 1 || dim > kMaxDim) throw Error(ErrorKind::Validation, path.string() + ": bad dim");
  const std::uint32_t id_len = r.u32();
  const char* id = r.take(id_len);
  EmbeddingCache cache(dim, std::string(id, id_len));

  const std::uint64_t count = r.u64();
  const std::uint64_t entry_bytes = 32 + 4ull * dim;
  if (count > r.remaining() / entry_bytes || count * entry_bytes != r.remaining()) {
    throw Error(ErrorKind::Validation, path.string() + ": entry_count does not match file size");
  }
  for (std::uint64_t i = 0; i < count; ++i) {
    Digest key{};
    std::memcpy(key.data(), r.take(32), 32);
    std::vector<float> vec(dim);
    for (float& f : vec) f = r.f32();
    if (cache.contains(key)) {
      throw Error(ErrorKind::Validation, path.string() + ": duplicate key " + to_hex(key));
    }
    cache.insert(key, std::move(vec));
  }
  return cache;
}

std::unique_ptr<EmbeddingProvider> make_cache_provider(std::shared_ptr<const EmbeddingCache> cache) {
  return std::make_unique<CacheProvider>(std::move(cache));
}

}  // namespace iris
