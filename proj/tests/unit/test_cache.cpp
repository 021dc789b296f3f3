#include <gtest/gtest.h>

#include <cstring>
#include <json.hpp>

#include "cache.hpp"
#include "support.hpp"

namespace iris {
namespace {

std::vector<float> vec(std::initializer_list<float> v) { return v; }

TEST(Cache, ReadsPythonWrittenGoldenFile) {
  const auto doc = nlohmann::json::parse(test::read_file(test::fixture("golden.json")))["cache"];
  const EmbeddingCache c = cache_read(test::fixture("golden.cache"));
  EXPECT_EQ(c.header().dim, doc["dim"].get<std::uint32_t>());
  EXPECT_EQ(c.header().provider_id, doc["provider_id"].get<std::string>());
  EXPECT_EQ(c.header().format_version, 1u);
  ASSERT_EQ(c.size(), doc["entries"].size());
  for (const auto& e : doc["entries"]) {
    EXPECT_EQ(c.at(digest_from_hex(e["key"].get<std::string>())), e["vec"].get<std::vector<float>>());
  }
}

TEST(Cache, WriteReproducesGoldenBytes) {
  const EmbeddingCache c = cache_read(test::fixture("golden.cache"));
  test::TempDir dir;
  cache_write(dir / "c.bin", c);
  EXPECT_EQ(test::read_file(dir / "c.bin"), test::read_file(test::fixture("golden.cache")));
}

TEST(Cache, ThreeEntryRoundTripBitExact) {
  EmbeddingCache c(3, "p");
  c.insert(text_key("a"), vec({0.1f, -0.2f, 3.4e-30f}));
  c.insert(text_key("b"), vec({1.0f, 0.0f, -0.0f}));
  c.insert(image_key(RgbImage(1, 1)), vec({std::numeric_limits<float>::max(), 1e-45f, 7.0f}));
  test::TempDir dir;
  cache_write(dir / "c.bin", c);
  const EmbeddingCache back = cache_read(dir / "c.bin");
  EXPECT_EQ(back, c);
  for (const auto& [k, v] : c.entries()) {
    EXPECT_EQ(std::memcmp(back.at(k).data(), v.data(), v.size() * sizeof(float)), 0);
  }
  // -0.0f survives as a distinct bit pattern
  EXPECT_TRUE(std::signbit(back.at(text_key("b"))[2]));
}

TEST(Cache, UnknownKeyNamesKey) {
  EmbeddingCache c(2, "p");
  const Digest k = text_key("missing");
  EXPECT_IRIS_ERROR(c.at(k), ErrorKind::NotFound, to_hex(k));
  const auto provider = make_cache_provider(std::make_shared<const EmbeddingCache>(c));
  EXPECT_IRIS_ERROR(provider->embed_text("missing"), ErrorKind::NotFound,
                    "cache has no text entry for key " + to_hex(k));
  EXPECT_IRIS_ERROR(provider->embed_image(RgbImage(2, 2)), ErrorKind::NotFound,
                    "cache has no image entry for key " + to_hex(image_key(RgbImage(2, 2))));
}

TEST(Cache, DimAndProviderChecks) {
  EmbeddingCache c512(512, "p");
  EmbeddingCache c768(768, "p");
  EXPECT_IRIS_ERROR(c512.merge(c768), ErrorKind::Validation, "dim mismatch");
  EXPECT_IRIS_ERROR(c512.require_dim(768), ErrorKind::Validation, "dim mismatch: cache has 512, provider has 768");
  EXPECT_NO_THROW(c512.require_dim(512));
  EmbeddingCache other(512, "q");
  EXPECT_IRIS_ERROR(c512.merge(other), ErrorKind::Validation, "provider mismatch");
  EXPECT_IRIS_ERROR(c512.insert(text_key("x"), std::vector<float>(3)), ErrorKind::Validation, "");
  EXPECT_IRIS_ERROR(EmbeddingCache(0, "p"), ErrorKind::InvalidArgument, "");
}

TEST(Cache, MergeAddsAndReplaces) {
  EmbeddingCache a(2, "p"), b(2, "p");
  a.insert(text_key("x"), vec({1, 2}));
  b.insert(text_key("x"), vec({3, 4}));
  b.insert(text_key("y"), vec({5, 6}));
  a.merge(b);
  EXPECT_EQ(a.size(), 2u);
  EXPECT_EQ(a.at(text_key("x")), vec({3, 4}));
}

TEST(Cache, ProviderServesVectorsAndHeader) {
  auto c = std::make_shared<EmbeddingCache>(2, "exported");
  c->insert(text_key("hi"), vec({0.5f, 0.25f}));
  const auto p = make_cache_provider(c);
  EXPECT_EQ(p->dim(), 2u);
  EXPECT_EQ(p->provider_id(), "exported");
  EXPECT_EQ(p->embed_text("hi"), (Embedding{0.5, 0.25}));
  EXPECT_EQ(p->embed_text("hi"), p->embed_text("hi"));
}

std::string golden_bytes() { return test::read_file(test::fixture("golden.cache")); }

TEST(Cache, CorruptFilesRejected) {
  test::TempDir dir;
  EXPECT_IRIS_ERROR(cache_read(dir / "none"), ErrorKind::Io, "cannot open cache");

  std::string bad = golden_bytes();
  bad[0] = 'X';
  test::write_file(dir / "magic", bad);
  EXPECT_IRIS_ERROR(cache_read(dir / "magic"), ErrorKind::Validation, "bad magic");

  bad = golden_bytes();
  bad[4] = 2;
  test::write_file(dir / "version", bad);
  EXPECT_IRIS_ERROR(cache_read(dir / "version"), ErrorKind::Validation, "format_version 2");

  bad = golden_bytes();
  bad[8] = 5;  // dim 5 no longer matches the payload size
  test::write_file(dir / "dim", bad);
  EXPECT_IRIS_ERROR(cache_read(dir / "dim"), ErrorKind::Validation, "does not match file size");

  bad = golden_bytes();
  bad.resize(bad.size() - 1);
  test::write_file(dir / "short", bad);
  EXPECT_IRIS_ERROR(cache_read(dir / "short"), ErrorKind::Validation, "");

  test::write_file(dir / "tiny", "IRIS");
  EXPECT_IRIS_ERROR(cache_read(dir / "tiny"), ErrorKind::Validation, "truncated");

  // Same entry twice, count bumped to 3.
  std::string dup = golden_bytes();
  const std::size_t entry = 32 + 4 * 4;
  dup += dup.substr(dup.size() - entry);
  const std::size_t count_at = 4 + 4 + 4 + 4 + std::string("golden").size();
  dup[count_at] = 3;
  test::write_file(dir / "dup", dup);
  EXPECT_IRIS_ERROR(cache_read(dir / "dup"), ErrorKind::Validation, "duplicate key");
}

}  // namespace
}  // namespace iris
