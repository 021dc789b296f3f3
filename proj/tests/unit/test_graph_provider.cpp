#include <gtest/gtest.h>

#include <cmath>

#include "graph_provider.hpp"
#include "support.hpp"

namespace iris {
namespace {

GraphProviderConfig fixture_config() {
  GraphProviderConfig cfg;
  cfg.image_graph = test::fixture("image_encoder.onnx");
  cfg.text_graph = test::fixture("text_encoder.onnx");
  cfg.tokenizer_merges = test::fixture("bpe_simple_vocab_16e6.txt.gz");
  cfg.input_size = 32;
  cfg.provider_id = "fixture-graph";
  return cfg;
}

TEST(GraphProvider, LoadsAndReportsDim) {
  const auto p = make_graph_provider(fixture_config());
  EXPECT_EQ(p->dim(), 16u);
  EXPECT_EQ(p->provider_id(), "fixture-graph");
}

// The fixture image graph is mean-pool then affine, so its output can be
// recomputed by hand from the standardized channel means.
TEST(GraphProvider, ImageOutputMatchesHandComputation) {
  const GraphProviderConfig cfg = fixture_config();
  const auto p = make_graph_provider(cfg);
  RgbImage img(32, 32);
  for (std::size_t y = 0; y < 32; ++y) {
    for (std::size_t x = 0; x < 32; ++x) img.set(x, y, {200, 100, 50});
  }
  const Embedding e = p->embed_image(img);
  ASSERT_EQ(e.dim(), 16u);
  const double px[3] = {200, 100, 50};
  double chan[3];
  for (int c = 0; c < 3; ++c) chan[c] = (px[c] / 255.0 - cfg.mean[c]) / cfg.stddev[c];
  for (std::size_t j = 0; j < 16; ++j) {
    double want = 0.01 * static_cast<double>(j);
    for (int c = 0; c < 3; ++c) want += chan[c] * std::sin(0.7 * c + 1.3 * static_cast<double>(j) + 0.1);
    EXPECT_NEAR(e[j], want, 1e-4) << j;
  }
  EXPECT_EQ(p->embed_image(img), e);
}

TEST(GraphProvider, TextIsDeterministicAndInputSensitive) {
  const auto p = make_graph_provider(fixture_config());
  EXPECT_EQ(p->embed_text("a photo"), p->embed_text("a photo"));
  EXPECT_NE(p->embed_text("a photo"), p->embed_text("a thermal image"));
  EXPECT_EQ(p->embed_text("a photo").dim(), 16u);
}

TEST(GraphProvider, WrongImageSizeRejectedBeforeInference) {
  const auto p = make_graph_provider(fixture_config());
  EXPECT_IRIS_ERROR(p->embed_image(RgbImage(100, 100)), ErrorKind::InvalidArgument, "");
}

TEST(GraphProvider, LoadErrors) {
  auto cfg = fixture_config();
  cfg.tokenizer_merges = "/nonexistent/bpe.txt.gz";
  EXPECT_IRIS_ERROR(make_graph_provider(cfg), ErrorKind::Io, "tokenizer");

  cfg = fixture_config();
  cfg.image_graph = "/nonexistent/image.onnx";
  EXPECT_IRIS_ERROR(make_graph_provider(cfg), ErrorKind::Io, "image graph");

  cfg = fixture_config();
  cfg.text_graph = test::fixture("corrupt.onnx");
  EXPECT_IRIS_ERROR(make_graph_provider(cfg), ErrorKind::Validation, "");

  cfg = fixture_config();
  cfg.text_graph = test::fixture("text_encoder_dim12.onnx");
  EXPECT_IRIS_ERROR(make_graph_provider(cfg), ErrorKind::Validation, "");
}

}  // namespace
}  // namespace iris
