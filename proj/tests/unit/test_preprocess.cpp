#include <gtest/gtest.h>

#include "preprocess.hpp"
#include "rng.hpp"
#include "support.hpp"

namespace iris {
namespace {

std::vector<double> values_of(const NormalizedImage& n) { return {n.values().begin(), n.values().end()}; }

ThermalImage random_thermal(SplitMix64& rng, std::size_t w, std::size_t h) {
  std::vector<std::uint16_t> px(w * h);
  for (auto& p : px) p = static_cast<std::uint16_t>(rng.uniform_int(0, 65535));
  return ThermalImage(w, h, std::move(px));
}

RgbImage random_rgb(SplitMix64& rng, std::size_t w, std::size_t h) {
  std::vector<std::uint8_t> b(w * h * 3);
  for (auto& v : b) v = static_cast<std::uint8_t>(rng.uniform_int(0, 255));
  return RgbImage(w, h, std::move(b));
}

TEST(Config, DefaultsAndValidation) {
  const PreprocessConfig d;
  EXPECT_EQ(d.colormap, ColormapMode::Magma);
  EXPECT_DOUBLE_EQ(d.crop_fraction, 0.5);
  EXPECT_EQ(d.output_size, 224u);
  EXPECT_NO_THROW(d.validate());
  auto bad = d;
  bad.crop_fraction = 0.0;
  EXPECT_IRIS_ERROR(bad.validate(), ErrorKind::InvalidArgument, "crop_fraction");
  bad = d;
  bad.crop_fraction = 1.01;
  EXPECT_IRIS_ERROR(bad.validate(), ErrorKind::InvalidArgument, "crop_fraction");
  bad = d;
  bad.output_size = 0;
  EXPECT_IRIS_ERROR(bad.validate(), ErrorKind::InvalidArgument, "output_size");
  bad = d;
  bad.clip_lo_pct = 50;
  bad.clip_hi_pct = 50;
  EXPECT_IRIS_ERROR(bad.validate(), ErrorKind::InvalidArgument, "clip");
  bad = d;
  bad.clip_hi_pct = 100.5;
  EXPECT_IRIS_ERROR(bad.validate(), ErrorKind::InvalidArgument, "clip");
  EXPECT_EQ(serialize(d), "colormap=magma crop_fraction=0.5 output_size=224 clip_lo_pct=0 clip_hi_pct=100");
}

TEST(Percentile, NearestRank) {
  ThermalImage img(5, 1, std::vector<std::uint16_t>{50, 10, 40, 20, 30});
  EXPECT_EQ(percentile(img, 0), 10);
  EXPECT_EQ(percentile(img, 100), 50);
  EXPECT_EQ(percentile(img, 20), 10);  // rank ceil(1.0) = 1
  EXPECT_EQ(percentile(img, 21), 20);  // rank ceil(1.05) = 2
  EXPECT_EQ(percentile(img, 50), 30);  // rank ceil(2.5) = 3
  EXPECT_IRIS_ERROR(percentile(img, 101), ErrorKind::InvalidArgument, "percentile");
}

TEST(Normalize, Examples) {
  EXPECT_EQ(values_of(normalize(ThermalImage(2, 1, std::vector<std::uint16_t>{0, 65535}), 0, 100)),
            (std::vector<double>{0.0, 1.0}));
  EXPECT_EQ(values_of(normalize(ThermalImage(4, 3, std::uint16_t{500}), 0, 100)),
            std::vector<double>(12, 0.5));
  EXPECT_EQ(values_of(normalize(ThermalImage(3, 1, std::vector<std::uint16_t>{100, 200, 300}), 0, 100)),
            (std::vector<double>{0.0, 0.5, 1.0}));
}

TEST(Normalize, ClippingSaturatesOutliers) {
  std::vector<std::uint16_t> px(100, 1000);
  for (std::size_t i = 0; i < 100; ++i) px[i] = static_cast<std::uint16_t>(1000 + i);
  px[99] = 65535;  // dead pixel
  const NormalizedImage n = normalize(ThermalImage(100, 1, px), 1, 99);
  // lo = rank 1 -> 1000, hi = rank 99 -> 1098
  EXPECT_DOUBLE_EQ(n.values()[0], 0.0);
  EXPECT_DOUBLE_EQ(n.values()[49], 49.0 / 98.0);
  EXPECT_DOUBLE_EQ(n.values()[98], 1.0);
  EXPECT_DOUBLE_EQ(n.values()[99], 1.0);
}

TEST(Colormap, ApplyExamples) {
  const NormalizedImage half(1, 1, {0.5});
  EXPECT_EQ(apply_colormap(half, ColormapMode::Grayscale).at(0, 0), (Rgb{128, 128, 128}));
  EXPECT_EQ(apply_colormap(NormalizedImage(1, 1, {0.0}), ColormapMode::Magma).at(0, 0), (Rgb{0, 0, 4}));
  EXPECT_EQ(apply_colormap(NormalizedImage(1, 1, {1.0}), ColormapMode::Viridis).at(0, 0),
            (Rgb{253, 231, 37}));
}

TEST(Colormap, LutIndexRoundHalfUpAndMonotone) {
  EXPECT_EQ(lut_index(0.0), 0);
  EXPECT_EQ(lut_index(1.0), 255);
  EXPECT_EQ(lut_index(0.5), 128);           // 127.5 rounds up
  EXPECT_EQ(lut_index(0.5 / 255.0), 1);     // 0.5 rounds up
  EXPECT_EQ(lut_index(0.49 / 255.0), 0);
  int prev = 0;
  for (int i = 0; i <= 100000; ++i) {
    const int idx = lut_index(i / 100000.0);
    EXPECT_GE(idx, prev);
    prev = idx;
  }
}

TEST(Crop, Examples) {
  const CropRect r = center_crop_rect(640, 512, 0.5);
  EXPECT_EQ(r.side, 256u);
  EXPECT_EQ(r.x, 192u);
  EXPECT_EQ(r.y, 128u);
  const CropRect s = center_crop_rect(5, 5, 0.5);
  EXPECT_EQ(s.side, 2u);
  EXPECT_EQ(s.x, 1u);
  EXPECT_EQ(s.y, 1u);
  SplitMix64 rng(3);
  const RgbImage sq = random_rgb(rng, 7, 7);
  EXPECT_EQ(center_zoom_crop(sq, 1.0), sq);
  EXPECT_IRIS_ERROR(center_crop_rect(1, 1, 0.5), ErrorKind::InvalidArgument, "crop degenerate");
  EXPECT_IRIS_ERROR(center_crop_rect(10, 10, 0.0), ErrorKind::InvalidArgument, "");
}

TEST(Crop, VerbatimSubArray) {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t w = rng.uniform_int(1, 40), h = rng.uniform_int(1, 40);
    const double f = rng.uniform(0.05, 1.0);
    const RgbImage img = random_rgb(rng, w, h);
    CropRect r;
    try {
      r = center_crop_rect(w, h, f);
    } catch (const Error&) {
      continue;
    }
    const RgbImage c = center_zoom_crop(img, f);
    ASSERT_EQ(c.width(), r.side);
    ASSERT_EQ(c.height(), r.side);
    for (std::size_t y = 0; y < r.side; ++y) {
      for (std::size_t x = 0; x < r.side; ++x) ASSERT_EQ(c.at(x, y), img.at(r.x + x, r.y + y));
    }
  }
}

TEST(Resize, IdentityAndConstant) {
  SplitMix64 rng(5);
  const RgbImage img = random_rgb(rng, 224, 224);
  EXPECT_EQ(resize(img, 224, 224), img);
  RgbImage flat(448, 448);
  for (std::size_t y = 0; y < 448; ++y) {
    for (std::size_t x = 0; x < 448; ++x) flat.set(x, y, {17, 200, 99});
  }
  const RgbImage out = resize(flat, 224, 224);
  for (std::size_t y = 0; y < 224; ++y) {
    for (std::size_t x = 0; x < 224; ++x) ASSERT_EQ(out.at(x, y), (Rgb{17, 200, 99}));
  }
  EXPECT_IRIS_ERROR(resize(img, 0, 3), ErrorKind::InvalidArgument, "");
}

// Half-pixel centres: destination x maps to source (x + 0.5) / 2 - 0.5, i.e.
// -0.25 (clamped to 0), 0.25, 0.75, 1.25 (clamped to 1).
TEST(Resize, TwoByOneUpsampleExact) {
  const RgbImage img(2, 1, std::vector<std::uint8_t>{0, 0, 0, 255, 255, 255});
  const RgbImage out = resize(img, 4, 1);
  const std::array<std::uint8_t, 4> want{0, 64, 191, 255};  // 63.75 and 191.25 rounded half up
  for (std::size_t x = 0; x < 4; ++x) EXPECT_EQ(out.at(x, 0), (Rgb{want[x], want[x], want[x]})) << x;
}

TEST(Resize, DownsampleAveragesNeighbours) {
  // 4x1 -> 2x1: sources at 0.5 and 2.5
  const RgbImage img(4, 1, std::vector<std::uint8_t>{0, 0, 0, 10, 10, 10, 20, 20, 20, 31, 31, 31});
  const RgbImage out = resize(img, 2, 1);
  EXPECT_EQ(out.at(0, 0).r, 5);
  EXPECT_EQ(out.at(1, 0).r, 26);  // 25.5 rounds up
}

TEST(Pipeline, ShapesAndDegenerateFrames) {
  SplitMix64 rng(9);
  const ThermalImage frame = random_thermal(rng, 640, 512);
  const RgbImage out = preprocess_pipeline(frame, PreprocessConfig{});
  EXPECT_EQ(out.width(), 224u);
  EXPECT_EQ(out.height(), 224u);
  EXPECT_EQ(preprocess_pipeline(frame, PreprocessConfig{}), out);

  PreprocessConfig gray;
  gray.colormap = ColormapMode::Grayscale;
  const RgbImage c = preprocess_pipeline(ThermalImage(640, 512, std::uint16_t{4242}), gray);
  for (std::size_t i = 0; i < c.bytes().size(); ++i) ASSERT_EQ(c.bytes()[i], 128);
}

TEST(Pipeline, FullCropOnSquareFrameIsResizeOnly) {
  SplitMix64 rng(10);
  const ThermalImage frame = random_thermal(rng, 64, 64);
  PreprocessConfig cfg;
  cfg.crop_fraction = 1.0;
  cfg.output_size = 32;
  const RgbImage colored = apply_colormap(normalize(frame, 0, 100), cfg.colormap);
  EXPECT_EQ(preprocess_pipeline(frame, cfg), resize(colored, 32, 32));
}

TEST(Properties, NormalizeRangeAndExtremes) {
  SplitMix64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const ThermalImage img = random_thermal(rng, rng.uniform_int(1, 20), rng.uniform_int(1, 20));
    const NormalizedImage n = normalize(img, 0, 100);
    const auto [mn, mx] = std::minmax_element(img.pixels().begin(), img.pixels().end());
    for (std::size_t i = 0; i < img.pixels().size(); ++i) {
      const double v = n.values()[i];
      ASSERT_GE(v, 0.0);
      ASSERT_LE(v, 1.0);
      if (*mn != *mx && img.pixels()[i] == *mn) { ASSERT_EQ(v, 0.0); }
      if (*mn != *mx && img.pixels()[i] == *mx) { ASSERT_EQ(v, 1.0); }
    }
  }
}

TEST(Properties, GrayscaleChannelsEqualAndColormapCommutesWithCrop) {
  SplitMix64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t w = rng.uniform_int(4, 30), h = rng.uniform_int(4, 30);
    const NormalizedImage n = normalize(random_thermal(rng, w, h), 0, 100);
    const double f = rng.uniform(0.3, 1.0);
    for (auto mode : kAllColormaps) {
      const RgbImage full = apply_colormap(n, mode);
      if (mode == ColormapMode::Grayscale) {
        for (std::size_t i = 0; i < w * h; ++i) {
          ASSERT_EQ(full.bytes()[3 * i], full.bytes()[3 * i + 1]);
          ASSERT_EQ(full.bytes()[3 * i], full.bytes()[3 * i + 2]);
        }
      }
      // Crop the normalized values first, then colormap.
      const CropRect r = center_crop_rect(w, h, f);
      std::vector<double> sub;
      for (std::size_t y = r.y; y < r.y + r.side; ++y) {
        for (std::size_t x = r.x; x < r.x + r.side; ++x) sub.push_back(n.at(x, y));
      }
      const RgbImage crop_then_map = apply_colormap(NormalizedImage(r.side, r.side, sub), mode);
      ASSERT_EQ(center_zoom_crop(full, f), crop_then_map);
    }
  }
}

}  // namespace
}  // namespace iris
