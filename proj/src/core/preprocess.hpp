#pragma once

#include <cstdint>
#include <string>

#include "colormap.hpp"
#include "image.hpp"
#include "types.hpp"

namespace iris {

struct PreprocessConfig {
  ColormapMode colormap = ColormapMode::Magma;
  double crop_fraction = 0.50;
  std::uint32_t output_size = 224;
  double clip_lo_pct = 0.0;
  double clip_hi_pct = 100.0;

  // Throws InvalidArgument when a field is out of range.
  void validate() const;

  bool operator==(const PreprocessConfig&) const = default;
};

// Stable single-line text form, e.g.
// "colormap=magma crop_fraction=0.5 output_size=224 clip_lo_pct=0 clip_hi_pct=100".
std::string serialize(const PreprocessConfig& cfg);

// Nearest-rank percentile (rank = ceil(p/100 * N), at least 1) of the pixels.
std::uint16_t percentile(const ThermalImage& img, double pct);

// Min-max stretch between the clip percentiles, clamped to [0, 1]. A flat
// image (hi == lo) maps to 0.5 everywhere.
NormalizedImage normalize(const ThermalImage& img, double clip_lo_pct, double clip_hi_pct);

// round(v * 255), half-up.
std::uint8_t lut_index(double v);

RgbImage apply_colormap(const NormalizedImage& img, const Lut& lut);
RgbImage apply_colormap(const NormalizedImage& img, ColormapMode mode);

struct CropRect {
  std::size_t x = 0;
  std::size_t y = 0;
  std::size_t side = 0;
};

// Square of side floor(fraction * min(w, h)) centred with floored offsets.
CropRect center_crop_rect(std::size_t width, std::size_t height, double fraction);
RgbImage center_zoom_crop(const RgbImage& img, double fraction);

// Bilinear, half-pixel centres, edge clamped, half-up rounding.
RgbImage resize(const RgbImage& img, std::size_t out_w, std::size_t out_h);

// normalize -> colormap -> crop -> resize.
RgbImage preprocess_pipeline(const ThermalImage& img, const PreprocessConfig& cfg);

}  // namespace iris
