#include "preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace iris {

void PreprocessConfig::validate() const {
  if (!(crop_fraction > 0.0 && crop_fraction <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "crop_fraction must be in (0, 1]");
  }
  if (output_size < 1) throw Error(ErrorKind::InvalidArgument, "output_size must be >= 1");
  if (!(clip_lo_pct >= 0.0 && clip_lo_pct < clip_hi_pct && clip_hi_pct <= 100.0)) {
    throw Error(ErrorKind::InvalidArgument, "need 0 <= clip_lo_pct < clip_hi_pct <= 100");
  }
}

std::string serialize(const PreprocessConfig& cfg) {
  std::ostringstream os;
  os.precision(17);
  os << "colormap=" << to_string(cfg.colormap) << " crop_fraction=" << cfg.crop_fraction
     << " output_size=" << cfg.output_size << " clip_lo_pct=" << cfg.clip_lo_pct
     << " clip_hi_pct=" << cfg.clip_hi_pct;
  return os.str();
}

std::uint16_t percentile(const ThermalImage& img, double pct) {
  if (!(pct >= 0.0 && pct <= 100.0)) {
    throw Error(ErrorKind::InvalidArgument, "percentile must be in [0, 100]");
  }
  const auto px = img.pixels();
  const std::size_t n = px.size();
  auto rank = static_cast<std::size_t>(std::ceil(pct / 100.0 * static_cast<double>(n)));
  rank = std::clamp<std::size_t>(rank, 1, n);

  std::vector<std::uint32_t> hist(65536, 0);
  for (std::uint16_t p : px) ++hist[p];
  std::size_t seen = 0;
  for (std::size_t v = 0; v < hist.size(); ++v) {
    seen += hist[v];
    if (seen >= rank) return static_cast<std::uint16_t>(v);
  }
  return 65535;
}

NormalizedImage normalize(const ThermalImage& img, double clip_lo_pct, double clip_hi_pct) {
  if (!(clip_lo_pct >= 0.0 && clip_lo_pct < clip_hi_pct && clip_hi_pct <= 100.0)) {
    throw Error(ErrorKind::InvalidArgument, "need 0 <= clip_lo_pct < clip_hi_pct <= 100");
  }
  const double lo = percentile(img, clip_lo_pct);
  const double hi = percentile(img, clip_hi_pct);
  std::vector<double> out(img.pixels().size());
  if (hi == lo) {
    std::fill(out.begin(), out.end(), 0.5);
  } else {
    const double span = hi - lo;
    std::transform(img.pixels().begin(), img.pixels().end(), out.begin(), [&](std::uint16_t p) {
      return std::clamp((static_cast<double>(p) - lo) / span, 0.0, 1.0);
    });
  }
  return NormalizedImage(img.width(), img.height(), std::move(out));
}

std::uint8_t lut_index(double v) {
  const double scaled = std::floor(std::clamp(v, 0.0, 1.0) * 255.0 + 0.5);
  return static_cast<std::uint8_t>(scaled);
}

RgbImage apply_colormap(const NormalizedImage& img, const Lut& lut) {
  RgbImage out(img.width(), img.height());
  auto bytes = out.bytes();
  const auto values = img.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Rgb c = lut[lut_index(values[i])];
    bytes[3 * i] = c.r;
    bytes[3 * i + 1] = c.g;
    bytes[3 * i + 2] = c.b;
  }
  return out;
}

RgbImage apply_colormap(const NormalizedImage& img, ColormapMode mode) {
  return apply_colormap(img, builtin_lut(mode));
}

CropRect center_crop_rect(std::size_t width, std::size_t height, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "crop fraction must be in (0, 1]");
  }
  const auto side =
      static_cast<std::size_t>(std::floor(fraction * static_cast<double>(std::min(width, height))));
  if (side < 1) throw Error(ErrorKind::InvalidArgument, "crop degenerate");
  return {(width - side) / 2, (height - side) / 2, side};
}

RgbImage center_zoom_crop(const RgbImage& img, double fraction) {
  const CropRect r = center_crop_rect(img.width(), img.height(), fraction);
  std::vector<std::uint8_t> bytes;
  bytes.reserve(r.side * r.side * 3);
  const auto src = img.bytes();
  for (std::size_t y = r.y; y < r.y + r.side; ++y) {
    const auto row = src.subspan(3 * (y * img.width() + r.x), 3 * r.side);
    bytes.insert(bytes.end(), row.begin(), row.end());
  }
  return RgbImage(r.side, r.side, std::move(bytes));
}

namespace {

struct Tap {
  std::size_t i0;
  std::size_t i1;
  double frac;
};

std::vector<Tap> bilinear_taps(std::size_t in, std::size_t out) {
  std::vector<Tap> taps(out);
  const double scale = static_cast<double>(in) / static_cast<double>(out);
  const double max_coord = static_cast<double>(in - 1);
  for (std::size_t d = 0; d < out; ++d) {
    const double s = std::clamp((static_cast<double>(d) + 0.5) * scale - 0.5, 0.0, max_coord);
    const auto i0 = static_cast<std::size_t>(std::floor(s));
    taps[d] = {i0, std::min(i0 + 1, in - 1), s - static_cast<double>(i0)};
  }
  return taps;
}

}  // namespace

RgbImage resize(const RgbImage& img, std::size_t out_w, std::size_t out_h) {
  if (out_w < 1 || out_h < 1) throw Error(ErrorKind::InvalidArgument, "resize target must be >= 1x1");
  if (out_w == img.width() && out_h == img.height()) return img;

  const auto xs = bilinear_taps(img.width(), out_w);
  const auto ys = bilinear_taps(img.height(), out_h);
  const auto src = img.bytes();
  const std::size_t stride = 3 * img.width();
  RgbImage out(out_w, out_h);
  auto dst = out.bytes();
  for (std::size_t y = 0; y < out_h; ++y) {
    const Tap ty = ys[y];
    for (std::size_t x = 0; x < out_w; ++x) {
      const Tap tx = xs[x];
      for (std::size_t c = 0; c < 3; ++c) {
        const double p00 = src[ty.i0 * stride + 3 * tx.i0 + c];
        const double p10 = src[ty.i0 * stride + 3 * tx.i1 + c];
        const double p01 = src[ty.i1 * stride + 3 * tx.i0 + c];
        const double p11 = src[ty.i1 * stride + 3 * tx.i1 + c];
        const double top = p00 + (p10 - p00) * tx.frac;
        const double bottom = p01 + (p11 - p01) * tx.frac;
        const double v = top + (bottom - top) * ty.frac;
        dst[3 * (y * out_w + x) + c] =
            static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
      }
    }
  }
  return out;
}

RgbImage preprocess_pipeline(const ThermalImage& img, const PreprocessConfig& cfg) {
  cfg.validate();
  const NormalizedImage norm = normalize(img, cfg.clip_lo_pct, cfg.clip_hi_pct);
  const RgbImage colored = apply_colormap(norm, cfg.colormap);
  const RgbImage cropped = center_zoom_crop(colored, cfg.crop_fraction);
  return resize(cropped, cfg.output_size, cfg.output_size);
}

}  // namespace iris
