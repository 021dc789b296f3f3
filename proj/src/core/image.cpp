#include "image.hpp"

#include <string>

#include "types.hpp"

namespace iris {

namespace {

void check_dims(std::size_t width, std::size_t height, std::size_t got, std::size_t channels) {
  if (width < 1 || height < 1) {
    throw Error(ErrorKind::InvalidArgument, "image dimensions must be at least 1x1");
  }
  if (got != width * height * channels) {
    throw Error(ErrorKind::InvalidArgument,
                "pixel buffer size " + std::to_string(got) + " does not match " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
}

}  // namespace

ThermalImage::ThermalImage(std::size_t width, std::size_t height,
                           std::vector<std::uint16_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  check_dims(width_, height_, pixels_.size(), 1);
}

ThermalImage::ThermalImage(std::size_t width, std::size_t height, std::uint16_t fill)
    : ThermalImage(width, height, std::vector<std::uint16_t>(width * height, fill)) {}

NormalizedImage::NormalizedImage(std::size_t width, std::size_t height,
                                 std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
  check_dims(width_, height_, values_.size(), 1);
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorKind::InvalidArgument, "normalized value outside [0, 1]");
    }
  }
}

RgbImage::RgbImage(std::size_t width, std::size_t height)
    : RgbImage(width, height, std::vector<std::uint8_t>(width * height * 3, 0)) {}

RgbImage::RgbImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> bytes)
    : width_(width), height_(height), bytes_(std::move(bytes)) {
  check_dims(width_, height_, bytes_.size(), 3);
}

}  // namespace iris
