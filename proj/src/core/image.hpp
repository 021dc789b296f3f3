#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace iris {

// Raw single-channel 16-bit frame, row-major.
class ThermalImage {
 public:
  ThermalImage(std::size_t width, std::size_t height, std::vector<std::uint16_t> pixels);
  ThermalImage(std::size_t width, std::size_t height, std::uint16_t fill);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::span<const std::uint16_t> pixels() const noexcept { return pixels_; }
  std::uint16_t at(std::size_t x, std::size_t y) const { return pixels_[y * width_ + x]; }
  std::uint16_t& at(std::size_t x, std::size_t y) { return pixels_[y * width_ + x]; }

  bool operator==(const ThermalImage&) const = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<std::uint16_t> pixels_;
};

// Intensities mapped into [0, 1].
class NormalizedImage {
 public:
  NormalizedImage(std::size_t width, std::size_t height, std::vector<double> values);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::span<const double> values() const noexcept { return values_; }
  double at(std::size_t x, std::size_t y) const { return values_[y * width_ + x]; }

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<double> values_;
};

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  bool operator==(const Rgb&) const = default;
};

// 8-bit RGB, row-major, channels interleaved (r, g, b, r, g, b, ...).
class RgbImage {
 public:
  RgbImage(std::size_t width, std::size_t height);
  RgbImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> bytes);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }
  std::span<std::uint8_t> bytes() noexcept { return bytes_; }

  Rgb at(std::size_t x, std::size_t y) const {
    const std::size_t i = 3 * (y * width_ + x);
    return {bytes_[i], bytes_[i + 1], bytes_[i + 2]};
  }
  void set(std::size_t x, std::size_t y, Rgb c) {
    const std::size_t i = 3 * (y * width_ + x);
    bytes_[i] = c.r;
    bytes_[i + 1] = c.g;
    bytes_[i + 2] = c.b;
  }

  bool operator==(const RgbImage&) const = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<std::uint8_t> bytes_;
};

}  // namespace iris
