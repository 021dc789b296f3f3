#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>

#include "dataset.hpp"
#include "image.hpp"

namespace iris {

enum class ObjectShape : std::uint8_t { Rectangle, Ellipse };

// Placement in pixel units; the footprint is the axis-aligned box of size
// (width, height) centred at (cx, cy).
struct ObjectSpec {
  ObjectShape shape = ObjectShape::Rectangle;
  double cx = 0.0;
  double cy = 0.0;
  double width = 0.0;
  double height = 0.0;
};

struct SceneSpec {
  std::size_t width = 640;
  std::size_t height = 512;
  double bed_temp_c = 85.0;
  double ambient_temp_c = 25.0;
  double object_temp_c = 55.0;
  std::optional<ObjectSpec> object;
  double noise_sigma = 0.0;  // counts
  std::uint64_t seed = 0;
};

struct PixelRect {
  std::size_t x0, y0, x1, y1;  // half-open
};

// Heated bed: the frame inset by 1/8 of the width and 1/10 of the height.
PixelRect bed_region(std::size_t width, std::size_t height);

// Whether pixel (x, y) (centre at x + 0.5, y + 0.5) lies on the object.
bool covers(const ObjectSpec& obj, std::size_t x, std::size_t y);

// Toy radiometry: counts = round(100 * temp_c + noise), clamped to u16.
// One Gaussian draw per pixel in raster order, independent of the object,
// so scenes that differ only in `object` differ only on its footprint.
ThermalImage generate_scene(const SceneSpec& spec);

struct SynthOptions {
  std::size_t width = 640;
  std::size_t height = 512;
  double noise_sigma = 25.0;
  std::size_t jobs = 1;
};

// Writes n_per_cell frames per (condition, label) cell as 16-bit PGM under
// out_dir/images/ and the manifest at out_dir/manifest.jsonl. Hot cells use
// a bed near 85 C, room cells near 34 C; objects are cooler than the bed
// and vary in shape, size and position.
DatasetManifest generate_dataset(const std::filesystem::path& out_dir, std::size_t n_per_cell,
                                 std::uint64_t seed, const SynthOptions& options = {});

}  // namespace iris
