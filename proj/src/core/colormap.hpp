#pragma once

#include <array>
#include <filesystem>
#include <string_view>

#include "image.hpp"
#include "types.hpp"

namespace iris {

using Lut = std::array<Rgb, 256>;

// Directory holding the shipped data files (lut/, banks/). IRIS_ASSET_DIR
// overrides the path baked in at build time.
std::filesystem::path asset_dir();

// Parses a LUT file: exactly 256 non-empty lines of "r g b" integers in
// [0, 255]. When expected_sha256 is non-empty the raw file bytes must hash
// to it.
Lut load_lut_file(const std::filesystem::path& path, std::string_view expected_sha256 = {});

Lut grayscale_lut();

// Shipped LUT for `mode`, loaded and checksum-verified once per process.
const Lut& builtin_lut(ColormapMode mode);

// SHA-256 of the shipped LUT file for magma/viridis; empty for grayscale.
std::string_view builtin_lut_sha256(ColormapMode mode);

}  // namespace iris
