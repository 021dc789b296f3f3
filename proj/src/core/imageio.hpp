#pragma once

#include <filesystem>

#include "image.hpp"

namespace iris {

// Reads a 16-bit thermal frame. Accepts binary PGM ("P5", maxval 65535 or
// smaller) and single-channel PNG (8- or 16-bit); the format is sniffed from
// the leading bytes, not the extension.
ThermalImage read_thermal(const std::filesystem::path& path);

// Binary PGM, maxval 65535, big-endian samples.
void write_pgm16(const std::filesystem::path& path, const ThermalImage& img);

void write_png_gray16(const std::filesystem::path& path, const ThermalImage& img);
void write_png_rgb(const std::filesystem::path& path, const RgbImage& img);
RgbImage read_png_rgb(const std::filesystem::path& path);

}  // namespace iris
