#include "colormap.hpp"

#include <cstdlib>
#include <fstream>
#include <iterator>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>

#include "hash.hpp"

#ifndef IRIS_DEFAULT_ASSET_DIR
#define IRIS_DEFAULT_ASSET_DIR "data"
#endif

namespace iris {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kMagmaSha256 =
    "75912f1a4387ef5a1fa7d87129e6900b29803196576d8b95e45e9897c2c1228f";
constexpr std::string_view kViridisSha256 =
    "643480ca7361ca4fae9e12de3bbad18630ae0fb9a7857f92cab2af49b2a2fb06";

}  // namespace

fs::path asset_dir() {
  if (const char* env = std::getenv("IRIS_ASSET_DIR"); env && *env) return env;
  return IRIS_DEFAULT_ASSET_DIR;
}

Lut load_lut_file(const fs::path& path, std::string_view expected_sha256) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "missing LUT file " + path.string());
  const std::string raw{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};

  if (!expected_sha256.empty() && to_hex(sha256(raw)) != expected_sha256) {
    throw Error(ErrorKind::Validation, "LUT checksum mismatch: " + path.string());
  }

  Lut lut{};
  std::istringstream lines(raw);
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    if (n == lut.size()) throw Error(ErrorKind::Validation, "LUT has more than 256 entries: " + path.string());
    std::istringstream fields(line);
    int r = -1, g = -1, b = -1;
    std::string extra;
    if (!(fields >> r >> g >> b) || (fields >> extra) || r < 0 || r > 255 || g < 0 || g > 255 ||
        b < 0 || b > 255) {
      throw Error(ErrorKind::Validation,
                  path.string() + ":" + std::to_string(n + 1) + ": bad LUT entry '" + line + "'");
    }
    lut[n++] = Rgb{static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
                   static_cast<std::uint8_t>(b)};
  }
  if (n != lut.size()) {
    throw Error(ErrorKind::Validation, "LUT has " + std::to_string(n) + " entries, need 256: " +
                                           path.string());
  }
  return lut;
}

Lut grayscale_lut() {
  Lut lut{};
  for (std::size_t i = 0; i < lut.size(); ++i) {
    const auto v = static_cast<std::uint8_t>(i);
    lut[i] = {v, v, v};
  }
  return lut;
}

std::string_view builtin_lut_sha256(ColormapMode mode) {
  switch (mode) {
    case ColormapMode::Magma: return kMagmaSha256;
    case ColormapMode::Viridis: return kViridisSha256;
    case ColormapMode::Grayscale: break;
  }
  return {};
}

const Lut& builtin_lut(ColormapMode mode) {
  static const Lut gray = grayscale_lut();
  if (mode == ColormapMode::Grayscale) return gray;

  // Cached on first success only, so a missing file keeps raising.
  static std::mutex mu;
  static std::array<std::unique_ptr<Lut>, 3> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[static_cast<std::size_t>(mode)];
  if (!slot) {
    const fs::path path = asset_dir() / "lut" / (std::string(to_string(mode)) + ".txt");
    slot = std::make_unique<Lut>(load_lut_file(path, builtin_lut_sha256(mode)));
  }
  return *slot;
}

}  // namespace iris
