#include "imageio.hpp"

#include <png.h>

#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <memory>
#include <string>
#include <vector>

#include "types.hpp"

namespace iris {

namespace fs = std::filesystem;

namespace {

std::vector<std::uint8_t> slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// PGM header tokens are separated by whitespace and may carry '#' comments.
class PgmHeaderReader {
 public:
  PgmHeaderReader(const std::vector<std::uint8_t>& buf, const fs::path& path)
      : buf_(buf), path_(path) {}

  unsigned long next_number() {
    skip_space_and_comments();
    unsigned long value = 0;
    std::size_t digits = 0;
    while (pos_ < buf_.size() && buf_[pos_] >= '0' && buf_[pos_] <= '9') {
      value = value * 10 + (buf_[pos_] - '0');
      ++pos_;
      if (++digits > 9) fail("header number too large");
    }
    if (digits == 0) fail("malformed header");
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_offset() {
    if (pos_ >= buf_.size() || !std::isspace(buf_[pos_])) fail("malformed header");
    return pos_ + 1;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::Validation, path_.string() + ": PGM " + why);
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < buf_.size()) {
      if (std::isspace(buf_[pos_])) {
        ++pos_;
      } else if (buf_[pos_] == '#') {
        while (pos_ < buf_.size() && buf_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<std::uint8_t>& buf_;
  const fs::path& path_;
  std::size_t pos_ = 2;  // past the "P5" magic
};

ThermalImage decode_pgm(const std::vector<std::uint8_t>& buf, const fs::path& path) {
  PgmHeaderReader hdr(buf, path);
  const auto width = hdr.next_number();
  const auto height = hdr.next_number();
  const auto maxval = hdr.next_number();
  if (width == 0 || height == 0) hdr.fail("zero dimension");
  if (maxval == 0 || maxval > 65535) hdr.fail("maxval out of range");
  const std::size_t offset = hdr.raster_offset();
  const std::size_t bps = maxval > 255 ? 2 : 1;
  const std::size_t n = static_cast<std::size_t>(width) * height;
  if (buf.size() < offset + n * bps) hdr.fail("truncated raster");

  std::vector<std::uint16_t> px(n);
  const std::uint8_t* p = buf.data() + offset;
  for (std::size_t i = 0; i < n; ++i) {
    px[i] = bps == 2 ? static_cast<std::uint16_t>(p[2 * i] << 8 | p[2 * i + 1]) : p[i];
  }
  return ThermalImage(width, height, std::move(px));
}

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const fs::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return f;
}

[[noreturn]] void png_error_fn(png_structp png, png_const_charp msg) {
  auto* what = static_cast<std::string*>(png_get_error_ptr(png));
  if (what) *what = msg;
  std::longjmp(png_jmpbuf(png), 1);
}

void png_warning_fn(png_structp, png_const_charp) {}

// Decoded PNG samples, one row pointer per scanline.
struct PngRaster {
  png_uint_32 width = 0;
  png_uint_32 height = 0;
  int bit_depth = 0;
  int color_type = 0;
  std::vector<std::uint8_t> data;
  std::size_t rowbytes = 0;
};

PngRaster decode_png(const fs::path& path, bool want_rgb8) {
  FilePtr f = open_file(path, "rb");
  std::string what;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &what, png_error_fn,
                                           png_warning_fn);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error(ErrorKind::Runtime, "libpng allocation failed");
  }
  PngRaster r;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error(ErrorKind::Validation, path.string() + ": PNG decode failed: " + what);
  }
  png_init_io(png, f.get());
  png_read_info(png, info);
  r.width = png_get_image_width(png, info);
  r.height = png_get_image_height(png, info);
  r.bit_depth = png_get_bit_depth(png, info);
  r.color_type = png_get_color_type(png, info);

  if (want_rgb8) {
    if (r.bit_depth == 16) png_set_strip_16(png);
    if (r.color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (r.color_type == PNG_COLOR_TYPE_GRAY || r.color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
      if (r.bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
      png_set_gray_to_rgb(png);
    }
    if (r.color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  } else {
    if (r.color_type != PNG_COLOR_TYPE_GRAY) {
      png_destroy_read_struct(&png, &info, nullptr);
      throw Error(ErrorKind::Validation,
                  path.string() + ": thermal PNG must be single-channel grayscale");
    }
    if (r.bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (r.bit_depth == 16) png_set_swap(png);  // host little-endian samples
  }
  png_read_update_info(png, info);
  r.rowbytes = png_get_rowbytes(png, info);
  r.bit_depth = png_get_bit_depth(png, info);
  r.data.resize(r.rowbytes * r.height);
  rows.resize(r.height);
  for (png_uint_32 y = 0; y < r.height; ++y) rows[y] = r.data.data() + y * r.rowbytes;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return r;
}

void encode_png(const fs::path& path, std::size_t width, std::size_t height, int bit_depth,
                int color_type, const std::vector<std::uint8_t>& raster, std::size_t rowbytes) {
  FilePtr f = open_file(path, "wb");
  std::string what;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &what, png_error_fn,
                                            png_warning_fn);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    throw Error(ErrorKind::Runtime, "libpng allocation failed");
  }
  std::vector<png_const_bytep> rows(height);
  for (std::size_t y = 0; y < height; ++y) rows[y] = raster.data() + y * rowbytes;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error(ErrorKind::Io, path.string() + ": PNG encode failed: " + what);
  }
  png_init_io(png, f.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height),
               bit_depth, color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_rows(png, const_cast<png_bytepp>(rows.data()), static_cast<png_uint_32>(height));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace

ThermalImage read_thermal(const fs::path& path) {
  const auto buf = slurp(path);
  static constexpr std::uint8_t kPngSig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (buf.size() >= 2 && buf[0] == 'P' && buf[1] == '5') return decode_pgm(buf, path);
  if (buf.size() >= 8 && std::memcmp(buf.data(), kPngSig, 8) == 0) {
    const PngRaster r = decode_png(path, false);
    std::vector<std::uint16_t> px(static_cast<std::size_t>(r.width) * r.height);
    for (std::size_t y = 0; y < r.height; ++y) {
      const std::uint8_t* row = r.data.data() + y * r.rowbytes;
      for (std::size_t x = 0; x < r.width; ++x) {
        px[y * r.width + x] = r.bit_depth == 16
                                  ? static_cast<std::uint16_t>(row[2 * x] | row[2 * x + 1] << 8)
                                  : row[x];
      }
    }
    return ThermalImage(r.width, r.height, std::move(px));
  }
  throw Error(ErrorKind::Validation, path.string() + ": not a PGM (P5) or PNG file");
}

void write_pgm16(const fs::path& path, const ThermalImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << "P5\n" << img.width() << ' ' << img.height() << "\n65535\n";
  std::vector<char> raster(img.pixels().size() * 2);
  for (std::size_t i = 0; i < img.pixels().size(); ++i) {
    raster[2 * i] = static_cast<char>(img.pixels()[i] >> 8);
    raster[2 * i + 1] = static_cast<char>(img.pixels()[i] & 0xff);
  }
  out.write(raster.data(), static_cast<std::streamsize>(raster.size()));
  if (!out) throw Error(ErrorKind::Io, "write failed: " + path.string());
}

void write_png_gray16(const fs::path& path, const ThermalImage& img) {
  std::vector<std::uint8_t> raster(img.pixels().size() * 2);
  for (std::size_t i = 0; i < img.pixels().size(); ++i) {
    raster[2 * i] = static_cast<std::uint8_t>(img.pixels()[i] >> 8);  // PNG is big-endian
    raster[2 * i + 1] = static_cast<std::uint8_t>(img.pixels()[i] & 0xff);
  }
  encode_png(path, img.width(), img.height(), 16, PNG_COLOR_TYPE_GRAY, raster, img.width() * 2);
}

void write_png_rgb(const fs::path& path, const RgbImage& img) {
  const std::vector<std::uint8_t> raster(img.bytes().begin(), img.bytes().end());
  encode_png(path, img.width(), img.height(), 8, PNG_COLOR_TYPE_RGB, raster, img.width() * 3);
}

RgbImage read_png_rgb(const fs::path& path) {
  PngRaster r = decode_png(path, true);
  std::vector<std::uint8_t> bytes;
  bytes.reserve(static_cast<std::size_t>(r.width) * r.height * 3);
  for (std::size_t y = 0; y < r.height; ++y) {
    const std::uint8_t* row = r.data.data() + y * r.rowbytes;
    bytes.insert(bytes.end(), row, row + r.width * 3);
  }
  return RgbImage(r.width, r.height, std::move(bytes));
}

}  // namespace iris
