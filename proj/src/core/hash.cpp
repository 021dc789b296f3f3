#include "hash.hpp"

#include <openssl/evp.h>

#include <memory>

#include "types.hpp"

namespace iris {

namespace {

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new(), &EVP_MD_CTX_free) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) {
      throw Error(ErrorKind::Runtime, "SHA-256 init failed");
    }
  }

  Sha256& update(const void* data, std::size_t n) {
    if (n > 0 && EVP_DigestUpdate(ctx_.get(), data, n) != 1) {
      throw Error(ErrorKind::Runtime, "SHA-256 update failed");
    }
    return *this;
  }

  Sha256& update_u32le(std::uint32_t v) {
    const std::uint8_t b[4] = {static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v >> 8),
                               static_cast<std::uint8_t>(v >> 16),
                               static_cast<std::uint8_t>(v >> 24)};
    return update(b, 4);
  }

  Digest finish() {
    Digest out{};
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(ctx_.get(), out.data(), &len) != 1 || len != out.size()) {
      throw Error(ErrorKind::Runtime, "SHA-256 finalize failed");
    }
    return out;
  }

 private:
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

constexpr std::string_view kImageTag{"IRIS/image/v1\0", 14};
constexpr std::string_view kTextTag{"IRIS/text/v1\0", 13};

}  // namespace

Digest sha256(std::span<const std::uint8_t> data) {
  return Sha256().update(data.data(), data.size()).finish();
}

Digest sha256(std::string_view data) { return Sha256().update(data.data(), data.size()).finish(); }

std::string to_hex(const Digest& d) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(64);
  for (std::uint8_t b : d) {
    out.push_back(kHex[b >> 4]);
    out.push_back(kHex[b & 0xf]);
  }
  return out;
}

Digest digest_from_hex(std::string_view hex) {
  auto nibble = [&](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw Error(ErrorKind::InvalidArgument, "bad hex digit in key: " + std::string(hex));
  };
  if (hex.size() != 64) {
    throw Error(ErrorKind::InvalidArgument, "key must be 64 hex characters: " + std::string(hex));
  }
  Digest d{};
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
  }
  return d;
}

Digest image_key(const RgbImage& img) {
  Sha256 h;
  h.update(kImageTag.data(), kImageTag.size());
  h.update_u32le(static_cast<std::uint32_t>(img.width()));
  h.update_u32le(static_cast<std::uint32_t>(img.height()));
  h.update(img.bytes().data(), img.bytes().size());
  return h.finish();
}

Digest text_key(std::string_view text) {
  return Sha256().update(kTextTag.data(), kTextTag.size()).update(text.data(), text.size()).finish();
}

}  // namespace iris
