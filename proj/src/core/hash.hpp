#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "image.hpp"

namespace iris {

using Digest = std::array<std::uint8_t, 32>;

Digest sha256(std::span<const std::uint8_t> data);
Digest sha256(std::string_view data);

std::string to_hex(const Digest& d);
// Throws InvalidArgument unless given exactly 64 hex characters.
Digest digest_from_hex(std::string_view hex);

// Content key of a model-ready image:
//   SHA-256("IRIS/image/v1" NUL | u32le width | u32le height | RGB bytes)
Digest image_key(const RgbImage& img);

// Content key of a prompt:
//   SHA-256("IRIS/text/v1" NUL | UTF-8 bytes of the prompt as stored in the bank)
Digest text_key(std::string_view text);

}  // namespace iris
