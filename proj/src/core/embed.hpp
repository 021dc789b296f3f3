#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "image.hpp"

namespace iris {

// Vector in the shared image/text space. Components are kept in double so
// downstream similarity arithmetic does not pick up float rounding; storage
// formats narrow to float32.
class Embedding {
 public:
  Embedding() = default;
  explicit Embedding(std::vector<double> values) : values_(std::move(values)) {}
  Embedding(std::initializer_list<double> values) : values_(values) {}

  std::size_t dim() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  double norm() const;

  bool operator==(const Embedding&) const = default;

 private:
  std::vector<double> values_;
};

inline constexpr double kDegenerateNorm = 1e-12;

// Throws Validation("degenerate embedding") when the norm is <= 1e-12.
Embedding l2_normalize(const Embedding& e);

Embedding scaled(const Embedding& e, double alpha);

// Dual-encoder contract. Outputs are not assumed normalized. Implementations
// are deterministic and safe to call concurrently after construction.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  virtual Embedding embed_image(const RgbImage& img) const = 0;
  virtual Embedding embed_text(std::string_view text) const = 0;
  virtual std::size_t dim() const = 0;
  virtual std::string provider_id() const = 0;
};

// Hash-seeded pseudorandom vectors: SHA-256 over (seed, modality, input
// bytes) seeds a SplitMix64 stream that fills `dim` components uniform in
// [-1, 1).
std::unique_ptr<EmbeddingProvider> make_stub_provider(std::uint64_t seed, std::size_t dim = 512);

}  // namespace iris
