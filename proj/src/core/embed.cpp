#include "embed.hpp"

#include <cmath>

#include "hash.hpp"
#include "rng.hpp"
#include "types.hpp"

namespace iris {

double Embedding::norm() const {
  double sum = 0.0;
  for (double v : values_) sum += v * v;
  return std::sqrt(sum);
}

Embedding l2_normalize(const Embedding& e) {
  const double n = e.norm();
  if (!(n > kDegenerateNorm)) throw Error(ErrorKind::Validation, "degenerate embedding");
  std::vector<double> out(e.values().begin(), e.values().end());
  for (double& v : out) v /= n;
  return Embedding(std::move(out));
}

Embedding scaled(const Embedding& e, double alpha) {
  std::vector<double> out(e.values().begin(), e.values().end());
  for (double& v : out) v *= alpha;
  return Embedding(std::move(out));
}

namespace {

class StubProvider final : public EmbeddingProvider {
 public:
  StubProvider(std::uint64_t seed, std::size_t dim) : seed_(seed), dim_(dim) {
    if (dim_ < 1) throw Error(ErrorKind::InvalidArgument, "stub provider dim must be >= 1");
  }

  Embedding embed_image(const RgbImage& img) const override {
    return vector_for('I', image_key(img));
  }

  Embedding embed_text(std::string_view text) const override {
    return vector_for('T', text_key(text));
  }

  std::size_t dim() const override { return dim_; }

  std::string provider_id() const override {
    return "stub:seed=" + std::to_string(seed_) + ":dim=" + std::to_string(dim_);
  }

 private:
  Embedding vector_for(char modality, const Digest& content) const {
    std::vector<std::uint8_t> buf(8 + 1 + content.size());
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<std::uint8_t>(seed_ >> (8 * i));
    buf[8] = static_cast<std::uint8_t>(modality);
    std::copy(content.begin(), content.end(), buf.begin() + 9);
    const Digest d = sha256(buf);
    std::uint64_t state = 0;
    for (int i = 0; i < 8; ++i) state |= static_cast<std::uint64_t>(d[i]) << (8 * i);

    SplitMix64 rng(state);
    std::vector<double> values(dim_);
    for (double& v : values) {
      // float-representable so cached copies are bit-identical
      v = static_cast<float>(2.0 * rng.uniform01() - 1.0);
    }
    return Embedding(std::move(values));
  }

  std::uint64_t seed_;
  std::size_t dim_;
};

}  // namespace

std::unique_ptr<EmbeddingProvider> make_stub_provider(std::uint64_t seed, std::size_t dim) {
  return std::make_unique<StubProvider>(seed, dim);
}

}  // namespace iris
