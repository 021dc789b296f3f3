#include "graph_provider.hpp"

#include <opencv2/core.hpp>
#include <opencv2/dnn.hpp>

#include <mutex>
#include <optional>

#include "tokenizer.hpp"
#include "types.hpp"

namespace iris {

namespace fs = std::filesystem;

namespace {

void require_file(const fs::path& p, const char* what) {
  if (p.empty() || !fs::is_regular_file(p)) {
    throw Error(ErrorKind::Io, std::string("missing ") + what + ": " + p.string());
  }
}

// One network plus the lock that serializes forward passes on it.
class Graph {
 public:
  Graph(const fs::path& path, const char* what) : what_(what) {
    try {
      net_ = cv::dnn::readNetFromONNX(path.string());
    } catch (const cv::Exception& e) {
      throw Error(ErrorKind::Validation,
                  std::string("cannot load ") + what + " " + path.string() + ": " + e.what());
    }
    if (net_.empty()) throw Error(ErrorKind::Validation, std::string("empty ") + what);
    net_.setPreferableBackend(cv::dnn::DNN_BACKEND_OPENCV);
    net_.setPreferableTarget(cv::dnn::DNN_TARGET_CPU);
  }

  std::vector<double> run(const cv::Mat& blob) const {
    cv::Mat out;
    {
      std::lock_guard lock(mu_);
      try {
        net_.setInput(blob);
        out = net_.forward().clone();
      } catch (const cv::Exception& e) {
        throw Error(ErrorKind::Validation,
                    std::string(what_) + " signature mismatch: " + e.what());
      }
    }
    if (out.dims < 2 || out.size[0] != 1) {
      throw Error(ErrorKind::Validation, std::string(what_) + " output is not [1, D]");
    }
    cv::Mat flat = out.reshape(1, 1);
    flat.convertTo(flat, CV_64F);
    return std::vector<double>(flat.begin<double>(), flat.end<double>());
  }

 private:
  const char* what_;
  mutable cv::dnn::Net net_;
  mutable std::mutex mu_;
};

class GraphProvider final : public EmbeddingProvider {
 public:
  explicit GraphProvider(const GraphProviderConfig& cfg)
      : cfg_(cfg),
        image_((require_file(cfg.image_graph, "image graph"), cfg.image_graph), "image graph"),
        text_((require_file(cfg.text_graph, "text graph"), cfg.text_graph), "text graph") {
    require_file(cfg.tokenizer_merges, "tokenizer assets");
    tokenizer_.emplace(ClipTokenizer::from_file(cfg.tokenizer_merges));

    const std::size_t s = cfg_.input_size;
    const int image_shape[] = {1, 3, static_cast<int>(s), static_cast<int>(s)};
    const std::size_t image_dim = image_.run(cv::Mat(4, image_shape, CV_32F, cv::Scalar(0))).size();
    const std::size_t text_dim = text_.run(token_blob(tokenizer_->tokenize(""))).size();
    if (image_dim == 0 || image_dim != text_dim) {
      throw Error(ErrorKind::Validation, "encoder widths disagree: image " +
                                             std::to_string(image_dim) + ", text " +
                                             std::to_string(text_dim));
    }
    dim_ = image_dim;
  }

  Embedding embed_image(const RgbImage& img) const override {
    const std::size_t s = cfg_.input_size;
    if (img.width() != s || img.height() != s) {
      throw Error(ErrorKind::InvalidArgument,
                  "image graph expects " + std::to_string(s) + "x" + std::to_string(s) +
                      " input, got " + std::to_string(img.width()) + "x" +
                      std::to_string(img.height()));
    }
    const int shape[] = {1, 3, static_cast<int>(s), static_cast<int>(s)};
    cv::Mat blob(4, shape, CV_32F);
    auto* dst = blob.ptr<float>();
    const auto src = img.bytes();
    const std::size_t plane = s * s;
    for (std::size_t i = 0; i < plane; ++i) {
      for (std::size_t c = 0; c < 3; ++c) {
        const float v = static_cast<float>(src[3 * i + c]) / 255.0f;
        dst[c * plane + i] = (v - cfg_.mean[c]) / cfg_.stddev[c];
      }
    }
    return Embedding(image_.run(blob));
  }

  Embedding embed_text(std::string_view text) const override {
    return Embedding(text_.run(token_blob(tokenizer_->tokenize(text))));
  }

  std::size_t dim() const override { return dim_; }
  std::string provider_id() const override { return cfg_.provider_id; }

 private:
  static cv::Mat token_blob(const std::vector<std::int32_t>& ids) {
    cv::Mat blob(1, static_cast<int>(ids.size()), CV_32F);
    for (std::size_t i = 0; i < ids.size(); ++i) blob.at<float>(0, static_cast<int>(i)) = static_cast<float>(ids[i]);
    return blob;
  }

  GraphProviderConfig cfg_;
  Graph image_;
  Graph text_;
  std::optional<ClipTokenizer> tokenizer_;
  std::size_t dim_ = 0;
};

}  // namespace

std::unique_ptr<EmbeddingProvider> make_graph_provider(const GraphProviderConfig& cfg) {
  return std::make_unique<GraphProvider>(cfg);
}

}  // namespace iris
