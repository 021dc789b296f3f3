#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>

#include "embed.hpp"

namespace iris {

// Exported encoder pair.
//
// Image graph: input float32 [1, 3, S, S] (RGB planes, standardized with
// `mean`/`stddev` after scaling to [0, 1]), output [1, D].
// Text graph: input float32 [1, 77] holding token ids, output [1, D].
//
// The channel statistics default to the values the ViT-B/32 encoder was
// trained with; they belong to the provider, not the preprocessing stage.
struct GraphProviderConfig {
  std::filesystem::path image_graph;
  std::filesystem::path text_graph;
  std::filesystem::path tokenizer_merges;
  std::size_t input_size = 224;
  std::array<float, 3> mean{0.48145466f, 0.4578275f, 0.40821073f};
  std::array<float, 3> stddev{0.26862954f, 0.26130258f, 0.27577711f};
  std::string provider_id = "clip-vit-b32-graph";
};

// Loads both graphs and the tokenizer, then runs one probe inference per
// graph to confirm the input signature and read the output width. Image and
// text widths must agree.
std::unique_ptr<EmbeddingProvider> make_graph_provider(const GraphProviderConfig& cfg);

}  // namespace iris
