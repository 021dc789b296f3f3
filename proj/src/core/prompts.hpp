#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "classify.hpp"
#include "embed.hpp"
#include "image.hpp"
#include "types.hpp"

namespace iris {

struct PromptBank {
  ColormapMode variant = ColormapMode::Grayscale;
  std::array<std::vector<std::string>, 2> prompts;  // indexed by ClassLabel

  const std::vector<std::string>& of(ClassLabel c) const {
    return prompts[static_cast<std::size_t>(c)];
  }

  bool operator==(const PromptBank&) const = default;
};

inline constexpr int kPromptBankVersion = 1;

// Bank file format:
//
//   # comment
//   bank_version: 1
//   variant: magma
//   [present]
//   one prompt per line
//   [absent]
//   ...
//
// Lines are trimmed; blank lines and '#' comments are ignored. Both class
// sections are required, each with at least one prompt and no duplicates.
PromptBank parse_prompt_bank(std::string_view text, std::string_view source);
PromptBank load_prompt_bank(const std::filesystem::path& path);

// Shipped default bank for a colormap variant (asset_dir()/banks/).
std::filesystem::path default_bank_path(ColormapMode mode);

// Mean of unit vectors, renormalized. Throws Validation("antipodal prompt
// set") when the mean is (numerically) zero.
Embedding compute_centroid(std::span<const Embedding> unit_embeddings);

// Per class: embed, normalize, average, renormalize.
ClassRepresentations build_centroids(const PromptBank& bank, const EmbeddingProvider& provider);

struct SinglePromptSelection {
  std::array<std::size_t, 2> index{};               // position in the bank, per class
  std::array<std::string, 2> prompt;                // chosen sentence, per class
  std::array<std::vector<double>, 2> mean_similarity;  // per class, per bank prompt

  const std::string& of(ClassLabel c) const { return prompt[static_cast<std::size_t>(c)]; }
};

// Per class, the prompt with the highest mean cosine similarity to all the
// given image embeddings; ties go to the earliest prompt in bank order.
SinglePromptSelection select_single_prompt(const PromptBank& bank,
                                           std::span<const Embedding> image_embeddings,
                                           const EmbeddingProvider& provider);
SinglePromptSelection select_single_prompt(const PromptBank& bank,
                                           std::span<const RgbImage> images,
                                           const EmbeddingProvider& provider);

// Normalized embeddings of the two selected prompts.
ClassRepresentations single_prompt_representations(const SinglePromptSelection& sel,
                                                   const EmbeddingProvider& provider);

}  // namespace iris
