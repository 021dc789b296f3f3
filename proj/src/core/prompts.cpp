#include "prompts.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <set>

#include "colormap.hpp"

namespace iris {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(std::string_view source, std::size_t line, const std::string& why) {
  throw Error(ErrorKind::Validation, std::string(source) + ":" + std::to_string(line) + ": " + why);
}

// Value of a "key: value" directive, or nullopt when `line` is not one.
std::optional<std::string_view> directive(std::string_view line, std::string_view key) {
  if (line.size() <= key.size() || to_lower_ascii(line.substr(0, key.size())) != key) {
    return std::nullopt;
  }
  const std::string_view rest = trim(line.substr(key.size()));
  if (rest.empty() || rest.front() != ':') return std::nullopt;
  return trim(rest.substr(1));
}

}  // namespace

PromptBank parse_prompt_bank(std::string_view text, std::string_view source) {
  PromptBank bank;
  bool have_version = false;
  bool have_variant = false;
  std::array<bool, 2> seen_section{false, false};
  std::optional<ClassLabel> section;
  std::array<std::set<std::string, std::less<>>, 2> unique;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    const std::string_view line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    if (!section) {
      if (auto v = directive(line, "bank_version")) {
        if (*v != std::to_string(kPromptBankVersion)) {
          fail(source, line_no, "unsupported bank_version '" + std::string(*v) + "'");
        }
        have_version = true;
        continue;
      }
      if (auto v = directive(line, "variant")) {
        const auto mode = parse_colormap(*v);
        if (!mode) fail(source, line_no, "unknown variant '" + std::string(*v) + "'");
        bank.variant = *mode;
        have_variant = true;
        continue;
      }
    }
    if (line.front() == '[' && line.back() == ']') {
      const std::string_view name = trim(line.substr(1, line.size() - 2));
      const auto label = parse_label(name);
      if (!label) fail(source, line_no, "unknown class section '" + std::string(name) + "'");
      if (!have_version) fail(source, line_no, "bank_version must precede class sections");
      if (!have_variant) fail(source, line_no, "variant must precede class sections");
      const auto idx = static_cast<std::size_t>(*label);
      if (seen_section[idx]) fail(source, line_no, "repeated section [" + std::string(name) + "]");
      seen_section[idx] = true;
      section = label;
      continue;
    }
    if (!section) fail(source, line_no, "prompt outside a class section");

    const auto idx = static_cast<std::size_t>(*section);
    if (!unique[idx].emplace(line).second) {
      fail(source, line_no, "duplicate prompt in [" + std::string(to_string(*section)) + "]: " +
                                std::string(line));
    }
    bank.prompts[idx].emplace_back(line);
  }

  if (!have_version) fail(source, line_no, "missing bank_version");
  if (!have_variant) fail(source, line_no, "missing variant");
  for (ClassLabel c : kAllLabels) {
    const auto idx = static_cast<std::size_t>(c);
    if (!seen_section[idx]) {
      throw Error(ErrorKind::Validation,
                  std::string(source) + ": missing class [" + std::string(to_string(c)) + "]");
    }
    if (bank.prompts[idx].empty()) {
      throw Error(ErrorKind::Validation, std::string(source) + ": empty prompt list for [" +
                                             std::string(to_string(c)) + "]");
    }
  }
  return bank;
}

PromptBank load_prompt_bank(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open prompt bank " + path.string());
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_prompt_bank(text, path.string());
}

fs::path default_bank_path(ColormapMode mode) {
  return asset_dir() / "banks" / ("bank_" + std::string(to_string(mode)) + ".txt");
}

Embedding compute_centroid(std::span<const Embedding> unit_embeddings) {
  if (unit_embeddings.empty()) throw Error(ErrorKind::InvalidArgument, "centroid of no embeddings");
  const std::size_t dim = unit_embeddings.front().dim();
  for (const auto& e : unit_embeddings) {
    if (e.dim() != dim) throw Error(ErrorKind::InvalidArgument, "centroid inputs differ in dim");
    if (!is_unit(e)) throw Error(ErrorKind::InvalidArgument, "centroid inputs must be unit-norm");
  }

  // Summing in a canonical order makes the result independent of input
  // order down to the last bit.
  std::vector<const Embedding*> order;
  for (const auto& e : unit_embeddings) order.push_back(&e);
  std::sort(order.begin(), order.end(), [](const Embedding* a, const Embedding* b) {
    return std::lexicographical_compare(a->values().begin(), a->values().end(),
                                        b->values().begin(), b->values().end());
  });

  std::vector<double> mean(dim, 0.0);
  for (const Embedding* e : order) {
    for (std::size_t i = 0; i < dim; ++i) mean[i] += (*e)[i];
  }
  const double k = static_cast<double>(unit_embeddings.size());
  for (double& v : mean) v /= k;

  const Embedding m(std::move(mean));
  if (!(m.norm() > kDegenerateNorm)) throw Error(ErrorKind::Validation, "antipodal prompt set");
  return l2_normalize(m);
}

ClassRepresentations build_centroids(const PromptBank& bank, const EmbeddingProvider& provider) {
  std::array<Embedding, 2> centroids;
  for (ClassLabel c : kAllLabels) {
    std::vector<Embedding> unit;
    for (const auto& prompt : bank.of(c)) unit.push_back(l2_normalize(provider.embed_text(prompt)));
    centroids[static_cast<std::size_t>(c)] = compute_centroid(unit);
  }
  return ClassRepresentations(std::move(centroids[0]), std::move(centroids[1]));
}

SinglePromptSelection select_single_prompt(const PromptBank& bank,
                                           std::span<const Embedding> image_embeddings,
                                           const EmbeddingProvider& provider) {
  if (image_embeddings.empty()) {
    throw Error(ErrorKind::InvalidArgument, "single-prompt selection needs at least one image");
  }
  std::vector<Embedding> images;
  images.reserve(image_embeddings.size());
  for (const auto& e : image_embeddings) images.push_back(l2_normalize(e));

  SinglePromptSelection sel;
  for (ClassLabel c : kAllLabels) {
    const auto idx = static_cast<std::size_t>(c);
    const auto& prompts = bank.of(c);
    auto& means = sel.mean_similarity[idx];
    for (const auto& prompt : prompts) {
      const Embedding t = l2_normalize(provider.embed_text(prompt));
      double sum = 0.0;
      for (const auto& v : images) sum += cosine_similarity(t, v);
      means.push_back(sum / static_cast<double>(images.size()));
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < means.size(); ++k) {
      if (means[k] > means[best]) best = k;
    }
    sel.index[idx] = best;
    sel.prompt[idx] = prompts[best];
  }
  return sel;
}

SinglePromptSelection select_single_prompt(const PromptBank& bank, std::span<const RgbImage> images,
                                           const EmbeddingProvider& provider) {
  std::vector<Embedding> embs;
  embs.reserve(images.size());
  for (const auto& img : images) embs.push_back(provider.embed_image(img));
  return select_single_prompt(bank, std::span<const Embedding>(embs), provider);
}

ClassRepresentations single_prompt_representations(const SinglePromptSelection& sel,
                                                   const EmbeddingProvider& provider) {
  return ClassRepresentations(l2_normalize(provider.embed_text(sel.of(ClassLabel::Present))),
                              l2_normalize(provider.embed_text(sel.of(ClassLabel::Absent))));
}

}  // namespace iris
