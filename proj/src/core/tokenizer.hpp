#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace iris {

// Byte-level BPE tokenizer compatible with the CLIP text encoder.
//
// The vocabulary is rebuilt from the merges file the same way the reference
// tokenizer does it: 256 byte symbols, the same 256 with an end-of-word
// marker, one entry per merge, then <|startoftext|> and <|endoftext|>.
//
// Text cleanup is limited to whitespace collapsing and ASCII lower-casing;
// there is no HTML unescaping or mojibake repair. Letter classification
// treats every non-ASCII code point as a letter.
class ClipTokenizer {
 public:
  static constexpr std::size_t kContextLength = 77;
  // Number of merges the reference tokenizer keeps from the file.
  static constexpr std::size_t kMaxMerges = 49152 - 256 - 2;

  // `merges_text`: the merges file contents; the first line is a version
  // header and is skipped.
  explicit ClipTokenizer(std::string_view merges_text);

  // Loads a merges file, plain text or gzip (".gz").
  static ClipTokenizer from_file(const std::filesystem::path& path);

  std::int32_t sot() const noexcept { return sot_; }
  std::int32_t eot() const noexcept { return eot_; }
  std::size_t vocab_size() const noexcept { return encoder_.size(); }

  // BPE token ids without start/end markers.
  std::vector<std::int32_t> encode(std::string_view text) const;

  // [sot, ids..., eot] zero-padded to kContextLength. Throws Validation when
  // the text does not fit.
  std::vector<std::int32_t> tokenize(std::string_view text) const;

 private:
  std::vector<std::string> bpe(const std::string& token) const;

  std::unordered_map<std::string, std::int32_t> encoder_;
  std::map<std::pair<std::string, std::string>, std::size_t> ranks_;
  std::vector<std::string> byte_symbol_;  // byte -> unicode symbol (UTF-8)
  std::int32_t sot_ = 0;
  std::int32_t eot_ = 0;
};

// Pre-tokenizer split, exposed for tests.
std::vector<std::string> clip_pretokenize(std::string_view cleaned_lower_text);

}  // namespace iris
