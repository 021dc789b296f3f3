#include "tokenizer.hpp"

#include <zlib.h>

#include <limits>
#include <sstream>

#include "types.hpp"

namespace iris {

namespace {

std::string utf8(std::uint32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else {
    out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  }
  return out;
}

// Printable bytes map to themselves; the rest are shifted to 256 + n so
// every byte has a visible, non-whitespace symbol.
std::vector<std::string> bytes_to_unicode() {
  std::vector<std::string> table(256);
  std::vector<bool> direct(256, false);
  for (int b = '!'; b <= '~'; ++b) direct[b] = true;
  for (int b = 0xa1; b <= 0xac; ++b) direct[b] = true;
  for (int b = 0xae; b <= 0xff; ++b) direct[b] = true;
  std::uint32_t n = 0;
  for (int b = 0; b < 256; ++b) {
    table[b] = direct[b] ? utf8(static_cast<std::uint32_t>(b)) : utf8(256 + n++);
  }
  return table;
}

bool is_space(unsigned char c) { return c == ' ' || (c >= '\t' && c <= '\r'); }
bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }
bool is_letter(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

// Length of the UTF-8 sequence starting at s[i] (1 for invalid lead bytes).
std::size_t char_len(std::string_view s, std::size_t i) {
  const auto c = static_cast<unsigned char>(s[i]);
  std::size_t n = 1;
  if (c >= 0xf0) n = 4;
  else if (c >= 0xe0) n = 3;
  else if (c >= 0xc0) n = 2;
  return std::min(n, s.size() - i);
}

std::vector<std::string> split_symbols(std::string_view s) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < s.size();) {
    const std::size_t n = char_len(s, i);
    out.emplace_back(s.substr(i, n));
    i += n;
  }
  return out;
}

std::string clean_text(std::string_view text) {
  std::string out;
  bool pending_space = false;
  for (unsigned char c : text) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c));
  }
  return out;
}

std::string read_merges_file(const std::filesystem::path& path) {
  gzFile f = gzopen(path.c_str(), "rb");  // transparently reads plain files too
  if (!f) throw Error(ErrorKind::Io, "cannot open tokenizer merges " + path.string());
  std::string out;
  char buf[1 << 16];
  int n = 0;
  while ((n = gzread(f, buf, sizeof buf)) > 0) out.append(buf, static_cast<std::size_t>(n));
  const bool failed = n < 0;
  gzclose(f);
  if (failed) throw Error(ErrorKind::Io, "failed reading tokenizer merges " + path.string());
  return out;
}

}  // namespace

std::vector<std::string> clip_pretokenize(std::string_view s) {
  static constexpr std::string_view kSpecials[] = {"<|startoftext|>", "<|endoftext|>"};
  static constexpr std::string_view kContractions[] = {"'s", "'t", "'re", "'ve", "'m", "'ll", "'d"};
  std::vector<std::string> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view p) { return s.substr(i, p.size()) == p; };

  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    bool matched = false;
    for (auto sp : kSpecials) {
      if (starts(sp)) {
        out.emplace_back(sp);
        i += sp.size();
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (c == '\'') {
      for (auto ct : kContractions) {
        if (starts(ct)) {
          out.emplace_back(ct);
          i += ct.size();
          matched = true;
          break;
        }
      }
      if (matched) continue;
    }
    if (is_letter(c)) {
      const std::size_t start = i;
      while (i < s.size() && is_letter(static_cast<unsigned char>(s[i]))) i += char_len(s, i);
      out.emplace_back(s.substr(start, i - start));
    } else if (is_digit(c)) {
      out.emplace_back(s.substr(i, 1));
      ++i;
    } else if (is_space(c)) {
      ++i;
    } else {
      const std::size_t start = i;
      while (i < s.size()) {
        const auto d = static_cast<unsigned char>(s[i]);
        if (is_space(d) || is_letter(d) || is_digit(d)) break;
        ++i;
      }
      out.emplace_back(s.substr(start, i - start));
    }
  }
  return out;
}

ClipTokenizer::ClipTokenizer(std::string_view merges_text) : byte_symbol_(bytes_to_unicode()) {
  std::vector<std::pair<std::string, std::string>> merges;
  std::istringstream in{std::string(merges_text)};
  std::string line;
  std::getline(in, line);  // version header
  while (merges.size() < kMaxMerges && std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a >> b) || (fields >> extra)) {
      throw Error(ErrorKind::Validation, "malformed merge line '" + line + "'");
    }
    merges.emplace_back(std::move(a), std::move(b));
  }
  if (merges.empty()) throw Error(ErrorKind::Validation, "tokenizer merges file has no merges");

  // Base vocabulary lists the directly mapped bytes first, then the shifted ones.
  std::vector<std::string> base;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& s : byte_symbol_) {
      const bool shifted = static_cast<unsigned char>(s[0]) >= 0xc4;  // U+0100 and up
      if (shifted == (pass == 1)) base.push_back(s);
    }
  }
  std::vector<std::string> vocab = base;
  for (const auto& s : base) vocab.push_back(s + "</w>");
  for (std::size_t r = 0; r < merges.size(); ++r) {
    vocab.push_back(merges[r].first + merges[r].second);
    ranks_.emplace(merges[r], r);
  }
  vocab.emplace_back("<|startoftext|>");
  vocab.emplace_back("<|endoftext|>");
  for (std::size_t id = 0; id < vocab.size(); ++id) {
    // Later duplicates overwrite earlier ids, like the dict(zip(...)) build.
    encoder_[vocab[id]] = static_cast<std::int32_t>(id);
  }
  sot_ = encoder_.at("<|startoftext|>");
  eot_ = encoder_.at("<|endoftext|>");
}

ClipTokenizer ClipTokenizer::from_file(const std::filesystem::path& path) {
  return ClipTokenizer(read_merges_file(path));
}

std::vector<std::string> ClipTokenizer::bpe(const std::string& token) const {
  std::vector<std::string> word = split_symbols(token);
  if (word.empty()) return {};
  word.back() += "</w>";

  while (word.size() > 1) {
    std::size_t best_rank = std::numeric_limits<std::size_t>::max();
    std::pair<std::string, std::string> best;
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
      const auto it = ranks_.find({word[i], word[i + 1]});
      if (it != ranks_.end() && it->second < best_rank) {
        best_rank = it->second;
        best = it->first;
      }
    }
    if (best_rank == std::numeric_limits<std::size_t>::max()) break;

    std::vector<std::string> merged;
    merged.reserve(word.size());
    for (std::size_t i = 0; i < word.size();) {
      if (i + 1 < word.size() && word[i] == best.first && word[i + 1] == best.second) {
        merged.push_back(best.first + best.second);
        i += 2;
      } else {
        merged.push_back(word[i]);
        ++i;
      }
    }
    word = std::move(merged);
  }
  return word;
}

std::vector<std::int32_t> ClipTokenizer::encode(std::string_view text) const {
  std::vector<std::int32_t> ids;
  for (const std::string& piece : clip_pretokenize(clean_text(text))) {
    if (piece == "<|startoftext|>" || piece == "<|endoftext|>") {
      ids.push_back(encoder_.at(piece));
      continue;
    }
    std::string mapped;
    for (unsigned char b : piece) mapped += byte_symbol_[b];
    for (const std::string& sym : bpe(mapped)) {
      const auto it = encoder_.find(sym);
      if (it == encoder_.end()) {
        throw Error(ErrorKind::Validation, "token '" + sym + "' missing from vocabulary");
      }
      ids.push_back(it->second);
    }
  }
  return ids;
}

std::vector<std::int32_t> ClipTokenizer::tokenize(std::string_view text) const {
  const auto body = encode(text);
  if (body.size() + 2 > kContextLength) {
    throw Error(ErrorKind::Validation, "prompt too long for context length " +
                                           std::to_string(kContextLength) + ": " +
                                           std::string(text));
  }
  std::vector<std::int32_t> out(kContextLength, 0);
  out[0] = sot_;
  std::copy(body.begin(), body.end(), out.begin() + 1);
  out[body.size() + 1] = eot_;
  return out;
}

}  // namespace iris
