#include "types.hpp"

#include <algorithm>
#include <cctype>

namespace iris {

std::string_view to_string(ClassLabel v) {
  return v == ClassLabel::Present ? "present" : "absent";
}

std::string_view to_string(Condition v) { return v == Condition::Hot ? "hot" : "room"; }

std::string_view to_string(ColormapMode v) {
  switch (v) {
    case ColormapMode::Grayscale: return "grayscale";
    case ColormapMode::Magma: return "magma";
    case ColormapMode::Viridis: return "viridis";
  }
  return "?";
}

std::string_view to_string(StrategyKind v) {
  return v == StrategyKind::Single ? "single" : "centroid";
}

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

namespace {

template <typename Enum, std::size_t N>
std::optional<Enum> parse_enum(std::string_view s, const std::array<Enum, N>& all) {
  const std::string lowered = to_lower_ascii(s);
  for (Enum v : all) {
    if (to_string(v) == lowered) return v;
  }
  return std::nullopt;
}

}  // namespace

std::optional<ClassLabel> parse_label(std::string_view s) { return parse_enum(s, kAllLabels); }
std::optional<Condition> parse_condition(std::string_view s) {
  return parse_enum(s, kAllConditions);
}
std::optional<ColormapMode> parse_colormap(std::string_view s) {
  return parse_enum(s, kAllColormaps);
}
std::optional<StrategyKind> parse_strategy(std::string_view s) {
  return parse_enum(s, kAllStrategies);
}

}  // namespace iris
