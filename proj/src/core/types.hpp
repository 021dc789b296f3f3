#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace iris {

enum class ErrorKind {
  InvalidArgument,  // caller passed something malformed
  Validation,       // input data failed a schema or invariant check
  Io,               // file missing, unreadable or unwritable
  NotFound,         // lookup by key/id failed
  Runtime,          // anything else raised while computing
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

enum class ClassLabel : std::uint8_t { Present = 0, Absent = 1 };
enum class Condition : std::uint8_t { Hot = 0, Room = 1 };
enum class ColormapMode : std::uint8_t { Grayscale = 0, Magma = 1, Viridis = 2 };
enum class StrategyKind : std::uint8_t { Single = 0, Centroid = 1 };

inline constexpr std::array kAllLabels{ClassLabel::Present, ClassLabel::Absent};
inline constexpr std::array kAllConditions{Condition::Hot, Condition::Room};
inline constexpr std::array kAllColormaps{ColormapMode::Grayscale, ColormapMode::Magma,
                                          ColormapMode::Viridis};
inline constexpr std::array kAllStrategies{StrategyKind::Single, StrategyKind::Centroid};

std::string_view to_string(ClassLabel v);
std::string_view to_string(Condition v);
std::string_view to_string(ColormapMode v);
std::string_view to_string(StrategyKind v);

// Case-insensitive parsers; nullopt on unknown spelling.
std::optional<ClassLabel> parse_label(std::string_view s);
std::optional<Condition> parse_condition(std::string_view s);
std::optional<ColormapMode> parse_colormap(std::string_view s);
std::optional<StrategyKind> parse_strategy(std::string_view s);

std::string to_lower_ascii(std::string_view s);

inline ClassLabel other(ClassLabel c) {
  return c == ClassLabel::Present ? ClassLabel::Absent : ClassLabel::Present;
}

}  // namespace iris
