#include <gtest/gtest.h>

#include "image.hpp"
#include "support.hpp"
#include "types.hpp"

namespace iris {
namespace {

TEST(Types, ParseIsCaseInsensitiveAndCanonical) {
  EXPECT_EQ(parse_label("PRESENT"), ClassLabel::Present);
  EXPECT_EQ(parse_label("Absent"), ClassLabel::Absent);
  EXPECT_EQ(parse_label("maybe"), std::nullopt);
  EXPECT_EQ(parse_condition("Hot"), Condition::Hot);
  EXPECT_EQ(parse_condition("ROOM"), Condition::Room);
  EXPECT_EQ(parse_colormap("Viridis"), ColormapMode::Viridis);
  EXPECT_EQ(parse_colormap("jet"), std::nullopt);
  EXPECT_EQ(parse_strategy("SINGLE"), StrategyKind::Single);
  EXPECT_EQ(parse_strategy("ensemble"), std::nullopt);
  EXPECT_EQ(to_string(ClassLabel::Present), "present");
  EXPECT_EQ(to_string(Condition::Room), "room");
  EXPECT_EQ(to_string(ColormapMode::Grayscale), "grayscale");
  EXPECT_EQ(to_string(StrategyKind::Centroid), "centroid");
}

TEST(Types, RoundTripEveryEnumValue) {
  for (auto v : kAllLabels) EXPECT_EQ(parse_label(to_string(v)), v);
  for (auto v : kAllConditions) EXPECT_EQ(parse_condition(to_string(v)), v);
  for (auto v : kAllColormaps) EXPECT_EQ(parse_colormap(to_string(v)), v);
  for (auto v : kAllStrategies) EXPECT_EQ(parse_strategy(to_string(v)), v);
  EXPECT_EQ(other(ClassLabel::Present), ClassLabel::Absent);
  EXPECT_EQ(other(ClassLabel::Absent), ClassLabel::Present);
}

TEST(Image, ThermalDimensionsChecked) {
  EXPECT_IRIS_ERROR(ThermalImage(0, 1, std::uint16_t{0}), ErrorKind::InvalidArgument, "at least 1x1");
  EXPECT_IRIS_ERROR(ThermalImage(2, 2, std::vector<std::uint16_t>{1, 2, 3}), ErrorKind::InvalidArgument,
                    "");
  ThermalImage img(3, 2, std::vector<std::uint16_t>{1, 2, 3, 4, 5, 6});
  EXPECT_EQ(img.at(2, 1), 6);
  EXPECT_EQ(img.at(0, 1), 4);
}

TEST(Image, NormalizedRejectsOutOfRange) {
  EXPECT_IRIS_ERROR(NormalizedImage(1, 1, {1.5}), ErrorKind::InvalidArgument, "outside [0, 1]");
  EXPECT_IRIS_ERROR(NormalizedImage(1, 1, {-0.1}), ErrorKind::InvalidArgument, "outside [0, 1]");
  EXPECT_NO_THROW(NormalizedImage(2, 1, {0.0, 1.0}));
}

TEST(Image, RgbInterleaved) {
  RgbImage img(2, 1);
  img.set(1, 0, {10, 20, 30});
  EXPECT_EQ(img.at(1, 0), (Rgb{10, 20, 30}));
  const std::vector<std::uint8_t> expect{0, 0, 0, 10, 20, 30};
  EXPECT_TRUE(std::equal(img.bytes().begin(), img.bytes().end(), expect.begin(), expect.end()));
  EXPECT_IRIS_ERROR(RgbImage(2, 2, std::vector<std::uint8_t>(11)), ErrorKind::InvalidArgument, "");
}

}  // namespace
}  // namespace iris
