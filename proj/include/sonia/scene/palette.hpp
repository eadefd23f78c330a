#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sonia/pack/content_pack.hpp"

namespace sonia::scene {

struct Color {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  bool operator==(const Color&) const = default;
};

/// Selection highlight. Never produced by generate_palette.
inline constexpr Color kWhite{255, 255, 255};

/// Hue in degrees (any real, wrapped to [0, 360)), saturation and lightness
/// in [0, 1]. Channels are rounded half away from zero.
Color hsl_to_rgb(double hue_deg, double saturation, double lightness);

/// "#rrggbb", lowercase.
std::string to_hex(Color c);
std::optional<Color> from_hex(std::string_view hex);

double rgb_distance(Color a, Color b);

/// Smallest Euclidean RGB distance over all pairs; infinity for fewer than two.
double min_pairwise_distance(std::span<const Color> colors);

inline constexpr double kPaletteSaturation = 0.70;
inline constexpr double kPaletteLightness = 0.50;
inline constexpr double kPaletteAltLightness = 0.35;
inline constexpr double kMinPaletteDistance = 60.0;

struct Palette {
  std::vector<std::pair<std::string, Color>> assignments;  // subsystem id -> color, list order

  std::optional<Color> color_of(std::string_view subsystem_id) const;
  bool operator==(const Palette&) const = default;
};

/// Item i of k gets hue 360*i/k at S=0.70, L=0.50. If any two of those
/// colors are closer than kMinPaletteDistance (k >= 13), odd items drop to
/// L=0.35 instead. Color follows list position, not id.
Palette generate_palette(std::span<const pack::SubsystemDef> subsystems);

/// The k colors generate_palette would assign, without ids.
std::vector<Color> palette_colors(std::size_t k);

/// Shades of red (hue 0, S=0.70) with lightness evenly spaced from 0.25
/// (rank 0, darkest) to 0.65 (rank count-1).
Color red_shade(std::size_t rank, std::size_t count);

}  // namespace sonia::scene
