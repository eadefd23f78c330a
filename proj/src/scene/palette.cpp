#include "sonia/scene/palette.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace sonia::scene {

namespace {

double hue_channel(double p, double q, double t) {
  if (t < 0.0) t += 1.0;
  if (t > 1.0) t -= 1.0;
  if (t < 1.0 / 6.0) return p + (q - p) * 6.0 * t;
  if (t < 0.5) return q;
  if (t < 2.0 / 3.0) return p + (q - p) * (2.0 / 3.0 - t) * 6.0;
  return p;
}

std::uint8_t to_byte(double unit) {
  const long v = std::lround(unit * 255.0);
  return static_cast<std::uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Color hsl_to_rgb(double hue_deg, double saturation, double lightness) {
  double h = std::fmod(hue_deg, 360.0);
  if (h < 0.0) h += 360.0;
  h /= 360.0;
  if (saturation == 0.0) {
    const auto v = to_byte(lightness);
    return Color{v, v, v};
  }
  const double q = lightness < 0.5 ? lightness * (1.0 + saturation)
                                   : lightness + saturation - lightness * saturation;
  const double p = 2.0 * lightness - q;
  return Color{to_byte(hue_channel(p, q, h + 1.0 / 3.0)), to_byte(hue_channel(p, q, h)),
               to_byte(hue_channel(p, q, h - 1.0 / 3.0))};
}

std::string to_hex(Color c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c.r, c.g, c.b);
  return buf;
}

std::optional<Color> from_hex(std::string_view hex) {
  if (hex.size() != 7 || hex[0] != '#') return std::nullopt;
  std::uint8_t ch[3];
  for (int i = 0; i < 3; ++i) {
    const int hi = hex_digit(hex[1 + 2 * i]);
    const int lo = hex_digit(hex[2 + 2 * i]);
    if (hi < 0 || lo < 0) return std::nullopt;
    ch[i] = static_cast<std::uint8_t>(hi * 16 + lo);
  }
  return Color{ch[0], ch[1], ch[2]};
}

double rgb_distance(Color a, Color b) {
  const double dr = double(a.r) - b.r, dg = double(a.g) - b.g, db = double(a.b) - b.b;
  return std::sqrt(dr * dr + dg * dg + db * db);
}

std::optional<Color> Palette::color_of(std::string_view subsystem_id) const {
  for (const auto& [id, color] : assignments) {
    if (id == subsystem_id) return color;
  }
  return std::nullopt;
}

double min_pairwise_distance(std::span<const Color> colors) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < colors.size(); ++i) {
    for (std::size_t j = i + 1; j < colors.size(); ++j) best = std::min(best, rgb_distance(colors[i], colors[j]));
  }
  return best;
}

std::vector<Color> palette_colors(std::size_t k) {
  const auto ring = [k](double odd_lightness) {
    std::vector<Color> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
      const double hue = 360.0 * static_cast<double>(i) / static_cast<double>(k);
      out.push_back(hsl_to_rgb(hue, kPaletteSaturation, i % 2 == 1 ? odd_lightness : kPaletteLightness));
    }
    return out;
  };
  auto colors = ring(kPaletteLightness);
  // Past about a dozen hues, neighbours straddling a sector boundary fall
  // under the minimum distance; darkening every other entry separates them.
  if (min_pairwise_distance(colors) < kMinPaletteDistance) colors = ring(kPaletteAltLightness);
  return colors;
}

Palette generate_palette(std::span<const pack::SubsystemDef> subsystems) {
  const auto colors = palette_colors(subsystems.size());
  Palette palette;
  for (std::size_t i = 0; i < subsystems.size(); ++i) {
    palette.assignments.emplace_back(subsystems[i].id, colors[i]);
  }
  return palette;
}

Color red_shade(std::size_t rank, std::size_t count) {
  const double t = count <= 1 ? 0.0 : static_cast<double>(rank) / static_cast<double>(count - 1);
  return hsl_to_rgb(0.0, 0.70, 0.25 + 0.40 * t);
}

}  // namespace sonia::scene
