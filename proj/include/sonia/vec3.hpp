#pragma once

namespace sonia {

/// Template-space point in millimetres; x is left(-)/right(+).
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  bool operator==(const Vec3&) const = default;
};

}  // namespace sonia
