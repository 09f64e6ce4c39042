#pragma once

namespace geosci {

struct UnitXY {
  double x = 0.0;
  double y = 0.0;
};

// Equirectangular map of the globe onto the unit square. y is inverted
// because the drawing window's y axis grows downward: (90, -180) -> (0, 0),
// (-90, 180) -> (1, 1).
inline UnitXY to_unit(double lat, double lon) {
  return {(lon + 180.0) / 360.0, (90.0 - lat) / 180.0};
}

inline void from_unit(double x, double y, double& lat, double& lon) {
  lat = 90.0 - 180.0 * y;
  lon = 360.0 * x - 180.0;
}

}  // namespace geosci
