#include "udtn/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "udtn/error.hpp"

namespace udtn {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

struct Vec3 {
  double x, y, z;
};

Vec3 to_unit(GeoPoint p) {
  const double lat = p.lat * kDegToRad;
  const double lon = p.lon * kDegToRad;
  return {std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
}

GeoPoint from_unit(Vec3 v) {
  const double hyp = std::hypot(v.x, v.y);
  return {std::atan2(v.z, hyp) * kRadToDeg, std::atan2(v.y, v.x) * kRadToDeg};
}

// Point at fraction t of the great-circle arc from a to b (central angle omega).
GeoPoint slerp(GeoPoint a, GeoPoint b, double omega, double t) {
  const double s = std::sin(omega);
  if (s < 1e-15) {
    return {a.lat + (b.lat - a.lat) * t, a.lon + (b.lon - a.lon) * t};
  }
  const Vec3 va = to_unit(a);
  const Vec3 vb = to_unit(b);
  const double wa = std::sin((1.0 - t) * omega) / s;
  const double wb = std::sin(t * omega) / s;
  return from_unit({wa * va.x + wb * vb.x, wa * va.y + wb * vb.y, wa * va.z + wb * vb.z});
}

// Ceiling that ignores floating noise just above an integer.
std::size_t robust_ceil(double ratio) {
  if (ratio <= 0.0) return 0;
  return static_cast<std::size_t>(std::ceil(ratio - 1e-9));
}

}  // namespace

double geodesic_distance(GeoPoint a, GeoPoint b) {
  if (a == b) return 0.0;
  const double dlat = (b.lat - a.lat) * kDegToRad;
  const double dlon = (b.lon - a.lon) * kDegToRad;
  const double sin_lat = std::sin(dlat / 2.0);
  const double sin_lon = std::sin(dlon / 2.0);
  const double h = sin_lat * sin_lat +
                   std::cos(a.lat * kDegToRad) * std::cos(b.lat * kDegToRad) * sin_lon * sin_lon;
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

ProjectionSpec make_projection(const Bounds& bounds, CanvasSize canvas) {
  const double lat_span = bounds.max_lat - bounds.min_lat;
  const double lon_span = bounds.max_lon - bounds.min_lon;
  if (!(lat_span > 0.0) || !(lon_span > 0.0)) {
    throw Error(ErrorCode::DegenerateBounds, "map bounds have zero extent");
  }
  if (!(canvas.height > 0.0) || !(canvas.width > 0.0)) {
    throw Error(ErrorCode::DegenerateBounds, "canvas must have positive size");
  }
  ProjectionSpec spec;
  spec.lat_offset = bounds.max_lat;
  spec.lon_offset = bounds.min_lon;
  spec.lat_scale = canvas.height / lat_span;
  spec.lon_scale = canvas.width / lon_span;
  spec.canvas = canvas;
  return spec;
}

ProjectedPoint geo_to_projected(GeoPoint p, const ProjectionSpec& spec) {
  return {(spec.lat_offset - p.lat) * spec.lat_scale, (p.lon - spec.lon_offset) * spec.lon_scale};
}

GeoPoint projected_to_geo(ProjectedPoint p, const ProjectionSpec& spec) {
  return {spec.lat_offset - p.y / spec.lat_scale, spec.lon_offset + p.x / spec.lon_scale};
}

std::vector<GeoPoint> interpolate_path(std::span<const GeoPoint> waypoints, double step_km) {
  std::vector<GeoPoint> out;
  if (waypoints.empty()) return out;
  out.push_back(waypoints.front());
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    const GeoPoint a = waypoints[i - 1];
    const GeoPoint b = waypoints[i];
    if (a == b) continue;
    const double length = geodesic_distance(a, b);
    const std::size_t pieces = std::max<std::size_t>(1, robust_ceil(length / step_km));
    const double omega = length / kEarthRadiusKm;
    for (std::size_t k = 1; k < pieces; ++k) {
      out.push_back(slerp(a, b, omega, static_cast<double>(k) / static_cast<double>(pieces)));
    }
    out.push_back(b);
  }
  return out;
}

std::size_t delay_padding(double delay_s, double tick_s) { return robust_ceil(delay_s / tick_s); }

}  // namespace udtn
