#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace udtn {

inline constexpr double kEarthRadiusKm = 6371.0;

struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;

  bool operator==(const GeoPoint&) const = default;
};

/// Projected (canvas) coordinates; y grows southwards so north is up.
struct ProjectedPoint {
  double y = 0.0;
  double x = 0.0;

  bool operator==(const ProjectedPoint&) const = default;
};

struct Bounds {
  double min_lat = 0.0;
  double min_lon = 0.0;
  double max_lat = 0.0;
  double max_lon = 0.0;

  bool operator==(const Bounds&) const = default;
};

struct CanvasSize {
  double height = 0.0;
  double width = 0.0;
};

struct ProjectionSpec {
  double lat_offset = 0.0;  // latitude mapped to y = 0 (northern edge)
  double lon_offset = 0.0;  // longitude mapped to x = 0 (western edge)
  double lat_scale = 1.0;   // projected units per degree latitude
  double lon_scale = 1.0;   // projected units per degree longitude
  CanvasSize canvas;
};

/// Haversine great-circle distance in km on a sphere of radius kEarthRadiusKm.
double geodesic_distance(GeoPoint a, GeoPoint b);

/// Throws Error(DegenerateBounds) when either axis has zero or negative extent.
ProjectionSpec make_projection(const Bounds& bounds, CanvasSize canvas);

ProjectedPoint geo_to_projected(GeoPoint p, const ProjectionSpec& spec);
GeoPoint projected_to_geo(ProjectedPoint p, const ProjectionSpec& spec);

/// Resamples a polyline so consecutive points are at most step_km apart.
/// Every input waypoint is kept; intermediate points are evenly spaced along
/// the great circle of their segment. Consecutive duplicate waypoints collapse.
std::vector<GeoPoint> interpolate_path(std::span<const GeoPoint> waypoints, double step_km);

/// Number of repeated terminal points that realise a junction delay:
/// ceil(delay_s / tick_s).
std::size_t delay_padding(double delay_s, double tick_s);

}  // namespace udtn
