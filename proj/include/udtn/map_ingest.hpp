#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "udtn/config.hpp"
#include "udtn/geo.hpp"

namespace udtn {

using NodeId = std::int64_t;
using WayId = std::int64_t;

struct GeoNode {
  NodeId id = 0;
  GeoPoint pos;
  std::optional<ProjectedPoint> projected;
  std::vector<WayId> member_ways;  // ascending

  bool operator==(const GeoNode&) const = default;
};

struct Way {
  WayId id = 0;
  std::vector<NodeId> nodes;
  int type = 0;
  double length_km = 0.0;

  bool operator==(const Way&) const = default;
};

struct MapTables {
  std::map<NodeId, GeoNode> nodes;
  std::map<WayId, Way> ways;
  Bounds bounds;
  std::size_t dropped_untyped = 0;  // road class absent or not in path_types
  std::size_t dropped_short = 0;    // fewer than two node refs
};

/// A `<way>` element as read from the file, before classification.
struct RawWay {
  WayId id = 0;
  std::vector<NodeId> refs;
  std::vector<std::pair<std::string, std::string>> tags;
};

enum class WayStatus { Ok, Untyped, TooShort };

struct TraversedWay {
  std::vector<NodeId> nodes;
  std::optional<int> type;
  WayStatus status = WayStatus::Ok;
};

/// Tag consulted for the road class of a way.
inline constexpr std::string_view kRoadClassTag = "highway";

/// Resolves one way's node order and road class. Throws DanglingNodeRef if
/// a ref names a node missing from `nodes`.
TraversedWay traverse_way(const RawWay& way, const std::map<NodeId, GeoNode>& nodes,
                          const PathTypeMap& path_types);

MapTables parse_osm(const std::filesystem::path& osm_file, const PathTypeMap& path_types);
MapTables parse_osm_string(std::string_view xml, const PathTypeMap& path_types);

/// Splits ways at intersections. Ways with no split point keep their id;
/// a way split into k pieces yields ids id*1000+1 .. id*1000+k.
MapTables normalize_map(MapTables tables);

double compute_way_length(const Way& way, const std::map<NodeId, GeoNode>& nodes);

/// Fills GeoNode::projected for every node.
void project_nodes(MapTables& tables, const ProjectionSpec& spec);

/// One way per line: `id type length_km node_id...`, ascending id.
std::string dump_ways(const MapTables& tables);

}  // namespace udtn
