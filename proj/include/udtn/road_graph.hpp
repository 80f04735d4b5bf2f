#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "udtn/geo.hpp"
#include "udtn/map_ingest.hpp"

namespace udtn {

using VertexId = NodeId;
using RoadTypeSet = std::set<int>;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  double weight_km = 0.0;
  int type = 0;
  WayId way_id = 0;
  std::vector<GeoPoint> shape;  // way geometry from u to v
};

struct Adjacent {
  VertexId vertex = 0;
  std::size_t edge = 0;  // index into RoadGraph::edges()

  bool operator==(const Adjacent&) const = default;
};

/// Undirected junction multigraph: one edge per normalized way, vertices are
/// way endpoints. Adjacency lists are kept in canonical (neighbor id, way id)
/// order because mobility draws index into them.
class RoadGraph {
 public:
  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_vertex(VertexId v) const { return adjacency_.count(v) != 0; }
  GeoPoint position(VertexId v) const;

  /// All incident (neighbor, edge) pairs; a self-loop is listed once.
  /// Throws UnknownVertex.
  const std::vector<Adjacent>& incident(VertexId v) const;

  const Edge& edge(std::size_t index) const { return edges_.at(index); }
  VertexId other_end(std::size_t edge, VertexId from) const;

  bool empty() const { return vertices_.empty(); }

 private:
  friend RoadGraph build_graph(const MapTables& tables);

  std::vector<VertexId> vertices_;
  std::vector<Edge> edges_;
  std::map<VertexId, std::vector<Adjacent>> adjacency_;
  std::map<VertexId, GeoPoint> positions_;
};

RoadGraph build_graph(const MapTables& tables);

/// Incident pairs whose edge type is in allowed_types, canonical order.
std::vector<Adjacent> neighbors(const RoadGraph& g, VertexId v, const RoadTypeSet& allowed_types);

/// Geometry of an edge oriented to start at from_vertex. Throws NotAnEndpoint.
std::vector<GeoPoint> movement_waypoints(const RoadGraph& g, std::size_t edge, VertexId from_vertex);

/// One edge per line: `u v type weight_km way_id`.
std::string dump_edges(const RoadGraph& g);

}  // namespace udtn
