#include "udtn/road_graph.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "udtn/error.hpp"

namespace udtn {

GeoPoint RoadGraph::position(VertexId v) const {
  const auto it = positions_.find(v);
  if (it == positions_.end()) throw Error(ErrorCode::UnknownVertex, std::to_string(v));
  return it->second;
}

const std::vector<Adjacent>& RoadGraph::incident(VertexId v) const {
  const auto it = adjacency_.find(v);
  if (it == adjacency_.end()) throw Error(ErrorCode::UnknownVertex, std::to_string(v));
  return it->second;
}

VertexId RoadGraph::other_end(std::size_t edge, VertexId from) const {
  const Edge& e = edges_.at(edge);
  if (e.u == from) return e.v;
  if (e.v == from) return e.u;
  throw Error(ErrorCode::NotAnEndpoint,
              std::to_string(from) + " is not an endpoint of way " + std::to_string(e.way_id));
}

RoadGraph build_graph(const MapTables& tables) {
  RoadGraph g;
  for (const auto& [id, way] : tables.ways) {
    Edge e;
    e.u = way.nodes.front();
    e.v = way.nodes.back();
    e.weight_km = way.length_km;
    e.type = way.type;
    e.way_id = id;
    e.shape.reserve(way.nodes.size());
    for (NodeId n : way.nodes) e.shape.push_back(tables.nodes.at(n).pos);
    const std::size_t index = g.edges_.size();
    g.adjacency_[e.u].push_back({e.v, index});
    if (e.u != e.v) g.adjacency_[e.v].push_back({e.u, index});
    g.positions_[e.u] = e.shape.front();
    g.positions_[e.v] = e.shape.back();
    g.edges_.push_back(std::move(e));
  }
  for (auto& [v, adj] : g.adjacency_) {
    std::sort(adj.begin(), adj.end(), [&g](const Adjacent& a, const Adjacent& b) {
      if (a.vertex != b.vertex) return a.vertex < b.vertex;
      return g.edges_[a.edge].way_id < g.edges_[b.edge].way_id;
    });
    g.vertices_.push_back(v);
  }
  return g;
}

std::vector<Adjacent> neighbors(const RoadGraph& g, VertexId v, const RoadTypeSet& allowed_types) {
  std::vector<Adjacent> out;
  for (const Adjacent& a : g.incident(v)) {
    if (allowed_types.count(g.edge(a.edge).type) != 0) out.push_back(a);
  }
  return out;
}

std::vector<GeoPoint> movement_waypoints(const RoadGraph& g, std::size_t edge, VertexId from_vertex) {
  const Edge& e = g.edge(edge);
  if (from_vertex == e.u) return e.shape;
  if (from_vertex == e.v) return {e.shape.rbegin(), e.shape.rend()};
  throw Error(ErrorCode::NotAnEndpoint,
              std::to_string(from_vertex) + " is not an endpoint of way " + std::to_string(e.way_id));
}

std::string dump_edges(const RoadGraph& g) {
  std::ostringstream out;
  for (const Edge& e : g.edges()) {
    char weight[64];
    std::snprintf(weight, sizeof(weight), "%.9f", e.weight_km);
    out << e.u << ' ' << e.v << ' ' << e.type << ' ' << weight << ' ' << e.way_id << '\n';
  }
  return out.str();
}

}  // namespace udtn
