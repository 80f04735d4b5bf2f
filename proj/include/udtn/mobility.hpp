#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "udtn/agent.hpp"
#include "udtn/rng.hpp"
#include "udtn/road_graph.hpp"

namespace udtn {

/// A junction decision, kept for invariant audits.
struct Decision {
  std::int64_t tick = 0;
  std::string obj_id;
  VertexId at = 0;
  std::vector<Adjacent> candidates;  // path-type candidate set before any model narrowing
  bool carrying = false;
  std::optional<std::size_t> chosen_edge;
  bool held = false;
};

struct MoveContext {
  const RoadGraph& graph;
  Rng& rng;
  std::int64_t tick = 0;
  double now_h = 0.0;
  double tick_s = 1.0;
  std::vector<Decision>* decisions = nullptr;
};

struct JunctionChoice {
  VertexId vertex = 0;
  std::optional<std::size_t> edge;  // absent: stay at the vertex
  bool hold = false;                // Wait model parked the agent
};

/// Base of the movement-model hierarchy: the stationary object. Models are
/// stateless strategies; everything mutable lives in AgentState.
class MovementModel {
 public:
  virtual ~MovementModel() = default;

  virtual std::string_view name() const { return "Stationary"; }
  virtual bool mobile() const { return false; }

  /// Uniform over all vertices. Throws NoFeasibleVertex on an empty graph.
  virtual VertexId initial_node(const RoadGraph& g, const RoadTypeSet& allowed, Rng& rng) const;

  virtual JunctionChoice next_node(AgentState& state, const MoveContext& ctx) const;

 protected:
  static void log(const AgentState& state, const MoveContext& ctx, std::vector<Adjacent> candidates,
                  const JunctionChoice& choice);
};

class SimpleRandomMovement : public MovementModel {
 public:
  std::string_view name() const override { return "SimpleRandom"; }
  bool mobile() const override { return true; }
  JunctionChoice next_node(AgentState& state, const MoveContext& ctx) const override;

 protected:
  /// Neighbours of the current vertex, minus the vertex the agent arrived from.
  static std::vector<Adjacent> onward(const AgentState& state, const RoadGraph& g);
  /// Uniform pick over candidates; reverses along the arrival edge when empty.
  static JunctionChoice pick(const AgentState& state, const std::vector<Adjacent>& candidates, Rng& rng);
};

class PathTypeMovement : public SimpleRandomMovement {
 public:
  std::string_view name() const override { return "PathType"; }
  /// Rejection sampling over vertices with an allowed incident edge (cap
  /// 10 x |V| tries), then uniform over the exhaustively enumerated set.
  VertexId initial_node(const RoadGraph& g, const RoadTypeSet& allowed, Rng& rng) const override;
  JunctionChoice next_node(AgentState& state, const MoveContext& ctx) const override;

 protected:
  static std::vector<Adjacent> typed_candidates(const AgentState& state, const RoadGraph& g);
  static std::vector<Adjacent> highway_subset(const AgentState& state, const RoadGraph& g,
                                              const std::vector<Adjacent>& candidates);
};

class PathMemoryMovement : public PathTypeMovement {
 public:
  std::string_view name() const override { return "PathMemory"; }
  JunctionChoice next_node(AgentState& state, const MoveContext& ctx) const override;
};

class RestrictedMovement : public PathTypeMovement {
 public:
  std::string_view name() const override { return "Restricted"; }
  JunctionChoice next_node(AgentState& state, const MoveContext& ctx) const override;
};

class WaitMovement : public PathTypeMovement {
 public:
  std::string_view name() const override { return "Wait"; }
  JunctionChoice next_node(AgentState& state, const MoveContext& ctx) const override;
};

/// Name -> model lookup. Accepts the canonical names above plus the
/// `...Movement` class-style spellings; new models register here.
class MovementRegistry {
 public:
  using Factory = std::function<std::shared_ptr<const MovementModel>()>;

  static MovementRegistry& instance();

  void add(std::string name, Factory factory);
  /// Throws UnknownModel.
  std::shared_ptr<const MovementModel> create(std::string_view name) const;
  bool contains(std::string_view name) const;

 private:
  MovementRegistry();
  std::map<std::string, Factory, std::less<>> factories_;
};

VertexId compute_initial_node(const MovementModel& model, const RoadGraph& g,
                              const RoadTypeSet& allowed, Rng& rng);

JunctionChoice compute_next_node(AgentState& state, const MoveContext& ctx);

/// Loads the interpolated geometry of `edge` (from the current vertex) plus
/// junction-delay padding into the agent and records the traversal.
void populate_way_points(AgentState& state, const RoadGraph& g, std::size_t edge, VertexId from,
                         double step_km, double junction_delay_s, double tick_s);

/// Puts the agent at `vertex` with no pending movement.
void place_agent(AgentState& state, const RoadGraph& g, VertexId vertex);

/// Advances a mobile agent by one tick.
void update_position(AgentState& state, const MoveContext& ctx);

}  // namespace udtn
