#include "udtn/mobility.hpp"

#include <algorithm>
#include <set>

#include "udtn/error.hpp"

namespace udtn {

namespace {

bool has_allowed_edge(const RoadGraph& g, VertexId v, const RoadTypeSet& allowed) {
  const auto& adj = g.incident(v);
  return std::any_of(adj.begin(), adj.end(),
                     [&](const Adjacent& a) { return allowed.count(g.edge(a.edge).type) != 0; });
}

}  // namespace

// --- Stationary -------------------------------------------------------------

VertexId MovementModel::initial_node(const RoadGraph& g, const RoadTypeSet&, Rng& rng) const {
  if (g.empty()) throw Error(ErrorCode::NoFeasibleVertex, "road graph has no vertices");
  return g.vertices()[rng.index(g.vertices().size())];
}

JunctionChoice MovementModel::next_node(AgentState& state, const MoveContext&) const {
  return {state.next_node, std::nullopt, false};
}

void MovementModel::log(const AgentState& state, const MoveContext& ctx, std::vector<Adjacent> candidates,
                        const JunctionChoice& choice) {
  if (ctx.decisions == nullptr) return;
  ctx.decisions->push_back(Decision{ctx.tick, state.obj_id, state.next_node, std::move(candidates),
                                    state.carrying(), choice.edge, choice.hold});
}

// --- Simple random ----------------------------------------------------------

std::vector<Adjacent> SimpleRandomMovement::onward(const AgentState& state, const RoadGraph& g) {
  std::vector<Adjacent> out;
  for (const Adjacent& a : g.incident(state.next_node)) {
    if (state.curr_edge && a.vertex == state.prev_node) continue;
    out.push_back(a);
  }
  return out;
}

JunctionChoice SimpleRandomMovement::pick(const AgentState& state, const std::vector<Adjacent>& candidates,
                                          Rng& rng) {
  if (candidates.empty()) {
    // Dead end: go back the way we came.
    if (state.curr_edge) return {state.prev_node, state.curr_edge, false};
    return {state.next_node, std::nullopt, false};
  }
  const Adjacent& a = candidates[rng.index(candidates.size())];
  return {a.vertex, a.edge, false};
}

JunctionChoice SimpleRandomMovement::next_node(AgentState& state, const MoveContext& ctx) const {
  auto candidates = onward(state, ctx.graph);
  const JunctionChoice choice = pick(state, candidates, ctx.rng);
  log(state, ctx, std::move(candidates), choice);
  return choice;
}

// --- Path type --------------------------------------------------------------

VertexId PathTypeMovement::initial_node(const RoadGraph& g, const RoadTypeSet& allowed, Rng& rng) const {
  const auto& vertices = g.vertices();
  if (vertices.empty()) throw Error(ErrorCode::NoFeasibleVertex, "road graph has no vertices");
  const std::size_t tries = 10 * vertices.size();
  for (std::size_t i = 0; i < tries; ++i) {
    const VertexId v = vertices[rng.index(vertices.size())];
    if (has_allowed_edge(g, v, allowed)) return v;
  }
  std::vector<VertexId> feasible;
  std::copy_if(vertices.begin(), vertices.end(), std::back_inserter(feasible),
               [&](VertexId v) { return has_allowed_edge(g, v, allowed); });
  if (feasible.empty()) {
    throw Error(ErrorCode::NoFeasibleVertex, "no vertex touches an allowed road type");
  }
  return feasible[rng.index(feasible.size())];
}

std::vector<Adjacent> PathTypeMovement::typed_candidates(const AgentState& state, const RoadGraph& g) {
  auto out = onward(state, g);
  std::erase_if(out, [&](const Adjacent& a) { return state.allowed_types.count(g.edge(a.edge).type) == 0; });
  return out;
}

std::vector<Adjacent> PathTypeMovement::highway_subset(const AgentState& state, const RoadGraph& g,
                                                       const std::vector<Adjacent>& candidates) {
  std::vector<Adjacent> out;
  std::copy_if(candidates.begin(), candidates.end(), std::back_inserter(out),
               [&](const Adjacent& a) { return g.edge(a.edge).type == state.highway_type; });
  return out;
}

JunctionChoice PathTypeMovement::next_node(AgentState& state, const MoveContext& ctx) const {
  auto candidates = typed_candidates(state, ctx.graph);
  const JunctionChoice choice = pick(state, candidates, ctx.rng);
  log(state, ctx, std::move(candidates), choice);
  return choice;
}

// --- Path memory ------------------------------------------------------------

JunctionChoice PathMemoryMovement::next_node(AgentState& state, const MoveContext& ctx) const {
  auto candidates = typed_candidates(state, ctx.graph);
  const std::set<WayId> visited(state.ways_visited.begin(), state.ways_visited.end());
  std::vector<Adjacent> fresh;
  std::copy_if(candidates.begin(), candidates.end(), std::back_inserter(fresh),
               [&](const Adjacent& a) { return visited.count(ctx.graph.edge(a.edge).way_id) == 0; });
  const JunctionChoice choice = pick(state, fresh.empty() ? candidates : fresh, ctx.rng);
  log(state, ctx, std::move(candidates), choice);
  return choice;
}

// --- Restricted -------------------------------------------------------------

JunctionChoice RestrictedMovement::next_node(AgentState& state, const MoveContext& ctx) const {
  auto candidates = typed_candidates(state, ctx.graph);
  const auto highways = highway_subset(state, ctx.graph, candidates);
  const bool restrict = state.carrying() && !highways.empty();
  const JunctionChoice choice = pick(state, restrict ? highways : candidates, ctx.rng);
  log(state, ctx, std::move(candidates), choice);
  return choice;
}

// --- Wait -------------------------------------------------------------------

JunctionChoice WaitMovement::next_node(AgentState& state, const MoveContext& ctx) const {
  auto candidates = typed_candidates(state, ctx.graph);
  JunctionChoice choice;
  if (state.carrying() && !highway_subset(state, ctx.graph, candidates).empty()) {
    if (!state.wait_flag) {
      state.wait_start_h = ctx.now_h;
      state.wait_flag = true;
    }
    choice = {state.next_node, std::nullopt, true};
  } else {
    choice = pick(state, candidates, ctx.rng);
  }
  log(state, ctx, std::move(candidates), choice);
  return choice;
}

// --- Registry ---------------------------------------------------------------

MovementRegistry::MovementRegistry() {
  const auto singleton = [](auto model) {
    auto shared = std::make_shared<const decltype(model)>(model);
    return [shared]() -> std::shared_ptr<const MovementModel> { return shared; };
  };
  const auto stationary = singleton(MovementModel{});
  const auto simple = singleton(SimpleRandomMovement{});
  const auto path_type = singleton(PathTypeMovement{});
  const auto memory = singleton(PathMemoryMovement{});
  const auto restricted = singleton(RestrictedMovement{});
  const auto wait = singleton(WaitMovement{});
  for (const char* n : {"Stationary", "StationaryMovement"}) add(n, stationary);
  for (const char* n : {"SimpleRandom", "SimpleRandomMovement"}) add(n, simple);
  for (const char* n : {"PathType", "PathTypeMovement"}) add(n, path_type);
  for (const char* n : {"PathMemory", "PathMemoryMovement"}) add(n, memory);
  for (const char* n : {"Restricted", "RestrictedMovement"}) add(n, restricted);
  for (const char* n : {"Wait", "WaitMovement"}) add(n, wait);
}

MovementRegistry& MovementRegistry::instance() {
  static MovementRegistry registry;
  return registry;
}

void MovementRegistry::add(std::string name, Factory factory) { factories_[std::move(name)] = std::move(factory); }

std::shared_ptr<const MovementModel> MovementRegistry::create(std::string_view name) const {
  const auto it = factories_.find(name);
  if (it == factories_.end()) throw Error(ErrorCode::UnknownModel, std::string(name));
  return it->second();
}

bool MovementRegistry::contains(std::string_view name) const { return factories_.find(name) != factories_.end(); }

// --- Per-tick operations ----------------------------------------------------

VertexId compute_initial_node(const MovementModel& model, const RoadGraph& g, const RoadTypeSet& allowed,
                              Rng& rng) {
  return model.initial_node(g, allowed, rng);
}

JunctionChoice compute_next_node(AgentState& state, const MoveContext& ctx) {
  if (!state.movement) return {state.next_node, std::nullopt, false};
  return state.movement->next_node(state, ctx);
}

void populate_way_points(AgentState& state, const RoadGraph& g, std::size_t edge, VertexId from,
                         double step_km, double junction_delay_s, double tick_s) {
  const auto waypoints = movement_waypoints(g, edge, from);
  auto points = interpolate_path(waypoints, step_km);
  const std::size_t padding = delay_padding(junction_delay_s, tick_s);
  const GeoPoint last = points.back();
  points.insert(points.end(), padding, last);

  state.mvmt_points = std::move(points);
  state.mvmt_pt_index = 0;
  state.curr_geo_pos = state.mvmt_points.front();
  state.curr_edge = edge;
  state.curr_way = g.edge(edge).way_id;
  state.ways_visited.push_back(g.edge(edge).way_id);
}

void place_agent(AgentState& state, const RoadGraph& g, VertexId vertex) {
  state.prev_node = vertex;
  state.next_node = vertex;
  state.curr_geo_pos = g.position(vertex);
  state.curr_edge.reset();
  state.curr_way.reset();
  state.mvmt_points.clear();
  state.mvmt_pt_index = 0;
}

void update_position(AgentState& state, const MoveContext& ctx) {
  if (!state.mobile() || state.wait_flag) return;
  const GeoPoint before = state.curr_geo_pos;
  if (!state.mvmt_points.empty() && state.mvmt_pt_index + 1 < state.mvmt_points.size()) {
    ++state.mvmt_pt_index;
    state.curr_geo_pos = state.mvmt_points[state.mvmt_pt_index];
  } else {
    const JunctionChoice choice = compute_next_node(state, ctx);
    if (!choice.hold && choice.edge) {
      const VertexId here = state.next_node;
      populate_way_points(state, ctx.graph, *choice.edge, here, state.step_km, state.junction_delay_s,
                          ctx.tick_s);
      state.prev_node = here;
      state.next_node = choice.vertex;
    }
  }
  if (state.curr_geo_pos != before) state.time_traveled_s += ctx.tick_s;
}

}  // namespace udtn
