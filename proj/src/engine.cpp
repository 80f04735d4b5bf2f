#include "udtn/engine.hpp"

#include <algorithm>
#include <numeric>

#include "udtn/error.hpp"

namespace udtn {

namespace {

int max_path_type(const PathTypeMap& types) {
  int best = 0;
  bool any = false;
  for (const auto& [name, value] : types) {
    best = any ? std::max(best, value) : value;
    any = true;
  }
  return best;
}

void check_scenario(const Scenario& scenario) {
  const auto violations = validate_scenario(scenario.general, scenario.groups);
  if (!violations.empty()) {
    std::string message;
    for (const auto& v : violations) {
      if (!message.empty()) message += "; ";
      message += v.where + ": " + v.message;
    }
    throw Error(ErrorCode::InvalidScenario, message);
  }
  for (const auto& group : scenario.groups) {
    if (!MovementRegistry::instance().contains(group.movement_model)) {
      throw Error(ErrorCode::UnknownModel, group.group_id + ": movement model '" + group.movement_model + "'");
    }
    if (!ProtocolRegistry::instance().contains(group.protocol)) {
      throw Error(ErrorCode::UnknownProtocol, group.group_id + ": protocol '" + group.protocol + "'");
    }
  }
}

void apply_overrides(GeneralParams& general, const RunOverrides& overrides) {
  if (overrides.runs) general.num_simulations = *overrides.runs;
  if (overrides.report_dir) general.report_directory = *overrides.report_dir;
}

SimulationContext build_context(const Scenario& scenario, std::uint64_t seed, int run_index,
                                const RunOverrides& overrides) {
  SimulationContext ctx;
  ctx.general = scenario.general;
  ctx.groups = scenario.groups;
  apply_overrides(ctx.general, overrides);
  check_scenario({ctx.general, ctx.groups});

  ctx.seed = seed;
  ctx.rng = Rng(seed);
  ctx.run_index = run_index;
  ctx.record_decisions = overrides.record_decisions;
  ctx.map = normalize_map(parse_osm(ctx.general.map_path, ctx.general.path_types));
  ctx.graph = build_graph(ctx.map);
  ctx.sim_tick_h = compute_sim_tick_h(ctx.groups, ctx.general.tick_step_base_m);

  const int highway = max_path_type(ctx.general.path_types);
  for (const auto& group : ctx.groups) {
    auto movement = MovementRegistry::instance().create(group.movement_model);
    auto protocol = ProtocolRegistry::instance().create(group.protocol);
    const int level = find_level(group, ctx.general.path_types);
    for (int i = 1; i <= group.num_hosts; ++i) {
      AgentState agent;
      agent.obj_id = group.label + std::to_string(i);
      agent.group_id = group.group_id;
      agent.movement = movement;
      agent.allowed_types = RoadTypeSet(group.paths.begin(), group.paths.end());
      agent.highway_type = group.restricted_to.value_or(highway);
      agent.speed_kmh = group.mobile ? group.speed_kmh : 0.0;
      agent.step_km = agent.speed_kmh * ctx.sim_tick_h;
      agent.junction_delay_s = group.junction_delay_s;
      agent.protocol = protocol;
      agent.level = level;
      agent.tx_range_km = group.tx_range_m / 1000.0;
      ctx.agents.push_back(std::move(agent));
    }
  }
  std::sort(ctx.agents.begin(), ctx.agents.end(),
            [](const AgentState& a, const AgentState& b) { return a.obj_id < b.obj_id; });
  for (std::size_t i = 1; i < ctx.agents.size(); ++i) {
    if (ctx.agents[i].obj_id == ctx.agents[i - 1].obj_id) {
      throw Error(ErrorCode::InvalidScenario, "duplicate agent id " + ctx.agents[i].obj_id);
    }
  }

  for (auto& agent : ctx.agents) {
    place_agent(agent, ctx.graph, compute_initial_node(*agent.movement, ctx.graph, agent.allowed_types, ctx.rng));
  }

  ctx.schedule = schedule_events(ctx.general.msg_gen_rate, ctx.general.simulation_time_hours, ctx.rng);
  if (!ctx.schedule.empty()) {
    const bool any_host = std::any_of(ctx.agents.begin(), ctx.agents.end(), [](const AgentState& a) {
      return !a.mobile() && !a.protocol->depot();
    });
    if (!any_host) throw Error(ErrorCode::NoStationaryAgents, "events are scheduled but no stationary agent can host them");
  }
  return ctx;
}

std::vector<AgentState*> event_hosts(SimulationContext& ctx) {
  std::vector<AgentState*> hosts;
  for (auto& agent : ctx.agents) {
    if (!agent.mobile() && !agent.protocol->depot()) hosts.push_back(&agent);
  }
  return hosts;
}

void record_transfers(SimulationContext& ctx, std::vector<Transfer> transfers) {
  const double now = ctx.sim_time_h();
  for (auto& t : transfers) {
    const auto it = std::find_if(ctx.events.begin(), ctx.events.end(),
                                 [&](const Event& e) { return e.e_id == t.msg_id; });
    if (it != ctx.events.end() && !it->delivered()) {
      it->handler_trace.push_back(t.receiver);
      const AgentState* receiver = ctx.find_agent(t.receiver);
      if (receiver != nullptr && receiver->protocol->depot() && !it->expired && now <= it->expiry_h) {
        it->delivered_h = now;
        it->delivered_to = t.receiver;
      }
    }
    ctx.transfers.push_back(std::move(t));
  }
}

}  // namespace

AgentState* SimulationContext::find_agent(std::string_view obj_id) {
  const auto it = std::lower_bound(agents.begin(), agents.end(), obj_id,
                                   [](const AgentState& a, std::string_view id) { return a.obj_id < id; });
  return it != agents.end() && it->obj_id == obj_id ? &*it : nullptr;
}

double compute_sim_tick_h(const std::vector<GroupSpec>& groups, double step_base_m) {
  double v_max = 0.0;
  for (const auto& g : groups) {
    if (g.mobile) v_max = std::max(v_max, g.speed_kmh);
  }
  if (!(v_max > 0.0)) return 1.0 / 3600.0;
  return step_base_m / (1000.0 * v_max);
}

SimulationContext init_sim(const Scenario& scenario, std::uint64_t seed, int run_index,
                           const RunOverrides& overrides) {
  try {
    return build_context(scenario, seed, run_index, overrides);
  } catch (const Error& e) {
    throw Error(ErrorCode::FatalInit, std::string("initialisation failed: ") + e.what(), e.cause());
  }
}

SimulationContext init_sim(const std::filesystem::path& config_path, std::uint64_t seed, int run_index,
                           const RunOverrides& overrides) {
  Scenario scenario;
  try {
    scenario = load_config(config_path);
  } catch (const Error& e) {
    throw Error(ErrorCode::FatalInit, config_path.string() + ": " + e.what(), e.cause());
  }
  return init_sim(scenario, seed, run_index, overrides);
}

void step(SimulationContext& ctx) {
  if (ctx.controls.stopped) return;
  const double now = ctx.sim_time_h();

  // A time that lands on a tick boundary fires on that tick despite rounding in tick * sim_tick_h.
  const double fire_limit = now + ctx.sim_tick_h * 1e-9;
  if (ctx.next_scheduled < ctx.schedule.size() && ctx.schedule[ctx.next_scheduled] <= fire_limit) {
    const auto hosts = event_hosts(ctx);
    while (ctx.next_scheduled < ctx.schedule.size() && ctx.schedule[ctx.next_scheduled] <= fire_limit) {
      ctx.events.push_back(create_event(ctx.events.size() + 1, ctx.schedule[ctx.next_scheduled], hosts,
                                        ctx.general.event_duration_h, ctx.general.event_payload_bytes, ctx.rng,
                                        now));
      ++ctx.next_scheduled;
    }
  }

  const MoveContext move{ctx.graph, ctx.rng, ctx.tick, now, ctx.sim_tick_s(),
                         ctx.record_decisions ? &ctx.decisions : nullptr};
  for (auto& agent : ctx.agents) {
    if (agent.mobile()) update_position(agent, move);
  }

  const Clock clock{ctx.tick, now};
  for (auto& agent : ctx.agents) record_transfers(ctx, execute_protocol(agent, ctx.agents, clock));

  for (auto& event : ctx.events) check_expiry(event, now);

  ++ctx.tick;
}

RunSummary finish_run(SimulationContext& ctx) {
  while (!ctx.controls.stopped && ctx.sim_time_h() < ctx.general.simulation_time_hours) step(ctx);

  const double end = ctx.sim_time_h();
  for (auto& agent : ctx.agents) close_contacts(agent, end);
  for (auto& event : ctx.events) check_expiry(event, end);

  RunSummary summary;
  summary.run_index = ctx.run_index;
  summary.events_generated = ctx.events.size();
  double latency = 0.0;
  for (const auto& event : ctx.events) {
    if (event.delivered()) {
      ++summary.events_delivered;
      latency += *event.delivered_h - event.time_h;
    }
  }
  summary.delivery_ratio = static_cast<double>(summary.events_delivered) /
                           static_cast<double>(std::max<std::size_t>(summary.events_generated, 1));
  if (summary.events_delivered > 0) {
    summary.mean_delivery_latency_h = latency / static_cast<double>(summary.events_delivered);
  }
  summary.total_transfers = ctx.transfers.size();
  for (const auto& agent : ctx.agents) summary.per_agent_contacts[agent.obj_id] = agent.contact_log.size();
  return summary;
}

RunSummary run(SimulationContext& ctx) {
  const RunSummary summary = finish_run(ctx);
  const auto& base = ctx.general.report_directory;
  std::vector<std::string> ids;
  for (const auto& agent : ctx.agents) ids.push_back(agent.obj_id);
  create_report_directory(base, ids);
  for (const auto& agent : ctx.agents) write_movement_log(base, agent, ctx.run_index);
  for (const auto& event : ctx.events) write_event_log(base, event, ctx.run_index);
  write_transfer_log(base, ctx.transfers, ctx.run_index);
  write_run_summary(base, summary);
  return summary;
}

BatchResult run_many(const Scenario& scenario, std::uint64_t base_seed, const RunOverrides& overrides) {
  Scenario effective = scenario;
  apply_overrides(effective.general, overrides);
  BatchResult result;
  Controls controls;
  for (int r = 0; r < effective.general.num_simulations; ++r) {
    try {
      SimulationContext ctx = init_sim(effective, base_seed + static_cast<std::uint64_t>(r), r, overrides);
      result.summaries.push_back(run(ctx));
    } catch (const Error& e) {
      result.failures.push_back({r, e.what(), e.cause()});
    } catch (const std::exception& e) {
      result.failures.push_back({r, e.what(), std::nullopt});
    }
    ++controls.run_counter;
  }
  return result;
}

BatchResult run_many(const std::filesystem::path& config_path, std::uint64_t base_seed,
                     const RunOverrides& overrides) {
  Scenario scenario;
  try {
    scenario = load_config(config_path);
  } catch (const Error& e) {
    throw Error(ErrorCode::FatalInit, config_path.string() + ": " + e.what(), e.cause());
  }
  return run_many(scenario, base_seed, overrides);
}

}  // namespace udtn
