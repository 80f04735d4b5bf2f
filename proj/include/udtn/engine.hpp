#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "udtn/agent.hpp"
#include "udtn/config.hpp"
#include "udtn/error.hpp"
#include "udtn/events.hpp"
#include "udtn/map_ingest.hpp"
#include "udtn/mobility.hpp"
#include "udtn/reports.hpp"
#include "udtn/rng.hpp"
#include "udtn/road_graph.hpp"
#include "udtn/routing.hpp"

namespace udtn {

/// Headless stand-in for the interactive controls. Only `stopped` has an
/// effect; `paused` is kept for front ends that want it.
struct Controls {
  bool paused = false;
  bool stopped = false;
  int run_counter = 0;
};

struct RunOverrides {
  std::optional<int> runs;
  std::optional<std::filesystem::path> report_dir;
  bool record_decisions = false;
};

struct SimulationContext {
  GeneralParams general;
  std::vector<GroupSpec> groups;
  MapTables map;
  RoadGraph graph;
  std::vector<AgentState> agents;  // ascending obj_id
  std::vector<Event> events;
  std::vector<double> schedule;  // occurrence times, ascending
  std::size_t next_scheduled = 0;
  std::int64_t tick = 0;
  double sim_tick_h = 0.0;
  Rng rng;
  std::uint64_t seed = 0;
  int run_index = 0;
  Controls controls;
  std::vector<Transfer> transfers;
  bool record_decisions = false;
  std::vector<Decision> decisions;

  double sim_time_h() const { return static_cast<double>(tick) * sim_tick_h; }
  double sim_tick_s() const { return sim_tick_h * 3600.0; }
  AgentState* find_agent(std::string_view obj_id);
};

/// Tick length: step_base_m metres of travel for the fastest group (1 s when
/// nothing moves).
double compute_sim_tick_h(const std::vector<GroupSpec>& groups, double step_base_m);

/// Builds a ready-to-run context: map, graph, agents (placed), levels and the
/// event schedule. Errors are rethrown as FatalInit with the original code
/// available through Error::cause().
SimulationContext init_sim(const Scenario& scenario, std::uint64_t seed, int run_index = 0,
                           const RunOverrides& overrides = {});
SimulationContext init_sim(const std::filesystem::path& config_path, std::uint64_t seed, int run_index = 0,
                           const RunOverrides& overrides = {});

/// One tick: events, movement, protocols, expiry, clock.
void step(SimulationContext& ctx);

/// Steps to the horizon, closes contacts, computes the summary.
RunSummary finish_run(SimulationContext& ctx);

/// Steps to the horizon (or stop), writes every log and returns the summary.
RunSummary run(SimulationContext& ctx);

struct RunFailure {
  int run_index = 0;
  std::string message;
  std::optional<ErrorCode> cause;  // set for library errors
};

struct BatchResult {
  std::vector<RunSummary> summaries;
  std::vector<RunFailure> failures;
};

/// Runs 0..N-1 with seed = base_seed + run_index. A failing run is recorded
/// and the remaining runs still execute.
BatchResult run_many(const Scenario& scenario, std::uint64_t base_seed, const RunOverrides& overrides = {});
BatchResult run_many(const std::filesystem::path& config_path, std::uint64_t base_seed,
                     const RunOverrides& overrides = {});

/// Command-line entry point; returns the process exit code.
int cli_main(int argc, char** argv);

}  // namespace udtn
