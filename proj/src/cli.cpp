#include <iostream>

#include <CLI11.hpp>

#include "udtn/engine.hpp"
#include "udtn/error.hpp"

namespace udtn {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitUsage = 64;

bool is_validation_failure(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedSchemaLine:
    case ErrorCode::DuplicateParam:
    case ErrorCode::UnknownKey:
    case ErrorCode::TypeMismatch:
    case ErrorCode::MissingRequired:
    case ErrorCode::PathTypeUndefined:
    case ErrorCode::XmlSyntaxError:
    case ErrorCode::DanglingNodeRef:
    case ErrorCode::SegmentIdCollision:
    case ErrorCode::UnknownModel:
    case ErrorCode::UnknownProtocol:
    case ErrorCode::InvalidScenario:
      return true;
    default:
      return false;
  }
}

int exit_code_for(const Error& e) { return is_validation_failure(e.cause()) ? kExitInvalid : kExitRuntime; }

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Urban delay-tolerant network simulator"};
  std::filesystem::path config;
  std::uint64_t seed = 0;
  std::optional<int> runs;
  std::optional<std::filesystem::path> report_dir;
  bool validate_map = false;
  bool quiet = false;
  app.add_option("--config", config, "scenario config file")->required();
  app.add_option("--seed", seed, "base seed (run r uses seed + r)");
  app.add_option("--runs", runs, "override No_of_Simulations")->check(CLI::PositiveNumber);
  app.add_option("--report-dir", report_dir, "override Report_Directory");
  app.add_flag("--validate-map", validate_map, "parse and normalise the map, print graph stats, no run");
  app.add_flag("--quiet", quiet, "suppress progress output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitUsage;
  }

  try {
    Scenario scenario;
    try {
      scenario = load_config(config);
    } catch (const Error& e) {
      throw Error(ErrorCode::FatalInit, config.string() + ": " + e.what(), e.cause());
    }

    if (validate_map) {
      MapTables tables;
      try {
        tables = normalize_map(parse_osm(scenario.general.map_path, scenario.general.path_types));
      } catch (const Error& e) {
        throw Error(ErrorCode::FatalInit, e.what(), e.cause());
      }
      const RoadGraph graph = build_graph(tables);
      std::cout << "vertices " << graph.vertices().size() << '\n'
                << "edges " << graph.edges().size() << '\n'
                << "ways " << tables.ways.size() << '\n'
                << "dropped_untyped " << tables.dropped_untyped << '\n'
                << "dropped_short " << tables.dropped_short << '\n';
      return kExitOk;
    }

    if (scenario.general.gui_enabled && !quiet) {
      std::cerr << "note: GUI_Enabled is ignored in headless mode\n";
    }

    RunOverrides overrides;
    overrides.runs = runs;
    overrides.report_dir = report_dir;
    const BatchResult result = run_many(scenario, seed, overrides);

    if (!quiet) {
      for (const auto& s : result.summaries) {
        std::cout << "run " << s.run_index << ": events " << s.events_generated << ", delivered "
                  << s.events_delivered << ", ratio " << s.delivery_ratio << ", transfers " << s.total_transfers
                  << '\n';
      }
    }
    for (const auto& f : result.failures) std::cerr << "run " << f.run_index << " failed: " << f.message << '\n';
    if (!result.failures.empty()) {
      const auto& first = result.failures.front();
      return result.summaries.empty() && first.cause && is_validation_failure(*first.cause) ? kExitInvalid
                                                                                           : kExitRuntime;
    }
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace udtn
