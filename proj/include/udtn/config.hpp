#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace udtn {

enum class ValueKind { String, Int, Real, Bool, IntList, Pair, Path, Map, Size };

std::string_view to_string(ValueKind kind);
std::optional<ValueKind> parse_value_kind(std::string_view token);

struct SchemaEntry {
  std::string name;
  ValueKind kind = ValueKind::String;

  bool operator==(const SchemaEntry&) const = default;
};

/// Ordered list of `Name:Type` declarations from an `*_params.in` file.
struct ParamSchema {
  std::vector<SchemaEntry> entries;

  const SchemaEntry* find(std::string_view name) const;
  bool operator==(const ParamSchema&) const = default;
};

using PathTypeMap = std::map<std::string, int>;
using RealPair = std::pair<double, double>;

/// A parsed value; the alternative matches the declared ValueKind
/// (Size is carried as a byte count).
using ParamValue = std::variant<std::string, std::int64_t, double, bool, std::vector<std::int64_t>,
                                RealPair, std::filesystem::path, PathTypeMap, std::uint64_t>;

struct MsgGenRate {
  int events = 1;     // m
  double hours = 1.0; // n

  bool operator==(const MsgGenRate&) const = default;
};

struct GeneralParams {
  std::string simulation_name;
  int num_simulations = 1;
  double simulation_time_hours = 1.0;
  std::filesystem::path map_path;
  std::filesystem::path report_directory;
  bool gui_enabled = false;
  PathTypeMap path_types;
  MsgGenRate msg_gen_rate;
  int num_host_groups = 0;
  double event_duration_h = 24.0;
  std::uint64_t event_payload_bytes = 5;
  double tick_step_base_m = 5.0;
  std::map<std::string, ParamValue> extra;  // schema-declared parameters without a field

  bool operator==(const GeneralParams&) const = default;
};

struct GroupSpec {
  std::string group_id;
  std::string label;
  std::vector<int> paths;
  int num_hosts = 1;
  double tx_range_m = 0.0;
  std::uint64_t buffer_bytes = 0;  // declared capacity, never enforced
  double speed_kmh = 0.0;
  bool mobile = false;
  std::string movement_model = "Stationary";
  double junction_delay_s = 0.0;
  std::string color;
  std::string protocol = "Epidemic";
  std::optional<int> restricted_to;
  std::map<std::string, ParamValue> extra;

  bool operator==(const GroupSpec&) const = default;
};

struct Scenario {
  GeneralParams general;
  std::vector<GroupSpec> groups;
};

ParamSchema parse_schema(std::string_view text);
ParamSchema load_schema(const std::filesystem::path& schema_file);

/// Built-in schemas; the files shipped next to a config extend these.
ParamSchema default_general_schema();
ParamSchema default_group_schema();

/// Parses config text. Relative Map / Report_Directory paths resolve against base_dir.
Scenario parse_config(std::string_view text, const ParamSchema& general_schema,
                      const ParamSchema& group_schema, const std::filesystem::path& base_dir);

Scenario load_config(const std::filesystem::path& config_file, const ParamSchema& general_schema,
                     const ParamSchema& group_schema);

/// Loads `envt_params.in` / `group_params.in` from the config's directory when
/// present (falling back to the built-in schemas), then the config itself.
Scenario load_config(const std::filesystem::path& config_file);

/// Writes a scenario back in the same `Key = Value` grammar.
std::string serialize_config(const Scenario& scenario);

struct Violation {
  std::string where;  // "general" or a group id
  std::string message;

  bool operator==(const Violation&) const = default;
};

std::vector<Violation> validate_scenario(const GeneralParams& general,
                                         const std::vector<GroupSpec>& groups);

bool is_stationary_model(std::string_view movement_model);

}  // namespace udtn
