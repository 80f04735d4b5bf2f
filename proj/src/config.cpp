#include "udtn/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "udtn/error.hpp"

namespace udtn {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Drops a `#` comment that is not inside single or double quotes.
std::string_view strip_comment(std::string_view line) {
  char quote = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quote != 0) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

std::string_view unquote(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? text.npos : end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_items(std::string_view body) {
  std::vector<std::string_view> items;
  body = trim(body);
  if (body.empty()) return items;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = body.find(',', start);
    items.push_back(trim(body.substr(start, comma == body.npos ? body.npos : comma - start)));
    if (comma == body.npos) break;
    start = comma + 1;
  }
  return items;
}

std::optional<std::string_view> strip_brackets(std::string_view s, char open, char close) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == open && s.back() == close) return s.substr(1, s.size() - 2);
  return std::nullopt;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::optional<double> parse_real(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::optional<bool> parse_bool(std::string_view s) {
  s = unquote(s);
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "true" || lower == "yes" || lower == "1") return true;
  if (lower == "false" || lower == "no" || lower == "0") return false;
  return std::nullopt;
}

std::optional<std::uint64_t> parse_size(std::string_view s) {
  s = unquote(s);
  std::uint64_t multiplier = 1;
  if (!s.empty() && (s.back() == 'B' || s.back() == 'b')) s.remove_suffix(1);
  if (!s.empty()) {
    switch (std::toupper(static_cast<unsigned char>(s.back()))) {
      case 'K': multiplier = 1ULL << 10; s.remove_suffix(1); break;
      case 'M': multiplier = 1ULL << 20; s.remove_suffix(1); break;
      case 'G': multiplier = 1ULL << 30; s.remove_suffix(1); break;
      default: break;
    }
  }
  const auto base = parse_real(s);
  if (!base || *base < 0.0) return std::nullopt;
  return static_cast<std::uint64_t>(std::llround(*base * static_cast<double>(multiplier)));
}

std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  std::string out(buf, ptr);
  if (out.find_first_of(".eEn") == std::string::npos) out += ".0";
  return out;
}

std::string format_size(std::uint64_t bytes) {
  if (bytes != 0) {
    if (bytes % (1ULL << 30) == 0) return std::to_string(bytes >> 30) + "G";
    if (bytes % (1ULL << 20) == 0) return std::to_string(bytes >> 20) + "M";
    if (bytes % (1ULL << 10) == 0) return std::to_string(bytes >> 10) + "K";
  }
  return std::to_string(bytes);
}

std::string format_string(const std::string& s) {
  const bool needs_quotes = s.empty() || s.find('#') != s.npos ||
                            std::isspace(static_cast<unsigned char>(s.front())) ||
                            std::isspace(static_cast<unsigned char>(s.back())) ||
                            s.front() == '"' || s.front() == '\'';
  return needs_quotes ? "\"" + s + "\"" : s;
}

[[noreturn]] void mismatch(std::string_view key, std::string_view raw) {
  throw Error(ErrorCode::TypeMismatch, std::string(key) + " = " + std::string(raw));
}

ParamValue parse_value(std::string_view key, std::string_view raw, ValueKind kind,
                       const fs::path& base_dir) {
  switch (kind) {
    case ValueKind::String:
      return std::string(unquote(raw));
    case ValueKind::Int:
      if (auto v = parse_int(raw)) return *v;
      mismatch(key, raw);
    case ValueKind::Real:
      if (auto v = parse_real(raw)) return *v;
      mismatch(key, raw);
    case ValueKind::Bool:
      if (auto v = parse_bool(raw)) return *v;
      mismatch(key, raw);
    case ValueKind::IntList: {
      const auto body = strip_brackets(raw, '[', ']').value_or(trim(raw));
      std::vector<std::int64_t> out;
      for (auto item : split_items(body)) {
        const auto v = parse_int(item);
        if (!v) mismatch(key, raw);
        out.push_back(*v);
      }
      return out;
    }
    case ValueKind::Pair: {
      auto body = strip_brackets(raw, '[', ']');
      if (!body) body = strip_brackets(raw, '(', ')');
      if (!body) mismatch(key, raw);
      const auto items = split_items(*body);
      if (items.size() != 2) mismatch(key, raw);
      const auto a = parse_real(items[0]);
      const auto b = parse_real(items[1]);
      if (!a || !b) mismatch(key, raw);
      return RealPair{*a, *b};
    }
    case ValueKind::Path: {
      fs::path p(std::string(unquote(raw)));
      if (p.empty()) mismatch(key, raw);
      if (p.is_relative()) p = base_dir / p;
      return p.lexically_normal();
    }
    case ValueKind::Map: {
      const auto body = strip_brackets(raw, '{', '}');
      if (!body) mismatch(key, raw);
      PathTypeMap out;
      for (auto item : split_items(*body)) {
        const std::size_t colon = item.rfind(':');
        if (colon == item.npos) mismatch(key, raw);
        const std::string name(unquote(item.substr(0, colon)));
        const auto v = parse_int(item.substr(colon + 1));
        if (name.empty() || !v || out.count(name) != 0) mismatch(key, raw);
        out[name] = static_cast<int>(*v);
      }
      return out;
    }
    case ValueKind::Size:
      if (auto v = parse_size(raw)) return *v;
      mismatch(key, raw);
  }
  mismatch(key, raw);
}

std::string format_value(const ParamValue& value) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return format_string(v);
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_real(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "True" : "False";
        } else if constexpr (std::is_same_v<T, std::vector<std::int64_t>>) {
          std::string out = "[";
          for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ", ";
            out += std::to_string(v[i]);
          }
          return out + "]";
        } else if constexpr (std::is_same_v<T, RealPair>) {
          return "[" + format_real(v.first) + ", " + format_real(v.second) + "]";
        } else if constexpr (std::is_same_v<T, fs::path>) {
          return format_string(v.generic_string());
        } else if constexpr (std::is_same_v<T, PathTypeMap>) {
          std::string out = "{";
          bool first = true;
          for (const auto& [name, id] : v) {
            if (!first) out += ", ";
            first = false;
            out += name + ": " + std::to_string(id);
          }
          return out + "}";
        } else {
          return format_size(v);
        }
      },
      value);
}

using RawBlock = std::map<std::string, ParamValue>;

// Typed accessors over one parsed block. Core keys are consumed so whatever
// remains is stored as an extension parameter.
class BlockReader {
 public:
  BlockReader(RawBlock block, std::string where) : block_(std::move(block)), where_(std::move(where)) {}

  bool has(const std::string& key) const { return block_.count(key) != 0; }

  const ParamValue& required(const std::string& key) {
    const auto it = block_.find(key);
    if (it == block_.end()) {
      throw Error(ErrorCode::MissingRequired, key + " (" + where_ + ")");
    }
    consumed_.insert(key);
    return it->second;
  }

  const ParamValue* optional(const std::string& key) {
    const auto it = block_.find(key);
    if (it == block_.end()) return nullptr;
    consumed_.insert(key);
    return &it->second;
  }

  std::string text(const std::string& key) { return as_text(key, required(key)); }
  double real(const std::string& key) { return as_real(key, required(key)); }
  std::int64_t integer(const std::string& key) { return as_int(key, required(key)); }
  bool boolean(const std::string& key) { return as_bool(key, required(key)); }

  static std::string as_text(const std::string& key, const ParamValue& v) {
    if (const auto* s = std::get_if<std::string>(&v)) return *s;
    if (const auto* p = std::get_if<fs::path>(&v)) return p->string();
    mismatch(key, format_value(v));
  }
  static double as_real(const std::string& key, const ParamValue& v) {
    if (const auto* d = std::get_if<double>(&v)) return *d;
    if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
    mismatch(key, format_value(v));
  }
  static std::int64_t as_int(const std::string& key, const ParamValue& v) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
    if (const auto* d = std::get_if<double>(&v); d && std::floor(*d) == *d) {
      return static_cast<std::int64_t>(*d);
    }
    mismatch(key, format_value(v));
  }
  static bool as_bool(const std::string& key, const ParamValue& v) {
    if (const auto* b = std::get_if<bool>(&v)) return *b;
    mismatch(key, format_value(v));
  }

  std::map<std::string, ParamValue> leftovers() const {
    std::map<std::string, ParamValue> out;
    for (const auto& [k, v] : block_) {
      if (consumed_.count(k) == 0) out.emplace(k, v);
    }
    return out;
  }

 private:
  RawBlock block_;
  std::string where_;
  std::set<std::string> consumed_;
};

fs::path as_path(const std::string& key, const ParamValue& v) {
  if (const auto* p = std::get_if<fs::path>(&v)) return *p;
  if (const auto* s = std::get_if<std::string>(&v)) return fs::path(*s);
  mismatch(key, format_value(v));
}

GeneralParams build_general(RawBlock raw) {
  BlockReader r(std::move(raw), "general");
  GeneralParams g;
  g.simulation_name = r.text("Simulation_Name");
  g.num_simulations = static_cast<int>(r.integer("No_of_Simulations"));
  g.simulation_time_hours = r.real("Simulation_Time");
  g.map_path = as_path("Map", r.required("Map"));
  g.report_directory = as_path("Report_Directory", r.required("Report_Directory"));
  if (const auto* v = r.optional("GUI_Enabled")) g.gui_enabled = BlockReader::as_bool("GUI_Enabled", *v);

  const ParamValue& types = r.required("Path_Types");
  if (const auto* m = std::get_if<PathTypeMap>(&types)) {
    g.path_types = *m;
  } else {
    mismatch("Path_Types", format_value(types));
  }

  const ParamValue& rate = r.required("Random_Msg_Gen_Parameter");
  if (const auto* p = std::get_if<RealPair>(&rate)) {
    if (std::floor(p->first) != p->first) mismatch("Random_Msg_Gen_Parameter", format_value(rate));
    g.msg_gen_rate = {static_cast<int>(p->first), p->second};
  } else {
    mismatch("Random_Msg_Gen_Parameter", format_value(rate));
  }

  g.num_host_groups = static_cast<int>(r.integer("No_of_Hosts_Groups"));
  if (const auto* v = r.optional("Event_Duration")) g.event_duration_h = BlockReader::as_real("Event_Duration", *v);
  if (const auto* v = r.optional("Event_Payload_Size")) {
    const auto n = BlockReader::as_int("Event_Payload_Size", *v);
    if (n < 0) mismatch("Event_Payload_Size", format_value(*v));
    g.event_payload_bytes = static_cast<std::uint64_t>(n);
  }
  if (const auto* v = r.optional("Tick_Step_Base")) g.tick_step_base_m = BlockReader::as_real("Tick_Step_Base", *v);
  g.extra = r.leftovers();
  return g;
}

GroupSpec build_group(RawBlock raw, const PathTypeMap& path_types) {
  std::string id = "group";
  if (const auto it = raw.find("Group_ID"); it != raw.end()) id = BlockReader::as_text("Group_ID", it->second);
  BlockReader r(std::move(raw), id);
  GroupSpec s;
  s.group_id = r.text("Group_ID");
  s.label = r.text("Label");

  const ParamValue& paths = r.required("Paths");
  if (const auto* list = std::get_if<std::vector<std::int64_t>>(&paths)) {
    for (auto p : *list) s.paths.push_back(static_cast<int>(p));
  } else if (const auto* one = std::get_if<std::int64_t>(&paths)) {
    s.paths.push_back(static_cast<int>(*one));
  } else {
    mismatch("Paths", format_value(paths));
  }
  std::set<int> defined;
  for (const auto& [name, v] : path_types) defined.insert(v);
  for (int p : s.paths) {
    if (defined.count(p) == 0) {
      throw Error(ErrorCode::PathTypeUndefined, s.group_id + " uses path type " + std::to_string(p));
    }
  }

  s.num_hosts = static_cast<int>(r.integer("No_of_Hosts"));
  s.tx_range_m = r.real("TX_Range");
  if (const auto* v = r.optional("Buffer_Size")) {
    if (const auto* bytes = std::get_if<std::uint64_t>(v)) {
      s.buffer_bytes = *bytes;
    } else {
      const auto n = BlockReader::as_int("Buffer_Size", *v);
      if (n < 0) mismatch("Buffer_Size", format_value(*v));
      s.buffer_bytes = static_cast<std::uint64_t>(n);
    }
  }
  s.speed_kmh = r.real("Speed");
  s.mobile = r.boolean("Mobile");
  s.movement_model = r.text("Movement");
  if (const auto* v = r.optional("Junction_Delay")) s.junction_delay_s = BlockReader::as_real("Junction_Delay", *v);
  if (const auto* v = r.optional("Color")) s.color = BlockReader::as_text("Color", *v);
  s.protocol = r.text("Protocol");
  if (const auto* v = r.optional("Restricted_To")) {
    s.restricted_to = static_cast<int>(BlockReader::as_int("Restricted_To", *v));
  }
  s.extra = r.leftovers();
  return s;
}

}  // namespace

std::string_view to_string(ValueKind kind) {
  switch (kind) {
    case ValueKind::String: return "string";
    case ValueKind::Int: return "int";
    case ValueKind::Real: return "real";
    case ValueKind::Bool: return "bool";
    case ValueKind::IntList: return "int-list";
    case ValueKind::Pair: return "pair";
    case ValueKind::Path: return "path";
    case ValueKind::Map: return "map";
    case ValueKind::Size: return "size";
  }
  return "string";
}

std::optional<ValueKind> parse_value_kind(std::string_view token) {
  static const std::map<std::string, ValueKind, std::less<>> kinds = {
      {"string", ValueKind::String}, {"str", ValueKind::String},     {"int", ValueKind::Int},
      {"real", ValueKind::Real},     {"float", ValueKind::Real},     {"bool", ValueKind::Bool},
      {"int-list", ValueKind::IntList}, {"list", ValueKind::IntList}, {"pair", ValueKind::Pair},
      {"path", ValueKind::Path},     {"map", ValueKind::Map},        {"dict", ValueKind::Map},
      {"size", ValueKind::Size},
  };
  const auto it = kinds.find(trim(token));
  if (it == kinds.end()) return std::nullopt;
  return it->second;
}

const SchemaEntry* ParamSchema::find(std::string_view name) const {
  const auto it = std::find_if(entries.begin(), entries.end(),
                               [&](const SchemaEntry& e) { return e.name == name; });
  return it == entries.end() ? nullptr : &*it;
}

ParamSchema parse_schema(std::string_view text) {
  ParamSchema schema;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = trim(strip_comment(lines[i]));
    if (line.empty()) continue;
    const std::size_t colon = line.find(':');
    const auto line_no = std::to_string(i + 1);
    if (colon == line.npos) throw Error(ErrorCode::MalformedSchemaLine, "line " + line_no);
    const auto name = trim(line.substr(0, colon));
    const auto kind = parse_value_kind(line.substr(colon + 1));
    const bool bad_name = name.empty() || std::any_of(name.begin(), name.end(), [](unsigned char c) {
                            return std::isspace(c) || c == '=';
                          });
    if (bad_name || !kind) throw Error(ErrorCode::MalformedSchemaLine, "line " + line_no);
    if (schema.find(name) != nullptr) throw Error(ErrorCode::DuplicateParam, std::string(name));
    schema.entries.push_back({std::string(name), *kind});
  }
  return schema;
}

ParamSchema load_schema(const fs::path& schema_file) {
  std::ifstream in(schema_file);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot read " + schema_file.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_schema(buf.str());
}

ParamSchema default_general_schema() {
  return parse_schema(
      "Simulation_Name:string\n"
      "No_of_Simulations:int\n"
      "Simulation_Time:real\n"
      "Map:path\n"
      "Report_Directory:path\n"
      "GUI_Enabled:bool\n"
      "Path_Types:map\n"
      "Random_Msg_Gen_Parameter:pair\n"
      "No_of_Hosts_Groups:int\n"
      "Event_Duration:real\n"
      "Event_Payload_Size:int\n"
      "Tick_Step_Base:real\n");
}

ParamSchema default_group_schema() {
  return parse_schema(
      "Group_ID:string\n"
      "Label:string\n"
      "Paths:int-list\n"
      "No_of_Hosts:int\n"
      "TX_Range:real\n"
      "Buffer_Size:size\n"
      "Speed:real\n"
      "Mobile:bool\n"
      "Movement:string\n"
      "Junction_Delay:real\n"
      "Color:string\n"
      "Protocol:string\n"
      "Restricted_To:int\n");
}

Scenario parse_config(std::string_view text, const ParamSchema& general_schema,
                      const ParamSchema& group_schema, const fs::path& base_dir) {
  for (const auto& e : general_schema.entries) {
    if (group_schema.find(e.name) != nullptr) {
      throw Error(ErrorCode::DuplicateParam, e.name + " declared in both schemas");
    }
  }
  if (group_schema.find("Group_ID") == nullptr) {
    throw Error(ErrorCode::MissingRequired, "Group_ID missing from group schema");
  }

  RawBlock general;
  std::vector<RawBlock> groups;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = trim(strip_comment(lines[i]));
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == line.npos) {
      throw Error(ErrorCode::UnknownKey, "line " + std::to_string(i + 1) + ": expected Key = Value");
    }
    const std::string key(trim(line.substr(0, eq)));
    const auto raw = trim(line.substr(eq + 1));

    if (key == "Group_ID") groups.emplace_back();
    const ParamSchema& schema = groups.empty() ? general_schema : group_schema;
    const SchemaEntry* entry = schema.find(key);
    if (entry == nullptr) throw Error(ErrorCode::UnknownKey, key);
    RawBlock& block = groups.empty() ? general : groups.back();
    if (block.count(key) != 0) throw Error(ErrorCode::DuplicateParam, key);
    block.emplace(key, parse_value(key, raw, entry->kind, base_dir));
  }

  Scenario scenario;
  scenario.general = build_general(std::move(general));
  for (auto& g : groups) {
    scenario.groups.push_back(build_group(std::move(g), scenario.general.path_types));
  }
  return scenario;
}

Scenario load_config(const fs::path& config_file, const ParamSchema& general_schema,
                     const ParamSchema& group_schema) {
  std::ifstream in(config_file);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot read " + config_file.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const fs::path base = fs::absolute(config_file).parent_path();
  return parse_config(buf.str(), general_schema, group_schema, base);
}

Scenario load_config(const fs::path& config_file) {
  const fs::path dir = fs::absolute(config_file).parent_path();
  const fs::path envt = dir / "envt_params.in";
  const fs::path group = dir / "group_params.in";
  const ParamSchema general_schema = fs::exists(envt) ? load_schema(envt) : default_general_schema();
  const ParamSchema group_schema = fs::exists(group) ? load_schema(group) : default_group_schema();
  return load_config(config_file, general_schema, group_schema);
}

std::string serialize_config(const Scenario& scenario) {
  std::ostringstream out;
  const auto line = [&out](std::string_view key, const ParamValue& v) {
    out << key << " = " << format_value(v) << '\n';
  };
  const GeneralParams& g = scenario.general;
  line("Simulation_Name", g.simulation_name);
  line("No_of_Simulations", std::int64_t{g.num_simulations});
  line("Simulation_Time", g.simulation_time_hours);
  line("Map", g.map_path);
  line("Report_Directory", g.report_directory);
  line("GUI_Enabled", g.gui_enabled);
  line("Path_Types", g.path_types);
  line("Random_Msg_Gen_Parameter", RealPair{static_cast<double>(g.msg_gen_rate.events), g.msg_gen_rate.hours});
  line("No_of_Hosts_Groups", std::int64_t{g.num_host_groups});
  line("Event_Duration", g.event_duration_h);
  line("Event_Payload_Size", static_cast<std::int64_t>(g.event_payload_bytes));
  line("Tick_Step_Base", g.tick_step_base_m);
  for (const auto& [k, v] : g.extra) line(k, v);

  for (const GroupSpec& s : scenario.groups) {
    out << '\n';
    line("Group_ID", s.group_id);
    line("Label", s.label);
    std::vector<std::int64_t> paths(s.paths.begin(), s.paths.end());
    line("Paths", paths);
    line("No_of_Hosts", std::int64_t{s.num_hosts});
    line("TX_Range", s.tx_range_m);
    line("Buffer_Size", s.buffer_bytes);
    line("Speed", s.speed_kmh);
    line("Mobile", s.mobile);
    line("Movement", s.movement_model);
    line("Junction_Delay", s.junction_delay_s);
    line("Color", s.color);
    line("Protocol", s.protocol);
    if (s.restricted_to) line("Restricted_To", std::int64_t{*s.restricted_to});
    for (const auto& [k, v] : s.extra) line(k, v);
  }
  return out.str();
}

bool is_stationary_model(std::string_view movement_model) {
  return movement_model == "Stationary" || movement_model == "StationaryMovement";
}

std::vector<Violation> validate_scenario(const GeneralParams& general,
                                         const std::vector<GroupSpec>& groups) {
  std::vector<Violation> out;
  const auto flag = [&out](std::string where, std::string message) {
    out.push_back({std::move(where), std::move(message)});
  };

  if (general.num_simulations < 1) flag("general", "num_simulations must be >= 1");
  if (!(general.simulation_time_hours > 0.0)) flag("general", "simulation_time_hours must be > 0");
  if (general.msg_gen_rate.events < 1) flag("general", "msg_gen_rate.m must be >= 1");
  if (!(general.msg_gen_rate.hours > 0.0)) flag("general", "msg_gen_rate.n must be > 0");
  if (!(general.event_duration_h >= 0.0)) flag("general", "event_duration_h must be >= 0");
  if (!(general.tick_step_base_m > 0.0)) flag("general", "tick_step_base_m must be > 0");
  if (general.path_types.empty()) flag("general", "path_types must not be empty");

  std::set<int> type_values;
  for (const auto& [name, v] : general.path_types) {
    if (!type_values.insert(v).second) flag("general", "path_types value " + std::to_string(v) + " is not unique");
  }
  if (general.num_host_groups != static_cast<int>(groups.size())) {
    flag("general", "num_host_groups is " + std::to_string(general.num_host_groups) + " but " +
                        std::to_string(groups.size()) + " groups are defined");
  }
  if (general.map_path.empty() || !fs::exists(general.map_path)) {
    flag("general", "map file not found: " + general.map_path.string());
  }

  std::set<std::string> ids;
  std::set<std::string> labels;
  for (const GroupSpec& s : groups) {
    const std::string& w = s.group_id;
    if (!ids.insert(s.group_id).second) flag(w, "duplicate group_id");
    if (s.label.empty()) flag(w, "label must not be empty");
    if (!labels.insert(s.label).second) flag(w, "duplicate label " + s.label);
    if (s.paths.empty()) flag(w, "paths must not be empty");
    for (int p : s.paths) {
      if (type_values.count(p) == 0) flag(w, "path type " + std::to_string(p) + " is not defined in path_types");
    }
    if (s.num_hosts < 1) flag(w, "num_hosts must be >= 1");
    if (!(s.tx_range_m >= 0.0)) flag(w, "tx_range_m must be >= 0");
    if (!(s.junction_delay_s >= 0.0)) flag(w, "junction_delay_s must be >= 0");
    if (!(s.speed_kmh >= 0.0)) flag(w, "speed_kmh must be >= 0");
    if (s.mobile) {
      if (!(s.speed_kmh > 0.0)) flag(w, "speed_kmh must be > 0");
      if (is_stationary_model(s.movement_model)) flag(w, "mobile group cannot use the Stationary model");
    } else {
      if (!is_stationary_model(s.movement_model)) flag(w, "stationary group must use the Stationary model");
      if (s.speed_kmh != 0.0) flag(w, "stationary group must have speed_kmh = 0");
    }
    if (s.restricted_to && type_values.count(*s.restricted_to) == 0) {
      flag(w, "restricted_to " + std::to_string(*s.restricted_to) + " is not defined in path_types");
    }
  }
  return out;
}

}  // namespace udtn
