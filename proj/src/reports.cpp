#include "udtn/reports.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "udtn/error.hpp"

namespace udtn {

namespace fs = std::filesystem;

namespace {

std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

double parse_real(const std::string& s, const fs::path& file) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::IoFailure, file.string() + ": bad number '" + s + "'");
  }
  return v;
}

template <typename Int>
Int parse_int(const std::string& s, const fs::path& file) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::IoFailure, file.string() + ": bad integer '" + s + "'");
  }
  return v;
}

std::ofstream open_for_write(const fs::path& file) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + file.string());
  return out;
}

void finish(std::ofstream& out, const fs::path& file) {
  out.flush();
  if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + file.string());
}

std::vector<std::vector<std::string>> read_records(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot read " + file.string());
  std::vector<std::vector<std::string>> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::vector<std::string> record;
    std::string field;
    while (fields >> field) record.push_back(field);
    records.push_back(std::move(record));
  }
  return records;
}

// key -> remaining fields, for the `key value...` summary formats.
std::map<std::string, std::vector<std::string>> read_keyed(const fs::path& file) {
  std::map<std::string, std::vector<std::string>> out;
  for (auto& record : read_records(file)) {
    std::string key = record.front();
    record.erase(record.begin());
    out[std::move(key)] = std::move(record);
  }
  return out;
}

const std::string& single(const std::map<std::string, std::vector<std::string>>& rec, const std::string& key,
                          const fs::path& file) {
  const auto it = rec.find(key);
  if (it == rec.end() || it->second.size() != 1) {
    throw Error(ErrorCode::IoFailure, file.string() + ": missing field " + key);
  }
  return it->second.front();
}

bool parse_flag(const std::string& s) { return s == "True"; }

}  // namespace

std::string convert_hms(double hours) {
  const double seconds = std::max(0.0, hours) * 3600.0 + 1e-6;
  const auto total = static_cast<std::int64_t>(std::floor(seconds));
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%02lld:%02lld:%02lld", static_cast<long long>(total / 3600),
                static_cast<long long>(total / 60 % 60), static_cast<long long>(total % 60));
  return buf;
}

double parse_hms(std::string_view hms) {
  const std::size_t a = hms.find(':');
  const std::size_t b = hms.find(':', a == hms.npos ? a : a + 1);
  if (a == hms.npos || b == hms.npos) {
    throw Error(ErrorCode::IoFailure, "bad HH:MM:SS '" + std::string(hms) + "'");
  }
  const auto part = [&](std::string_view s) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw Error(ErrorCode::IoFailure, "bad HH:MM:SS '" + std::string(hms) + "'");
    }
    return v;
  };
  const auto h = part(hms.substr(0, a));
  const auto m = part(hms.substr(a + 1, b - a - 1));
  const auto s = part(hms.substr(b + 1));
  return static_cast<double>(h * 3600 + m * 60 + s) / 3600.0;
}

void create_report_directory(const fs::path& base, std::span<const std::string> obj_ids) {
  const auto make = [](const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
      throw Error(ErrorCode::IoFailure, "cannot create " + dir.string() + (ec ? ": " + ec.message() : ""));
    }
  };
  make(base);
  for (const auto& id : obj_ids) make(base / id);
  make(base / "events");
}

AgentSummary summarize_agent(const AgentState& agent) {
  return {agent.obj_id,           agent.group_id,     agent.contact_log.size(),
          agent.ways_visited.size(), agent.buffer.size(), agent.time_traveled_s,
          agent.level};
}

void write_movement_log(const fs::path& base, const AgentState& agent, int run_index) {
  const fs::path dir = base / agent.obj_id;
  const std::string suffix = "_" + std::to_string(run_index) + ".dat";

  {
    const fs::path file = dir / ("contacts" + suffix);
    auto out = open_for_write(file);
    for (const auto& c : agent.contact_log) {
      out << c.neighbor << ' ' << convert_hms(c.entry_h) << ' ' << convert_hms(c.exit_h) << '\n';
    }
    finish(out, file);
  }
  {
    const fs::path file = dir / ("ways" + suffix);
    auto out = open_for_write(file);
    for (WayId w : agent.ways_visited) out << w << '\n';
    finish(out, file);
  }
  {
    const fs::path file = dir / ("messages" + suffix);
    auto out = open_for_write(file);
    for (const auto& entry : agent.buffer) {
      out << entry.message.msg_id << ' ' << entry.sender << ' ' << convert_hms(entry.received_h) << '\n';
    }
    finish(out, file);
  }
  {
    const fs::path file = dir / ("summary" + suffix);
    auto out = open_for_write(file);
    const AgentSummary s = summarize_agent(agent);
    out << "obj_id " << s.obj_id << '\n'
        << "group_id " << s.group_id << '\n'
        << "level " << s.level << '\n'
        << "contacts " << s.contacts << '\n'
        << "ways_traversed " << s.ways_traversed << '\n'
        << "messages " << s.messages << '\n'
        << "time_traveled_s " << format_real(s.time_traveled_s) << '\n';
    finish(out, file);
  }
}

void write_event_log(const fs::path& base, const Event& event, int run_index) {
  const fs::path file = base / "events" / (event.e_id + "_" + std::to_string(run_index) + ".dat");
  auto out = open_for_write(file);
  out << "e_id " << event.e_id << '\n'
      << "assigned_to " << event.assigned_to << '\n'
      << "time " << convert_hms(event.time_h) << '\n'
      << "expiry " << convert_hms(event.expiry_h) << '\n'
      << "expired " << (event.expired ? "True" : "False") << '\n'
      << "delivered " << (event.delivered() ? "True" : "False") << '\n'
      << "delivered_at " << (event.delivered_h ? convert_hms(*event.delivered_h) : "-") << '\n'
      << "data " << to_hex(event.data) << '\n'
      << "trace";
  for (const auto& id : event.handler_trace) out << ' ' << id;
  out << '\n';
  finish(out, file);
}

void write_transfer_log(const fs::path& base, std::span<const Transfer> transfers, int run_index) {
  const fs::path file = base / ("transfers_" + std::to_string(run_index) + ".dat");
  auto out = open_for_write(file);
  for (const auto& t : transfers) out << t.tick << ' ' << t.sender << ' ' << t.receiver << ' ' << t.msg_id << '\n';
  finish(out, file);
}

void write_run_summary(const fs::path& base, const RunSummary& summary) {
  const std::string stem = "summary_" + std::to_string(summary.run_index);
  {
    const fs::path file = base / (stem + ".dat");
    auto out = open_for_write(file);
    out << "run_index " << summary.run_index << '\n'
        << "events_generated " << summary.events_generated << '\n'
        << "events_delivered " << summary.events_delivered << '\n'
        << "delivery_ratio " << format_real(summary.delivery_ratio) << '\n'
        << "total_transfers " << summary.total_transfers << '\n'
        << "mean_delivery_latency_h "
        << (summary.mean_delivery_latency_h ? format_real(*summary.mean_delivery_latency_h) : "-") << '\n';
    for (const auto& [id, n] : summary.per_agent_contacts) out << "contacts_" << id << ' ' << n << '\n';
    finish(out, file);
  }
  {
    nlohmann::json j;
    j["run_index"] = summary.run_index;
    j["events_generated"] = summary.events_generated;
    j["events_delivered"] = summary.events_delivered;
    j["delivery_ratio"] = summary.delivery_ratio;
    j["total_transfers"] = summary.total_transfers;
    j["mean_delivery_latency_h"] =
        summary.mean_delivery_latency_h ? nlohmann::json(*summary.mean_delivery_latency_h) : nlohmann::json();
    j["per_agent_contacts"] = summary.per_agent_contacts;
    const fs::path file = base / (stem + ".json");
    auto out = open_for_write(file);
    out << j.dump(2) << '\n';
    finish(out, file);
  }
}

std::vector<ContactRecord> read_contacts(const fs::path& file) {
  std::vector<ContactRecord> out;
  for (const auto& r : read_records(file)) {
    if (r.size() != 3) throw Error(ErrorCode::IoFailure, file.string() + ": contact line needs 3 fields");
    out.push_back({r[0], parse_hms(r[1]), parse_hms(r[2])});
  }
  return out;
}

std::vector<WayId> read_ways(const fs::path& file) {
  std::vector<WayId> out;
  for (const auto& r : read_records(file)) {
    if (r.size() != 1) throw Error(ErrorCode::IoFailure, file.string() + ": way line needs 1 field");
    out.push_back(parse_int<WayId>(r[0], file));
  }
  return out;
}

std::vector<MessageRecord> read_messages(const fs::path& file) {
  std::vector<MessageRecord> out;
  for (const auto& r : read_records(file)) {
    if (r.size() != 3) throw Error(ErrorCode::IoFailure, file.string() + ": message line needs 3 fields");
    out.push_back({r[0], r[1], parse_hms(r[2])});
  }
  return out;
}

AgentSummary read_agent_summary(const fs::path& file) {
  const auto rec = read_keyed(file);
  AgentSummary s;
  s.obj_id = single(rec, "obj_id", file);
  s.group_id = single(rec, "group_id", file);
  s.level = parse_int<int>(single(rec, "level", file), file);
  s.contacts = parse_int<std::size_t>(single(rec, "contacts", file), file);
  s.ways_traversed = parse_int<std::size_t>(single(rec, "ways_traversed", file), file);
  s.messages = parse_int<std::size_t>(single(rec, "messages", file), file);
  s.time_traveled_s = parse_real(single(rec, "time_traveled_s", file), file);
  return s;
}

EventRecord read_event(const fs::path& file) {
  const auto rec = read_keyed(file);
  EventRecord e;
  e.e_id = single(rec, "e_id", file);
  e.assigned_to = single(rec, "assigned_to", file);
  e.time_h = parse_hms(single(rec, "time", file));
  e.expiry_h = parse_hms(single(rec, "expiry", file));
  e.expired = parse_flag(single(rec, "expired", file));
  e.delivered = parse_flag(single(rec, "delivered", file));
  if (const auto& at = single(rec, "delivered_at", file); at != "-") e.delivered_h = parse_hms(at);
  if (const auto it = rec.find("data"); it != rec.end() && !it->second.empty()) {
    e.data = from_hex(it->second.front());
  }
  if (const auto it = rec.find("trace"); it != rec.end()) e.handler_trace = it->second;
  return e;
}

RunSummary read_run_summary(const fs::path& file) {
  const auto rec = read_keyed(file);
  RunSummary s;
  s.run_index = parse_int<int>(single(rec, "run_index", file), file);
  s.events_generated = parse_int<std::size_t>(single(rec, "events_generated", file), file);
  s.events_delivered = parse_int<std::size_t>(single(rec, "events_delivered", file), file);
  s.delivery_ratio = parse_real(single(rec, "delivery_ratio", file), file);
  s.total_transfers = parse_int<std::size_t>(single(rec, "total_transfers", file), file);
  if (const auto& v = single(rec, "mean_delivery_latency_h", file); v != "-") {
    s.mean_delivery_latency_h = parse_real(v, file);
  }
  static constexpr std::string_view prefix = "contacts_";
  for (const auto& [key, fields] : rec) {
    if (key.rfind(prefix, 0) == 0 && fields.size() == 1) {
      s.per_agent_contacts[key.substr(prefix.size())] = parse_int<std::size_t>(fields.front(), file);
    }
  }
  return s;
}

double delivery_ratio_from_event_logs(const fs::path& base, int run_index) {
  const std::string suffix = "_" + std::to_string(run_index) + ".dat";
  std::size_t generated = 0;
  std::size_t delivered = 0;
  const fs::path dir = base / "events";
  if (fs::is_directory(dir)) {
    for (const auto& entry : fs::directory_iterator(dir)) {
      const std::string name = entry.path().filename().string();
      if (name.size() <= suffix.size() || name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0) {
        continue;
      }
      ++generated;
      if (read_event(entry.path()).delivered) ++delivered;
    }
  }
  return static_cast<double>(delivered) / static_cast<double>(std::max<std::size_t>(generated, 1));
}

}  // namespace udtn
