#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "udtn/agent.hpp"
#include "udtn/events.hpp"
#include "udtn/routing.hpp"

namespace udtn {

struct RunSummary {
  int run_index = 0;
  std::size_t events_generated = 0;
  std::size_t events_delivered = 0;
  double delivery_ratio = 0.0;
  std::size_t total_transfers = 0;
  std::optional<double> mean_delivery_latency_h;
  std::map<std::string, std::size_t> per_agent_contacts;

  bool operator==(const RunSummary&) const = default;
};

/// Per-agent totals written to `summary_<run>.dat`.
struct AgentSummary {
  std::string obj_id;
  std::string group_id;
  std::size_t contacts = 0;
  std::size_t ways_traversed = 0;
  std::size_t messages = 0;
  double time_traveled_s = 0.0;
  int level = 0;

  bool operator==(const AgentSummary&) const = default;
};

struct MessageRecord {
  std::string msg_id;
  std::string received_from;
  double received_h = 0.0;
};

/// Event file contents as read back from disk (times at one-second resolution).
struct EventRecord {
  std::string e_id;
  std::string assigned_to;
  double time_h = 0.0;
  double expiry_h = 0.0;
  bool expired = false;
  bool delivered = false;
  std::optional<double> delivered_h;
  std::vector<std::uint8_t> data;
  std::vector<std::string> handler_trace;
};

/// Hours -> zero-padded HH:MM:SS, seconds truncated, hours field unbounded.
std::string convert_hms(double hours);
/// Inverse of convert_hms (to one-second resolution).
double parse_hms(std::string_view hms);

/// Creates base, one directory per agent and `events/`. Existing files are
/// left alone. Throws IoFailure.
void create_report_directory(const std::filesystem::path& base, std::span<const std::string> obj_ids);

AgentSummary summarize_agent(const AgentState& agent);

/// Writes contacts_/ways_/messages_/summary_<run>.dat in base/<obj_id>/.
void write_movement_log(const std::filesystem::path& base, const AgentState& agent, int run_index);

/// Writes base/events/<e_id>_<run>.dat.
void write_event_log(const std::filesystem::path& base, const Event& event, int run_index);

/// Writes base/transfers_<run>.dat: `tick sender receiver msg_id` per line.
void write_transfer_log(const std::filesystem::path& base, std::span<const Transfer> transfers, int run_index);

/// Writes base/summary_<run>.dat and its JSON mirror base/summary_<run>.json.
void write_run_summary(const std::filesystem::path& base, const RunSummary& summary);

std::vector<ContactRecord> read_contacts(const std::filesystem::path& file);
std::vector<WayId> read_ways(const std::filesystem::path& file);
std::vector<MessageRecord> read_messages(const std::filesystem::path& file);
AgentSummary read_agent_summary(const std::filesystem::path& file);
EventRecord read_event(const std::filesystem::path& file);
RunSummary read_run_summary(const std::filesystem::path& file);

/// Recomputes delivered/generated from the event files of one run.
double delivery_ratio_from_event_logs(const std::filesystem::path& base, int run_index);

}  // namespace udtn
