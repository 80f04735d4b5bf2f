#include "udtn/events.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "udtn/error.hpp"

namespace udtn {

std::vector<double> schedule_events(MsgGenRate rate, double horizon_h, Rng& rng) {
  std::vector<double> times;
  if (!(horizon_h > 0.0) || rate.events < 1 || !(rate.hours > 0.0)) return times;
  const auto windows = static_cast<std::int64_t>(std::floor(horizon_h / rate.hours + 1e-9));
  for (std::int64_t k = 0; k < windows; ++k) {
    const double start = static_cast<double>(k) * rate.hours;
    for (int i = 0; i < rate.events; ++i) times.push_back(start + rng.uniform01() * rate.hours);
  }
  const double start = static_cast<double>(windows) * rate.hours;
  const double remainder = horizon_h - start;
  if (remainder > 0.0) {
    const auto partial = static_cast<std::int64_t>(std::floor(rate.events * remainder / rate.hours + 1e-9));
    for (std::int64_t i = 0; i < partial; ++i) times.push_back(start + rng.uniform01() * remainder);
  }
  std::sort(times.begin(), times.end());
  return times;
}

Event create_event(std::size_t ordinal, double occurrence_h, std::span<AgentState* const> stationary,
                   double duration_h, std::size_t payload_size, Rng& rng, double now_h) {
  if (stationary.empty()) throw Error(ErrorCode::NoStationaryAgents, "no stationary agent can host events");
  AgentState& host = *stationary[rng.index(stationary.size())];

  Event event;
  event.e_id = "E" + std::to_string(ordinal);
  event.time_h = occurrence_h;
  event.duration_h = duration_h;
  event.expiry_h = occurrence_h + duration_h;
  event.data.resize(payload_size);
  for (auto& byte : event.data) byte = static_cast<std::uint8_t>(rng.next() & 0xFF);
  event.assigned_to = host.obj_id;
  event.handler_trace.push_back(host.obj_id);

  host.receive(Message{event.e_id, event.data, host.obj_id, occurrence_h}, host.obj_id, now_h);
  return event;
}

void check_expiry(Event& event, double sim_time_h) {
  if (!event.expired && sim_time_h > event.expiry_h) event.expired = true;
}

std::string to_hex(const std::vector<std::uint8_t>& bytes) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out += digits[b >> 4];
    out += digits[b & 0xF];
  }
  return out;
}

std::vector<std::uint8_t> from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw std::invalid_argument("odd-length hex string");
  const auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("bad hex digit");
  };
  std::vector<std::uint8_t> out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    out.push_back(static_cast<std::uint8_t>(nibble(hex[i]) << 4 | nibble(hex[i + 1])));
  }
  return out;
}

}  // namespace udtn
