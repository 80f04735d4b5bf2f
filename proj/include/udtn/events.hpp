#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "udtn/agent.hpp"
#include "udtn/config.hpp"
#include "udtn/rng.hpp"

namespace udtn {

inline constexpr std::size_t kDefaultPayloadBytes = 5;

struct Event {
  std::string e_id;
  double time_h = 0.0;
  double duration_h = 0.0;
  std::vector<std::uint8_t> data;
  double expiry_h = 0.0;
  bool expired = false;
  std::vector<std::string> handler_trace;
  std::string assigned_to;
  std::optional<double> delivered_h;
  std::optional<std::string> delivered_to;

  bool delivered() const { return delivered_h.has_value(); }
};

/// Occurrence times for the whole horizon: m uniform draws in every full
/// window [k*n, (k+1)*n), floor(m * r / n) draws in a trailing partial window
/// of length r, sorted ascending.
std::vector<double> schedule_events(MsgGenRate rate, double horizon_h, Rng& rng);

/// Creates event number `ordinal` (id "E<ordinal>") on a uniformly chosen
/// agent and places its message in that agent's buffer.
/// Throws NoStationaryAgents when `stationary` is empty.
Event create_event(std::size_t ordinal, double occurrence_h, std::span<AgentState* const> stationary,
                   double duration_h, std::size_t payload_size, Rng& rng, double now_h);

/// Sets expired once sim_time_h > expiry_h; never clears it.
void check_expiry(Event& event, double sim_time_h);

std::string to_hex(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> from_hex(std::string_view hex);

}  // namespace udtn
