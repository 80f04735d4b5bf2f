#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "udtn/geo.hpp"
#include "udtn/road_graph.hpp"

namespace udtn {

class MovementModel;
class HandoffProtocol;

struct Message {
  std::string msg_id;  // originating event id
  std::vector<std::uint8_t> payload;
  std::string origin_obj;
  double created_h = 0.0;

  bool operator==(const Message&) const = default;
};

struct BufferEntry {
  Message message;
  std::string sender;  // obj_id that handed the message over (self for the origin)
  double received_h = 0.0;
};

struct NeighborEntry {
  std::string neighbor;
  double distance_km = 0.0;
  bool continuing = false;  // seen on an earlier tick of the same contact
  double entered_h = 0.0;
};

struct ContactRecord {
  std::string neighbor;
  double entry_h = 0.0;
  double exit_h = 0.0;

  bool operator==(const ContactRecord&) const = default;
};

/// One simulated object: movement state, buffer and protocol state.
struct AgentState {
  std::string obj_id;
  std::string group_id;

  // movement
  std::shared_ptr<const MovementModel> movement;
  RoadTypeSet allowed_types;
  int highway_type = 0;  // road class Restricted/Wait steer towards
  double speed_kmh = 0.0;
  double step_km = 0.0;
  double junction_delay_s = 0.0;
  VertexId prev_node = 0;
  VertexId next_node = 0;
  GeoPoint curr_geo_pos;
  std::optional<std::size_t> curr_edge;
  std::optional<WayId> curr_way;
  std::vector<WayId> ways_visited;
  double time_traveled_s = 0.0;
  std::vector<GeoPoint> mvmt_points;
  std::size_t mvmt_pt_index = 0;
  bool wait_flag = false;
  std::optional<double> wait_start_h;

  // data
  std::vector<BufferEntry> buffer;
  std::set<std::string> held_ids;
  std::set<std::string> forwarded_ids;  // handed to an eligible receiver at least once

  // protocol
  std::shared_ptr<const HandoffProtocol> protocol;
  int level = 0;
  double tx_range_km = 0.0;
  std::map<std::string, NeighborEntry> neighbor_table;
  std::vector<ContactRecord> contact_log;

  bool mobile() const;
  bool has_message(std::string_view msg_id) const { return held_ids.count(std::string(msg_id)) != 0; }

  /// Appends a message unless its id is already held. Returns true when stored.
  bool receive(const Message& message, std::string sender, double now_h);

  /// True while some held message has not yet been handed off.
  bool carrying() const { return forwarded_ids.size() < held_ids.size(); }
};

}  // namespace udtn
