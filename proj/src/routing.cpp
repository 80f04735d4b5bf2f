#include "udtn/routing.hpp"

#include <algorithm>

#include "udtn/error.hpp"
#include "udtn/geo.hpp"

namespace udtn {

namespace {

AgentState* find_agent(std::span<AgentState> agents, const std::string& obj_id) {
  const auto it = std::find_if(agents.begin(), agents.end(),
                               [&](const AgentState& a) { return a.obj_id == obj_id; });
  return it == agents.end() ? nullptr : &*it;
}

}  // namespace

std::vector<Transfer> HandoffProtocol::exchange_data(AgentState& self, std::span<AgentState> agents,
                                                     const Clock& clock) const {
  std::vector<Transfer> transfers;
  for (const auto& [id, entry] : self.neighbor_table) {
    AgentState* neighbor = find_agent(agents, id);
    if (neighbor == nullptr || !hands_to(self, *neighbor)) continue;
    for (const BufferEntry& held : self.buffer) {
      if (neighbor->receive(held.message, self.obj_id, clock.now_h)) {
        transfers.push_back({clock.tick, self.obj_id, neighbor->obj_id, held.message.msg_id});
      }
    }
    // The receiver now holds everything self carries.
    self.forwarded_ids.insert(self.held_ids.begin(), self.held_ids.end());
  }
  if (self.wait_flag && !self.carrying()) {
    self.wait_flag = false;
    self.wait_start_h.reset();
  }
  return transfers;
}

ProtocolRegistry::ProtocolRegistry() {
  const auto singleton = [](auto protocol) {
    auto shared = std::make_shared<const decltype(protocol)>(protocol);
    return [shared]() -> std::shared_ptr<const HandoffProtocol> { return shared; };
  };
  const auto epidemic = singleton(EpidemicHandoff{});
  const auto superior_only = singleton(SuperiorOnlyHandoff{});
  const auto superior_peer = singleton(SuperiorPeerHandoff{});
  const auto depot = singleton(DepotHandoff{});
  for (const char* n : {"Epidemic", "EpidemicHandoff", "EpidemicProtocol", "EpidemicRouting"}) add(n, epidemic);
  for (const char* n : {"SuperiorOnly", "SuperiorOnlyHandoff"}) add(n, superior_only);
  for (const char* n : {"SuperiorPeer", "SuperiorPeerHandoff"}) add(n, superior_peer);
  for (const char* n : {"Depot", "DepotHandoff"}) add(n, depot);
}

ProtocolRegistry& ProtocolRegistry::instance() {
  static ProtocolRegistry registry;
  return registry;
}

void ProtocolRegistry::add(std::string name, Factory factory) { factories_[std::move(name)] = std::move(factory); }

std::shared_ptr<const HandoffProtocol> ProtocolRegistry::create(std::string_view name) const {
  const auto it = factories_.find(name);
  if (it == factories_.end()) throw Error(ErrorCode::UnknownProtocol, std::string(name));
  return it->second();
}

bool ProtocolRegistry::contains(std::string_view name) const { return factories_.find(name) != factories_.end(); }

int find_level(const GroupSpec& group, const PathTypeMap& path_types) {
  int max_type = 0;
  bool first = true;
  for (const auto& [name, v] : path_types) {
    max_type = first ? v : std::max(max_type, v);
    first = false;
  }
  const int min_path = *std::min_element(group.paths.begin(), group.paths.end());
  return max_type - min_path;
}

void find_neighbors(AgentState& self, std::span<const AgentState> agents, const Clock& clock) {
  for (const AgentState& other : agents) {
    if (&other == &self || other.obj_id == self.obj_id) continue;
    const double dist = geodesic_distance(self.curr_geo_pos, other.curr_geo_pos);
    const auto it = self.neighbor_table.find(other.obj_id);
    if (dist <= self.tx_range_km) {
      if (it != self.neighbor_table.end()) {
        it->second.distance_km = dist;
        it->second.continuing = true;
      } else {
        self.neighbor_table.emplace(other.obj_id, NeighborEntry{other.obj_id, dist, false, clock.now_h});
      }
    } else if (it != self.neighbor_table.end()) {
      self.contact_log.push_back({other.obj_id, it->second.entered_h, clock.now_h});
      self.neighbor_table.erase(it);
    }
  }
}

std::vector<Transfer> exchange_data(AgentState& self, std::span<AgentState> agents, const Clock& clock) {
  if (!self.protocol) return {};
  return self.protocol->exchange_data(self, agents, clock);
}

std::vector<Transfer> execute_protocol(AgentState& self, std::span<AgentState> agents, const Clock& clock) {
  find_neighbors(self, std::span<const AgentState>(agents.data(), agents.size()), clock);
  return exchange_data(self, agents, clock);
}

void close_contacts(AgentState& self, double now_h) {
  for (const auto& [id, entry] : self.neighbor_table) {
    self.contact_log.push_back({id, entry.entered_h, now_h});
  }
  self.neighbor_table.clear();
}

}  // namespace udtn
