#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "udtn/agent.hpp"
#include "udtn/config.hpp"

namespace udtn {

struct Clock {
  std::int64_t tick = 0;
  double now_h = 0.0;
};

struct Transfer {
  std::int64_t tick = 0;
  std::string sender;
  std::string receiver;
  std::string msg_id;

  bool operator==(const Transfer&) const = default;
};

/// Handoff policy. Neighbour discovery is shared; protocols differ in which
/// neighbours receive data. Smaller level = more superior (Level-0 on top).
class HandoffProtocol {
 public:
  virtual ~HandoffProtocol() = default;

  virtual std::string_view name() const = 0;
  virtual bool depot() const { return false; }
  virtual bool hands_to(const AgentState& self, const AgentState& neighbor) const = 0;

  /// Copies every message the neighbour lacks to each eligible neighbour, in
  /// ascending obj_id order. Returns the transfers made.
  virtual std::vector<Transfer> exchange_data(AgentState& self, std::span<AgentState> agents,
                                              const Clock& clock) const;
};

class EpidemicHandoff : public HandoffProtocol {
 public:
  std::string_view name() const override { return "Epidemic"; }
  bool hands_to(const AgentState&, const AgentState&) const override { return true; }
};

class SuperiorOnlyHandoff : public EpidemicHandoff {
 public:
  std::string_view name() const override { return "SuperiorOnly"; }
  bool hands_to(const AgentState& self, const AgentState& neighbor) const override {
    return self.level > neighbor.level;
  }
};

class SuperiorPeerHandoff : public SuperiorOnlyHandoff {
 public:
  std::string_view name() const override { return "SuperiorPeer"; }
  bool hands_to(const AgentState& self, const AgentState& neighbor) const override {
    return self.level >= neighbor.level;
  }
};

/// Receive-only sink.
class DepotHandoff : public HandoffProtocol {
 public:
  std::string_view name() const override { return "Depot"; }
  bool depot() const override { return true; }
  bool hands_to(const AgentState&, const AgentState&) const override { return false; }
  std::vector<Transfer> exchange_data(AgentState&, std::span<AgentState>, const Clock&) const override {
    return {};
  }
};

class ProtocolRegistry {
 public:
  using Factory = std::function<std::shared_ptr<const HandoffProtocol>()>;

  static ProtocolRegistry& instance();

  void add(std::string name, Factory factory);
  /// Throws UnknownProtocol.
  std::shared_ptr<const HandoffProtocol> create(std::string_view name) const;
  bool contains(std::string_view name) const;

 private:
  ProtocolRegistry();
  std::map<std::string, Factory, std::less<>> factories_;
};

/// max(path_types values) - min(group paths).
int find_level(const GroupSpec& group, const PathTypeMap& path_types);

/// Refreshes self's neighbour table against every other agent and closes
/// contacts for agents that left range (inclusive range test).
void find_neighbors(AgentState& self, std::span<const AgentState> agents, const Clock& clock);

std::vector<Transfer> exchange_data(AgentState& self, std::span<AgentState> agents, const Clock& clock);

/// find_neighbors then exchange_data.
std::vector<Transfer> execute_protocol(AgentState& self, std::span<AgentState> agents, const Clock& clock);

/// Closes every open contact at `now_h` (end of run).
void close_contacts(AgentState& self, double now_h);

}  // namespace udtn
