#include "udtn/agent.hpp"

#include "udtn/mobility.hpp"

namespace udtn {

bool AgentState::mobile() const { return movement != nullptr && movement->mobile(); }

bool AgentState::receive(const Message& message, std::string sender, double now_h) {
  if (!held_ids.insert(message.msg_id).second) return false;
  buffer.push_back({message, std::move(sender), now_h});
  return true;
}

}  // namespace udtn
