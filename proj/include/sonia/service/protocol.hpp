#pragma once

#include <memory>
#include <string_view>

#include "json.hpp"
#include "sonia/session/engine.hpp"

namespace sonia::service {

/// One learning session bound to a shared engine, speaking the JSON message
/// protocol. Client messages:
///
///   {"type": "select_structure", "id": ...}
///   {"type": "open_menu", "id": ...}
///   {"type": "select_connection", "source": ..., "target": ...}
///   {"type": "get_progress"}
///   {"type": "get_state"}
///
/// Every message gets exactly one reply of type effects, progress, state or
/// error. Errors (E_PARSE, E_UNKNOWN_ID, E_PHASE, E_NO_EDGE) leave the session
/// state untouched and the session usable.
class ProtocolSession {
 public:
  explicit ProtocolSession(std::shared_ptr<const session::Engine> engine);

  nlohmann::json handle(std::string_view message);

  const session::SessionState& state() const { return state_; }
  const session::Engine& engine() const { return *engine_; }

  /// Replaces the session state with a snapshot after checking it against the
  /// scene. Throws session::SessionError.
  void restore(session::SessionState snapshot);

 private:
  std::shared_ptr<const session::Engine> engine_;
  session::SessionState state_;
};

nlohmann::json error_reply(std::string_view code, std::string_view message);

}  // namespace sonia::service
