#include "sonia/service/protocol.hpp"

#include "sonia/session/codec.hpp"

namespace sonia::service {

using nlohmann::json;

namespace {

struct ParseError {
  std::string message;
};

std::string string_field(const json& msg, const char* key) {
  const auto it = msg.find(key);
  if (it == msg.end() || !it->is_string()) throw ParseError{std::string("missing string field '") + key + "'"};
  return it->get<std::string>();
}

}  // namespace

json error_reply(std::string_view code, std::string_view message) {
  return json{{"type", "error"}, {"code", code}, {"message", message}};
}

ProtocolSession::ProtocolSession(std::shared_ptr<const session::Engine> engine)
    : engine_(std::move(engine)), state_(engine_->new_session()) {}

void ProtocolSession::restore(session::SessionState snapshot) {
  engine_->check_state(snapshot);
  state_ = std::move(snapshot);
}

json ProtocolSession::handle(std::string_view message) {
  const json msg = json::parse(message, nullptr, false);
  if (msg.is_discarded()) return error_reply("E_PARSE", "message is not valid JSON");
  if (!msg.is_object()) return error_reply("E_PARSE", "message must be a JSON object");

  try {
    const std::string type = string_field(msg, "type");
    session::Event event;
    if (type == "select_structure") {
      event = session::SelectStructure{string_field(msg, "id")};
    } else if (type == "open_menu") {
      event = session::OpenMenu{string_field(msg, "id")};
    } else if (type == "select_connection") {
      event = session::SelectConnection{string_field(msg, "source"), string_field(msg, "target")};
    } else if (type == "get_progress") {
      return json{{"type", "progress"}, {"progress", session::progress_to_json(engine_->progress(state_))}};
    } else if (type == "get_state") {
      return json{{"type", "state"}, {"state", session::state_to_json(state_)}};
    } else {
      return error_reply("E_PARSE", "unknown message type '" + type + "'");
    }
    auto transition = engine_->apply(state_, event);
    state_ = std::move(transition.state);
    return json{{"type", "effects"}, {"effects", session::effects_to_json(transition.effects)}};
  } catch (const ParseError& e) {
    return error_reply("E_PARSE", e.message);
  } catch (const session::SessionError& e) {
    return error_reply(session::to_string(e.code()), e.what());
  }
}

}  // namespace sonia::service
