#pragma once

#include "json.hpp"
#include "sonia/session/engine.hpp"

namespace sonia::session {

nlohmann::json progress_to_json(const ProgressReport& report);
nlohmann::json effect_to_json(const Effect& effect);
nlohmann::json effects_to_json(const std::vector<Effect>& effects);

/// Snapshot form:
/// {"phase": "anatomy", "visited_structures": [...], "visited_connections": [[s, t], ...],
///  "current_selection": null | {"structure": id} | {"connection": [s, t]}}
nlohmann::json state_to_json(const SessionState& state);

/// Throws std::invalid_argument on malformed input. Does not check the state
/// against a scene; use Engine::check_state for that.
SessionState state_from_json(const nlohmann::json& j);

}  // namespace sonia::session
