#include "sonia/session/codec.hpp"

#include <stdexcept>

namespace sonia::session {

using nlohmann::json;

namespace {

json colors_to_json(const std::vector<scene::Color>& colors) {
  json out = json::array();
  for (const auto& c : colors) out.push_back(scene::to_hex(c));
  return out;
}

json menu_item_to_json(const MenuItem& item) {
  return json{{"target", item.target_id},
              {"name", item.target_name},
              {"subsystems", item.subsystem_ids},
              {"colors", colors_to_json(item.colors)}};
}

}  // namespace

json progress_to_json(const ProgressReport& report) {
  json subs = json::array();
  for (const auto& s : report.subsystems) {
    subs.push_back({{"subsystem", s.subsystem_id}, {"viewed", s.viewed}, {"total", s.total}, {"percentage", s.percentage}});
  }
  return json{{"subsystems", std::move(subs)},
              {"overall", {{"viewed", report.viewed}, {"total", report.total}, {"percentage", report.percentage}}}};
}

json effect_to_json(const Effect& effect) {
  return std::visit(
      [](const auto& e) -> json {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, HighlightStructure>) {
          return {{"kind", "highlight_structure"}, {"id", e.id}, {"persistent", e.persistent}};
        } else if constexpr (std::is_same_v<T, RevealDiagramItem>) {
          return {{"kind", "reveal_diagram_item"}, {"id", e.id}};
        } else if constexpr (std::is_same_v<T, RevealDiagramEdge>) {
          return {{"kind", "reveal_diagram_edge"}, {"source", e.source_id}, {"target", e.target_id}};
        } else if constexpr (std::is_same_v<T, ShowStructureText>) {
          return {{"kind", "show_structure_text"}, {"id", e.id}, {"name", e.name}, {"description", e.description}};
        } else if constexpr (std::is_same_v<T, ShowMenu>) {
          json items = json::array();
          for (const auto& item : e.items) items.push_back(menu_item_to_json(item));
          return {{"kind", "show_menu"}, {"id", e.id}, {"name", e.name}, {"items", std::move(items)}};
        } else if constexpr (std::is_same_v<T, ShowConnectionText>) {
          return {{"kind", "show_connection_text"},
                  {"source", e.source_id},
                  {"target", e.target_id},
                  {"description", e.description}};
        } else if constexpr (std::is_same_v<T, HighlightConnection>) {
          return {{"kind", "highlight_connection"},
                  {"source", e.source_id},
                  {"target", e.target_id},
                  {"subsystems", e.subsystem_ids},
                  {"colors", colors_to_json(e.colors)}};
        } else if constexpr (std::is_same_v<T, DiagramHighlight>) {
          return {{"kind", "diagram_highlight"},
                  {"source", e.source_id},
                  {"target", e.target_id},
                  {"color", scene::to_hex(e.color)}};
        } else if constexpr (std::is_same_v<T, SetProgress>) {
          return {{"kind", "set_progress"}, {"report", progress_to_json(e.report)}};
        } else {
          return {{"kind", "phase_transition"}, {"phase", to_string(e.phase)}};
        }
      },
      effect);
}

json effects_to_json(const std::vector<Effect>& effects) {
  json out = json::array();
  for (const auto& e : effects) out.push_back(effect_to_json(e));
  return out;
}

json state_to_json(const SessionState& state) {
  json connections = json::array();
  for (const auto& [s, t] : state.visited_connections) connections.push_back(json::array({s, t}));
  json selection = nullptr;
  if (state.current_selection) {
    if (const auto* id = std::get_if<std::string>(&*state.current_selection)) {
      selection = {{"structure", *id}};
    } else {
      const auto& key = std::get<ConnectionKey>(*state.current_selection);
      selection = {{"connection", json::array({key.first, key.second})}};
    }
  }
  return json{{"phase", to_string(state.phase)},
              {"visited_structures", state.visited_structures},
              {"visited_connections", std::move(connections)},
              {"current_selection", std::move(selection)}};
}

SessionState state_from_json(const json& j) {
  try {
    SessionState state;
    const auto phase = phase_from_string(j.at("phase").get<std::string>());
    if (!phase) throw std::invalid_argument("unknown phase");
    state.phase = *phase;
    for (const auto& id : j.at("visited_structures")) state.visited_structures.insert(id.get<std::string>());
    for (const auto& pair : j.at("visited_connections")) {
      if (!pair.is_array() || pair.size() != 2) throw std::invalid_argument("connection must be [source, target]");
      state.visited_connections.emplace(pair[0].get<std::string>(), pair[1].get<std::string>());
    }
    const auto& sel = j.at("current_selection");
    if (sel.is_object() && sel.contains("structure")) {
      state.current_selection = Selection{sel.at("structure").get<std::string>()};
    } else if (sel.is_object() && sel.contains("connection")) {
      const auto& c = sel.at("connection");
      if (!c.is_array() || c.size() != 2) throw std::invalid_argument("connection must be [source, target]");
      state.current_selection = Selection{ConnectionKey{c[0].get<std::string>(), c[1].get<std::string>()}};
    } else if (!sel.is_null()) {
      throw std::invalid_argument("bad current_selection");
    }
    return state;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed session state: ") + e.what());
  }
}

}  // namespace sonia::session
