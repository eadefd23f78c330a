#include "sonia/session/engine.hpp"

#include <algorithm>
#include <cmath>

namespace sonia::session {

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::kAnatomy: return "anatomy";
    case Phase::kConnectivity: return "connectivity";
    case Phase::kComplete: return "complete";
  }
  return "anatomy";
}

std::optional<Phase> phase_from_string(std::string_view name) {
  for (Phase p : {Phase::kAnatomy, Phase::kConnectivity, Phase::kComplete}) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownId: return "E_UNKNOWN_ID";
    case ErrorCode::kPhase: return "E_PHASE";
    case ErrorCode::kNoEdge: return "E_NO_EDGE";
    case ErrorCode::kBadState: return "E_BAD_STATE";
  }
  return "E_BAD_STATE";
}

double progress_percentage(std::size_t viewed, std::size_t total) {
  if (viewed >= total) return 100.0;
  const double pct = std::round(1000.0 * static_cast<double>(viewed) / static_cast<double>(total)) / 10.0;
  return std::min(pct, 99.9);
}

Engine::Engine(std::shared_ptr<const scene::CompiledScene> scene) : scene_(std::move(scene)) {
  for (std::size_t i = 0; i < scene_->nodes.size(); ++i) node_index_.emplace(scene_->nodes[i].structure_id, i);
  for (std::size_t i = 0; i < scene_->edges.size(); ++i) {
    edge_index_.emplace(ConnectionKey{scene_->edges[i].source_id, scene_->edges[i].target_id}, i);
  }
}

const scene::SceneNode& Engine::node(std::string_view id) const {
  const auto it = node_index_.find(id);
  if (it == node_index_.end()) {
    throw SessionError(ErrorCode::kUnknownId, "unknown structure id '" + std::string(id) + "'");
  }
  return scene_->nodes[it->second];
}

std::vector<scene::Color> Engine::colors_for(const std::vector<std::string>& subsystem_ids) const {
  std::vector<scene::Color> out;
  for (const auto& id : subsystem_ids) {
    if (auto c = scene_->palette.color_of(id)) out.push_back(*c);
  }
  return out;
}

std::vector<MenuItem> Engine::connection_menu(const SessionState& state, std::string_view structure_id) const {
  node(structure_id);
  if (state.phase == Phase::kAnatomy) {
    throw SessionError(ErrorCode::kPhase, "connection menus open after the anatomy phase");
  }
  std::vector<MenuItem> items;
  for (const auto& e : scene_->edges) {
    if (e.source_id != structure_id) continue;
    items.push_back(MenuItem{e.target_id, node(e.target_id).name, e.subsystem_ids, colors_for(e.subsystem_ids)});
  }
  return items;
}

ProgressReport Engine::progress(const SessionState& state) const {
  ProgressReport report;
  for (const auto& sub : scene_->subsystems) {
    SubsystemProgress p{sub.id, 0, 0, 0.0};
    for (const auto& e : scene_->edges) {
      if (std::find(e.subsystem_ids.begin(), e.subsystem_ids.end(), sub.id) == e.subsystem_ids.end()) continue;
      ++p.total;
      if (state.visited_connections.contains({e.source_id, e.target_id})) ++p.viewed;
    }
    p.percentage = progress_percentage(p.viewed, p.total);
    report.subsystems.push_back(std::move(p));
  }
  report.total = scene_->edges.size();
  for (const auto& e : scene_->edges) {
    if (state.visited_connections.contains({e.source_id, e.target_id})) ++report.viewed;
  }
  report.percentage = progress_percentage(report.viewed, report.total);
  return report;
}

Transition Engine::select_structure(const SessionState& state, const std::string& id) const {
  const auto& n = node(id);
  Transition t{state, {}};
  t.state.current_selection = Selection{id};

  if (state.phase != Phase::kAnatomy) {
    t.effects.emplace_back(HighlightStructure{id, false});
    t.effects.emplace_back(ShowMenu{id, n.name, connection_menu(state, id)});
    return t;
  }

  t.state.visited_structures.insert(id);
  t.effects.emplace_back(HighlightStructure{id, true});
  t.effects.emplace_back(ShowStructureText{id, n.name, n.description});
  t.effects.emplace_back(RevealDiagramItem{id});
  for (const auto& e : scene_->edges) {
    const bool touches = e.source_id == id || e.target_id == id;
    if (touches && t.state.visited_structures.contains(e.source_id) &&
        t.state.visited_structures.contains(e.target_id)) {
      t.effects.emplace_back(RevealDiagramEdge{e.source_id, e.target_id});
    }
  }
  t.effects.emplace_back(SetProgress{progress(t.state)});
  if (t.state.visited_structures.size() == scene_->nodes.size()) {
    t.state.phase = Phase::kConnectivity;
    t.effects.emplace_back(PhaseTransition{Phase::kConnectivity});
    if (scene_->edges.empty()) {
      t.state.phase = Phase::kComplete;
      t.effects.emplace_back(PhaseTransition{Phase::kComplete});
    }
  }
  return t;
}

Transition Engine::select_connection(const SessionState& state, const SelectConnection& ev) const {
  node(ev.source_id);
  node(ev.target_id);
  if (state.phase == Phase::kAnatomy) {
    throw SessionError(ErrorCode::kPhase, "connections are selectable after the anatomy phase");
  }
  const auto it = edge_index_.find({ev.source_id, ev.target_id});
  if (it == edge_index_.end()) {
    throw SessionError(ErrorCode::kNoEdge, "no connection " + ev.source_id + " -> " + ev.target_id);
  }
  const auto& e = scene_->edges[it->second];

  Transition t{state, {}};
  t.state.visited_connections.emplace(e.source_id, e.target_id);
  t.state.current_selection = Selection{ConnectionKey{e.source_id, e.target_id}};
  t.effects.emplace_back(ShowConnectionText{e.source_id, e.target_id, e.description});
  t.effects.emplace_back(HighlightConnection{e.source_id, e.target_id, e.subsystem_ids, colors_for(e.subsystem_ids)});
  t.effects.emplace_back(DiagramHighlight{e.source_id, e.target_id, scene::kWhite});
  t.effects.emplace_back(SetProgress{progress(t.state)});
  if (t.state.phase == Phase::kConnectivity && t.state.visited_connections.size() == scene_->edges.size()) {
    t.state.phase = Phase::kComplete;
    t.effects.emplace_back(PhaseTransition{Phase::kComplete});
  }
  return t;
}

Transition Engine::apply(const SessionState& state, const Event& event) const {
  return std::visit(
      [&](const auto& ev) -> Transition {
        using T = std::decay_t<decltype(ev)>;
        if constexpr (std::is_same_v<T, SelectStructure>) {
          return select_structure(state, ev.id);
        } else if constexpr (std::is_same_v<T, OpenMenu>) {
          const auto& n = node(ev.id);
          return Transition{state, {ShowMenu{ev.id, n.name, connection_menu(state, ev.id)}}};
        } else {
          return select_connection(state, ev);
        }
      },
      event);
}

void Engine::check_state(const SessionState& state) const {
  for (const auto& id : state.visited_structures) node(id);
  for (const auto& key : state.visited_connections) {
    if (!edge_index_.contains(key)) {
      throw SessionError(ErrorCode::kUnknownId, "unknown connection " + key.first + " -> " + key.second);
    }
  }
  if (state.current_selection) {
    if (const auto* id = std::get_if<std::string>(&*state.current_selection)) {
      node(*id);
    } else if (!edge_index_.contains(std::get<ConnectionKey>(*state.current_selection))) {
      throw SessionError(ErrorCode::kUnknownId, "selected connection is not in the scene");
    }
  }
  const bool all_structures = state.visited_structures.size() == scene_->nodes.size();
  const bool all_connections = state.visited_connections.size() == scene_->edges.size();
  switch (state.phase) {
    case Phase::kAnatomy:
      if (all_structures || !state.visited_connections.empty()) {
        throw SessionError(ErrorCode::kBadState, "anatomy phase with completed structures or visited connections");
      }
      break;
    case Phase::kConnectivity:
      if (!all_structures || all_connections) {
        throw SessionError(ErrorCode::kBadState, "connectivity phase requires all structures and pending connections");
      }
      break;
    case Phase::kComplete:
      if (!all_structures || !all_connections) {
        throw SessionError(ErrorCode::kBadState, "complete phase with unvisited items");
      }
      break;
  }
}

}  // namespace sonia::session
