#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sonia/scene/compiled_scene.hpp"

namespace sonia::session {

enum class Phase { kAnatomy, kConnectivity, kComplete };

std::string_view to_string(Phase phase);
std::optional<Phase> phase_from_string(std::string_view name);

using ConnectionKey = pack::EdgeKey;

/// Either a structure id or a directed connection.
using Selection = std::variant<std::string, ConnectionKey>;

struct SessionState {
  Phase phase = Phase::kAnatomy;
  std::set<std::string> visited_structures;
  std::set<ConnectionKey> visited_connections;
  std::optional<Selection> current_selection;

  bool operator==(const SessionState&) const = default;
};

// Events. Hover never reaches the engine; only confirmed selections do.
struct SelectStructure {
  std::string id;
};
struct OpenMenu {
  std::string id;
};
struct SelectConnection {
  std::string source_id;
  std::string target_id;
};
using Event = std::variant<SelectStructure, OpenMenu, SelectConnection>;

struct MenuItem {
  std::string target_id;
  std::string target_name;
  std::vector<std::string> subsystem_ids;
  std::vector<scene::Color> colors;  // one dot per subsystem, same order

  bool operator==(const MenuItem&) const = default;
};

struct SubsystemProgress {
  std::string subsystem_id;
  std::size_t viewed = 0;
  std::size_t total = 0;
  double percentage = 0.0;  // one decimal

  bool operator==(const SubsystemProgress&) const = default;
};

struct ProgressReport {
  std::vector<SubsystemProgress> subsystems;  // scene subsystem order
  std::size_t viewed = 0;                     // over all connections
  std::size_t total = 0;
  double percentage = 0.0;

  bool operator==(const ProgressReport&) const = default;
};

/// 100*viewed/total rounded to one decimal; exactly 100.0 only when
/// viewed == total, so a nearly complete bar never reads as done. An empty
/// total is vacuously complete.
double progress_percentage(std::size_t viewed, std::size_t total);

// Effects: declarative UI instructions for the viewer.
struct HighlightStructure {
  std::string id;
  bool persistent = true;
  bool operator==(const HighlightStructure&) const = default;
};
struct RevealDiagramItem {
  std::string id;
  bool operator==(const RevealDiagramItem&) const = default;
};
/// Diagram edge shown once both endpoints have been visited.
struct RevealDiagramEdge {
  std::string source_id;
  std::string target_id;
  bool operator==(const RevealDiagramEdge&) const = default;
};
struct ShowStructureText {
  std::string id;
  std::string name;
  std::string description;
  bool operator==(const ShowStructureText&) const = default;
};
struct ShowMenu {
  std::string id;
  std::string name;
  std::vector<MenuItem> items;
  bool operator==(const ShowMenu&) const = default;
};
struct ShowConnectionText {
  std::string source_id;
  std::string target_id;
  std::string description;
  bool operator==(const ShowConnectionText&) const = default;
};
struct HighlightConnection {
  std::string source_id;
  std::string target_id;
  std::vector<std::string> subsystem_ids;
  std::vector<scene::Color> colors;
  bool operator==(const HighlightConnection&) const = default;
};
struct DiagramHighlight {
  std::string source_id;
  std::string target_id;
  scene::Color color = scene::kWhite;
  bool operator==(const DiagramHighlight&) const = default;
};
struct SetProgress {
  ProgressReport report;
  bool operator==(const SetProgress&) const = default;
};
struct PhaseTransition {
  Phase phase;
  bool operator==(const PhaseTransition&) const = default;
};

using Effect = std::variant<HighlightStructure, RevealDiagramItem, RevealDiagramEdge, ShowStructureText, ShowMenu,
                            ShowConnectionText, HighlightConnection, DiagramHighlight, SetProgress, PhaseTransition>;

enum class ErrorCode { kUnknownId, kPhase, kNoEdge, kBadState };

std::string_view to_string(ErrorCode code);

class SessionError : public std::runtime_error {
 public:
  SessionError(ErrorCode code, const std::string& message) : std::runtime_error(message), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct Transition {
  SessionState state;
  std::vector<Effect> effects;
};

/// The two-phase learning state machine over one compiled scene.
///
/// Anatomy: every key structure must be selected at least once, in any order.
/// Connectivity: every directed connection must be selected at least once.
/// Complete: all of the above; exploring stays possible. A scene without
/// connections passes straight from Anatomy to Complete.
///
/// The engine is immutable and holds no session data; `apply` is a pure
/// function of (state, event), so one engine can serve any number of sessions
/// from any number of threads.
class Engine {
 public:
  explicit Engine(std::shared_ptr<const scene::CompiledScene> scene);

  const scene::CompiledScene& scene() const { return *scene_; }

  SessionState new_session() const { return SessionState{}; }

  /// Throws SessionError: E_UNKNOWN_ID, then E_PHASE, then E_NO_EDGE.
  Transition apply(const SessionState& state, const Event& event) const;

  /// Out-neighbours of `structure_id` in edge-list order with their
  /// subsystem colour dots. Throws E_UNKNOWN_ID, then E_PHASE during Anatomy.
  std::vector<MenuItem> connection_menu(const SessionState& state, std::string_view structure_id) const;

  ProgressReport progress(const SessionState& state) const;

  /// Checks a restored snapshot against this scene and the phase invariants.
  /// Throws SessionError(E_BAD_STATE or E_UNKNOWN_ID).
  void check_state(const SessionState& state) const;

 private:
  const scene::SceneNode& node(std::string_view id) const;
  std::vector<scene::Color> colors_for(const std::vector<std::string>& subsystem_ids) const;
  Transition select_structure(const SessionState& state, const std::string& id) const;
  Transition select_connection(const SessionState& state, const SelectConnection& ev) const;

  std::shared_ptr<const scene::CompiledScene> scene_;
  std::map<std::string, std::size_t, std::less<>> node_index_;
  std::map<ConnectionKey, std::size_t> edge_index_;
};

}  // namespace sonia::session
