#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "sonia/session/engine.hpp"

namespace sonia::service {

inline constexpr const char* kTranscriptFormat = "sonia-transcript/1";

struct Transcript {
  nlohmann::json document;
  std::size_t error_replies = 0;
};

/// Replays `script` against a fresh session. The script is a JSON array (or an
/// object with a "messages" array); object entries are sent as compact JSON
/// and string entries are sent verbatim, which lets scripts exercise E_PARSE.
/// Throws std::invalid_argument if the script has the wrong shape.
Transcript run_script(const session::Engine& engine, const nlohmann::json& script);

/// Loads and compiles a pack, reads the script file and replays it. Throws
/// std::runtime_error with the formatted diagnostics if the pack is invalid,
/// or std::invalid_argument if the script cannot be read.
Transcript run_script_files(const std::filesystem::path& pack_dir, const std::filesystem::path& script_file);

}  // namespace sonia::service
