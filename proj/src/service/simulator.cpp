#include "sonia/service/simulator.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sonia/pack/loader.hpp"
#include "sonia/scene/compiled_scene.hpp"
#include "sonia/service/protocol.hpp"
#include "sonia/session/codec.hpp"

namespace sonia::service {

using nlohmann::json;

namespace {

json snapshot(const ProtocolSession& session) {
  return json{{"state", session::state_to_json(session.state())},
              {"progress", session::progress_to_json(session.engine().progress(session.state()))}};
}

}  // namespace

Transcript run_script(const session::Engine& engine, const json& script) {
  const json* messages = &script;
  if (script.is_object() && script.contains("messages")) messages = &script.at("messages");
  if (!messages->is_array()) throw std::invalid_argument("script must be a JSON array of messages");

  // The session only borrows the engine for the duration of the run.
  ProtocolSession session(std::shared_ptr<const session::Engine>(&engine, [](const session::Engine*) {}));
  Transcript transcript;
  json steps = json::array();
  const json initial = snapshot(session);
  for (const auto& entry : *messages) {
    const std::string text = entry.is_string() ? entry.get<std::string>() : entry.dump();
    json reply = session.handle(text);
    if (reply.at("type") == "error") ++transcript.error_replies;
    steps.push_back(json{{"request", entry}, {"reply", std::move(reply)}});
  }
  transcript.document = json{{"format", kTranscriptFormat},
                             {"initial", initial},
                             {"steps", std::move(steps)},
                             {"final", snapshot(session)},
                             {"error_replies", transcript.error_replies}};
  return transcript;
}

Transcript run_script_files(const std::filesystem::path& pack_dir, const std::filesystem::path& script_file) {
  auto pack = pack::load_pack(pack_dir);
  if (!pack.ok()) {
    std::string msg = "pack failed validation:";
    for (const auto& d : pack.diagnostics) {
      if (d.severity == Severity::kError) msg += "\n" + format_diagnostic(d);
    }
    throw std::runtime_error(msg);
  }
  auto scene = scene::compile_scene(*pack.value);
  if (!scene.ok()) throw std::runtime_error("pack has no key structures");

  std::ifstream in(script_file, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read script " + script_file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  const json script = json::parse(ss.str(), nullptr, false);
  if (script.is_discarded()) throw std::invalid_argument("script is not valid JSON");

  const session::Engine engine(std::make_shared<const scene::CompiledScene>(std::move(*scene.value)));
  return run_script(engine, script);
}

}  // namespace sonia::service
