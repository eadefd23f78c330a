#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "sonia/eval/stats.hpp"
#include "sonia/pack/loader.hpp"
#include "sonia/scene/bundle.hpp"
#include "sonia/scene/compiled_scene.hpp"
#include "sonia/scene/palette.hpp"
#include "sonia/service/protocol.hpp"
#include "sonia/service/simulator.hpp"
#include "sonia/session/codec.hpp"

namespace py = pybind11;

namespace {

py::list diagnostics_to_py(const std::vector<sonia::Diagnostic>& diags) {
  py::list out;
  for (const auto& d : diags) {
    py::dict rec;
    rec["code"] = std::string(sonia::to_string(d.code));
    rec["severity"] = std::string(sonia::to_string(d.severity));
    rec["file"] = d.location.file;
    rec["line"] = d.location.line;
    rec["message"] = d.message;
    out.append(std::move(rec));
  }
  return out;
}

std::shared_ptr<const sonia::scene::CompiledScene> compile_or_throw(const std::string& pack_dir) {
  auto pack = sonia::pack::load_pack(pack_dir);
  if (!pack.ok()) {
    std::string msg = "invalid pack";
    for (const auto& d : pack.diagnostics) {
      if (d.severity == sonia::Severity::kError) msg += "\n" + sonia::format_diagnostic(d);
    }
    throw py::value_error(msg);
  }
  auto scene = sonia::scene::compile_scene(*pack.value);
  if (!scene.ok()) throw py::value_error("pack has no key structures");
  return std::make_shared<const sonia::scene::CompiledScene>(std::move(*scene.value));
}

// Session wrapper owning its engine so Python objects stay independent.
class PySession {
 public:
  explicit PySession(const std::string& pack_dir)
      : session_(std::make_shared<const sonia::session::Engine>(compile_or_throw(pack_dir))) {}

  std::string handle(const std::string& message) { return session_.handle(message).dump(); }
  std::string state() const { return sonia::session::state_to_json(session_.state()).dump(); }
  std::string progress() const {
    return sonia::session::progress_to_json(session_.engine().progress(session_.state())).dump();
  }
  void restore(const std::string& snapshot) {
    try {
      session_.restore(sonia::session::state_from_json(nlohmann::json::parse(snapshot)));
    } catch (const std::exception& e) {
      throw py::value_error(e.what());
    }
  }

 private:
  sonia::service::ProtocolSession session_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Content-pack compiler, learning-session engine and evaluation statistics";

  py::register_exception<sonia::eval::EvalError>(m, "EvalError", PyExc_ValueError);

  m.def(
      "validate",
      [](const std::string& pack_dir) {
        auto pack = sonia::pack::load_pack(pack_dir);
        auto diags = pack.diagnostics;
        if (pack.ok()) {
          auto scene = sonia::scene::compile_scene(*pack.value);
          diags.insert(diags.end(), scene.diagnostics.begin(), scene.diagnostics.end());
        }
        return diagnostics_to_py(diags);
      },
      py::arg("pack_dir"), "Validate a pack directory; returns a list of diagnostic dicts.");

  m.def(
      "compile_scene",
      [](const std::string& pack_dir) {
        return sonia::scene::dump_canonical(sonia::scene::scene_to_json(*compile_or_throw(pack_dir)));
      },
      py::arg("pack_dir"), "Compile a pack into the scene bundle JSON text. Raises ValueError if invalid.");

  m.def(
      "simulate",
      [](const std::string& pack_dir, const std::string& script_file) {
        try {
          auto t = sonia::service::run_script_files(pack_dir, script_file);
          return py::make_tuple(sonia::scene::dump_canonical(t.document), t.error_replies);
        } catch (const std::exception& e) {
          throw py::value_error(e.what());
        }
      },
      py::arg("pack_dir"), py::arg("script_file"),
      "Replay a script; returns (transcript JSON text, number of error replies).");

  m.def(
      "palette",
      [](std::size_t k) {
        std::vector<std::string> out;
        for (const auto& c : sonia::scene::palette_colors(k)) out.push_back(sonia::scene::to_hex(c));
        return out;
      },
      py::arg("k"), "Hex colours generated for k subsystems.");

  m.def(
      "sus_score", [](const std::vector<int>& answers) { return sonia::eval::sus_score(answers); },
      py::arg("answers"));

  m.def(
      "t_test",
      [](double mean, double sd, long n, double mu0) {
        const auto r = sonia::eval::t_test_summary({mean, sd, n}, mu0);
        py::dict out;
        out["t"] = r.t;
        out["df"] = r.df;
        out["p"] = r.p;
        return out;
      },
      py::arg("mean"), py::arg("sd"), py::arg("n"), py::arg("mu0"),
      "Two-sided one-sample t-test from summary statistics.");

  m.def(
      "t_test_sample",
      [](const std::vector<double>& values, double mu0) {
        const auto r = sonia::eval::t_test_sample(values, mu0);
        py::dict out;
        out["t"] = r.t;
        out["df"] = r.df;
        out["p"] = r.p;
        return out;
      },
      py::arg("values"), py::arg("mu0"));

  py::class_<PySession>(m, "Session")
      .def(py::init<const std::string&>(), py::arg("pack_dir"))
      .def("handle", &PySession::handle, py::arg("message"), "Send one protocol message; returns the JSON reply.")
      .def("state", &PySession::state)
      .def("progress", &PySession::progress)
      .def("restore", &PySession::restore, py::arg("snapshot"));
}
