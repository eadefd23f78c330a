// sonia: content-pack validation, scene compilation, the session service, the
// headless simulator and the evaluation statistics.
//
// Exit codes: 0 ok, 1 diagnostics with errors (or error replies in a
// simulation), 2 I/O or usage problems.

#include <CLI11.hpp>
#include <cmath>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "sonia/eval/stats.hpp"
#include "sonia/pack/csv.hpp"
#include "sonia/pack/loader.hpp"
#include "sonia/scene/bundle.hpp"
#include "sonia/scene/compiled_scene.hpp"
#include "sonia/service/server.hpp"
#include "sonia/service/simulator.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kDiagnostics = 1;
constexpr int kIo = 2;

json diagnostics_to_json(const std::vector<sonia::Diagnostic>& diags) {
  json out = json::array();
  for (const auto& d : diags) {
    out.push_back({{"code", sonia::to_string(d.code)},
                   {"severity", sonia::to_string(d.severity)},
                   {"file", d.location.file},
                   {"line", d.location.line},
                   {"message", d.message}});
  }
  return out;
}

void print_diagnostics(const std::vector<sonia::Diagnostic>& diags, std::ostream& os) {
  for (const auto& d : diags) os << d << '\n';
}

bool write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return static_cast<bool>(std::cout);
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

std::optional<sonia::Checked<sonia::scene::CompiledScene>> load_and_compile(const std::string& dir, int& exit_code) {
  if (!fs::is_directory(dir)) {
    std::cerr << "sonia: pack directory '" << dir << "' not found\n";
    exit_code = kIo;
    return std::nullopt;
  }
  auto pack = sonia::pack::load_pack(dir);
  if (!pack.ok()) {
    print_diagnostics(pack.diagnostics, std::cerr);
    exit_code = kDiagnostics;
    return std::nullopt;
  }
  auto scene = sonia::scene::compile_scene(*pack.value);
  auto diags = pack.diagnostics;
  diags.insert(diags.end(), scene.diagnostics.begin(), scene.diagnostics.end());
  print_diagnostics(diags, std::cerr);
  if (!scene.ok()) {
    exit_code = kDiagnostics;
    return std::nullopt;
  }
  return scene;
}

int cmd_validate(const std::string& dir, bool as_json) {
  if (!fs::is_directory(dir)) {
    std::cerr << "sonia: pack directory '" << dir << "' not found\n";
    return kIo;
  }
  const auto pack = sonia::pack::load_pack(dir);
  auto diags = pack.diagnostics;
  if (pack.ok()) {
    const auto scene = sonia::scene::compile_scene(*pack.value);
    diags.insert(diags.end(), scene.diagnostics.begin(), scene.diagnostics.end());
  }
  if (as_json) {
    std::cout << json{{"ok", !sonia::has_errors(diags)}, {"diagnostics", diagnostics_to_json(diags)}}.dump(2) << '\n';
  } else {
    print_diagnostics(diags, std::cout);
    if (!sonia::has_errors(diags)) {
      const auto& p = *pack.value;
      std::cout << "ok: " << p.key_structures().size() << " key structures, " << p.peripheral_structures().size()
                << " peripheral, " << p.subsystems.size() << " subsystems, " << p.connections.size()
                << " connections\n";
    }
  }
  return sonia::has_errors(diags) ? kDiagnostics : kOk;
}

int cmd_compile(const std::string& dir, const std::string& out) {
  int code = kOk;
  auto scene = load_and_compile(dir, code);
  if (!scene) return code;
  if (!write_text(out, sonia::scene::dump_canonical(sonia::scene::scene_to_json(*scene->value)))) {
    std::cerr << "sonia: cannot write '" << out << "'\n";
    return kIo;
  }
  return kOk;
}

int cmd_serve(const std::string& dir, const std::string& host, unsigned short port) {
  int code = kOk;
  auto scene = load_and_compile(dir, code);
  if (!scene) return code;
  // Block before the io threads start so only sigwait sees the signals.
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);
  try {
    sonia::service::Server server(std::make_shared<const sonia::scene::CompiledScene>(std::move(*scene->value)),
                                  {host, port, 2});
    server.start();
    std::cout << "serving on http://" << host << ":" << server.port() << "  (GET /scene, /meshes/{id}, /health;"
              << " WebSocket /session)" << std::endl;
    int sig = 0;
    sigwait(&set, &sig);
    server.stop();
  } catch (const std::exception& e) {
    std::cerr << "sonia: " << e.what() << '\n';
    return kIo;
  }
  return kOk;
}

int cmd_simulate(const std::string& dir, const std::string& script, const std::string& out) {
  if (!fs::is_directory(dir)) {
    std::cerr << "sonia: pack directory '" << dir << "' not found\n";
    return kIo;
  }
  try {
    const auto transcript = sonia::service::run_script_files(dir, script);
    if (!write_text(out, sonia::scene::dump_canonical(transcript.document))) {
      std::cerr << "sonia: cannot write '" << out << "'\n";
      return kIo;
    }
    if (transcript.error_replies > 0) {
      std::cerr << "sonia: " << transcript.error_replies << " error repl"
                << (transcript.error_replies == 1 ? "y" : "ies") << " in transcript\n";
      return kDiagnostics;
    }
    return kOk;
  } catch (const std::invalid_argument& e) {
    std::cerr << "sonia: " << e.what() << '\n';
    return kIo;
  } catch (const std::runtime_error& e) {
    std::cerr << "sonia: " << e.what() << '\n';
    return kDiagnostics;
  }
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

int cmd_sus(const std::string& csv_path) {
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) {
    std::cerr << "sonia: cannot read '" << csv_path << "'\n";
    return kIo;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  const auto records = sonia::pack::read_csv(ss.str(), csv_path);
  if (!records.ok()) {
    print_diagnostics(records.diagnostics, std::cerr);
    return kDiagnostics;
  }
  std::vector<double> scores;
  for (const auto& rec : *records.value) {
    std::vector<int> answers;
    bool numeric = true;
    for (const auto& f : rec.fields) {
      try {
        std::size_t used = 0;
        answers.push_back(std::stoi(f, &used));
        numeric = numeric && used == f.size();
      } catch (const std::exception&) {
        numeric = false;
      }
    }
    if (!numeric) {
      if (rec.line == 1) continue;  // header row
      std::cerr << csv_path << ":" << rec.line << ": E_RANGE non-integer answer\n";
      return kDiagnostics;
    }
    try {
      const double score = sonia::eval::sus_score(answers);
      scores.push_back(score);
      std::cout << "respondent " << scores.size() << ": " << fixed(score, 1) << '\n';
    } catch (const sonia::eval::EvalError& e) {
      std::cerr << csv_path << ":" << rec.line << ": " << sonia::eval::to_string(e.code()) << ' ' << e.what() << '\n';
      return kDiagnostics;
    }
  }
  if (scores.empty()) {
    std::cerr << "sonia: no responses in '" << csv_path << "'\n";
    return kDiagnostics;
  }
  if (scores.size() == 1) {
    std::cout << "mean: " << fixed(scores[0], 1) << " (n=1)\n";
    return kOk;
  }
  const auto stats = sonia::eval::summarize(scores);
  std::cout << "mean ± sd: " << fixed(stats.mean, 1) << " ± " << fixed(stats.sd, 1) << " (n=" << stats.n << ")\n";
  if (stats.sd > 0.0) {
    const auto r = sonia::eval::t_test_summary(stats, 68.0);
    std::cout << "vs 68: t = " << fixed(r.t, 4) << ", df = " << r.df << ", p = " << fixed(r.p, 4) << '\n';
  }
  return kOk;
}

int cmd_ttest(const CLI::App& app, double mean, double sd, long n, double mu0, const std::vector<double>& values) {
  try {
    sonia::eval::TTestResult r;
    if (!values.empty()) {
      r = sonia::eval::t_test_sample(values, mu0);
    } else {
      if (app.count("--mean") == 0 || app.count("--sd") == 0 || app.count("--n") == 0) {
        std::cerr << "sonia ttest: give --mean, --sd and --n, or --values\n";
        return kIo;
      }
      r = sonia::eval::t_test_summary({mean, sd, n}, mu0);
    }
    std::cout << "t = " << fixed(r.t, 4) << "\ndf = " << r.df << "\np = " << fixed(r.p, 4) << '\n';
    return kOk;
  } catch (const sonia::eval::EvalError& e) {
    std::cerr << "sonia: " << sonia::eval::to_string(e.code()) << ' ' << e.what() << '\n';
    return kDiagnostics;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sonia: brain-network learning packs, scenes and sessions"};
  app.require_subcommand(1);

  std::string pack_dir;
  bool as_json = false;
  auto* validate = app.add_subcommand("validate", "Validate a content pack");
  validate->add_option("pack", pack_dir, "Pack directory")->required();
  validate->add_flag("--json", as_json, "Machine-readable diagnostics report");

  std::string out = "-";
  auto* compile = app.add_subcommand("compile", "Compile a pack to a scene bundle");
  compile->add_option("pack", pack_dir, "Pack directory")->required();
  compile->add_option("-o,--out", out, "Output file ('-' for stdout)");

  std::string host = "127.0.0.1";
  unsigned short port = 8787;
  auto* serve = app.add_subcommand("serve", "Serve the scene and live sessions");
  serve->add_option("pack", pack_dir, "Pack directory")->required();
  serve->add_option("--port", port, "TCP port")->capture_default_str();
  serve->add_option("--host", host, "Bind address")->capture_default_str();

  std::string script;
  auto* simulate = app.add_subcommand("simulate", "Replay a message script headlessly");
  simulate->add_option("pack", pack_dir, "Pack directory")->required();
  simulate->add_option("--script", script, "Script JSON file")->required();
  simulate->add_option("--out", out, "Transcript file ('-' for stdout)");

  std::string csv;
  auto* sus = app.add_subcommand("sus", "Score SUS questionnaires");
  sus->add_option("--csv", csv, "One respondent per row, 10 answers")->required();

  double mean = 0.0, sd = 0.0, mu0 = 0.0;
  long n = 0;
  std::vector<double> values;
  auto* ttest = app.add_subcommand("ttest", "Two-sided one-sample t-test");
  ttest->add_option("--mean", mean, "Sample mean");
  ttest->add_option("--sd", sd, "Sample standard deviation");
  ttest->add_option("--n", n, "Sample size");
  ttest->add_option("--mu0", mu0, "Reference mean")->required();
  ttest->add_option("--values", values, "Raw observations instead of summaries")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kIo;
  }

  if (*validate) return cmd_validate(pack_dir, as_json);
  if (*compile) return cmd_compile(pack_dir, out);
  if (*serve) return cmd_serve(pack_dir, host, port);
  if (*simulate) return cmd_simulate(pack_dir, script, out);
  if (*sus) return cmd_sus(csv);
  if (*ttest) return cmd_ttest(*ttest, mean, sd, n, mu0, values);
  return kIo;
}
