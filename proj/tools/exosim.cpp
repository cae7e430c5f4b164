// Copyright 2026 The exosim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "exosim/exosim.hpp"

namespace {

std::shared_ptr<spdlog::logger> make_logger() {
  auto log = spdlog::stderr_logger_st("exosim");
  log->set_pattern("exosim: %l: %v");
  log->set_level(spdlog::level::warn);
  if (const char* env = std::getenv("EXOSIM_LOG_LEVEL")) {
    const std::string level(env);
    if (level == "error" || level == "warn" || level == "info" || level == "debug")
      log->set_level(spdlog::level::from_str(level));
    else
      log->warn("ignoring EXOSIM_LOG_LEVEL={} (expected error, warn, info or debug)", level);
  }
  return log;
}

exosim::Notifier notifier(const std::shared_ptr<spdlog::logger>& log) {
  return [log](exosim::Notice n, const std::string& msg) {
    switch (n) {
      case exosim::Notice::Debug: log->debug(msg); break;
      case exosim::Notice::Info: log->info(msg); break;
      case exosim::Notice::Warn: log->warn(msg); break;
      case exosim::Notice::Error: log->error(msg); break;
    }
  };
}

}  // namespace

int main(int argc, char** argv) {
  auto log = make_logger();
  const exosim::Notifier notify = notifier(log);

  CLI::App app{"Exoskeleton kinematics, dynamics and admittance-control simulator"};
  app.require_subcommand(0, 1);
  std::string config_path;
  bool dump_config = false;
  app.add_option("-c,--config", config_path, "Scenario JSON (defaults apply to missing keys)");
  app.add_flag("--dump-config", dump_config, "Print the validated configuration with all defaults and exit");

  std::vector<double> q;
  auto* fk = app.add_subcommand("fk", "Port poses for a joint vector");
  fk->add_option("q", q, "Eight joint values")->expected(0, -1);
  auto* jac = app.add_subcommand("jacobian", "Port Jacobians for a joint vector");
  jac->add_option("q", q, "Eight joint values")->expected(0, -1);

  std::string log_path, metrics_path;
  auto* sim = app.add_subcommand("simulate", "Run a scenario; writes log CSV and metrics JSON");
  sim->add_option("config", config_path, "Scenario JSON");
  sim->add_option("--log", log_path, "Log CSV path (overrides output.log)");
  sim->add_option("--metrics", metrics_path, "Metrics JSON path (overrides output.metrics)");

  std::string traj_path;
  auto* gen = app.add_subcommand("gen-reference", "Export the reach reference trajectory as CSV");
  gen->add_option("config", config_path, "Scenario JSON");
  gen->add_option("-o,--out", traj_path, "Trajectory CSV path (overrides output.trajectory; stdout if unset)");

  std::string report_path, series_path;
  auto* render = app.add_subcommand("render-impedance", "Probe the rendered impedance for each configured setting");
  render->add_option("config", config_path, "Scenario JSON");
  render->add_option("--report", report_path, "Report JSON path (overrides output.report)");
  render->add_option("--series", series_path, "Series CSV path (overrides output.series)");

  std::optional<int> fault_column;
  auto* check = app.add_subcommand("check", "Run the built-in oracle suite");
  check->add_option("--fault-jacobian-column", fault_column, "Perturb one analytic Jacobian column (negative control)")
      ->group("")
      ->check(CLI::Range(0, exosim::kNumJoints - 1));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return e.get_exit_code() == 0 ? app.exit(e) : (app.exit(e), exosim::kExitConfig);
  }

  try {
    exosim::ScenarioConfig cfg;
    if (!config_path.empty()) cfg = exosim::load_config(config_path);
    if (!log_path.empty()) cfg.output.log = log_path;
    if (!metrics_path.empty()) cfg.output.metrics = metrics_path;
    if (!report_path.empty()) cfg.output.report = report_path;
    if (!series_path.empty()) cfg.output.series = series_path;
    if (traj_path.empty()) traj_path = cfg.output.trajectory;

    if (dump_config) {
      std::cout << exosim::config_to_json(cfg).dump(2) << '\n';
      return exosim::kExitOk;
    }
    if (*fk) return exosim::cmd_fk(cfg, q, std::cout);
    if (*jac) return exosim::cmd_jacobian(cfg, q, std::cout);
    if (*sim) return exosim::cmd_simulate(cfg, std::cout, notify);
    if (*gen) return exosim::cmd_gen_reference(cfg, traj_path, std::cout, notify);
    if (*render) return exosim::cmd_render_impedance(cfg, std::cout, notify);
    if (*check) {
      exosim::CheckOptions opt;
      opt.perturb_jacobian_column = fault_column;
      return exosim::cmd_check(cfg, opt, std::cout, notify);
    }
    std::cerr << app.help();
    return exosim::kExitConfig;
  } catch (const exosim::ConfigError& e) {
    log->error("config error: {}", e.what());
    return exosim::kExitConfig;
  } catch (const exosim::ParameterError& e) {
    log->error("invalid parameter: {}", e.what());
    return exosim::kExitConfig;
  } catch (const exosim::ImmeasurableError& e) {
    log->error("immeasurable: {}", e.what());
    return exosim::kExitRuntime;
  } catch (const exosim::Error& e) {
    log->error("{}", e.what());
    return exosim::kExitRuntime;
  } catch (const std::exception& e) {
    log->error("internal error: {}", e.what());
    return exosim::kExitRuntime;
  }
}
