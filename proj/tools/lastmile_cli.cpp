// Copyright 2026 The Lastmile Authors
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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "lastmile/core/errors.hpp"
#include "lastmile/harness/drive_script.hpp"
#include "lastmile/harness/metrics.hpp"
#include "lastmile/harness/run_log.hpp"
#include "lastmile/harness/runner.hpp"
#include "lastmile/harness/scenario.hpp"
#include "lastmile/waypoint/path_compiler.hpp"
#include "lastmile/waypoint/waypoint_io.hpp"

namespace {

using namespace lastmile;

std::ofstream OpenOut(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

void EmitMetrics(const harness::RunMetrics& m, const std::string& path) {
  if (path.empty()) {
    std::cout << harness::MetricsToJson(m, false) << '\n';
  } else {
    OpenOut(path) << harness::MetricsToJson(m, true) << '\n';
  }
}

int Main(int argc, char** argv) {
  CLI::App app{"Last-mile shuttle simulation harness"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a scenario in closed loop");
  std::string scenario_path, log_path, metrics_path, detections_path, grid_path;
  std::optional<std::uint64_t> seed;
  run->add_option("scenario", scenario_path, "Scenario YAML file")->required();
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--log", log_path, "Per-tick log output");
  run->add_option("--metrics", metrics_path, "Metrics JSON output (stdout summary otherwise)");
  run->add_option("--detections", detections_path, "Sign detection log output");
  run->add_option("--grid-dump", grid_path, "Occupied grid cells per LiDAR frame");

  auto* record = app.add_subcommand("record", "Drive a scenario's script and write the trace");
  std::string record_scenario, record_out;
  record->add_option("scenario", record_scenario, "Scenario YAML with drive_script")->required();
  record->add_option("--out", record_out, "Trace output (stdout otherwise)");

  auto* compile = app.add_subcommand("compile-path", "Compile a trace into a waypoint file");
  std::string trace_path, compile_out;
  double speed = 0.0;
  compile->add_option("trace", trace_path, "Recorded trace CSV")->required();
  compile->add_option("--speed", speed, "Target speed, m/s")->required()->check(
      CLI::PositiveNumber);
  compile->add_option("--out", compile_out, "Output path (<route>_<speed>mps.waypoints otherwise)");

  auto* replay = app.add_subcommand("replay", "Recompute metrics from a run log");
  std::string replay_log, replay_metrics;
  replay->add_option("log", replay_log, "Per-tick log")->required();
  replay->add_option("--metrics", replay_metrics, "Metrics JSON output");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    const harness::Scenario sc = harness::LoadScenario(scenario_path);
    std::ofstream detections, grid;
    harness::RunOptions options;
    options.seed = seed;
    if (!detections_path.empty()) {
      detections = OpenOut(detections_path);
      options.detection_log = &detections;
    }
    if (!grid_path.empty()) {
      grid = OpenOut(grid_path);
      options.grid_dump = &grid;
    }
    const harness::RunResult result = harness::Run(sc, options);
    if (!log_path.empty()) {
      std::ofstream out = OpenOut(log_path);
      harness::WriteLog(out, result.log);
    }
    EmitMetrics(result.metrics, metrics_path);
  } else if (record->parsed()) {
    const harness::Scenario sc = harness::LoadScenario(record_scenario);
    if (!sc.drive_script) throw ParseError(record_scenario, 0, "scenario has no drive_script");
    const auto trace =
        harness::RecordTrace(*sc.drive_script, sc.origin.value_or(waypoint::GeoPoint{}));
    if (record_out.empty()) {
      waypoint::WriteTrace(std::cout, trace);
    } else {
      waypoint::WriteTrace(std::filesystem::path(record_out), trace);
    }
  } else if (compile->parsed()) {
    const auto trace = waypoint::ReadTrace(std::filesystem::path(trace_path));
    const auto list = waypoint::CompilePath(trace, speed);
    std::string out = compile_out;
    if (out.empty()) {
      std::string route = std::filesystem::path(trace_path).stem().string();
      if (const auto dot = route.find('.'); dot != std::string::npos) route.resize(dot);
      out = waypoint::WaypointFileName(route, speed);
    }
    waypoint::WriteWaypoints(std::filesystem::path(out), list);
    std::cerr << fmt::format("wrote {} waypoints to {}\n", list.size(), out);
  } else if (replay->parsed()) {
    const auto log = harness::ReadLog(std::filesystem::path(replay_log));
    EmitMetrics(harness::ComputeMetrics(log), replay_metrics);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return Main(argc, argv);
  } catch (const lastmile::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
