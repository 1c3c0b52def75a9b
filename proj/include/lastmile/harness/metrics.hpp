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

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lastmile/harness/run_log.hpp"

namespace lastmile::harness {

struct StopEvent {
  arbiter::Source source = arbiter::Source::kWaypoint;
  double trigger_time = 0.0;  // first tick of the command run that caused the stop
  double stop_time = 0.0;     // first tick below the stopped speed
  double initial_speed = 0.0; // speed just before the trigger tick
  double distance = 0.0;      // path length driven from trigger to stop
  double mean_decel = 0.0;    // initial_speed / (stop_time - previous tick)
  double duration = 0.0;      // time spent stopped
  double min_gap = 0.0;       // smallest ground-truth gap from trigger to restart
};

struct SignSample {
  double t = 0.0;
  double distance = 0.0;
  int points = 0;
};

struct RunMetrics {
  std::size_t ticks = 0;
  double duration = 0.0;
  double peak_cte = 0.0;
  double mean_cte = 0.0;
  double max_speed = 0.0;
  double min_gap = 0.0;  // NaN when the world has no obstacles
  std::vector<StopEvent> stops;
  std::vector<SignSample> sign_detections;
  std::vector<double> time;
  std::vector<double> speed;
  std::vector<double> accel;  // finite difference of logged speed
};

struct MetricsParams {
  double moving_speed = 0.3;   // a stop counts only after reaching this
  double stopped_speed = 0.05;
};

/// Aggregates metrics from logged ticks only.
RunMetrics ComputeMetrics(std::span<const LogRecord> log, const MetricsParams& params = {});

/// Structured JSON text. Traces are omitted unless requested.
std::string MetricsToJson(const RunMetrics& metrics, bool include_traces = true);

}  // namespace lastmile::harness
