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

#include "lastmile/harness/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

namespace lastmile::harness {
namespace {

double NanMin(double a, double b) {
  if (std::isnan(a)) return b;
  if (std::isnan(b)) return a;
  return std::min(a, b);
}

nlohmann::json Number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

RunMetrics ComputeMetrics(std::span<const LogRecord> log, const MetricsParams& params) {
  RunMetrics m;
  m.ticks = log.size();
  m.min_gap = std::numeric_limits<double>::quiet_NaN();
  if (log.empty()) return m;
  m.duration = log.back().t;

  double cte_sum = 0.0;
  for (std::size_t i = 0; i < log.size(); ++i) {
    const LogRecord& r = log[i];
    m.peak_cte = std::max(m.peak_cte, r.cte);
    cte_sum += r.cte;
    m.max_speed = std::max(m.max_speed, r.v);
    m.min_gap = NanMin(m.min_gap, r.gap);
    m.time.push_back(r.t);
    m.speed.push_back(r.v);
    m.accel.push_back(i == 0 ? 0.0 : (r.v - log[i - 1].v) / (r.t - log[i - 1].t));
    if (r.sign_n > 0) m.sign_detections.push_back({r.t, r.sign_d, r.sign_n});
  }
  m.mean_cte = cte_sum / double(log.size());

  bool armed = false;
  for (std::size_t i = 0; i < log.size(); ++i) {
    if (log[i].v >= params.moving_speed) armed = true;
    if (!armed || log[i].v >= params.stopped_speed) continue;
    armed = false;

    StopEvent e;
    e.source = log[i].source;
    const auto in_run = [&](const LogRecord& r) {
      if (r.source != e.source) return false;
      return e.source != arbiter::Source::kWaypoint || r.cmd_v <= 0.0;
    };
    std::size_t j = i;
    while (j > 0 && in_run(log[j - 1])) --j;
    const std::size_t before = j > 0 ? j - 1 : j;
    e.trigger_time = log[j].t;
    e.stop_time = log[i].t;
    e.initial_speed = log[before].v;
    for (std::size_t k = j; k <= i; ++k) {
      if (k > 0) e.distance += std::hypot(log[k].x - log[k - 1].x, log[k].y - log[k - 1].y);
    }
    const double elapsed = log[i].t - log[before].t;
    e.mean_decel = elapsed > 0.0 ? e.initial_speed / elapsed : 0.0;

    std::size_t k = i;
    while (k + 1 < log.size() && log[k + 1].v < params.stopped_speed) ++k;
    e.duration = log[k].t - log[i].t;
    e.min_gap = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t g = j; g <= k; ++g) e.min_gap = NanMin(e.min_gap, log[g].gap);
    m.stops.push_back(e);
  }
  return m;
}

std::string MetricsToJson(const RunMetrics& m, bool include_traces) {
  nlohmann::json j;
  j["ticks"] = m.ticks;
  j["duration"] = Number(m.duration);
  j["peak_cte"] = Number(m.peak_cte);
  j["mean_cte"] = Number(m.mean_cte);
  j["max_speed"] = Number(m.max_speed);
  j["min_gap"] = Number(m.min_gap);
  j["stops"] = nlohmann::json::array();
  for (const auto& e : m.stops) {
    j["stops"].push_back({{"source", arbiter::ToString(e.source)},
                          {"trigger_time", Number(e.trigger_time)},
                          {"stop_time", Number(e.stop_time)},
                          {"initial_speed", Number(e.initial_speed)},
                          {"distance", Number(e.distance)},
                          {"mean_decel", Number(e.mean_decel)},
                          {"duration", Number(e.duration)},
                          {"min_gap", Number(e.min_gap)}});
  }
  j["sign_detections"] = nlohmann::json::array();
  for (const auto& s : m.sign_detections) {
    j["sign_detections"].push_back({{"t", s.t}, {"d", Number(s.distance)}, {"N", s.points}});
  }
  if (include_traces) {
    j["traces"] = {{"t", m.time}, {"v", m.speed}, {"a", m.accel}};
  }
  return j.dump(2);
}

}  // namespace lastmile::harness
