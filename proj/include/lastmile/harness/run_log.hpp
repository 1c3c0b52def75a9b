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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "lastmile/arbiter/arbiter.hpp"

namespace lastmile::harness {

/// One closed-loop tick. Absent measurements (no obstacle, no sign, no
/// obstacles in the world) are NaN.
struct LogRecord {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;
  double v = 0.0;
  double omega = 0.0;
  double throttle = 0.0;
  double brake = 0.0;
  double steer = 0.0;
  double cte = 0.0;
  double obstacle_d = 0.0;
  double sign_d = 0.0;
  int sign_n = 0;
  arbiter::Display display = arbiter::Display::kStopped;
  arbiter::Source source = arbiter::Source::kWaypoint;
  double cmd_v = 0.0;  // selected linear velocity
  double gap = 0.0;    // ground-truth footprint clearance to the nearest obstacle
};

inline constexpr std::string_view kLogHeader =
    "t,x,y,heading,v,omega,throttle,brake,steer,cte,obstacle_d,sign_d,sign_N,"
    "display,source,cmd_v,gap";

/// Values use the shortest form that parses back to the same double.
std::string FormatLogLine(const LogRecord& record);

/// Throws ParseError on malformed lines.
LogRecord ParseLogLine(std::string_view line, const std::string& source = "<log>",
                       std::size_t line_number = 0);

void WriteLog(std::ostream& out, const std::vector<LogRecord>& records);

/// Expects the header line first. Throws ParseError naming the line.
std::vector<LogRecord> ReadLog(std::istream& in, const std::string& source = "<log>");
std::vector<LogRecord> ReadLog(const std::filesystem::path& path);

}  // namespace lastmile::harness
