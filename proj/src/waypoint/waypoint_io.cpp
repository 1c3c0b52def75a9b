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

#include "lastmile/waypoint/waypoint_io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include <fmt/format.h>

#include "lastmile/core/csv.hpp"
#include "lastmile/core/errors.hpp"

namespace lastmile::waypoint {
namespace {

std::ifstream OpenForRead(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  return in;
}

std::ofstream OpenForWrite(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path.string(), 0, "cannot write file");
  return out;
}

bool IsSkippable(std::string_view line) {
  line = Trim(line);
  return line.empty() || line.front() == '#';
}

}  // namespace

void WriteWaypoints(std::ostream& out, const WaypointList& list) {
  for (const Waypoint& wp : list.waypoints) {
    out << fmt::format("{:.9f},{:.9f},{:.3f}\n", wp.lat, wp.lon, wp.speed);
  }
}

void WriteWaypoints(const std::filesystem::path& path, const WaypointList& list) {
  auto out = OpenForWrite(path);
  WriteWaypoints(out, list);
}

WaypointList ReadWaypoints(std::istream& in, const std::string& source) {
  WaypointList list;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsSkippable(line)) continue;
    const auto fields = SplitFields(line);
    if (fields.size() != 3) {
      throw ParseError(source, line_no,
                       fmt::format("expected lat,lon,speed but found {} fields",
                                   fields.size()));
    }
    const auto lat = ParseDouble(fields[0]);
    const auto lon = ParseDouble(fields[1]);
    const auto speed = ParseDouble(fields[2]);
    if (!lat || !lon || !speed) {
      throw ParseError(source, line_no, "non-numeric waypoint field");
    }
    const Waypoint wp{*lat, *lon, *speed};
    try {
      Validate(wp);
    } catch (const InvalidStateError& e) {
      throw ParseError(source, line_no, e.what());
    }
    list.waypoints.push_back(wp);
  }
  if (!list.empty()) {
    list.origin = {list.waypoints.front().lat, list.waypoints.front().lon};
  }
  return list;
}

WaypointList ReadWaypoints(const std::filesystem::path& path) {
  auto in = OpenForRead(path);
  return ReadWaypoints(in, path.string());
}

std::string WaypointFileName(const std::string& route, double speed) {
  return fmt::format("{}_{}mps.waypoints", route, speed);
}

void WriteTrace(std::ostream& out, const RecordedTrace& trace) {
  out << "t,lat,lon,v,omega\n";
  for (const TraceSample& s : trace.samples) {
    out << fmt::format("{},{},{},{},{}\n", s.t, s.lat,
                       s.lon, s.v, s.omega);
  }
}

void WriteTrace(const std::filesystem::path& path, const RecordedTrace& trace) {
  auto out = OpenForWrite(path);
  WriteTrace(out, trace);
}

RecordedTrace ReadTrace(std::istream& in, const std::string& source) {
  RecordedTrace trace;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsSkippable(line)) continue;
    if (!header_seen) {
      header_seen = true;
      if (Trim(line) != "t,lat,lon,v,omega") {
        throw ParseError(source, line_no,
                         "expected header t,lat,lon,v,omega");
      }
      continue;
    }
    const auto fields = SplitFields(line);
    if (fields.size() != 5) {
      throw ParseError(source, line_no, "expected five trace fields");
    }
    TraceSample s;
    double* targets[] = {&s.t, &s.lat, &s.lon, &s.v, &s.omega};
    for (std::size_t i = 0; i < 5; ++i) {
      const auto value = ParseDouble(fields[i]);
      if (!value || !std::isfinite(*value)) {
        throw ParseError(source, line_no, "non-numeric trace field");
      }
      *targets[i] = *value;
    }
    if (!trace.samples.empty() && !(s.t > trace.samples.back().t)) {
      throw ParseError(source, line_no, "trace timestamps must increase");
    }
    trace.samples.push_back(s);
  }
  return trace;
}

RecordedTrace ReadTrace(const std::filesystem::path& path) {
  auto in = OpenForRead(path);
  return ReadTrace(in, path.string());
}

}  // namespace lastmile::waypoint
