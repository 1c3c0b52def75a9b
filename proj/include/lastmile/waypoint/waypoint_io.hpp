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

#include "lastmile/waypoint/waypoint.hpp"

namespace lastmile::waypoint {

// Waypoint files hold one "lat,lon,speed" triplet per line: decimal degrees
// with nine decimals and speed in m/s. Blank lines and lines starting with
// '#' are ignored. Trace files are CSV with the header "t,lat,lon,v,omega".

void WriteWaypoints(std::ostream& out, const WaypointList& list);
void WriteWaypoints(const std::filesystem::path& path, const WaypointList& list);

/// The origin of the returned list is its first waypoint. Throws ParseError
/// naming the offending line.
WaypointList ReadWaypoints(std::istream& in, const std::string& source = "<stream>");
WaypointList ReadWaypoints(const std::filesystem::path& path);

/// "<route>_<speed>mps.waypoints", e.g. "figure8_2.5mps.waypoints".
std::string WaypointFileName(const std::string& route, double speed);

void WriteTrace(std::ostream& out, const RecordedTrace& trace);
void WriteTrace(const std::filesystem::path& path, const RecordedTrace& trace);
RecordedTrace ReadTrace(std::istream& in, const std::string& source = "<stream>");
RecordedTrace ReadTrace(const std::filesystem::path& path);

}  // namespace lastmile::waypoint
