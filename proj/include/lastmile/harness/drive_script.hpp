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

#include "lastmile/harness/scenario.hpp"
#include "lastmile/waypoint/waypoint.hpp"

namespace lastmile::harness {

/// Drives `script` kinematically from `start` (local frame of `origin`) and
/// samples position, speed and yaw rate at the script's sample rate. Arcs
/// are integrated exactly. Throws DegenerateInputError when the script
/// covers no distance.
waypoint::RecordedTrace RecordTrace(const DriveScript& script,
                                    const waypoint::GeoPoint& origin,
                                    const Vector2d& start = Vector2d::Zero());

}  // namespace lastmile::harness
