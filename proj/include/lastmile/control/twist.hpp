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

namespace lastmile::control {

/// Target linear and angular velocity with the acceleration limits the
/// speed loop must respect. Both limits are positive magnitudes.
struct TwistCommand {
  double linear_v = 0.0;
  double angular_v = 0.0;
  double accel_limit = 1.0;
  double decel_limit = 1.0;
};

/// Throws InvalidStateError when linear_v < 0, a limit is not positive, or
/// any field is non-finite.
void Validate(const TwistCommand& cmd);

}  // namespace lastmile::control
