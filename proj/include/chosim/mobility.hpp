#pragma once

#include <vector>

#include "chosim/geometry.hpp"
#include "chosim/rng.hpp"

namespace chosim {

struct MotionState {
    Vec2 pos;
    double speed_mps = 0.0;
    Vec2 waypoint;
};

/// Random-waypoint step at constant speed, zero pause time. When a waypoint is
/// reached mid-step the leftover distance is spent toward a fresh uniform
/// waypoint, so per-step displacement along the path is exactly speed*dt.
void step_motion(MotionState& state, double dt_s, const ConvexPolygon& bounds, Rng& rng);

std::vector<MotionState> spawn_ues(int n, const ConvexPolygon& bounds, double speed_mps,
                                   std::vector<Rng>& env_rngs);

}  // namespace chosim
