#include "chosim/mobility.hpp"

#include <cmath>
#include <stdexcept>

namespace chosim {

void step_motion(MotionState& state, double dt_s, const ConvexPolygon& bounds, Rng& rng) {
    if (dt_s <= 0.0) throw std::invalid_argument("dt must be > 0");
    double budget = state.speed_mps * dt_s;
    while (budget > 0.0) {
        const Vec2 delta = state.waypoint - state.pos;
        const double remaining = delta.norm();
        if (remaining <= budget) {
            state.pos = state.waypoint;
            budget -= remaining;
            state.waypoint = rng.uniform_in(bounds);
            if (remaining == 0.0 && budget == 0.0) break;
        } else {
            const double inv = 1.0 / remaining;
            state.pos = state.pos + delta * (budget * inv);
            budget = 0.0;
        }
    }
}

std::vector<MotionState> spawn_ues(int n, const ConvexPolygon& bounds, double speed_mps,
                                   std::vector<Rng>& env_rngs) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    std::vector<MotionState> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Rng& rng = env_rngs[static_cast<std::size_t>(i)];
        MotionState s;
        s.pos = rng.uniform_in(bounds);
        s.waypoint = rng.uniform_in(bounds);
        s.speed_mps = speed_mps;
        out.push_back(s);
    }
    return out;
}

}  // namespace chosim
