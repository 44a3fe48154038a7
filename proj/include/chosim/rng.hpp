#pragma once

#include <cstdint>
#include <random>

#include "chosim/geometry.hpp"

namespace chosim {

/// splitmix64 step, used to derive well-separated stream seeds from one master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d4ecb9aeb3764fULL;
    return z ^ (z >> 31);
}

enum class StreamKind : std::uint64_t { Environment = 0, Protocol = 1 };

/// Deterministic per-UE RNG stream. Stream seed = splitmix chain over
/// (master_seed, ue_index, kind), so every (seed, ue, kind) triple gets an
/// independent generator and the environment stream is identical across
/// protocol configurations (paired-seed A/B runs).
class Rng {
public:
    Rng(std::uint64_t master_seed, std::uint32_t ue_index, StreamKind kind) {
        std::uint64_t s = master_seed;
        splitmix64(s);
        s ^= (static_cast<std::uint64_t>(ue_index) << 1) | static_cast<std::uint64_t>(kind);
        engine_.seed(splitmix64(s));
    }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

    double standard_normal() { return normal_(engine_); }

    /// Rejection-samples a uniform point inside a convex polygon.
    Vec2 uniform_in(const ConvexPolygon& poly) {
        Vec2 lo, hi;
        poly.bounding_box(lo, hi);
        for (;;) {
            Vec2 p{uniform(lo.x, hi.x), uniform(lo.y, hi.y)};
            if (poly.contains(p)) return p;
        }
    }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace chosim
