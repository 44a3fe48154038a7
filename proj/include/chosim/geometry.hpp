#pragma once

#include <cmath>
#include <vector>

namespace chosim {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double norm() const { return std::hypot(x, y); }
};

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

/// Wraps an angle in degrees to (-180, 180].
inline double wrap_deg(double deg) {
    double w = deg - 360.0 * std::nearbyint(deg / 360.0);
    if (w <= -180.0) w += 360.0;
    return w;
}

/// Azimuth in degrees from `from` toward `to`, measured from +x axis.
inline double azimuth_deg(const Vec2& from, const Vec2& to) {
    return std::atan2(to.y - from.y, to.x - from.x) * 180.0 / M_PI;
}

/// Convex polygon with counter-clockwise vertices.
class ConvexPolygon {
public:
    ConvexPolygon() = default;
    explicit ConvexPolygon(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {}

    const std::vector<Vec2>& vertices() const { return vertices_; }

    bool contains(const Vec2& p) const {
        const std::size_t n = vertices_.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2& a = vertices_[i];
            const Vec2& b = vertices_[(i + 1) % n];
            const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
            if (cross < 0.0) return false;
        }
        return true;
    }

    void bounding_box(Vec2& lo, Vec2& hi) const {
        lo = hi = vertices_.front();
        for (const Vec2& v : vertices_) {
            lo.x = std::min(lo.x, v.x);
            lo.y = std::min(lo.y, v.y);
            hi.x = std::max(hi.x, v.x);
            hi.y = std::max(hi.y, v.y);
        }
    }

private:
    std::vector<Vec2> vertices_;
};

}  // namespace chosim
