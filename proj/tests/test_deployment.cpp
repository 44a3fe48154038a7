#include <doctest.h>

#include <cmath>
#include <set>

#include "chosim/deployment.hpp"

using namespace chosim;

namespace {
Layout default_layout(double isd = 200.0, double rot = 0.0) {
    return build_layout(isd, rot, 30.0, BeamParams{});
}
}  // namespace

TEST_CASE("hexagonal layout geometry") {
    const Layout l = default_layout();
    CHECK(l.sites.size() == 7);
    CHECK(l.cells.size() == 21);
    CHECK(l.sites[0].x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(l.sites[1].x == doctest::Approx(200.0).epsilon(1e-9));
    CHECK(l.sites[1].y == doctest::Approx(0.0).scale(1).epsilon(1e-9));
    CHECK(l.sites[4].x == doctest::Approx(-200.0).epsilon(1e-9));
    CHECK(std::abs(l.sites[4].y) < 1e-6);

    // Ring neighbors and center-to-ring distances all equal isd.
    for (int k = 1; k <= 6; ++k) {
        CHECK(distance(l.sites[0], l.sites[static_cast<std::size_t>(k)]) ==
              doctest::Approx(200.0).epsilon(1e-9));
        const int next = k == 6 ? 1 : k + 1;
        CHECK(distance(l.sites[static_cast<std::size_t>(k)],
                       l.sites[static_cast<std::size_t>(next)]) ==
              doctest::Approx(200.0).epsilon(1e-9));
    }
}

TEST_CASE("layout scales with isd") {
    const Layout l = default_layout(100.0);
    for (int k = 1; k <= 6; ++k) {
        const int next = k == 6 ? 1 : k + 1;
        CHECK(distance(l.sites[static_cast<std::size_t>(k)],
                       l.sites[static_cast<std::size_t>(next)]) ==
              doctest::Approx(100.0).epsilon(1e-9));
    }
}

TEST_CASE("three sectors per site at 0/120/240") {
    const Layout l = default_layout();
    for (int s = 0; s < 7; ++s) {
        std::set<double> azimuths;
        for (const Cell& c : l.cells) {
            if (c.site_index == s) azimuths.insert(c.azimuth_deg);
        }
        CHECK(azimuths.size() == 3);
        CHECK(azimuths.count(0.0) == 1);
        CHECK(azimuths.count(120.0) == 1);
        CHECK(azimuths.count(-120.0) == 1);  // 240 wrapped
    }
}

TEST_CASE("beam grid invariants") {
    const Layout l = default_layout();
    for (const Cell& c : l.cells) {
        CHECK(c.beams.size() == 8);
        CHECK(c.tx_power_dbm == 30.0);
        std::set<double> bores;
        for (const Beam& b : c.beams) {
            bores.insert(b.boresight_azimuth_deg);
            CHECK(std::abs(wrap_deg(b.boresight_azimuth_deg - c.azimuth_deg)) <= 60.0);
        }
        CHECK(bores.size() == c.beams.size());
    }
}

TEST_CASE("beam_boresights spacing") {
    const auto b8 = beam_boresights(0.0, 8, 105.0);
    REQUIRE(b8.size() == 8);
    for (int i = 0; i < 8; ++i) {
        CHECK(b8[static_cast<std::size_t>(i)] == doctest::Approx(-52.5 + i * 15.0));
    }
    // Symmetric about the sector azimuth.
    CHECK(b8.front() - 0.0 == doctest::Approx(-(b8.back() - 0.0)).epsilon(1e-12));

    const auto b1 = beam_boresights(120.0, 1, 105.0);
    REQUIRE(b1.size() == 1);
    CHECK(b1[0] == doctest::Approx(120.0));

    const auto b2 = beam_boresights(0.0, 2, 30.0);
    REQUIRE(b2.size() == 2);
    CHECK(b2[0] == doctest::Approx(-15.0));
    CHECK(b2[1] == doctest::Approx(15.0));
}

TEST_CASE("antenna gain pattern") {
    Beam beam;
    beam.boresight_azimuth_deg = 0.0;
    beam.hpbw_deg = 15.0;
    beam.max_gain_dbi = 15.0;
    beam.front_to_back_db = 25.0;

    CHECK(antenna_gain(beam, 0.0) == doctest::Approx(15.0));
    CHECK(antenna_gain(beam, 7.5) == doctest::Approx(12.0));   // -3 dB at hpbw/2
    CHECK(antenna_gain(beam, -7.5) == doctest::Approx(12.0));  // even function
    CHECK(antenna_gain(beam, 180.0) == doctest::Approx(-10.0));  // backlobe clamp

    // Non-increasing in |dtheta| until the clamp.
    double prev = antenna_gain(beam, 0.0);
    for (double d = 0.5; d <= 180.0; d += 0.5) {
        const double g = antenna_gain(beam, d);
        CHECK(g <= prev + 1e-12);
        prev = g;
    }
}

TEST_CASE("layout construction is deterministic") {
    const Layout a = default_layout(200.0, 13.0);
    const Layout b = default_layout(200.0, 13.0);
    REQUIRE(a.cells.size() == b.cells.size());
    for (std::size_t i = 0; i < a.cells.size(); ++i) {
        CHECK(a.cells[i].azimuth_deg == b.cells[i].azimuth_deg);
        for (std::size_t j = 0; j < a.cells[i].beams.size(); ++j) {
            CHECK(a.cells[i].beams[j].boresight_azimuth_deg ==
                  b.cells[i].beams[j].boresight_azimuth_deg);
        }
    }
}

TEST_CASE("bounds are covered: every point sees a non-backlobe beam") {
    const Layout l = default_layout();
    Vec2 lo, hi;
    l.bounds.bounding_box(lo, hi);
    for (double x = lo.x; x <= hi.x; x += 23.0) {
        for (double y = lo.y; y <= hi.y; y += 23.0) {
            const Vec2 p{x, y};
            if (!l.bounds.contains(p)) continue;
            bool covered = false;
            for (const Cell& c : l.cells) {
                const Vec2& site = l.sites[static_cast<std::size_t>(c.site_index)];
                const double az = azimuth_deg(site, p);
                for (const Beam& b : c.beams) {
                    if (antenna_gain(b, az) > b.max_gain_dbi - b.front_to_back_db) {
                        covered = true;
                    }
                }
            }
            CHECK(covered);
        }
    }
    // Bounds vertices stay within isd of some site.
    for (const Vec2& v : l.bounds.vertices()) {
        double dmin = 1e300;
        for (const Vec2& s : l.sites) dmin = std::min(dmin, distance(v, s));
        CHECK(dmin <= l.isd_m + 1e-9);
    }
}
