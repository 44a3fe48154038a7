#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "chosim/geometry.hpp"

namespace chosim {

struct Beam {
    int beam_id = 0;
    int cell_id = 0;
    double boresight_azimuth_deg = 0.0;
    double hpbw_deg = 15.0;
    double max_gain_dbi = 15.0;
    double front_to_back_db = 25.0;
};

struct Cell {
    int cell_id = 0;
    int site_index = 0;
    double azimuth_deg = 0.0;
    double tx_power_dbm = 30.0;
    std::vector<Beam> beams;
};

struct BeamParams {
    int n_beams = 8;
    double hpbw_deg = 15.0;
    double max_gain_dbi = 15.0;
    double front_to_back_db = 25.0;
    double sector_span_deg = 105.0;
};

/// Static deployment: one central site plus a ring of six, three sectors per
/// site, a fixed beam grid per sector. Immutable after construction.
struct Layout {
    std::vector<Vec2> sites;
    std::vector<Cell> cells;
    double isd_m = 0.0;
    ConvexPolygon bounds;
};

/// Evenly spaced beam boresights centered on the sector azimuth.
std::vector<double> beam_boresights(double cell_azimuth_deg, int n_beams,
                                    double sector_span_deg);

Layout build_layout(double isd_m, double seed_rotation_deg, double tx_power_dbm,
                    const BeamParams& beams);

/// Parabolic sectorized pattern: max_gain - min(12*(dtheta/hpbw)^2, front_to_back).
double antenna_gain(const Beam& beam, double direction_azimuth_deg);

/// One CSV row per cell: site position, azimuth, beam boresights.
void dump_layout_csv(const Layout& layout, std::ostream& os);

}  // namespace chosim
