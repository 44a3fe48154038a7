#include "chosim/deployment.hpp"

#include <cmath>
#include <stdexcept>

namespace chosim {

std::vector<double> beam_boresights(double cell_azimuth_deg, int n_beams,
                                    double sector_span_deg) {
    if (n_beams < 1) throw std::invalid_argument("n_beams must be >= 1");
    if (sector_span_deg <= 0.0 || sector_span_deg > 120.0)
        throw std::invalid_argument("sector_span_deg must be in (0, 120]");
    std::vector<double> out(static_cast<std::size_t>(n_beams));
    if (n_beams == 1) {
        out[0] = cell_azimuth_deg;
        return out;
    }
    // Edge-inclusive grid: first and last boresight sit on the span edges.
    const double spacing = sector_span_deg / (n_beams - 1);
    const double first = cell_azimuth_deg - 0.5 * sector_span_deg;
    for (int i = 0; i < n_beams; ++i) {
        out[static_cast<std::size_t>(i)] = first + i * spacing;
    }
    return out;
}

Layout build_layout(double isd_m, double seed_rotation_deg, double tx_power_dbm,
                    const BeamParams& beams) {
    if (isd_m <= 0.0) throw std::invalid_argument("isd must be > 0");

    Layout layout;
    layout.isd_m = isd_m;
    layout.sites.push_back({0.0, 0.0});
    for (int k = 0; k < 6; ++k) {
        const double ang = (60.0 * k + seed_rotation_deg) * M_PI / 180.0;
        layout.sites.push_back({isd_m * std::cos(ang), isd_m * std::sin(ang)});
    }

    int cell_id = 0;
    for (int s = 0; s < 7; ++s) {
        for (int sector = 0; sector < 3; ++sector) {
            Cell cell;
            cell.cell_id = cell_id;
            cell.site_index = s;
            cell.azimuth_deg = wrap_deg(120.0 * sector + seed_rotation_deg);
            cell.tx_power_dbm = tx_power_dbm;
            const std::vector<double> bores =
                beam_boresights(cell.azimuth_deg, beams.n_beams, beams.sector_span_deg);
            for (int b = 0; b < beams.n_beams; ++b) {
                Beam beam;
                beam.beam_id = b;
                beam.cell_id = cell_id;
                beam.boresight_azimuth_deg = bores[static_cast<std::size_t>(b)];
                beam.hpbw_deg = beams.hpbw_deg;
                beam.max_gain_dbi = beams.max_gain_dbi;
                beam.front_to_back_db = beams.front_to_back_db;
                cell.beams.push_back(beam);
            }
            layout.cells.push_back(std::move(cell));
            ++cell_id;
        }
    }

    // Bounds: hull of the outer site ring pushed out radially by isd/2.
    std::vector<Vec2> hull;
    const double r = 1.5 * isd_m;
    for (int k = 0; k < 6; ++k) {
        const double ang = (60.0 * k + seed_rotation_deg) * M_PI / 180.0;
        hull.push_back({r * std::cos(ang), r * std::sin(ang)});
    }
    layout.bounds = ConvexPolygon(std::move(hull));
    return layout;
}

double antenna_gain(const Beam& beam, double direction_azimuth_deg) {
    const double dtheta = wrap_deg(direction_azimuth_deg - beam.boresight_azimuth_deg);
    const double t = dtheta / beam.hpbw_deg;
    const double att = std::fmin(12.0 * t * t, beam.front_to_back_db);
    return beam.max_gain_dbi - att;
}

void dump_layout_csv(const Layout& layout, std::ostream& os) {
    os << "cell_id,site_index,site_x,site_y,azimuth_deg,beam_boresights_deg\n";
    for (const Cell& c : layout.cells) {
        const Vec2& site = layout.sites[static_cast<std::size_t>(c.site_index)];
        os << c.cell_id << ',' << c.site_index << ',' << site.x << ',' << site.y << ','
           << c.azimuth_deg << ',';
        for (std::size_t b = 0; b < c.beams.size(); ++b) {
            os << (b ? ";" : "") << c.beams[b].boresight_azimuth_deg;
        }
        os << '\n';
    }
}

}  // namespace chosim
