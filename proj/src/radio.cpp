#include "chosim/radio.hpp"

#include <cmath>
#include <stdexcept>

namespace chosim {

double path_loss(double d2d_m, double fc_ghz, bool los, double h_bs_m, double h_ut_m,
                 PathLossFloorMode mode) {
    if (fc_ghz <= 0.0) throw std::invalid_argument("fc must be > 0");
    if (d2d_m < 1.0) {
        if (mode == PathLossFloorMode::Reject)
            throw std::invalid_argument("d2d below 1 m model validity floor");
        d2d_m = 1.0;
    }
    const double dh = h_bs_m - h_ut_m;
    const double d3d = std::sqrt(d2d_m * d2d_m + dh * dh);
    const double pl_los = 32.4 + 21.0 * std::log10(d3d) + 20.0 * std::log10(fc_ghz);
    if (los) return pl_los;
    const double pl_nlos = 35.3 * std::log10(d3d) + 22.4 + 21.3 * std::log10(fc_ghz) -
                           0.3 * (h_ut_m - 1.5);
    return std::fmax(pl_los, pl_nlos);
}

double los_probability(double d2d_m) {
    const double p = std::fmin(18.0 / d2d_m, 1.0);
    return p + std::exp(-d2d_m / 36.0) * (1.0 - p);
}

void update_shadowing(LinkShadowState& state, const Vec2& new_pos, double sigma_db,
                      double d_corr_m, Rng& rng) {
    if (sigma_db < 0.0) throw std::invalid_argument("sigma must be >= 0");
    if (d_corr_m <= 0.0) throw std::invalid_argument("d_corr must be > 0");
    const double dd = distance(new_pos, state.last_update_pos);
    if (dd == 0.0 && state.initialized) return;
    const double rho = state.initialized ? std::exp(-dd / d_corr_m) : 0.0;
    const double g = rng.standard_normal();
    state.value_db = rho * state.value_db + std::sqrt(1.0 - rho * rho) * sigma_db * g;
    state.last_update_pos = new_pos;
    state.initialized = true;
}

double beam_rsrp(const Vec2& ue_pos, const Vec2& site_pos, const Cell& cell,
                 const Beam& beam, double shadow_db, bool los, const RadioParams& radio) {
    const double az = azimuth_deg(site_pos, ue_pos);
    const double d2d = std::fmax(distance(site_pos, ue_pos), 1.0);
    const double pl = path_loss(d2d, radio.fc_ghz, los, radio.h_bs_m, radio.h_ut_m,
                                PathLossFloorMode::Clamp);
    const double rsrp = cell.tx_power_dbm + antenna_gain(beam, az) - pl + shadow_db;
    return std::fmax(rsrp, radio.noise_floor_clip_dbm);
}

double l3_coefficient(int k) {
    if (k < 0) throw std::invalid_argument("filter coefficient k must be >= 0");
    return 1.0 / std::pow(2.0, k / 4.0);
}

double l3_filter(double prev_dbm, double sample_dbm, int k) {
    const double a = l3_coefficient(k);
    return (1.0 - a) * prev_dbm + a * sample_dbm;
}

double downlink_sinr(const Vec2& ue_pos, const Layout& layout, int serving_cell_id,
                     int serving_beam_id, const std::vector<LinkShadowState>& shadows,
                     const RadioParams& radio) {
    auto received = [&](const Cell& cell, const Beam& beam) {
        const Vec2& site = layout.sites[static_cast<std::size_t>(cell.site_index)];
        const LinkShadowState& sh = shadows[static_cast<std::size_t>(cell.cell_id)];
        const double az = azimuth_deg(site, ue_pos);
        const double d2d = std::fmax(distance(site, ue_pos), 1.0);
        const double pl = path_loss(d2d, radio.fc_ghz, sh.los, radio.h_bs_m, radio.h_ut_m,
                                    PathLossFloorMode::Clamp);
        return cell.tx_power_dbm + antenna_gain(beam, az) - pl + sh.value_db;
    };

    const Cell& serving = layout.cells[static_cast<std::size_t>(serving_cell_id)];
    const double s_dbm = received(serving, serving.beams[static_cast<std::size_t>(serving_beam_id)]);

    double denom_mw = db_to_linear(radio.noise_power_dbm);
    for (const Cell& cell : layout.cells) {
        if (cell.cell_id == serving_cell_id) continue;
        double best = -1e300;
        for (const Beam& beam : cell.beams) {
            best = std::fmax(best, received(cell, beam));
        }
        denom_mw += db_to_linear(best);
    }
    return s_dbm - linear_to_db(denom_mw);
}

}  // namespace chosim
