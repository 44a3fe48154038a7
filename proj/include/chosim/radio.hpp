#pragma once

#include <vector>

#include "chosim/deployment.hpp"
#include "chosim/geometry.hpp"
#include "chosim/rng.hpp"

namespace chosim {

enum class PathLossFloorMode { Reject, Clamp };

struct RadioParams {
    double fc_ghz = 28.0;
    double h_bs_m = 10.0;
    double h_ut_m = 1.5;
    double noise_power_dbm = -85.0;
    double noise_floor_clip_dbm = -160.0;
    double shadow_sigma_los_db = 4.0;
    double shadow_sigma_nlos_db = 7.82;
    double shadow_dcorr_los_m = 10.0;
    double shadow_dcorr_nlos_m = 13.0;
    double los_resample_dist_m = 50.0;
    int l3_k = 4;
    PathLossFloorMode floor_mode = PathLossFloorMode::Reject;
};

/// UMi street-canyon path loss (single-slope LOS; NLOS = max of both branches).
double path_loss(double d2d_m, double fc_ghz, bool los, double h_bs_m, double h_ut_m,
                 PathLossFloorMode mode = PathLossFloorMode::Reject);

/// Distance-dependent LOS probability for the UMi scenario.
double los_probability(double d2d_m);

/// Spatially correlated (Gauss-Markov) shadowing for one UE-cell link, plus
/// the sticky LOS state that is re-sampled only after sufficient movement.
struct LinkShadowState {
    double value_db = 0.0;
    Vec2 last_update_pos;
    bool los = true;
    Vec2 last_los_sample_pos;
    bool initialized = false;
};

/// Exponentially correlated update: rho = exp(-dd/d_corr),
/// value' = rho*value + sqrt(1-rho^2)*sigma*g. Stationary marginal N(0, sigma^2).
void update_shadowing(LinkShadowState& state, const Vec2& new_pos, double sigma_db,
                      double d_corr_m, Rng& rng);

/// Beam-level RSRP toward a point: tx + pattern gain - path loss + shadow,
/// clipped below at the noise-floor clip.
double beam_rsrp(const Vec2& ue_pos, const Vec2& site_pos, const Cell& cell,
                 const Beam& beam, double shadow_db, bool los, const RadioParams& radio);

/// 3GPP-style L3 filtering, a = 1/2^(k/4).
double l3_filter(double prev_dbm, double sample_dbm, int k);
double l3_coefficient(int k);

/// Per-beam measurement bookkeeping for one UE-cell link.
struct BeamMeasurement {
    double raw_rsrp_dbm = 0.0;
    double filtered_rsrp_dbm = 0.0;
};

/// Downlink SINR for a given serving beam. Interference is the strongest-beam
/// received power of every other cell toward the UE (instantaneous values).
double downlink_sinr(const Vec2& ue_pos, const Layout& layout, int serving_cell_id,
                     int serving_beam_id, const std::vector<LinkShadowState>& shadows,
                     const RadioParams& radio);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

}  // namespace chosim
