#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace chosim {

/// Full simulation parameter set. Serialized as JSON with a fixed key set;
/// unknown keys are rejected.
struct SimConfig {
    // Deployment / scenario
    double isd_m = 200.0;
    double tx_power_dbm = 30.0;
    int n_ues = 420;
    double fc_ghz = 28.0;
    double sim_time_s = 30.0;
    double seed_rotation_deg = 0.0;

    // Antenna / beams
    // Calibrated FR2 SSB grid: a fine grid makes the prepared beam go stale on
    // the timescale of a candidate's lifetime, which is what the CFRA-updating
    // mechanism exists to fix.
    int n_beams = 32;
    double hpbw_deg = 5.5;
    double max_gain_dbi = 18.0;
    double front_to_back_db = 25.0;
    double sector_span_deg = 105.0;

    // Radio
    double noise_power_dbm = -85.0;
    double noise_floor_clip_dbm = -160.0;
    double shadow_sigma_los_db = 4.0;
    double shadow_sigma_nlos_db = 7.82;
    double shadow_dcorr_los_m = 10.0;
    double shadow_dcorr_nlos_m = 13.0;
    double los_resample_dist_m = 50.0;
    int l3_k = 4;
    double h_bs_m = 10.0;
    double h_ut_m = 1.5;

    // Mobility
    double speed_mps = 30.0 / 3.6;

    // CHO protocol
    double o_prep_db = 10.0;
    double o_exec_db = 3.0;
    int max_candidates = 3;          // M
    double thr_cfra_dbm = -79.0;     // +-inf sentinels allowed
    double mr_offset_db = 3.0;       // +inf sentinel allowed
    std::int64_t t_update_ms = 30;
    std::int64_t ttt_ms = 0;
    std::int64_t t304_ms = 100;
    std::int64_t ra_interval_ms = 10;
    double outage_limit_db = -8.0;
    double replace_hysteresis_db = 3.0;
    double release_hysteresis_db = 2.0;
    std::int64_t pp_window_ms = 1000;
    bool update_enabled = true;

    // KPI post-processing
    std::vector<int> n_values = {0, 1, 2, 3, 4};
    double ho_cfra_ms = 80.0;

    // Engine
    std::int64_t dt_ms = 10;
    std::uint64_t seed = 1;
    double warmup_s = 0.0;
};

/// Paper-scale preset: the full-size scenario (420 UEs, 30 s).
SimConfig paper_preset();

/// Reduced preset for CI-speed runs (60 UEs, 10 s).
SimConfig desk_preset();

/// Throws std::invalid_argument with field-level diagnostics on any bad value.
void validate_config(const SimConfig& cfg);

SimConfig load_config(const std::string& path);
SimConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const SimConfig& cfg);
void save_config(const SimConfig& cfg, const std::string& path);

}  // namespace chosim
