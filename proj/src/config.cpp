#include "chosim/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace chosim {

namespace {

using nlohmann::json;

// dB/dBm fields that accept "inf"/"-inf" string sentinels.
json encode_maybe_inf(double v) {
    if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
    return json(v);
}

double decode_maybe_inf(const json& j, const std::string& key) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        throw std::invalid_argument("config key '" + key + "': expected number or \"inf\"/\"-inf\"");
    }
    if (!j.is_number()) throw std::invalid_argument("config key '" + key + "': expected number");
    return j.get<double>();
}

}  // namespace

SimConfig paper_preset() { return SimConfig{}; }

SimConfig desk_preset() {
    SimConfig cfg;
    cfg.n_ues = 60;
    cfg.sim_time_s = 10.0;
    return cfg;
}

void validate_config(const SimConfig& cfg) {
    std::vector<std::string> errors;
    auto check = [&](bool ok, const std::string& msg) {
        if (!ok) errors.push_back(msg);
    };
    check(cfg.isd_m > 0.0, "isd_m must be > 0");
    check(cfg.n_ues >= 0, "n_ues must be >= 0");
    check(cfg.fc_ghz > 0.0, "fc_ghz must be > 0");
    check(cfg.sim_time_s > 0.0, "sim_time_s must be > 0");
    check(cfg.n_beams >= 1, "n_beams must be >= 1");
    check(cfg.hpbw_deg > 0.0, "hpbw_deg must be > 0");
    check(cfg.max_gain_dbi >= 0.0, "max_gain_dbi must be >= 0");
    check(cfg.front_to_back_db > 0.0, "front_to_back_db must be > 0");
    check(cfg.sector_span_deg > 0.0 && cfg.sector_span_deg <= 120.0,
          "sector_span_deg must be in (0, 120]");
    check(cfg.shadow_sigma_los_db >= 0.0, "shadow_sigma_los_db must be >= 0");
    check(cfg.shadow_sigma_nlos_db >= 0.0, "shadow_sigma_nlos_db must be >= 0");
    check(cfg.shadow_dcorr_los_m > 0.0, "shadow_dcorr_los_m must be > 0");
    check(cfg.shadow_dcorr_nlos_m > 0.0, "shadow_dcorr_nlos_m must be > 0");
    check(cfg.los_resample_dist_m > 0.0, "los_resample_dist_m must be > 0");
    check(cfg.l3_k >= 0, "l3_k must be >= 0");
    check(cfg.speed_mps >= 0.0, "speed_mps must be >= 0");
    check(cfg.o_prep_db >= 0.0, "o_prep_db must be >= 0");
    check(cfg.max_candidates >= 1, "max_candidates must be >= 1");
    check(cfg.t_update_ms >= 0, "t_update_ms must be >= 0");
    check(cfg.ttt_ms >= 0, "ttt_ms must be >= 0");
    check(cfg.t304_ms > 0, "t304_ms must be > 0");
    check(cfg.ra_interval_ms > 0, "ra_interval_ms must be > 0");
    check(cfg.replace_hysteresis_db >= 0.0, "replace_hysteresis_db must be >= 0");
    check(cfg.release_hysteresis_db >= 0.0, "release_hysteresis_db must be >= 0");
    check(cfg.pp_window_ms >= 0, "pp_window_ms must be >= 0");
    check(!cfg.n_values.empty(), "n_values must be non-empty");
    for (int n : cfg.n_values) check(n >= 0, "n_values entries must be >= 0");
    check(cfg.ho_cfra_ms >= 0.0, "ho_cfra_ms must be >= 0");
    check(cfg.dt_ms > 0, "dt_ms must be > 0");
    check(cfg.warmup_s >= 0.0 && cfg.warmup_s < cfg.sim_time_s,
          "warmup_s must be in [0, sim_time_s)");
    check(!std::isinf(cfg.o_prep_db) && !std::isnan(cfg.o_prep_db), "o_prep_db must be finite");

    if (!errors.empty()) {
        std::ostringstream oss;
        oss << "invalid config:";
        for (const std::string& e : errors) oss << "\n  - " << e;
        throw std::invalid_argument(oss.str());
    }
}

std::string config_to_json_text(const SimConfig& c) {
    json j;
    j["isd_m"] = c.isd_m;
    j["tx_power_dbm"] = c.tx_power_dbm;
    j["n_ues"] = c.n_ues;
    j["fc_ghz"] = c.fc_ghz;
    j["sim_time_s"] = c.sim_time_s;
    j["seed_rotation_deg"] = c.seed_rotation_deg;
    j["n_beams"] = c.n_beams;
    j["hpbw_deg"] = c.hpbw_deg;
    j["max_gain_dbi"] = c.max_gain_dbi;
    j["front_to_back_db"] = c.front_to_back_db;
    j["sector_span_deg"] = c.sector_span_deg;
    j["noise_power_dbm"] = c.noise_power_dbm;
    j["noise_floor_clip_dbm"] = c.noise_floor_clip_dbm;
    j["shadow_sigma_los_db"] = c.shadow_sigma_los_db;
    j["shadow_sigma_nlos_db"] = c.shadow_sigma_nlos_db;
    j["shadow_dcorr_los_m"] = c.shadow_dcorr_los_m;
    j["shadow_dcorr_nlos_m"] = c.shadow_dcorr_nlos_m;
    j["los_resample_dist_m"] = c.los_resample_dist_m;
    j["l3_k"] = c.l3_k;
    j["h_bs_m"] = c.h_bs_m;
    j["h_ut_m"] = c.h_ut_m;
    j["speed_mps"] = c.speed_mps;
    j["o_prep_db"] = c.o_prep_db;
    j["o_exec_db"] = c.o_exec_db;
    j["max_candidates"] = c.max_candidates;
    j["thr_cfra_dbm"] = encode_maybe_inf(c.thr_cfra_dbm);
    j["mr_offset_db"] = encode_maybe_inf(c.mr_offset_db);
    j["t_update_ms"] = c.t_update_ms;
    j["ttt_ms"] = c.ttt_ms;
    j["t304_ms"] = c.t304_ms;
    j["ra_interval_ms"] = c.ra_interval_ms;
    j["outage_limit_db"] = c.outage_limit_db;
    j["replace_hysteresis_db"] = c.replace_hysteresis_db;
    j["release_hysteresis_db"] = c.release_hysteresis_db;
    j["pp_window_ms"] = c.pp_window_ms;
    j["update_enabled"] = c.update_enabled;
    j["n_values"] = c.n_values;
    j["ho_cfra_ms"] = c.ho_cfra_ms;
    j["dt_ms"] = c.dt_ms;
    j["seed"] = c.seed;
    j["warmup_s"] = c.warmup_s;
    return j.dump(2) + "\n";
}

SimConfig config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config root must be a JSON object");

    SimConfig c;
    static const std::set<std::string> known = {
        "isd_m", "tx_power_dbm", "n_ues", "fc_ghz", "sim_time_s", "seed_rotation_deg",
        "n_beams", "hpbw_deg", "max_gain_dbi", "front_to_back_db", "sector_span_deg",
        "noise_power_dbm", "noise_floor_clip_dbm", "shadow_sigma_los_db",
        "shadow_sigma_nlos_db", "shadow_dcorr_los_m", "shadow_dcorr_nlos_m",
        "los_resample_dist_m", "l3_k", "h_bs_m", "h_ut_m", "speed_mps", "o_prep_db",
        "o_exec_db", "max_candidates", "thr_cfra_dbm", "mr_offset_db", "t_update_ms",
        "ttt_ms", "t304_ms", "ra_interval_ms", "outage_limit_db", "replace_hysteresis_db",
        "release_hysteresis_db", "pp_window_ms", "update_enabled", "n_values", "ho_cfra_ms",
        "dt_ms", "seed", "warmup_s", "preset"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (known.find(it.key()) == known.end())
            throw std::invalid_argument("unknown config key: '" + it.key() + "'");
    }

    if (j.contains("preset")) {
        const std::string p = j.at("preset").get<std::string>();
        if (p == "desk") c = desk_preset();
        else if (p == "paper") c = paper_preset();
        else throw std::invalid_argument("unknown preset: '" + p + "' (expected desk|paper)");
    }

    auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("isd_m", c.isd_m);
    get("tx_power_dbm", c.tx_power_dbm);
    get("n_ues", c.n_ues);
    get("fc_ghz", c.fc_ghz);
    get("sim_time_s", c.sim_time_s);
    get("seed_rotation_deg", c.seed_rotation_deg);
    get("n_beams", c.n_beams);
    get("hpbw_deg", c.hpbw_deg);
    get("max_gain_dbi", c.max_gain_dbi);
    get("front_to_back_db", c.front_to_back_db);
    get("sector_span_deg", c.sector_span_deg);
    get("noise_power_dbm", c.noise_power_dbm);
    get("noise_floor_clip_dbm", c.noise_floor_clip_dbm);
    get("shadow_sigma_los_db", c.shadow_sigma_los_db);
    get("shadow_sigma_nlos_db", c.shadow_sigma_nlos_db);
    get("shadow_dcorr_los_m", c.shadow_dcorr_los_m);
    get("shadow_dcorr_nlos_m", c.shadow_dcorr_nlos_m);
    get("los_resample_dist_m", c.los_resample_dist_m);
    get("l3_k", c.l3_k);
    get("h_bs_m", c.h_bs_m);
    get("h_ut_m", c.h_ut_m);
    get("speed_mps", c.speed_mps);
    get("o_prep_db", c.o_prep_db);
    get("o_exec_db", c.o_exec_db);
    get("max_candidates", c.max_candidates);
    if (j.contains("thr_cfra_dbm")) c.thr_cfra_dbm = decode_maybe_inf(j.at("thr_cfra_dbm"), "thr_cfra_dbm");
    if (j.contains("mr_offset_db")) c.mr_offset_db = decode_maybe_inf(j.at("mr_offset_db"), "mr_offset_db");
    get("t_update_ms", c.t_update_ms);
    get("ttt_ms", c.ttt_ms);
    get("t304_ms", c.t304_ms);
    get("ra_interval_ms", c.ra_interval_ms);
    get("outage_limit_db", c.outage_limit_db);
    get("replace_hysteresis_db", c.replace_hysteresis_db);
    get("release_hysteresis_db", c.release_hysteresis_db);
    get("pp_window_ms", c.pp_window_ms);
    get("update_enabled", c.update_enabled);
    get("n_values", c.n_values);
    get("ho_cfra_ms", c.ho_cfra_ms);
    get("dt_ms", c.dt_ms);
    get("seed", c.seed);
    get("warmup_s", c.warmup_s);

    validate_config(c);
    return c;
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::ostringstream oss;
    oss << in.rdbuf();
    return config_from_json_text(oss.str());
}

void save_config(const SimConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write config file: " + path);
    out << config_to_json_text(cfg);
}

}  // namespace chosim
