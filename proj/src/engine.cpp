#include "chosim/engine.hpp"

#include <algorithm>
#include <cmath>

#include "chosim/cho.hpp"
#include "chosim/kernels.hpp"
#include "chosim/mobility.hpp"
#include "chosim/radio.hpp"
#include "chosim/rng.hpp"

namespace chosim {

namespace {

RadioParams radio_from_config(const SimConfig& cfg) {
    RadioParams r;
    r.fc_ghz = cfg.fc_ghz;
    r.h_bs_m = cfg.h_bs_m;
    r.h_ut_m = cfg.h_ut_m;
    r.noise_power_dbm = cfg.noise_power_dbm;
    r.noise_floor_clip_dbm = cfg.noise_floor_clip_dbm;
    r.shadow_sigma_los_db = cfg.shadow_sigma_los_db;
    r.shadow_sigma_nlos_db = cfg.shadow_sigma_nlos_db;
    r.shadow_dcorr_los_m = cfg.shadow_dcorr_los_m;
    r.shadow_dcorr_nlos_m = cfg.shadow_dcorr_nlos_m;
    r.los_resample_dist_m = cfg.los_resample_dist_m;
    r.l3_k = cfg.l3_k;
    return r;
}

struct UeContext {
    MotionState motion;
    Rng proto;
    std::vector<LinkShadowState> shadows;    // per cell
    std::vector<double> raw;                 // n_cells * n_beams
    std::vector<double> filtered;            // n_cells * n_beams
    std::vector<double> cell_rsrp;           // max over filtered beams
    bool has_sample = false;
    int serving_cell = -1;
    CandidateSet cands;
    std::optional<RaAttemptState> ra;
    struct {
        std::int64_t time_ms = 0;
        int source = -1;
        bool valid = false;
    } last_ho;

    UeContext(std::uint64_t seed, std::uint32_t idx, std::size_t n_cells, std::size_t n_beams)
        : proto(seed, idx, StreamKind::Protocol),
          shadows(n_cells),
          raw(n_cells * n_beams),
          filtered(n_cells * n_beams),
          cell_rsrp(n_cells) {}
};

class Engine {
public:
    Engine(const SimConfig& cfg, const Layout& layout, const RunHooks& hooks)
        : cfg_(cfg), layout_(layout), hooks_(hooks), radio_(radio_from_config(cfg)),
          kernels_(kernels::active()), n_cells_(layout.cells.size()),
          n_beams_(static_cast<std::size_t>(cfg.n_beams)),
          filter_a_(l3_coefficient(cfg.l3_k)),
          warmup_ms_(static_cast<std::int64_t>(cfg.warmup_s * 1000.0)) {
        boresights_.resize(n_cells_ * n_beams_);
        for (std::size_t c = 0; c < n_cells_; ++c) {
            for (std::size_t b = 0; b < n_beams_; ++b) {
                boresights_[c * n_beams_ + b] =
                    layout.cells[c].beams[b].boresight_azimuth_deg;
            }
        }
    }

    SimResult run() {
        for (int i = 0; i < cfg_.n_ues; ++i) {
            env_rngs_.emplace_back(cfg_.seed, static_cast<std::uint32_t>(i),
                                   StreamKind::Environment);
            ues_.emplace_back(cfg_.seed, static_cast<std::uint32_t>(i), n_cells_, n_beams_);
        }
        std::vector<MotionState> spawned =
            spawn_ues(cfg_.n_ues, layout_.bounds, cfg_.speed_mps, env_rngs_);
        for (int i = 0; i < cfg_.n_ues; ++i) {
            ues_[static_cast<std::size_t>(i)].motion = spawned[static_cast<std::size_t>(i)];
        }

        // Initial measurement and attachment at t = 0.
        for (int i = 0; i < cfg_.n_ues; ++i) {
            UeContext& ue = ues_[static_cast<std::size_t>(i)];
            measure(ue, env_rngs_[static_cast<std::size_t>(i)]);
            ue.serving_cell = strongest_cell(ue);
        }

        if (hooks_.rsrp_trace != nullptr)
            *hooks_.rsrp_trace << "time_ms,ue,cell,beam,raw_dbm,filtered_dbm\n";
        if (hooks_.trajectory != nullptr) *hooks_.trajectory << "time_ms,ue,x,y\n";

        const std::int64_t n_steps =
            static_cast<std::int64_t>(std::llround(cfg_.sim_time_s * 1000.0)) / cfg_.dt_ms;
        const double dt_s = static_cast<double>(cfg_.dt_ms) / 1000.0;
        for (std::int64_t step = 1; step <= n_steps; ++step) {
            const std::int64_t now = step * cfg_.dt_ms;
            for (int i = 0; i < cfg_.n_ues; ++i) {
                UeContext& ue = ues_[static_cast<std::size_t>(i)];
                Rng& env = env_rngs_[static_cast<std::size_t>(i)];
                step_motion(ue.motion, dt_s, layout_.bounds, env);
                measure(ue, env);
                dump_traces(ue, i, now);
                if (ue.ra.has_value()) {
                    progress_ra(ue, i, now);
                    continue;
                }
                commit_updates(ue, i, now);
                maintain_candidates(ue, i, now);
                if (cfg_.update_enabled) trigger_mrs(ue, i, now);
                check_and_start_execution(ue, i, now);
            }
        }

        SimResult result;
        result.log = std::move(log_);
        const double counted_time = cfg_.sim_time_s - cfg_.warmup_s;
        if (cfg_.n_ues > 0) {
            KpiAccumulator acc = accumulate_from_log(result.log, cfg_.n_ues, counted_time);
            result.report =
                build_report(acc, LatencyTable::defaults(), cfg_.n_values, cfg_.ho_cfra_ms);
        } else {
            result.report.raw.n_ues = 0;
            result.report.raw.sim_time_s = counted_time;
            result.report.n_values = cfg_.n_values;
            result.report.d_ho_ms.assign(cfg_.n_values.size(), std::nullopt);
        }
        return result;
    }

private:
    void log_event(std::int64_t now, int ue, EventType type, int cell, int beam) {
        if (now < warmup_ms_) return;
        log_.push_back(Event{now, ue, type, cell, beam});
    }

    int strongest_cell(const UeContext& ue) const {
        std::size_t best = 0;
        for (std::size_t c = 1; c < n_cells_; ++c) {
            if (ue.cell_rsrp[c] > ue.cell_rsrp[best]) best = c;
        }
        return static_cast<int>(best);
    }

    void measure(UeContext& ue, Rng& env) {
        const Vec2 pos = ue.motion.pos;
        for (std::size_t c = 0; c < n_cells_; ++c) {
            const Cell& cell = layout_.cells[c];
            const Vec2& site = layout_.sites[static_cast<std::size_t>(cell.site_index)];
            const double d2d = std::fmax(distance(site, pos), 1.0);

            LinkShadowState& sh = ue.shadows[c];
            if (!sh.initialized) {
                sh.los = env.uniform(0.0, 1.0) < los_probability(d2d);
                sh.last_los_sample_pos = pos;
            } else if (distance(pos, sh.last_los_sample_pos) >= radio_.los_resample_dist_m) {
                sh.los = env.uniform(0.0, 1.0) < los_probability(d2d);
                sh.last_los_sample_pos = pos;
            }
            const double sigma = sh.los ? radio_.shadow_sigma_los_db : radio_.shadow_sigma_nlos_db;
            const double dcorr = sh.los ? radio_.shadow_dcorr_los_m : radio_.shadow_dcorr_nlos_m;
            update_shadowing(sh, pos, sigma, dcorr, env);

            const double pl = path_loss(d2d, radio_.fc_ghz, sh.los, radio_.h_bs_m,
                                        radio_.h_ut_m, PathLossFloorMode::Clamp);
            const double base = cell.tx_power_dbm - pl + sh.value_db;
            const double az = azimuth_deg(site, pos);
            kernels_.beam_rsrp(&boresights_[c * n_beams_], n_beams_, az, cfg_.hpbw_deg,
                               cfg_.max_gain_dbi, cfg_.front_to_back_db, base,
                               radio_.noise_floor_clip_dbm, &ue.raw[c * n_beams_]);
        }
        if (!ue.has_sample) {
            ue.filtered = ue.raw;
            ue.has_sample = true;
        } else {
            kernels_.ema_filter(ue.filtered.data(), ue.raw.data(), ue.filtered.size(),
                                filter_a_);
        }
        for (std::size_t c = 0; c < n_cells_; ++c) {
            double best = ue.filtered[c * n_beams_];
            for (std::size_t b = 1; b < n_beams_; ++b) {
                best = std::fmax(best, ue.filtered[c * n_beams_ + b]);
            }
            ue.cell_rsrp[c] = best;
        }
    }

    void dump_traces(const UeContext& ue, int ue_idx, std::int64_t now) {
        if (hooks_.trajectory != nullptr) {
            *hooks_.trajectory << now << ',' << ue_idx << ',' << ue.motion.pos.x << ','
                               << ue.motion.pos.y << '\n';
        }
        if (hooks_.rsrp_trace != nullptr) {
            for (std::size_t c = 0; c < n_cells_; ++c) {
                for (std::size_t b = 0; b < n_beams_; ++b) {
                    *hooks_.rsrp_trace << now << ',' << ue_idx << ',' << c << ',' << b << ','
                                       << ue.raw[c * n_beams_ + b] << ','
                                       << ue.filtered[c * n_beams_ + b] << '\n';
                }
            }
        }
    }

    std::vector<double> beams_of(const UeContext& ue, int cell_id) const {
        const std::size_t c = static_cast<std::size_t>(cell_id);
        return {ue.filtered.begin() + static_cast<std::ptrdiff_t>(c * n_beams_),
                ue.filtered.begin() + static_cast<std::ptrdiff_t>((c + 1) * n_beams_)};
    }

    void commit_updates(UeContext& ue, int ue_idx, std::int64_t now) {
        for (int cell_id : commit_pending_updates(ue.cands, now)) {
            const CandidateEntry* e = ue.cands.find(cell_id);
            log_event(now, ue_idx, EventType::UpdateCommit, cell_id, e->cfra_beam_id);
        }
    }

    void maintain_candidates(UeContext& ue, int ue_idx, std::int64_t now) {
        const double serving_rsrp = ue.cell_rsrp[static_cast<std::size_t>(ue.serving_cell)];

        // Release: prepared cells that fell below the prepare threshold minus
        // the release hysteresis.
        std::vector<int> to_release;
        for (const CandidateEntry& e : ue.cands.entries) {
            const double rsrp = ue.cell_rsrp[static_cast<std::size_t>(e.cell_id)];
            if (rsrp < serving_rsrp - cfg_.o_prep_db - cfg_.release_hysteresis_db) {
                to_release.push_back(e.cell_id);
            }
        }
        for (int cell_id : to_release) {
            ue.cands.remove(cell_id);
            log_event(now, ue_idx, EventType::Release, cell_id, -1);
        }

        // Prepare: qualifying unprepared cells, strongest first.
        std::vector<int> qualifying;
        for (std::size_t c = 0; c < n_cells_; ++c) {
            const int cell_id = static_cast<int>(c);
            if (cell_id == ue.serving_cell || ue.cands.find(cell_id) != nullptr) continue;
            if (check_preparation(serving_rsrp, ue.cell_rsrp[c], cfg_.o_prep_db)) {
                qualifying.push_back(cell_id);
            }
        }
        std::sort(qualifying.begin(), qualifying.end(), [&](int a, int b) {
            const double ra = ue.cell_rsrp[static_cast<std::size_t>(a)];
            const double rb = ue.cell_rsrp[static_cast<std::size_t>(b)];
            return ra != rb ? ra > rb : a < b;
        });
        for (int cell_id : qualifying) {
            std::vector<double> prepared_rsrp;
            prepared_rsrp.reserve(ue.cands.entries.size());
            for (const CandidateEntry& e : ue.cands.entries) {
                prepared_rsrp.push_back(ue.cell_rsrp[static_cast<std::size_t>(e.cell_id)]);
            }
            const std::vector<double> beams = beams_of(ue, cell_id);
            const int best_beam = static_cast<int>(
                std::max_element(beams.begin(), beams.end()) - beams.begin());
            ue.cands.max_size = cfg_.max_candidates;
            const PrepareResult pr = prepare_candidate(
                ue.cands, cell_id, best_beam, ue.cell_rsrp[static_cast<std::size_t>(cell_id)],
                prepared_rsrp, cfg_.replace_hysteresis_db, now);
            if (pr.evicted_cell_id.has_value()) {
                log_event(now, ue_idx, EventType::Release, *pr.evicted_cell_id, -1);
            }
            if (pr.inserted) {
                log_event(now, ue_idx, EventType::Prep, cell_id, best_beam);
            }
        }
    }

    void trigger_mrs(UeContext& ue, int ue_idx, std::int64_t now) {
        for (CandidateEntry& e : ue.cands.entries) {
            if (!e.mr_armed || e.pending_update.has_value()) continue;
            const std::vector<double> beams = beams_of(ue, e.cell_id);
            const std::optional<int> new_beam = check_mr_trigger(e, beams, cfg_.mr_offset_db);
            if (new_beam.has_value()) {
                apply_mr(e, *new_beam, now, cfg_.t_update_ms);
                log_event(now, ue_idx, EventType::Mr, e.cell_id, *new_beam);
            }
        }
    }

    void check_and_start_execution(UeContext& ue, int ue_idx, std::int64_t now) {
        const double serving_rsrp = ue.cell_rsrp[static_cast<std::size_t>(ue.serving_cell)];
        CandidateEntry* chosen = nullptr;
        for (CandidateEntry& e : ue.cands.entries) {
            const double cand_rsrp = ue.cell_rsrp[static_cast<std::size_t>(e.cell_id)];
            if (!check_execution(serving_rsrp, cand_rsrp, cfg_.o_exec_db, e, cfg_.ttt_ms, now))
                continue;
            if (chosen == nullptr ||
                cand_rsrp > ue.cell_rsrp[static_cast<std::size_t>(chosen->cell_id)]) {
                chosen = &e;
            }
        }
        if (chosen == nullptr) return;

        const std::vector<double> beams = beams_of(ue, chosen->cell_id);
        const RaSelection sel = select_ra_type(*chosen, beams, cfg_.thr_cfra_dbm, now);
        log_event(now, ue_idx, EventType::Exec, chosen->cell_id, sel.access_beam_id);
        RaAttemptState ra;
        ra.target_cell_id = chosen->cell_id;
        ra.access_beam_id = sel.access_beam_id;
        ra.started_at_ms = now;
        ra.ra_type = sel.ra_type;
        ra.t304_ms = cfg_.t304_ms;
        ue.ra = ra;
        progress_ra(ue, ue_idx, now);  // first attempt at t_HO
    }

    void progress_ra(UeContext& ue, int ue_idx, std::int64_t now) {
        RaAttemptState& ra = *ue.ra;
        const std::int64_t elapsed = now - ra.started_at_ms;
        if (elapsed % cfg_.ra_interval_ms == 0 && elapsed <= ra.t304_ms) {
            ++ra.attempts_made;
            const double sinr = downlink_sinr(ue.motion.pos, layout_, ra.target_cell_id,
                                              ra.access_beam_id, ue.shadows, radio_);
            if (sinr >= cfg_.outage_limit_db) {
                const EventType type =
                    ra.ra_type == RaType::Cfra ? EventType::Cfra : EventType::Cbra;
                log_event(now, ue_idx, type, ra.target_cell_id, ra.access_beam_id);
                if (ue.last_ho.valid && ra.target_cell_id == ue.last_ho.source &&
                    now - ue.last_ho.time_ms <= cfg_.pp_window_ms) {
                    log_event(now, ue_idx, EventType::Pp, ra.target_cell_id, -1);
                }
                ue.last_ho = {now, ue.serving_cell, true};
                ue.serving_cell = ra.target_cell_id;
                ue.cands.entries.clear();
                ue.ra.reset();
                return;
            }
        }
        if (elapsed >= ra.t304_ms) {
            log_event(now, ue_idx, EventType::Hof, ra.target_cell_id, -1);
            // Fresh re-attachment: strongest cell, no CHO context, no PP basis.
            ue.serving_cell = strongest_cell(ue);
            ue.cands.entries.clear();
            ue.last_ho.valid = false;
            ue.ra.reset();
        }
    }

    const SimConfig& cfg_;
    const Layout& layout_;
    RunHooks hooks_;
    RadioParams radio_;
    const kernels::KernelSet& kernels_;
    std::size_t n_cells_;
    std::size_t n_beams_;
    double filter_a_;
    std::int64_t warmup_ms_;
    std::vector<double> boresights_;
    std::vector<Rng> env_rngs_;
    std::vector<UeContext> ues_;
    EventLog log_;
};

}  // namespace

Layout layout_from_config(const SimConfig& cfg) {
    BeamParams beams;
    beams.n_beams = cfg.n_beams;
    beams.hpbw_deg = cfg.hpbw_deg;
    beams.max_gain_dbi = cfg.max_gain_dbi;
    beams.front_to_back_db = cfg.front_to_back_db;
    beams.sector_span_deg = cfg.sector_span_deg;
    return build_layout(cfg.isd_m, cfg.seed_rotation_deg, cfg.tx_power_dbm, beams);
}

SimResult run_simulation(const SimConfig& cfg, const Layout* shared_layout,
                         const RunHooks& hooks) {
    validate_config(cfg);
    if (shared_layout != nullptr) {
        return Engine(cfg, *shared_layout, hooks).run();
    }
    const Layout layout = layout_from_config(cfg);
    return Engine(cfg, layout, hooks).run();
}

}  // namespace chosim
