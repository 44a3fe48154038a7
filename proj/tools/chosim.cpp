#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "chosim/engine.hpp"
#include "chosim/kernels.hpp"
#include "chosim/sweep.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void ensure_writable(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory: " + dir);
    const fs::path probe = fs::path(dir) / ".write_probe";
    std::ofstream f(probe);
    if (!f) throw std::runtime_error("output directory is not writable: " + dir);
    f.close();
    fs::remove(probe, ec);
}

json report_to_json(const chosim::KpiReport& r) {
    json j;
    j["r_cbra_pct"] = r.r_cbra_pct.has_value() ? json(*r.r_cbra_pct) : json(nullptr);
    j["no_handovers"] = !r.r_cbra_pct.has_value();
    j["hof_rate_per_ue_min"] = r.hof_rate_per_ue_min;
    j["update_rate_per_ue_min"] = r.update_rate_per_ue_min;
    j["pp_rate_per_ue_min"] = r.pp_rate_per_ue_min;
    json dho = json::object();
    for (std::size_t i = 0; i < r.n_values.size(); ++i) {
        const std::string key = "n" + std::to_string(r.n_values[i]);
        dho[key] = r.d_ho_ms[i].has_value() ? json(*r.d_ho_ms[i]) : json(nullptr);
    }
    j["d_ho_ms"] = dho;
    j["counters"] = {{"n_cfra", r.raw.n_cfra}, {"n_cbra", r.raw.n_cbra},
                     {"n_hof", r.raw.n_hof},   {"n_update", r.raw.n_update},
                     {"n_pp", r.raw.n_pp},     {"n_ho", r.raw.n_handovers()}};
    return j;
}

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed,
            const std::string& out_dir, bool events, bool plots, bool dump_layout,
            bool trace_rsrp, bool trace_traj) {
    chosim::SimConfig cfg = chosim::load_config(config_path);
    if (seed.has_value()) cfg.seed = *seed;
    ensure_writable(out_dir);

    std::ofstream rsrp_os, traj_os;
    chosim::RunHooks hooks;
    if (trace_rsrp) {
        rsrp_os.open(fs::path(out_dir) / "rsrp_trace.csv");
        hooks.rsrp_trace = &rsrp_os;
    }
    if (trace_traj) {
        traj_os.open(fs::path(out_dir) / "trajectory.csv");
        hooks.trajectory = &traj_os;
    }

    const chosim::Layout layout = chosim::layout_from_config(cfg);
    if (dump_layout) {
        std::ofstream os(fs::path(out_dir) / "layout.csv");
        chosim::dump_layout_csv(layout, os);
    }

    const chosim::SimResult result = chosim::run_simulation(cfg, &layout, hooks);

    if (events) {
        std::ofstream os(fs::path(out_dir) / "events.csv");
        chosim::write_event_csv(result.log, os);
    }
    {
        std::ofstream os(fs::path(out_dir) / "report.json");
        json j;
        j["config"] = json::parse(chosim::config_to_json_text(cfg));
        j["kpis"] = report_to_json(result.report);
        os << j.dump(2) << '\n';
    }
    chosim::SweepTable table;
    table.n_values = cfg.n_values;
    table.seeds_per_point = 1;
    table.rows.push_back(chosim::SweepRow{cfg, result.report, false, ""});
    {
        std::ofstream os(fs::path(out_dir) / "results.csv");
        chosim::write_results_csv(table, os);
    }
    if (plots) chosim::write_plots(table, out_dir);

    if (result.report.r_cbra_pct.has_value()) {
        std::cout << "handovers=" << result.report.raw.n_handovers()
                  << " r_cbra=" << *result.report.r_cbra_pct << "%"
                  << " hof=" << result.report.raw.n_hof
                  << " updates=" << result.report.raw.n_update << '\n';
    } else {
        std::cout << "no handovers\n";
    }
    std::cout << "outputs written to " << out_dir << '\n';
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& grid_path, int parallel,
              const std::string& out_dir, bool plots) {
    const chosim::SimConfig base = chosim::load_config(config_path);
    const chosim::SweepGrid grid = chosim::load_grid(grid_path);
    ensure_writable(out_dir);

    const chosim::SweepTable table = chosim::run_sweep(base, grid, parallel);
    int failures = 0;
    for (const chosim::SweepRow& row : table.rows) {
        if (row.failed) {
            ++failures;
            std::cerr << "sweep point failed (thr=" << row.cfg.thr_cfra_dbm
                      << " o_prep=" << row.cfg.o_prep_db << " M=" << row.cfg.max_candidates
                      << " update=" << row.cfg.update_enabled << " seed=" << row.cfg.seed
                      << "): " << row.error << '\n';
        }
    }
    {
        std::ofstream os(fs::path(out_dir) / "results.csv");
        chosim::write_results_csv(table, os);
    }
    if (plots) chosim::write_plots(table, out_dir);
    std::cout << table.rows.size() << " rows written to " << out_dir << "/results.csv";
    if (failures > 0) std::cout << " (" << failures << " failed points)";
    std::cout << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conditional-handover system-level simulator"};
    app.require_subcommand(1);

    std::string config_path, grid_path, out_dir = "out";
    std::optional<std::uint64_t> seed;
    int parallel = 1;
    bool events = false, plots = false, dump_layout = false;
    bool trace_rsrp = false, trace_traj = false;

    CLI::App* run = app.add_subcommand("run", "Run a single simulation");
    run->add_option("--config", config_path, "Config file (JSON)")->required();
    run->add_option("--seed", seed, "Override the config seed");
    run->add_option("--out", out_dir, "Output directory");
    run->add_flag("--events", events, "Write the event log CSV");
    run->add_flag("--plots", plots, "Write SVG figures");
    run->add_flag("--dump-layout", dump_layout, "Write the deployment layout CSV");
    run->add_flag("--trace-rsrp", trace_rsrp, "Write per-step per-beam RSRP trace (large)");
    run->add_flag("--trace-trajectory", trace_traj, "Write per-step UE positions");

    CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
    sweep->add_option("--config", config_path, "Base config file (JSON)")->required();
    sweep->add_option("--grid", grid_path, "Sweep grid file (JSON)")->required();
    sweep->add_option("--parallel", parallel, "Worker threads");
    sweep->add_option("--out", out_dir, "Output directory");
    sweep->add_flag("--plots", plots, "Write SVG figures");

    CLI::App* validate = app.add_subcommand("validate", "Validate a config file");
    validate->add_option("--config", config_path, "Config file (JSON)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return cmd_run(config_path, seed, out_dir, events, plots, dump_layout, trace_rsrp,
                           trace_traj);
        }
        if (sweep->parsed()) {
            return cmd_sweep(config_path, grid_path, parallel, out_dir, plots);
        }
        if (validate->parsed()) {
            chosim::load_config(config_path);
            std::cout << "config OK (kernel: " << chosim::kernels::active().name << ")\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
