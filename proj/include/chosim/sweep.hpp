#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "chosim/config.hpp"
#include "chosim/engine.hpp"

namespace chosim {

/// Axes of the experiment grid. An empty axis means "use the base config
/// value". The cartesian product is enumerated in the fixed axis order
/// thr_cfra, o_prep, max_candidates, update_enabled, mr_offset, speed, with
/// seeds innermost.
struct SweepGrid {
    std::vector<double> thr_cfra_dbm;
    std::vector<double> o_prep_db;
    std::vector<int> max_candidates;
    std::vector<int> update_enabled;  // 0/1
    std::vector<double> mr_offset_db;
    std::vector<double> speed_mps;
    std::vector<std::uint64_t> seeds;

    std::size_t n_points() const;
    std::size_t n_seeds() const { return seeds.empty() ? 1 : seeds.size(); }
};

SweepGrid grid_from_json_text(const std::string& text);
SweepGrid load_grid(const std::string& path);

struct SweepRow {
    SimConfig cfg;
    KpiReport report;
    bool failed = false;
    std::string error;
};

struct SweepTable {
    std::vector<SweepRow> rows;  // one per (point, seed), deterministic order
    std::vector<int> n_values;
    std::size_t seeds_per_point = 1;
};

/// Applies one grid point to the base config (seed applied separately).
SimConfig apply_point(const SimConfig& base, const SweepGrid& grid, std::size_t point_index);

/// Runs every (point, seed). Points are independent; up to `parallelism`
/// worker threads, output order independent of scheduling.
SweepTable run_sweep(const SimConfig& base, const SweepGrid& grid, int parallelism);

/// Fixed-column CSV: varied parameters, seed, raw counters, KPIs, d_ho per n.
/// Per-point across-seed mean/std rows follow each seed group (seed column
/// "mean" / "std").
void write_results_csv(const SweepTable& table, std::ostream& os);

/// SVG trend figures (fig4_rcbra.svg, fig5_updates.svg, fig6_hof.svg,
/// fig7_dho.svg) rendered from across-seed means.
void write_plots(const SweepTable& table, const std::string& out_dir);

std::string format_double(double v);

}  // namespace chosim
