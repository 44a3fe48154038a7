#include "chosim/sweep.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace chosim {

namespace {

using nlohmann::json;

double json_maybe_inf(const json& j, const std::string& key) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        throw std::invalid_argument("grid key '" + key + "': expected number or \"inf\"/\"-inf\"");
    }
    return j.get<double>();
}

std::size_t axis_size(std::size_t n) { return n == 0 ? 1 : n; }

}  // namespace

std::size_t SweepGrid::n_points() const {
    return axis_size(thr_cfra_dbm.size()) * axis_size(o_prep_db.size()) *
           axis_size(max_candidates.size()) * axis_size(update_enabled.size()) *
           axis_size(mr_offset_db.size()) * axis_size(speed_mps.size());
}

SweepGrid grid_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("grid parse error: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("grid root must be a JSON object");
    static const std::set<std::string> known = {"thr_cfra_dbm", "o_prep_db", "max_candidates",
                                                "update_enabled", "mr_offset_db", "speed_mps",
                                                "seed"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (known.find(it.key()) == known.end())
            throw std::invalid_argument("unknown grid key: '" + it.key() + "'");
        if (!it.value().is_array())
            throw std::invalid_argument("grid key '" + it.key() + "' must be an array");
    }
    SweepGrid g;
    if (j.contains("thr_cfra_dbm"))
        for (const auto& v : j["thr_cfra_dbm"]) g.thr_cfra_dbm.push_back(json_maybe_inf(v, "thr_cfra_dbm"));
    if (j.contains("o_prep_db"))
        for (const auto& v : j["o_prep_db"]) g.o_prep_db.push_back(v.get<double>());
    if (j.contains("max_candidates"))
        for (const auto& v : j["max_candidates"]) g.max_candidates.push_back(v.get<int>());
    if (j.contains("update_enabled"))
        for (const auto& v : j["update_enabled"]) g.update_enabled.push_back(v.get<bool>() ? 1 : 0);
    if (j.contains("mr_offset_db"))
        for (const auto& v : j["mr_offset_db"]) g.mr_offset_db.push_back(json_maybe_inf(v, "mr_offset_db"));
    if (j.contains("speed_mps"))
        for (const auto& v : j["speed_mps"]) g.speed_mps.push_back(v.get<double>());
    if (j.contains("seed"))
        for (const auto& v : j["seed"]) g.seeds.push_back(v.get<std::uint64_t>());
    if (g.n_points() * g.n_seeds() == 0) throw std::invalid_argument("grid is empty");
    return g;
}

SweepGrid load_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open grid file: " + path);
    std::ostringstream oss;
    oss << in.rdbuf();
    return grid_from_json_text(oss.str());
}

SimConfig apply_point(const SimConfig& base, const SweepGrid& grid, std::size_t point_index) {
    SimConfig cfg = base;
    std::size_t idx = point_index;
    auto take = [&](std::size_t n) {
        const std::size_t sz = axis_size(n);
        const std::size_t i = idx % sz;
        idx /= sz;
        return i;
    };
    // Innermost axis first (speed), matching the documented enumeration order
    // with thr_cfra outermost.
    const std::size_t i_speed = take(grid.speed_mps.size());
    const std::size_t i_mr = take(grid.mr_offset_db.size());
    const std::size_t i_upd = take(grid.update_enabled.size());
    const std::size_t i_m = take(grid.max_candidates.size());
    const std::size_t i_oprep = take(grid.o_prep_db.size());
    const std::size_t i_thr = take(grid.thr_cfra_dbm.size());
    if (!grid.speed_mps.empty()) cfg.speed_mps = grid.speed_mps[i_speed];
    if (!grid.mr_offset_db.empty()) cfg.mr_offset_db = grid.mr_offset_db[i_mr];
    if (!grid.update_enabled.empty()) cfg.update_enabled = grid.update_enabled[i_upd] != 0;
    if (!grid.max_candidates.empty()) cfg.max_candidates = grid.max_candidates[i_m];
    if (!grid.o_prep_db.empty()) cfg.o_prep_db = grid.o_prep_db[i_oprep];
    if (!grid.thr_cfra_dbm.empty()) cfg.thr_cfra_dbm = grid.thr_cfra_dbm[i_thr];
    return cfg;
}

SweepTable run_sweep(const SimConfig& base, const SweepGrid& grid, int parallelism) {
    const std::size_t n_points = grid.n_points();
    const std::size_t n_seeds = grid.n_seeds();
    SweepTable table;
    table.n_values = base.n_values;
    table.seeds_per_point = n_seeds;
    table.rows.resize(n_points * n_seeds);

    const Layout layout = layout_from_config(base);
    std::atomic<std::size_t> next{0};
    const std::size_t n_tasks = table.rows.size();

    auto worker = [&]() {
        for (;;) {
            const std::size_t task = next.fetch_add(1);
            if (task >= n_tasks) return;
            const std::size_t point = task / n_seeds;
            const std::size_t seed_idx = task % n_seeds;
            SweepRow& row = table.rows[task];
            row.cfg = apply_point(base, grid, point);
            if (!grid.seeds.empty()) row.cfg.seed = grid.seeds[seed_idx];
            try {
                row.report = run_simulation(row.cfg, &layout).report;
            } catch (const std::exception& e) {
                row.failed = true;
                row.error = e.what();
            }
        }
    };

    const int n_threads = std::max(1, parallelism);
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (int t = 0; t < n_threads; ++t) threads.emplace_back(worker);
        for (std::thread& t : threads) t.join();
    }
    return table;
}

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream oss;
    oss << std::setprecision(12) << v;
    return oss.str();
}

namespace {

std::string opt_str(const std::optional<double>& v) {
    return v.has_value() ? format_double(*v) : "NA";
}

// Numeric KPI columns of one row, in CSV order. nullopt = NA.
std::vector<std::optional<double>> kpi_columns(const SweepRow& row,
                                               const std::vector<int>& n_values) {
    std::vector<std::optional<double>> cols;
    if (row.failed) {
        cols.assign(10 + n_values.size(), std::nullopt);
        return cols;
    }
    const KpiAccumulator& a = row.report.raw;
    cols.push_back(static_cast<double>(a.n_cfra));
    cols.push_back(static_cast<double>(a.n_cbra));
    cols.push_back(static_cast<double>(a.n_hof));
    cols.push_back(static_cast<double>(a.n_update));
    cols.push_back(static_cast<double>(a.n_pp));
    cols.push_back(row.report.r_cbra_pct);
    cols.push_back(row.report.hof_rate_per_ue_min);
    cols.push_back(row.report.update_rate_per_ue_min);
    cols.push_back(row.report.pp_rate_per_ue_min);
    cols.push_back(static_cast<double>(a.n_handovers()));
    for (const auto& d : row.report.d_ho_ms) cols.push_back(d);
    return cols;
}

void write_param_columns(std::ostream& os, const SimConfig& cfg) {
    os << format_double(cfg.thr_cfra_dbm) << ',' << format_double(cfg.o_prep_db) << ','
       << cfg.max_candidates << ',' << (cfg.update_enabled ? 1 : 0) << ','
       << format_double(cfg.mr_offset_db) << ',' << format_double(cfg.speed_mps);
}

}  // namespace

void write_results_csv(const SweepTable& table, std::ostream& os) {
    os << "thr_cfra_dbm,o_prep_db,max_candidates,update_enabled,mr_offset_db,speed_mps,seed,"
          "n_cfra,n_cbra,n_hof,n_update,n_pp,r_cbra_pct,hof_rate_per_ue_min,"
          "update_rate_per_ue_min,pp_rate_per_ue_min,n_ho";
    for (int n : table.n_values) os << ",d_ho_n" << n;
    os << '\n';

    const std::size_t group = table.seeds_per_point;
    for (std::size_t start = 0; start < table.rows.size(); start += group) {
        std::vector<std::vector<std::optional<double>>> cols;
        for (std::size_t i = start; i < start + group; ++i) {
            const SweepRow& row = table.rows[i];
            write_param_columns(os, row.cfg);
            os << ',' << row.cfg.seed;
            const auto kpis = kpi_columns(row, table.n_values);
            cols.push_back(kpis);
            for (const auto& v : kpis) os << ',' << opt_str(v);
            os << '\n';
        }
        if (group < 2) continue;
        // Across-seed mean and std rows (sample std; NA seeds skipped).
        const std::size_t n_cols = cols.front().size();
        for (const char* tag : {"mean", "std"}) {
            write_param_columns(os, table.rows[start].cfg);
            os << ',' << tag;
            for (std::size_t c = 0; c < n_cols; ++c) {
                double sum = 0.0, sum2 = 0.0;
                int n = 0;
                for (const auto& rowcols : cols) {
                    if (rowcols[c].has_value()) {
                        sum += *rowcols[c];
                        sum2 += *rowcols[c] * *rowcols[c];
                        ++n;
                    }
                }
                if (n == 0) {
                    os << ",NA";
                    continue;
                }
                const double mean = sum / n;
                if (std::string(tag) == "mean") {
                    os << ',' << format_double(mean);
                } else {
                    const double var = n > 1 ? std::max(0.0, (sum2 - n * mean * mean) / (n - 1)) : 0.0;
                    os << ',' << format_double(std::sqrt(var));
                }
            }
            os << '\n';
        }
    }
}

// ---------------------------------------------------------------------------
// SVG figures
// ---------------------------------------------------------------------------

namespace {

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> pts;
};

const char* kPalette[] = {"#4477aa", "#ee6677", "#228833", "#ccbb44",
                          "#66ccee", "#aa3377", "#bbbbbb", "#000000"};

void write_line_svg(const std::string& path, const std::string& title,
                    const std::string& xlabel, const std::string& ylabel,
                    std::vector<Series> series) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write figure: " + path);
    const double W = 720, H = 480, L = 70, R = 210, T = 40, B = 50;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const Series& s : series) {
        for (const auto& [x, y] : s.pts) {
            xmin = std::min(xmin, x); xmax = std::max(xmax, x);
            ymin = std::min(ymin, y); ymax = std::max(ymax, y);
        }
    }
    if (xmin > xmax) { xmin = 0; xmax = 1; }
    if (ymin > ymax) { ymin = 0; ymax = 1; }
    if (xmax == xmin) { xmax += 1; xmin -= 1; }
    if (ymax == ymin) { ymax += 1; ymin -= 1; }
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad; ymax += ypad;
    auto sx = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
    auto sy = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
       << title << "</text>\n";
    // Axes
    os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\""
       << H - B << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = xmin + i * (xmax - xmin) / 5.0;
        const double yv = ymin + i * (ymax - ymin) / 5.0;
        os << "<text x=\"" << sx(xv) << "\" y=\"" << H - B + 16
           << "\" text-anchor=\"middle\">" << std::setprecision(4) << xv << "</text>\n";
        os << "<text x=\"" << L - 6 << "\" y=\"" << sy(yv) + 4
           << "\" text-anchor=\"end\">" << std::setprecision(4) << yv << "</text>\n";
        os << "<line x1=\"" << L << "\" y1=\"" << sy(yv) << "\" x2=\"" << W - R << "\" y2=\""
           << sy(yv) << "\" stroke=\"#dddddd\"/>\n";
    }
    os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 10
       << "\" text-anchor=\"middle\">" << xlabel << "</text>\n";
    os << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" transform=\""
       << "rotate(-90 16 " << (T + H - B) / 2 << ")\">" << ylabel << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % 8];
        std::sort(series[s].pts.begin(), series[s].pts.end());
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : series[s].pts) os << sx(x) << ',' << sy(y) << ' ';
        os << "\"/>\n";
        for (const auto& [x, y] : series[s].pts) {
            os << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(y) << "\" r=\"2.5\" fill=\""
               << color << "\"/>\n";
        }
        const double ly = T + 16.0 * static_cast<double>(s);
        os << "<line x1=\"" << W - R + 10 << "\" y1=\"" << ly << "\" x2=\"" << W - R + 30
           << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << W - R + 36 << "\" y=\"" << ly + 4 << "\">" << series[s].label
           << "</text>\n";
    }
    os << "</svg>\n";
}

void write_bar_svg(const std::string& path, const std::string& title,
                   const std::string& ylabel,
                   const std::vector<std::pair<std::string, double>>& bars) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write figure: " + path);
    const double W = 720, H = 480, L = 70, R = 30, T = 40, B = 80;
    double ymax = 0.0;
    for (const auto& [_, v] : bars) ymax = std::max(ymax, v);
    if (ymax <= 0.0) ymax = 1.0;
    ymax *= 1.1;
    const double n = static_cast<double>(bars.size());
    const double slot = (W - L - R) / std::max(1.0, n);
    auto sy = [&](double y) { return H - B - y / ymax * (H - T - B); };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
       << title << "</text>\n";
    os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\""
       << H - B << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double yv = i * ymax / 5.0;
        os << "<text x=\"" << L - 6 << "\" y=\"" << sy(yv) + 4 << "\" text-anchor=\"end\">"
           << std::setprecision(4) << yv << "</text>\n";
    }
    os << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" transform=\""
       << "rotate(-90 16 " << (T + H - B) / 2 << ")\">" << ylabel << "</text>\n";
    for (std::size_t i = 0; i < bars.size(); ++i) {
        const double x = L + slot * (static_cast<double>(i) + 0.15);
        const double w = slot * 0.7;
        os << "<rect x=\"" << x << "\" y=\"" << sy(bars[i].second) << "\" width=\"" << w
           << "\" height=\"" << (H - B - sy(bars[i].second)) << "\" fill=\""
           << kPalette[i % 8] << "\"/>\n";
        os << "<text x=\"" << x + w / 2 << "\" y=\"" << H - B + 16
           << "\" text-anchor=\"middle\" font-size=\"10\">" << bars[i].first << "</text>\n";
    }
    os << "</svg>\n";
}

// Across-seed mean of one KPI for each point; nullopt when no seed had a value.
template <typename Extract>
std::optional<double> point_mean(const SweepTable& table, std::size_t point, Extract extract) {
    const std::size_t start = point * table.seeds_per_point;
    double sum = 0.0;
    int n = 0;
    for (std::size_t i = start; i < start + table.seeds_per_point; ++i) {
        if (table.rows[i].failed) continue;
        const std::optional<double> v = extract(table.rows[i]);
        if (v.has_value()) {
            sum += *v;
            ++n;
        }
    }
    if (n == 0) return std::nullopt;
    return sum / n;
}

std::string arm_label(const SimConfig& cfg) {
    std::ostringstream oss;
    oss << (cfg.update_enabled ? "with update" : "w/o update");
    oss << " o_prep=" << cfg.o_prep_db << " M=" << cfg.max_candidates;
    return oss.str();
}

}  // namespace

void write_plots(const SweepTable& table, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const std::size_t n_points = table.rows.size() / table.seeds_per_point;

    auto series_over_thr = [&](auto extract) {
        std::vector<Series> series;
        for (std::size_t p = 0; p < n_points; ++p) {
            const SimConfig& cfg = table.rows[p * table.seeds_per_point].cfg;
            const std::optional<double> y = point_mean(table, p, extract);
            if (!y.has_value()) continue;
            const std::string label = arm_label(cfg);
            auto it = std::find_if(series.begin(), series.end(),
                                   [&](const Series& s) { return s.label == label; });
            if (it == series.end()) {
                series.push_back(Series{label, {}});
                it = series.end() - 1;
            }
            it->pts.emplace_back(cfg.thr_cfra_dbm, *y);
        }
        return series;
    };

    write_line_svg(out_dir + "/fig4_rcbra.svg", "CBRA rate vs CFRA threshold",
                   "thr_cfra [dBm]", "R_CBRA [%]",
                   series_over_thr([](const SweepRow& r) { return r.report.r_cbra_pct; }));

    std::vector<std::pair<std::string, double>> bars;
    for (std::size_t p = 0; p < n_points; ++p) {
        const SimConfig& cfg = table.rows[p * table.seeds_per_point].cfg;
        if (!cfg.update_enabled) continue;
        const std::optional<double> y = point_mean(table, p, [](const SweepRow& r) {
            return std::optional<double>(r.report.update_rate_per_ue_min);
        });
        if (!y.has_value()) continue;
        std::ostringstream label;
        label << "o_prep=" << cfg.o_prep_db << " M=" << cfg.max_candidates;
        bars.emplace_back(label.str(), *y);
    }
    write_bar_svg(out_dir + "/fig5_updates.svg", "Successful CFRA updates",
                  "updates per UE per minute", bars);

    write_line_svg(out_dir + "/fig6_hof.svg", "Handover failures vs CFRA threshold",
                   "thr_cfra [dBm]", "HOF per UE per minute",
                   series_over_thr([](const SweepRow& r) {
                       return std::optional<double>(r.report.hof_rate_per_ue_min);
                   }));

    std::vector<Series> dho_series;
    for (std::size_t p = 0; p < n_points; ++p) {
        const SweepRow& first = table.rows[p * table.seeds_per_point];
        for (std::size_t ni = 0; ni < table.n_values.size(); ++ni) {
            const std::optional<double> y = point_mean(table, p, [&](const SweepRow& r) {
                return r.report.d_ho_ms.size() > ni ? r.report.d_ho_ms[ni] : std::nullopt;
            });
            if (!y.has_value()) continue;
            std::ostringstream label;
            label << "n=" << table.n_values[ni] << ' '
                  << (first.cfg.update_enabled ? "with" : "w/o");
            auto it = std::find_if(dho_series.begin(), dho_series.end(),
                                   [&](const Series& s) { return s.label == label.str(); });
            if (it == dho_series.end()) {
                dho_series.push_back(Series{label.str(), {}});
                it = dho_series.end() - 1;
            }
            it->pts.emplace_back(first.cfg.thr_cfra_dbm, *y);
        }
    }
    write_line_svg(out_dir + "/fig7_dho.svg", "Average HO delay vs CFRA threshold",
                   "thr_cfra [dBm]", "D_HO [ms]", dho_series);
}

}  // namespace chosim
