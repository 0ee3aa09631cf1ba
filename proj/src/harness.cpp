#include "idc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include <json.hpp>

#include "idc/errors.hpp"
#include "idc/kernels.hpp"
#include "idc/version.hpp"

namespace idc::harness {
namespace {

using nlohmann::json;

void warn_delta_range(double delta) {
    if (delta > 1.0)
        std::cerr << "warning: delta = " << delta
                  << " exceeds the interpolation range [0, 1]\n";
}

// Run fn(i) for i in [0, count) on a small worker pool; results land in
// caller-owned slots, so ordering stays deterministic.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(count, 1));
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count)
                    return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error)
                        first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool)
        t.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

std::string optional_field(const std::optional<double>& v) {
    return v ? format_field(*v) : std::string();
}

// Shared row writer: formats one record and spot-checks the law of total
// expectation on every 100th row.
void write_record_row(std::ostream& out, const PhotonStatsRecord& r, double lambda,
                      std::size_t row_index, const std::string& prefix = {}) {
    if (row_index % 100 == 0 && r.n_g && r.n_e) {
        const double recombined = r.p_g * *r.n_g + r.p_e * *r.n_e;
        if (std::abs(recombined - r.n_total) > 1e-9) {
            std::ostringstream msg;
            msg << "row " << row_index << ": total-expectation identity violated by "
                << std::abs(recombined - r.n_total);
            throw verification_failure(msg.str());
        }
    }
    out << prefix << format_field(r.lambda_t / lambda) << ',' << format_field(r.n_total)
        << ',' << optional_field(r.n_g) << ',' << optional_field(r.n_e) << ','
        << format_field(r.p_e) << ',' << optional_field(r.q_mandel) << '\n';
}

void write_sidecar(const RunConfig& cfg, const FieldState& psi0,
                   const std::filesystem::path& csv_path,
                   const std::string& model_label = {}) {
    json meta;
    meta["tool"] = kToolName;
    meta["version"] = kVersion;
    meta["model"] = model_label.empty() ? cfg.model_name() : model_label;
    const auto p = cfg.params();
    meta["xi"] = p.xi;
    meta["delta"] = p.delta;
    meta["lambda"] = cfg.lambda;
    meta["nbar"] = cfg.nbar;
    meta["phase"] = cfg.phase;
    meta["cutoff"] = cfg.resolved_cutoff();
    meta["tail_bound"] = psi0.tail_bound;
    meta["t_max"] = cfg.t_max;
    meta["steps"] = cfg.steps;
    std::vector<std::string> outs;
    for (const auto o : cfg.outputs)
        outs.push_back(to_string(o));
    meta["outputs"] = outs;
    meta["kernel_backend"] = kernels::backend_name(kernels::active_backend());
    meta["csv"] = csv_path.filename().string();

    const std::filesystem::path side = csv_path.string() + ".meta.json";
    std::ofstream f(side);
    if (!f)
        throw io_failure("cannot write sidecar: " + side.string());
    f << meta.dump(2) << '\n';
    if (!f.good())
        throw io_failure("write failed: " + side.string());
}

std::string relation_name(Relation r) {
    switch (r) {
    case Relation::upper:
        return "n_e>n_total";
    case Relation::lower:
        return "n_total>n_g";
    case Relation::none:
        return "none";
    }
    return "?";
}

} // namespace

std::string to_string(Output o) {
    switch (o) {
    case Output::series:
        return "series";
    case Output::paradox:
        return "paradox";
    case Output::mandel:
        return "mandel";
    case Output::oracle_check:
        return "oracle-check";
    }
    return "?";
}

Output parse_output(std::string_view text) {
    if (text == "series")
        return Output::series;
    if (text == "paradox")
        return Output::paradox;
    if (text == "mandel")
        return Output::mandel;
    if (text == "oracle-check" || text == "oracle_check")
        return Output::oracle_check;
    throw error("unknown output kind: " + std::string(text));
}

InterpolationParams RunConfig::params() const {
    if (preset && xi_delta)
        throw error("config: preset and explicit (xi, delta) are mutually exclusive");
    if (!preset && !xi_delta)
        throw error("config: either a preset or explicit (xi, delta) is required");
    if (!(nbar >= 0.0) || !std::isfinite(nbar))
        throw error("config: nbar must be finite and >= 0");
    if (!(t_max > 0.0))
        throw error("config: t_max must be > 0");
    if (steps < 2)
        throw error("config: steps must be >= 2");
    if (!(lambda > 0.0))
        throw error("config: lambda must be > 0");

    InterpolationParams p;
    if (preset) {
        p = preset->params(1.0);
    } else {
        p = InterpolationParams{xi_delta->first, xi_delta->second, 1.0};
        validate(p);
    }
    return p;
}

std::size_t RunConfig::resolved_cutoff() const {
    return cutoff ? *cutoff : default_cutoff(nbar);
}

std::string RunConfig::model_name() const {
    return preset ? preset->name() : "custom";
}

std::string format_field(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_series_csv(const ObservableSeries& s, double lambda, std::ostream& out) {
    out << "lambda_t,n_total,n_g,n_e,p_e,q_mandel\n";
    for (std::size_t i = 0; i < s.records.size(); ++i)
        write_record_row(out, s.records[i], lambda, i);
}

void run(const RunConfig& cfg) {
    const auto p = cfg.params();
    warn_delta_range(p.delta);

    const std::size_t n_cut = cfg.resolved_cutoff();
    const FieldState psi0 = coherent_state(cfg.nbar, cfg.phase, n_cut);
    const ObservableSeries s = series(psi0, p, cfg.t_max, cfg.steps);

    const auto stem = cfg.out_path.parent_path() /
                      cfg.out_path.stem().string();

    if (cfg.outputs.count(Output::series)) {
        std::ofstream f(cfg.out_path);
        if (!f)
            throw io_failure("cannot write CSV: " + cfg.out_path.string());
        write_series_csv(s, cfg.lambda, f);
        if (!f.good())
            throw io_failure("write failed: " + cfg.out_path.string());
    }
    if (cfg.outputs.count(Output::paradox)) {
        const auto w = paradox_window(s);
        const std::filesystem::path path = stem.string() + "_paradox.csv";
        std::ofstream f(path);
        if (!f)
            throw io_failure("cannot write CSV: " + path.string());
        f << "holds_at_small_t,end_lambda_t,violated_relation\n";
        f << (w.holds_at_small_t ? 1 : 0) << ','
          << (w.end_lambda_t ? format_field(*w.end_lambda_t / cfg.lambda) : std::string())
          << ',' << relation_name(w.violated) << '\n';
        if (!f.good())
            throw io_failure("write failed: " + path.string());
    }
    if (cfg.outputs.count(Output::mandel)) {
        const std::filesystem::path path = stem.string() + "_q.csv";
        std::ofstream f(path);
        if (!f)
            throw io_failure("cannot write CSV: " + path.string());
        f << "lambda_t,q_mandel\n";
        for (const auto& r : s.records)
            f << format_field(r.lambda_t / cfg.lambda) << ','
              << optional_field(r.q_mandel) << '\n';
        if (!f.good())
            throw io_failure("write failed: " + path.string());
    }
    if (cfg.outputs.count(Output::oracle_check)) {
        for (int i = 1; i <= 8; ++i) {
            const double t = cfg.t_max * static_cast<double>(i) / 8.0;
            const double fid = fidelity(evolve_exact(psi0, p, t),
                                        evolve_oracle(psi0, p, t, n_cut));
            if (fid < 1.0 - 1e-10) {
                std::ostringstream msg;
                msg << "oracle fidelity " << fid << " below 1-1e-10 at lambda_t = " << t;
                throw verification_failure(msg.str());
            }
        }
    }
    write_sidecar(cfg, psi0, cfg.out_path);
}

RunConfig config_from_sidecar(const std::filesystem::path& sidecar_path) {
    std::ifstream f(sidecar_path);
    if (!f)
        throw io_failure("cannot read sidecar: " + sidecar_path.string());
    json meta;
    try {
        f >> meta;
    } catch (const json::exception& e) {
        throw error("sidecar parse failure: " + std::string(e.what()));
    }

    RunConfig cfg;
    // Reconstructed as explicit (xi, delta): byte-identical output does not
    // depend on whether the pair came from a named preset.
    cfg.xi_delta = std::make_pair(meta.at("xi").get<double>(), meta.at("delta").get<double>());
    cfg.nbar = meta.at("nbar").get<double>();
    cfg.phase = meta.at("phase").get<double>();
    cfg.t_max = meta.at("t_max").get<double>();
    cfg.steps = meta.at("steps").get<std::size_t>();
    cfg.cutoff = meta.at("cutoff").get<std::size_t>();
    cfg.lambda = meta.at("lambda").get<double>();
    cfg.outputs.clear();
    for (const auto& o : meta.at("outputs"))
        cfg.outputs.insert(parse_output(o.get<std::string>()));
    cfg.out_path = sidecar_path.parent_path() / meta.at("csv").get<std::string>();
    return cfg;
}

std::vector<char> panels_for(int figure) {
    switch (figure) {
    case 1:
    case 2:
        return {'a', 'b', 'c', 'd'};
    case 3:
        return {'a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', 'i'};
    case 4:
        return {'a', 'b', 'c', 'd', 'e', 'f'};
    default:
        throw error("unknown figure id: " + std::to_string(figure));
    }
}

PanelDef panel_definition(const FigureSpec& spec) {
    const auto panels = panels_for(spec.figure);
    const auto pos = std::string(panels.begin(), panels.end()).find(spec.panel);
    if (pos == std::string::npos)
        throw error(std::string("unknown panel '") + spec.panel + "' for figure " +
                    std::to_string(spec.figure));
    const std::size_t idx = pos;

    PanelDef def;
    // SM and RLM presets take k = 1 throughout the bundled panels.
    static const std::pair<const char*, InterpolationParams> four_models[] = {
        {"JCM", {0.0, 1.0, 1.0}},
        {"BSM", {1.0, 0.0, 1.0}},
        {"SM", {1.0, 1.0, 1.0}},
        {"RLM", {1.0, 2.0, 1.0}},
    };
    switch (spec.figure) {
    case 1:
        def.model_name = four_models[idx].first;
        def.params = four_models[idx].second;
        def.nbar = 3.0;
        def.t_max = 2.0;
        def.steps = 2001;
        def.curves = {"n_e", "n_total", "n_g"};
        break;
    case 2:
        def.model_name = four_models[idx].first;
        def.params = four_models[idx].second;
        def.nbar = 3.0;
        def.t_max = 10.0;
        def.steps = 10001;
        def.curves = {"q_mandel"};
        break;
    case 3: {
        static const std::pair<double, double> grid[] = {
            {0.10, 0.90}, {0.50, 0.50}, {0.90, 0.10}, // toward BSM
            {0.25, 1.0},  {0.50, 1.0},  {0.75, 1.0},  // toward SM
            {0.25, 2.0},  {0.50, 2.0},  {0.75, 2.0},  // toward RLM
        };
        def.params = {grid[idx].first, grid[idx].second, 1.0};
        std::ostringstream name;
        name << "xi=" << grid[idx].first << ",delta=" << grid[idx].second;
        def.model_name = name.str();
        def.nbar = 3.0;
        def.t_max = 10.0;
        def.steps = 10001;
        def.curves = {"q_mandel"};
        break;
    }
    case 4: {
        static const std::pair<double, double> cells[] = {
            {3.0, 0.0}, {3.0, 1.0}, {3.0, 2.0},
            {30.0, 0.0}, {30.0, 1.0}, {30.0, 2.0},
        };
        def.params = {0.90, cells[idx].second, 1.0};
        def.nbar = cells[idx].first;
        std::ostringstream name;
        name << "xi=0.9,delta=" << cells[idx].second << ",nbar=" << cells[idx].first;
        def.model_name = name.str();
        def.t_max = 10.0;
        def.steps = 10001;
        def.curves = {"q_mandel"};
        break;
    }
    }
    return def;
}

namespace {

const char* curve_style(const std::string& curve) {
    if (curve == "n_e")
        return "dashtype solid lw 2";
    if (curve == "n_total")
        return "dashtype 2 lw 2";
    if (curve == "n_g")
        return "dashtype 3 lw 2";
    return "dashtype solid lw 2";
}

std::optional<double> curve_value(const PhotonStatsRecord& r, const std::string& curve,
                                  std::optional<double> intercept) {
    if (curve == "n_e") {
        if (r.n_e)
            return r.n_e;
        if (r.p_e < 1e-14)
            return intercept; // draw the t->0 limit instead of a gap
        return std::nullopt;
    }
    if (curve == "n_total")
        return r.n_total;
    if (curve == "n_g")
        return r.n_g;
    if (curve == "q_mandel")
        return r.q_mandel;
    throw error("unknown curve: " + curve);
}

} // namespace

void figure(const FigureSpec& spec, const std::filesystem::path& out_dir,
            std::optional<double> t_max_override,
            std::optional<std::size_t> steps_override) {
    PanelDef def = panel_definition(spec);
    if (t_max_override)
        def.t_max = *t_max_override;
    if (steps_override)
        def.steps = *steps_override;
    warn_delta_range(def.params.delta);

    std::filesystem::create_directories(out_dir);
    const std::string tag = "fig" + std::to_string(spec.figure) + std::string(1, spec.panel);

    const std::size_t n_cut = default_cutoff(def.nbar);
    const FieldState psi0 = coherent_state(def.nbar, 0.0, n_cut);
    const ObservableSeries s = series(psi0, def.params, def.t_max, def.steps);

    for (const auto& curve : def.curves) {
        const auto path = out_dir / (tag + "_" + curve + ".csv");
        std::ofstream f(path);
        if (!f)
            throw io_failure("cannot write CSV: " + path.string());
        f << "lambda_t," << curve << '\n';
        for (const auto& r : s.records) {
            const auto v = curve_value(r, curve, s.n_e_intercept);
            f << format_field(r.lambda_t) << ',' << optional_field(v) << '\n';
        }
        if (!f.good())
            throw io_failure("write failed: " + path.string());
    }

    // Standalone gnuplot script; rendering stays outside this tool.
    {
        const auto path = out_dir / (tag + ".gp");
        std::ofstream f(path);
        if (!f)
            throw io_failure("cannot write plot script: " + path.string());
        f << "set datafile separator ','\n";
        f << "set key top right\n";
        f << "set xlabel 'lambda t'\n";
        f << "set ylabel '" << (spec.figure == 1 ? "photon number" : "Q") << "'\n";
        f << "set title '" << def.model_name << ", nbar = " << def.nbar << "'\n";
        f << "plot \\\n";
        for (std::size_t i = 0; i < def.curves.size(); ++i) {
            const auto& curve = def.curves[i];
            f << "  '" << tag << "_" << curve << ".csv' every ::1 using 1:2 with lines "
              << curve_style(curve) << " title '" << curve << "'"
              << (i + 1 < def.curves.size() ? ", \\\n" : "\n");
        }
        if (!f.good())
            throw io_failure("write failed: " + path.string());
    }

    RunConfig meta_cfg;
    meta_cfg.xi_delta = std::make_pair(def.params.xi, def.params.delta);
    meta_cfg.nbar = def.nbar;
    meta_cfg.t_max = def.t_max;
    meta_cfg.steps = def.steps;
    meta_cfg.cutoff = n_cut;
    meta_cfg.out_path = out_dir / (tag + ".csv");
    write_sidecar(meta_cfg, psi0, meta_cfg.out_path, def.model_name);
}

void figure_panels(int figure_id, const std::vector<char>& panels,
                   const std::filesystem::path& out_dir,
                   std::optional<double> t_max_override,
                   std::optional<std::size_t> steps_override) {
    // Validate every panel before any file is touched.
    for (const char p : panels)
        panel_definition(FigureSpec{figure_id, p});
    std::filesystem::create_directories(out_dir);
    parallel_for(panels.size(), [&](std::size_t i) {
        figure(FigureSpec{figure_id, panels[i]}, out_dir, t_max_override, steps_override);
    });
}

void scan(const std::vector<double>& xi_values, const std::vector<double>& delta_values,
          double nbar, double t_max, std::size_t steps,
          const std::filesystem::path& out_path) {
    if (xi_values.empty() || delta_values.empty())
        throw error("scan: ranges must be nonempty");
    for (std::size_t i = 1; i < xi_values.size(); ++i)
        if (!(xi_values[i] > xi_values[i - 1]))
            throw error("scan: xi values must be strictly increasing");
    for (std::size_t i = 1; i < delta_values.size(); ++i)
        if (!(delta_values[i] > delta_values[i - 1]))
            throw error("scan: delta values must be strictly increasing");

    const std::size_t cells = xi_values.size() * delta_values.size() * steps;
    if (cells > kScanCellCeiling) {
        std::ostringstream msg;
        msg << "scan: grid of " << cells << " cells exceeds the ceiling " << kScanCellCeiling
            << "; coarsen the ranges or reduce steps";
        throw resource_limit(msg.str());
    }
    if (!delta_values.empty())
        warn_delta_range(delta_values.back());

    struct Cell {
        double xi, delta;
        bool skipped = false;
        ObservableSeries s;
    };
    std::vector<Cell> grid;
    for (const double xi : xi_values)
        for (const double delta : delta_values)
            grid.push_back(Cell{xi, delta, false, {}});

    const std::size_t n_cut = default_cutoff(nbar);
    const FieldState psi0 = coherent_state(nbar, 0.0, n_cut);

    parallel_for(grid.size(), [&](std::size_t i) {
        auto& cell = grid[i];
        if (cell.xi == 0.0 && cell.delta == 0.0) {
            cell.skipped = true;
            return;
        }
        cell.s = series(psi0, InterpolationParams{cell.xi, cell.delta, 1.0}, t_max, steps);
    });

    std::ofstream f(out_path);
    if (!f)
        throw io_failure("cannot write CSV: " + out_path.string());
    f << "xi,delta,lambda_t,n_total,n_g,n_e,p_e,q_mandel\n";
    std::size_t row = 0;
    for (const auto& cell : grid) {
        if (cell.skipped) {
            std::cerr << "warning: skipping degenerate (xi, delta) = (0, 0)\n";
            continue;
        }
        const std::string prefix = format_field(cell.xi) + "," + format_field(cell.delta) + ",";
        for (const auto& r : cell.s.records)
            write_record_row(f, r, 1.0, row++, prefix);
    }
    if (!f.good())
        throw io_failure("write failed: " + out_path.string());
}

std::size_t worker_count() {
    if (const char* env = std::getenv("IDCSIM_WORKERS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v >= 1)
            return static_cast<std::size_t>(v);
        std::cerr << "warning: ignoring invalid IDCSIM_WORKERS='" << env << "'\n";
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

} // namespace idc::harness
