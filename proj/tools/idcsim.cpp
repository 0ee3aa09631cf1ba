// idcsim - command-line front end for the interpolating atom-field simulator.
//
// Subcommands:
//   run     one series -> CSV + JSON sidecar (plus optional paradox/mandel/
//           oracle-check outputs)
//   figure  bundled panel parameterizations -> per-curve CSVs + gnuplot script
//   scan    long-form CSV over a (xi, delta) grid
//   verify  full numerical invariant suite (exit 2 on failure)
//
// Exit codes: 0 success, 1 invalid configuration, 2 numerical-verification
// failure, 3 I/O failure.

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "idc/errors.hpp"
#include "idc/harness.hpp"
#include "idc/version.hpp"

namespace {

using idc::harness::FigureSpec;
using idc::harness::RunConfig;

// Flat key=value configuration file ('#' comments, blank lines allowed).
// Keys are the long option names without the leading dashes; '_' and '-' are
// interchangeable.  Command-line flags win on conflict.
std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw idc::io_failure("cannot read config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        const auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        if (strip(line).empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw idc::error("config file " + path + ":" + std::to_string(lineno) +
                             ": expected key=value");
        std::string key = strip(line.substr(0, eq));
        for (auto& ch : key)
            if (ch == '_')
                ch = '-';
        kv[key] = strip(line.substr(eq + 1));
    }
    return kv;
}

// Accepts "lo:hi:step" or a comma-separated list.
std::vector<double> parse_range(const std::string& text) {
    std::vector<double> values;
    if (text.find(':') != std::string::npos) {
        double lo = 0, hi = 0, step = 0;
        char c1 = 0, c2 = 0;
        std::istringstream in(text);
        if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0)
            throw idc::error("bad range '" + text + "' (expected lo:hi:step)");
        for (double v = lo; v <= hi + 1e-12 * std::max(1.0, std::abs(hi)); v += step)
            values.push_back(v);
    } else {
        std::istringstream in(text);
        std::string item;
        while (std::getline(in, item, ',')) {
            try {
                std::size_t used = 0;
                const double v = std::stod(item, &used);
                if (used != item.size())
                    throw std::invalid_argument(item);
                values.push_back(v);
            } catch (const std::exception&) {
                throw idc::error("bad range value '" + item + "'");
            }
        }
    }
    if (values.empty())
        throw idc::error("empty range '" + text + "'");
    return values;
}

int dispatch(const std::function<void()>& body) {
    try {
        body();
        return 0;
    } catch (const idc::verification_failure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const idc::io_failure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Interpolating atom-field Hamiltonian simulator (JCM/BSM/SM/RLM family)"};
    app.set_version_flag("--version", std::string(idc::kToolName) + " " + idc::kVersion);
    app.require_subcommand(1);

    // --- run ---
    auto* run_cmd = app.add_subcommand("run", "compute one observable series and write CSV");
    std::string preset_name;
    double preset_k = 1.0;
    double xi = -1.0, delta = -1.0;
    RunConfig cfg;
    long long cutoff_flag = -1;
    std::string outputs_flag = "series";
    std::string out_path = "run.csv";
    run_cmd->add_option("--preset", preset_name, "model preset: JCM, BSM, SM, RLM");
    run_cmd->add_option("--k", preset_k, "k parameter for the SM/RLM presets")
        ->capture_default_str();
    run_cmd->add_option("--xi", xi, "explicit xi (with --delta; excludes --preset)");
    run_cmd->add_option("--delta", delta, "explicit delta (with --xi; excludes --preset)");
    run_cmd->add_option("--nbar", cfg.nbar, "mean photon number of the initial coherent state")
        ->capture_default_str();
    run_cmd->add_option("--phase", cfg.phase, "coherent-state phase in radians")
        ->capture_default_str();
    run_cmd->add_option("--t-max", cfg.t_max, "end of the lambda*t grid")->capture_default_str();
    run_cmd->add_option("--steps", cfg.steps, "number of grid points")->capture_default_str();
    run_cmd->add_option("--cutoff", cutoff_flag, "Fock cutoff (omit or -1 for automatic)");
    run_cmd->add_option("--lambda", cfg.lambda,
                        "coupling; rescales the reported time column only")
        ->capture_default_str();
    run_cmd->add_option("--outputs", outputs_flag,
                        "comma list of series,paradox,mandel,oracle-check")
        ->capture_default_str();
    run_cmd->add_option("--out", out_path, "output CSV path")->capture_default_str();
    std::string config_path;
    run_cmd->add_option("--config", config_path, "flat key=value configuration file");

    // --- figure ---
    auto* fig_cmd = app.add_subcommand("figure", "emit bundled figure panels");
    int figure_id = 1;
    std::string panel = "all";
    std::string out_dir = "figures";
    double fig_tmax = -1.0;
    long long fig_steps = -1;
    fig_cmd->add_option("--figure", figure_id, "figure id 1..4")->required();
    fig_cmd->add_option("--panel", panel, "panel letter, or 'all'")->capture_default_str();
    fig_cmd->add_option("--out-dir", out_dir, "output directory")->capture_default_str();
    fig_cmd->add_option("--t-max", fig_tmax, "override the panel's time range");
    fig_cmd->add_option("--steps", fig_steps, "override the panel's grid size");

    // --- scan ---
    auto* scan_cmd = app.add_subcommand("scan", "sweep a (xi, delta) grid into one CSV");
    std::string xi_range, delta_range;
    double scan_nbar = 3.0, scan_tmax = 2.0;
    std::size_t scan_steps = 201;
    std::string scan_out = "scan.csv";
    scan_cmd->add_option("--xi", xi_range, "xi values: lo:hi:step or comma list")->required();
    scan_cmd->add_option("--delta", delta_range, "delta values: lo:hi:step or comma list")
        ->required();
    scan_cmd->add_option("--nbar", scan_nbar, "mean photon number")->capture_default_str();
    scan_cmd->add_option("--t-max", scan_tmax, "end of the lambda*t grid")->capture_default_str();
    scan_cmd->add_option("--steps", scan_steps, "grid points per (xi, delta)")
        ->capture_default_str();
    scan_cmd->add_option("--out", scan_out, "output CSV path")->capture_default_str();

    // --- verify ---
    auto* verify_cmd = app.add_subcommand("verify", "run the numerical invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) // --help / --version
            return app.exit(e);
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    if (run_cmd->parsed()) {
        return dispatch([&] {
            bool xi_given = run_cmd->count("--xi") > 0;
            bool delta_given = run_cmd->count("--delta") > 0;
            if (!config_path.empty()) {
                const auto file = parse_config_file(config_path);
                static const std::set<std::string> known = {
                    "preset", "k",     "xi",     "delta",  "nbar",    "phase",
                    "t-max",  "steps", "cutoff", "lambda", "outputs", "out"};
                for (const auto& [key, value] : file)
                    if (!known.count(key))
                        throw idc::error("config: unknown key '" + key + "'");
                const auto apply = [&](const char* key, const char* flag, auto& target) {
                    const auto it = file.find(key);
                    if (it == file.end() || run_cmd->count(flag) > 0)
                        return; // flags win on conflict
                    std::istringstream in(it->second);
                    in >> target;
                    if (in.fail())
                        throw idc::error(std::string("config: bad value for ") + key + ": '" +
                                         it->second + "'");
                };
                apply("preset", "--preset", preset_name);
                apply("k", "--k", preset_k);
                apply("xi", "--xi", xi);
                apply("delta", "--delta", delta);
                apply("nbar", "--nbar", cfg.nbar);
                apply("phase", "--phase", cfg.phase);
                apply("t-max", "--t-max", cfg.t_max);
                apply("steps", "--steps", cfg.steps);
                apply("cutoff", "--cutoff", cutoff_flag);
                apply("lambda", "--lambda", cfg.lambda);
                apply("outputs", "--outputs", outputs_flag);
                apply("out", "--out", out_path);
                xi_given = xi_given || file.count("xi") > 0;
                delta_given = delta_given || file.count("delta") > 0;
            }
            if (!preset_name.empty()) {
                const auto preset = idc::ModelPreset::parse(preset_name, preset_k);
                if (!preset)
                    throw idc::error("unknown preset '" + preset_name + "'");
                cfg.preset = *preset;
            }
            if (xi_given || delta_given) {
                if (!xi_given || !delta_given)
                    throw idc::error("xi and delta must be given together");
                cfg.xi_delta = std::make_pair(xi, delta);
            }
            if (cutoff_flag >= 0)
                cfg.cutoff = static_cast<std::size_t>(cutoff_flag);
            cfg.outputs.clear();
            std::istringstream in(outputs_flag);
            std::string item;
            while (std::getline(in, item, ','))
                cfg.outputs.insert(idc::harness::parse_output(item));
            cfg.out_path = out_path;
            idc::harness::run(cfg);
        });
    }

    if (fig_cmd->parsed()) {
        return dispatch([&] {
            std::vector<char> panels;
            if (panel == "all")
                panels = idc::harness::panels_for(figure_id);
            else if (panel.size() == 1)
                panels = {panel[0]};
            else
                throw idc::error("bad panel '" + panel + "'");
            std::optional<double> tmax_ovr;
            std::optional<std::size_t> steps_ovr;
            if (fig_cmd->count("--t-max"))
                tmax_ovr = fig_tmax;
            if (fig_cmd->count("--steps"))
                steps_ovr = static_cast<std::size_t>(fig_steps);
            idc::harness::figure_panels(figure_id, panels, out_dir, tmax_ovr, steps_ovr);
        });
    }

    if (scan_cmd->parsed()) {
        return dispatch([&] {
            idc::harness::scan(parse_range(xi_range), parse_range(delta_range), scan_nbar,
                               scan_tmax, scan_steps, scan_out);
        });
    }

    if (verify_cmd->parsed()) {
        const int failures = dispatch([] {
            if (idc::harness::verify(std::cout) != 0)
                throw idc::verification_failure("invariant suite reported failures");
        });
        return failures;
    }

    return 0;
}
