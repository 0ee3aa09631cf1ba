#ifndef IDC_HARNESS_HPP_
#define IDC_HARNESS_HPP_

// Front end used by the idcsim CLI: run configurations, bundled figure
// parameterizations, parameter scans, CSV/sidecar emission and the
// self-verification suite.  All artifacts are deterministic flat files:
// 17-significant-digit CSV with empty fields for undefined conditionals,
// plus a JSON sidecar sufficient to reproduce the run byte for byte.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "idc/algebra.hpp"
#include "idc/observables.hpp"

namespace idc::harness {

enum class Output { series, paradox, mandel, oracle_check };

std::string to_string(Output o);
Output parse_output(std::string_view text); // throws idc::error on unknown names

struct RunConfig {
    // Exactly one of preset / xi_delta must be set.
    std::optional<ModelPreset> preset;
    std::optional<std::pair<double, double>> xi_delta;

    double nbar = 3.0;
    double phase = 0.0;  // coherent-state phase; all emitted quantities depend only on |c_n|^2
    double t_max = 2.0;
    std::size_t steps = 2001;
    std::optional<std::size_t> cutoff; // empty = default_cutoff(nbar)
    double lambda = 1.0;               // rescales the reported time column only
    std::set<Output> outputs = {Output::series};
    std::filesystem::path out_path = "run.csv";

    InterpolationParams params() const; // validates; throws idc::error
    std::size_t resolved_cutoff() const;
    std::string model_name() const;
};

// Computes the series and writes out_path (CSV) plus out_path + ".meta.json".
// Optional outputs add <stem>_paradox.csv / <stem>_q.csv next to it and the
// oracle check, which throws idc::verification_failure when fidelity with the
// dense-exponential propagator drops below 1 - 1e-10 at any probe time.
void run(const RunConfig& cfg);

struct FigureSpec {
    int figure = 1; // 1..4
    char panel = 'a';
};

// Panels per figure: 1 -> a-d, 2 -> a-d, 3 -> a-i, 4 -> a-f.
std::vector<char> panels_for(int figure);

struct PanelDef {
    std::string model_name;
    InterpolationParams params;
    double nbar = 3.0;
    double t_max = 10.0;
    std::size_t steps = 10001;
    std::vector<std::string> curves; // column names drawn by the plot script
};

// Throws idc::error for an unknown figure/panel combination.
PanelDef panel_definition(const FigureSpec& spec);

// Emits one two-column CSV per curve (lambda_t,<curve>), a gnuplot script
// with the matching line styles, and a JSON sidecar, all under out_dir.
void figure(const FigureSpec& spec, const std::filesystem::path& out_dir,
            std::optional<double> t_max_override = {},
            std::optional<std::size_t> steps_override = {});

// Same, for several panels of one figure, fanned out over the worker pool.
void figure_panels(int figure_id, const std::vector<char>& panels,
                   const std::filesystem::path& out_dir,
                   std::optional<double> t_max_override = {},
                   std::optional<std::size_t> steps_override = {});

// Long-form CSV over the (xi, delta) grid: header xi,delta,lambda_t,...,
// rows ordered xi outer, delta middle, lambda_t inner.  The degenerate
// (0, 0) corner is skipped with a warning on stderr.  Throws
// idc::resource_limit when the grid exceeds the configured cell ceiling.
void scan(const std::vector<double>& xi_values,
          const std::vector<double>& delta_values,
          double nbar, double t_max, std::size_t steps,
          const std::filesystem::path& out_path);

// Runs the invariant suite, printing one pass/fail row per check.
// Returns the number of failed checks (0 = all green).
int verify(std::ostream& out);

// --- helpers shared with the tests ---

// 17-significant-digit formatting used for every CSV field.
std::string format_field(double v);

void write_series_csv(const ObservableSeries& s, double lambda, std::ostream& out);

// Reconstructs a RunConfig from a sidecar written by run(); rerunning it
// reproduces the CSV byte for byte on the same host and kernel backend.
RunConfig config_from_sidecar(const std::filesystem::path& sidecar_path);

// IDCSIM_WORKERS override, else std::thread::hardware_concurrency().
std::size_t worker_count();

inline constexpr std::size_t kScanCellCeiling = 20'000'000;

} // namespace idc::harness

#endif
