// The `idcsim verify` invariant suite: every structural property the library
// promises, checked end to end and printed as a pass/fail table.

#include <array>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <vector>

#include "idc/errors.hpp"
#include "idc/harness.hpp"
#include "idc/kernels.hpp"

namespace idc::harness {
namespace {

constexpr double kPi = 3.14159265358979323846;

struct CheckTable {
    std::ostream& out;
    int failures = 0;

    void report(const std::string& name, bool pass, const std::string& detail) {
        out << (pass ? "PASS  " : "FAIL  ") << std::left << std::setw(50) << name
            << "  " << detail << '\n';
        if (!pass)
            ++failures;
    }
};

std::vector<InterpolationParams> preset_params() {
    return {jcm(), bsm(), sm(1.0), rlm(1.0)};
}

std::string fmt(double v) {
    std::ostringstream s;
    s << std::setprecision(3) << v;
    return s.str();
}

void check_algebra_closure(CheckTable& t) {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> uxi(0.0, 1.0), udl(0.0, 2.0);
    auto params = preset_params();
    for (int i = 0; i < 10; ++i) {
        InterpolationParams p{uxi(rng), udl(rng), 1.0};
        if (p.xi == 0.0 && p.delta == 0.0)
            p.delta = 1.0;
        params.push_back(p);
    }
    double worst = 0.0;
    for (const auto& p : params)
        for (const auto& [name, res] : commutator_residuals(p, 20))
            worst = std::max(worst, res);
    t.report("algebra closure (interior, cutoff 20)", worst < 1e-12,
             "max residual " + fmt(worst));
}

void check_constants_of_motion(CheckTable& t) {
    double worst = 0.0;
    for (const auto& p : preset_params()) {
        const auto h = hamiltonian_matrices(p, 1.0, 1.0, 20);
        const std::size_t interior = 2 * 20; // both atom levels of Fock < cutoff
        worst = std::max(worst, commutator(h.full, h.atomic).max_abs_interior(interior));
        worst = std::max(worst, commutator(h.full, h.interaction).max_abs_interior(interior));
        worst = std::max(worst, commutator(h.atomic, h.interaction).max_abs_interior(interior));
    }
    t.report("constants of motion [H,H_A],[H,H_I],[H_A,H_I]", worst < 1e-10,
             "max residual " + fmt(worst));
}

void check_oracle(CheckTable& t) {
    const std::vector<InterpolationParams> params = {jcm(), bsm(), sm(1.0), rlm(1.0),
                                                     {0.5, 0.5, 1.0}};
    const double times[] = {0.1, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0};
    const std::vector<FieldState> states = {coherent_state(3.0, 0.0, 40),
                                            coherent_state(1.0, kPi / 3.0, 40),
                                            fock_state(3, 40)};
    double worst = 1.0;
    for (const auto& p : params)
        for (const double lt : times)
            for (const auto& psi : states)
                worst = std::min(worst, fidelity(evolve_exact(psi, p, lt),
                                                 evolve_oracle(psi, p, lt, 40)));
    t.report("oracle equivalence (5 params x 8 times x 3 states)", worst >= 1.0 - 1e-10,
             "min fidelity deficit " + fmt(1.0 - worst));
}

void check_unitarity_and_conservation(CheckTable& t) {
    double worst_norm = 0.0, worst_cons = 0.0;
    for (const auto& p : preset_params()) {
        const auto psi = coherent_state(3.0, 0.0, default_cutoff(3.0));
        const double n0 = moment(psi, 1) * psi.norm_squared();
        for (int i = 0; i <= 1000; ++i) {
            const double lt = 10.0 * i / 1000.0;
            const auto st = evolve_exact(psi, p, lt);
            worst_norm = std::max(worst_norm, std::abs(st.norm_squared() - 1.0));
            const auto r = photon_stats(st);
            worst_cons = std::max(worst_cons, std::abs(r.n_total + r.p_e - n0));
        }
    }
    t.report("unitarity |norm^2 - 1| on [0,10] x 1000", worst_norm < 1e-10,
             "max " + fmt(worst_norm));
    t.report("excitation conservation <n> + P_e", worst_cons < 1e-9,
             "max drift " + fmt(worst_cons));
}

void check_total_expectation(CheckTable& t) {
    const auto psi = coherent_state(3.0, 0.0, 43);
    const auto s = series(psi, jcm(), 2.0, 501);
    double worst = 0.0;
    for (const auto& r : s.records)
        if (r.n_g && r.n_e)
            worst = std::max(worst, std::abs(r.p_g * *r.n_g + r.p_e * *r.n_e - r.n_total));
    t.report("law of total expectation", worst < 1e-9, "max residual " + fmt(worst));
}

void check_mandel_baseline(CheckTable& t) {
    double worst = 0.0;
    for (const double nbar : {1.0, 3.0, 10.0, 30.0}) {
        const auto psi = coherent_state(nbar, 0.0, default_cutoff(nbar));
        const auto r = photon_stats(evolve_exact(psi, jcm(), 0.0));
        worst = std::max(worst, std::abs(r.q_mandel.value()));
    }
    t.report("Q(0) = 0 for coherent inputs", worst < 1e-10, "max |Q(0)| " + fmt(worst));
}

void check_bsm_periodicity(CheckTable& t) {
    const auto psi = coherent_state(3.0, 0.0, 43);
    double worst = 0.0;
    for (const double lt : {0.3, 0.7, 1.1, 2.4}) {
        const auto a = photon_stats(evolve_exact(psi, bsm(), lt));
        const auto b = photon_stats(evolve_exact(psi, bsm(), lt + kPi));
        worst = std::max(worst, std::abs(a.n_total - b.n_total));
        worst = std::max(worst, std::abs(a.p_e - b.p_e));
        if (a.q_mandel && b.q_mandel)
            worst = std::max(worst, std::abs(*a.q_mandel - *b.q_mandel));
        if (a.n_g && b.n_g)
            worst = std::max(worst, std::abs(*a.n_g - *b.n_g));
        if (a.n_e && b.n_e)
            worst = std::max(worst, std::abs(*a.n_e - *b.n_e));
    }
    t.report("BSM pi-periodicity of observables", worst < 1e-9, "max diff " + fmt(worst));
}

void check_small_time_ordering(CheckTable& t) {
    bool all = true;
    const auto psi = coherent_state(3.0, 0.0, 43);
    for (const auto& p : preset_params())
        all = all && small_time_ordering_check(psi, p);
    t.report("small-time ordering n_e > n > n_g (presets)", all, all ? "holds" : "broken");
}

void check_series_order4(CheckTable& t) {
    const auto psi = coherent_state(3.0, 0.0, 43);
    double worst_ratio = 1e300;
    for (const auto& p : preset_params()) {
        const auto c = small_time_series(psi, p);
        const auto residuals = [&](double lt) {
            const auto r = photon_stats(evolve_exact(psi, p, lt));
            return std::array<double, 3>{std::abs(*r.n_g - c.n_g(lt)),
                                         std::abs(*r.n_e - *c.n_e(lt)),
                                         std::abs(r.n_total - c.n_total(lt))};
        };
        const auto r4 = residuals(0.04), r2 = residuals(0.02);
        for (int i = 0; i < 3; ++i) {
            if (r4[i] < 1e-13 && r2[i] < 1e-13)
                continue; // residual at rounding noise already
            worst_ratio = std::min(worst_ratio, r4[i] / r2[i]);
        }
    }
    t.report("small-time expansion is order-4 accurate", worst_ratio >= 12.0,
             "min halving ratio " + fmt(worst_ratio));
}

void check_paradox_windows(CheckTable& t) {
    const auto params = preset_params();
    const auto psi = coherent_state(3.0, 0.0, 40);
    bool pass = true;
    std::vector<double> ends;
    for (const auto& p : params) {
        const auto w = paradox_window(series(psi, p, 2.0, 2001));
        pass = pass && w.holds_at_small_t && w.end_lambda_t.has_value();
        ends.push_back(w.end_lambda_t.value_or(-1.0));
    }
    // faster Rabi ladders close the window sooner: JCM > BSM > SM(1) > RLM(1)
    pass = pass && ends[0] > ends[1] && ends[1] > ends[2] && ends[2] > ends[3];

    // dual route: the margins derived from the dense-expm oracle must change
    // sign across the reported JCM end time
    const auto margin = [&](double lt) {
        const auto r = photon_stats(evolve_oracle(psi, jcm(), lt, 40));
        return std::min(*r.n_e - r.n_total, r.n_total - *r.n_g);
    };
    pass = pass && margin(ends[0] - 0.01) > 0.0 && margin(ends[0] + 0.01) < 0.0;

    std::ostringstream detail;
    detail << "ends " << fmt(ends[0]) << "/" << fmt(ends[1]) << "/" << fmt(ends[2]) << "/"
           << fmt(ends[3]) << ", ordered, oracle-bracketed";
    t.report("paradox windows start immediately and close in order", pass, detail.str());
}

void check_kernel_equivalence(CheckTable& t) {
    const auto& active = kernels::table_for(kernels::active_backend());
    const auto& scalar = kernels::table_for(kernels::backend::scalar);
    if (&active == &scalar) {
        t.report("kernel backends agree", true, "scalar backend only");
        return;
    }
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> ux(0.0, 5000.0), uamp(-1.0, 1.0);
    const std::size_t n = 257;
    std::vector<double> x(n), s1(n), c1(n), s2(n), c2(n);
    std::vector<std::complex<double>> amps(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = ux(rng);
        amps[i] = {uamp(rng), uamp(rng)};
    }
    active.sincos(x.data(), s1.data(), c1.data(), n);
    scalar.sincos(x.data(), s2.data(), c2.data(), n);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        worst = std::max({worst, std::abs(s1[i] - s2[i]), std::abs(c1[i] - c2[i])});
    double p1[6], p2[6];
    active.power_sums(amps.data(), n, p1);
    scalar.power_sums(amps.data(), n, p2);
    double worst_rel = 0.0;
    for (int k = 0; k < 6; ++k)
        worst_rel = std::max(worst_rel, std::abs(p1[k] - p2[k]) / std::abs(p2[k]));
    t.report("kernel backends agree", worst < 2e-15 && worst_rel < 1e-12,
             "sincos " + fmt(worst) + ", sums rel " + fmt(worst_rel));
}

} // namespace

int verify(std::ostream& out) {
    out << "kernel backend: " << kernels::backend_name(kernels::active_backend()) << "\n\n";
    CheckTable t{out};
    check_algebra_closure(t);
    check_constants_of_motion(t);
    check_oracle(t);
    check_unitarity_and_conservation(t);
    check_total_expectation(t);
    check_mandel_baseline(t);
    check_bsm_periodicity(t);
    check_small_time_ordering(t);
    check_series_order4(t);
    check_paradox_windows(t);
    check_kernel_equivalence(t);
    out << '\n'
        << (t.failures == 0 ? "all checks passed" : std::to_string(t.failures) + " check(s) FAILED")
        << '\n';
    return t.failures;
}

} // namespace idc::harness
