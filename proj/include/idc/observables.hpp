#ifndef IDC_OBSERVABLES_HPP_
#define IDC_OBSERVABLES_HPP_

// Photon statistics of the evolved state: conditional and unconditional
// means, Mandel Q, and detection of the window where finding the atom
// excited implies more photons in the field than finding it in the ground
// state, n_e > n_total > n_g.

#include <cstddef>
#include <optional>
#include <vector>

#include "idc/algebra.hpp"
#include "idc/dynamics.hpp"
#include "idc/fock.hpp"

namespace idc {

struct PhotonStatsRecord {
    double lambda_t = 0.0;
    double n_total = 0.0;          // Tr(n rho_field), rho_field = |g><g| + |e><e| branches
    std::optional<double> n_g;     // <n> given atom in |g>, normalized; empty if p_g < 1e-14
    std::optional<double> n_e;     // <n> given atom in |e>, normalized; empty if p_e < 1e-14
    double p_g = 1.0;
    double p_e = 0.0;
    std::optional<double> q_mandel;// Var n / <n> - 1 of the reduced field; empty at <n> = 0
};

PhotonStatsRecord photon_stats(const JointState& state);

struct ObservableSeries {
    InterpolationParams params;
    FieldState initial;
    double t_max = 0.0;
    std::size_t steps = 0;
    // t->0 limit of n_e (the small-time intercept <nA>/<A> - 1), used to
    // evaluate the ordering where p_e vanishes; empty when <A> = 0.
    std::optional<double> n_e_intercept;
    std::vector<PhotonStatsRecord> records;
};

// Uniform grid of `steps` points on [0, t_max], one record per point,
// computed with the analytic propagator.  steps >= 2.
ObservableSeries series(const FieldState& psi0, const InterpolationParams& p,
                        double t_max, std::size_t steps);

enum class Relation { none, upper, lower }; // upper: n_e > n_total, lower: n_total > n_g

struct ParadoxWindow {
    bool holds_at_small_t = false;
    std::optional<double> end_lambda_t; // empty if never violated inside the series
    Relation violated = Relation::none;
};

// First time at which either inequality fails by more than `tolerance`,
// refined by bisection between the bracketing grid points to 1e-6 in
// lambda_t.  Where p_e < 1e-14 the upper relation is evaluated with the
// series' n_e intercept.  Requires at least 3 records starting at t = 0.
ParadoxWindow paradox_window(const ObservableSeries& s, double tolerance = 0.0);

// True iff the intercept chain holds at t->0+ and the exact curves satisfy
// the strict ordering n_e > n_total > n_g at lambda_t = 0.01.  Throws
// idc::error when a required quantity is undefined (vacuum input).
bool small_time_ordering_check(const FieldState& psi0, const InterpolationParams& p);

} // namespace idc

#endif
