#include "idc/fock.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "idc/errors.hpp"
#include "idc/kernels.hpp"

namespace idc {
namespace {

constexpr double kTailRejectThreshold = 1e-6;

// Upper Poisson tail sum_{m > cutoff} e^-mu mu^m / m!, by upward recurrence
// from the last retained term.  head = sum of the retained pmf, used to fall
// back to 1 - head when the retained mass is so small that the recurrence
// start underflows.
double poisson_tail(double mu, std::size_t cutoff, double last_pmf, double head) {
    if (mu == 0.0)
        return 0.0;
    if (head < 0.5 || last_pmf == 0.0)
        return std::max(0.0, 1.0 - head);
    double term = last_pmf;
    double tail = 0.0, comp = 0.0;
    for (std::size_t m = cutoff + 1; m < cutoff + 100000; ++m) {
        term *= mu / static_cast<double>(m);
        const double t = tail + term;
        comp += (std::abs(tail) >= term) ? (tail - t) + term : (term - t) + tail;
        tail = t;
        if (term < tail * 1e-18 + 5e-324)
            break;
    }
    return tail + comp;
}

} // namespace

double FieldState::norm_squared() const {
    return kernels::norm_squared(amplitudes.data(), amplitudes.size());
}

FieldState coherent_state(double mean_photons, double phase, std::size_t cutoff) {
    if (cutoff < 1)
        throw error("coherent_state: cutoff must be >= 1");
    if (!std::isfinite(mean_photons) || mean_photons < 0.0)
        throw error("coherent_state: mean photon number must be finite and nonnegative");
    if (!std::isfinite(phase))
        throw error("coherent_state: phase must be finite");

    FieldState state;
    state.amplitudes.resize(cutoff + 1);

    // c_0 = e^{-|alpha|^2/2}, c_n = c_{n-1} alpha / sqrt(n); |alpha|^2 = nbar
    const std::complex<double> alpha =
        std::sqrt(mean_photons) * std::complex<double>(std::cos(phase), std::sin(phase));
    std::complex<double> c = std::exp(-0.5 * mean_photons);
    state.amplitudes[0] = c;
    for (std::size_t n = 1; n <= cutoff; ++n) {
        c *= alpha / std::sqrt(static_cast<double>(n));
        state.amplitudes[n] = c;
    }

    const double head = state.norm_squared();
    const double last_pmf = std::norm(state.amplitudes[cutoff]);
    state.tail_bound = poisson_tail(mean_photons, cutoff, last_pmf, head);

    if (state.tail_bound > kTailRejectThreshold) {
        std::ostringstream msg;
        msg << "coherent_state: insufficient cutoff " << cutoff << " for mean photon number "
            << mean_photons << " (discarded tail mass " << state.tail_bound << ")";
        throw insufficient_cutoff(msg.str(), state.tail_bound);
    }
    return state;
}

FieldState fock_state(std::size_t n, std::size_t cutoff) {
    if (cutoff < 1)
        throw error("fock_state: cutoff must be >= 1");
    if (n > cutoff) {
        std::ostringstream msg;
        msg << "fock_state: n = " << n << " out of range for cutoff " << cutoff;
        throw error(msg.str());
    }
    FieldState state;
    state.amplitudes.assign(cutoff + 1, {0.0, 0.0});
    state.amplitudes[n] = {1.0, 0.0};
    state.tail_bound = 0.0;
    return state;
}

double moment(const FieldState& state, int k) {
    if (k < 0 || k > 5)
        throw error("moment: order must be in [0, 5]");
    double sums[6];
    kernels::power_sums(state.amplitudes.data(), state.amplitudes.size(), sums);
    if (sums[0] < std::numeric_limits<double>::min())
        throw error("moment: undefined for a zero-norm state");
    return sums[k] / sums[0];
}

std::size_t default_cutoff(double mean_photons) {
    const double n = std::ceil(mean_photons + 10.0 * std::sqrt(mean_photons + 1.0) + 20.0);
    return static_cast<std::size_t>(n);
}

} // namespace idc
