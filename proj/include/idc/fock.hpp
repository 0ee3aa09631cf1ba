#ifndef IDC_FOCK_HPP_
#define IDC_FOCK_HPP_

// Truncated Fock-space field states: construction, normalization bookkeeping
// and photon-number moments.  Amplitudes are stored in the Fock basis ordered
// by n ascending, phases kept exactly.

#include <complex>
#include <cstddef>
#include <vector>

namespace idc {

struct FieldState {
    // c_0 .. c_N, N = cutoff.  Not renormalized after truncation: whatever
    // probability mass the construction discarded is surfaced in tail_bound.
    std::vector<std::complex<double>> amplitudes;
    // Probability mass above the cutoff that the construction discarded.
    double tail_bound = 0.0;

    std::size_t cutoff() const { return amplitudes.size() - 1; }
    double norm_squared() const;
};

// Truncated coherent state |alpha|^2 = mean_photons, alpha = sqrt(mean) e^{i phase}.
// Throws idc::insufficient_cutoff if the discarded Poisson tail exceeds 1e-6.
FieldState coherent_state(double mean_photons, double phase, std::size_t cutoff);

// Basis state |n>.  Throws idc::error if n > cutoff.
FieldState fock_state(std::size_t n, std::size_t cutoff);

// <n^k> = sum_n n^k |c_n|^2 / sum_n |c_n|^2 for k in [0, 5].
// Throws idc::error for a zero-norm state or k outside the supported range.
double moment(const FieldState& state, int k);

// Cutoff heuristic N = ceil(nbar + 10 sqrt(nbar+1) + 20).  The resonant
// dynamics never raises the photon number above the initial support, so the
// only truncation error is the initial tail; this keeps it below 1e-12 for
// nbar <= 100.
std::size_t default_cutoff(double mean_photons);

} // namespace idc

#endif
