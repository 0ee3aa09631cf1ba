#ifndef IDC_KERNELS_HPP_
#define IDC_KERNELS_HPP_

// Data-parallel inner loops shared by the state constructors, the analytic
// propagator and the observable reductions.  Every kernel exists as a plain
// scalar reference implementation and, on x86-64, as an AVX2+FMA variant.
// The backend is picked once at startup (cpuid), can be forced through the
// IDCSIM_KERNEL environment variable (scalar|avx2|auto), and the two
// implementations are equivalence-tested against each other in the test
// suite.  Reductions use Neumaier compensation in both backends so fifth
// moments stay accurate at large mean photon number.

#include <complex>
#include <cstddef>

namespace idc::kernels {

enum class backend { scalar, avx2 };

const char* backend_name(backend b);
bool backend_available(backend b);

// Backend selected for this process (env override, else best available).
backend active_backend();

// Force a specific backend.  Throws idc::error if unavailable on this host.
// Intended for tests and benchmarks; not safe to call concurrently with
// kernel invocations.
void force_backend(backend b);

// s[i] = sin(x[i]), c[i] = cos(x[i]).
void sincos(const double* x, double* s, double* c, std::size_t n);

// out[k] = t * sqrt(k * (xi*k + delta)) for k = 0..n-1: the Rabi phase of
// Fock block k at dimensionless time t.
void rabi_phases(double xi, double delta, double t, double* out, std::size_t n);

// Branch update of the resonant propagator applied to |psi>|g>:
//   g[k]   = c[k] * cos_x[k]           for k = 0..n-1
//   e[k-1] = -i * c[k] * sin_x[k]      for k = 1..n-1,  e[n-1] = 0
void evolve_branches(const std::complex<double>* c,
                     const double* sin_x, const double* cos_x,
                     std::complex<double>* g, std::complex<double>* e,
                     std::size_t n);

// sum_k |a[k]|^2, compensated.
double norm_squared(const std::complex<double>* a, std::size_t n);

// sum_k k^p |a[k]|^2, compensated.  p in [0, 5].
double weighted_power_sum(const std::complex<double>* a, std::size_t n, int p);

// One pass over the amplitudes filling out[p] = sum_k k^p |a[k]|^2, p = 0..5.
void power_sums(const std::complex<double>* a, std::size_t n, double out[6]);

// sum_k conj(a[k]) * b[k], plain accumulation in fixed lane order.
std::complex<double> inner_product(const std::complex<double>* a,
                                   const std::complex<double>* b,
                                   std::size_t n);

// Implementation tables (one per backend).  Exposed so the equivalence tests
// can call a specific backend without flipping the global selection.
struct dispatch_table {
    void (*sincos)(const double*, double*, double*, std::size_t);
    void (*rabi_phases)(double, double, double, double*, std::size_t);
    void (*evolve_branches)(const std::complex<double>*, const double*, const double*,
                            std::complex<double>*, std::complex<double>*, std::size_t);
    double (*norm_squared)(const std::complex<double>*, std::size_t);
    void (*power_sums)(const std::complex<double>*, std::size_t, double*);
    std::complex<double> (*inner_product)(const std::complex<double>*,
                                          const std::complex<double>*, std::size_t);
};

const dispatch_table& table_for(backend b);

} // namespace idc::kernels

#endif
