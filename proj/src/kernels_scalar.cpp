// Scalar reference kernels.  These are the ground truth the SIMD variants
// are equivalence-tested against, so keep them obvious: libm elementwise
// math, Neumaier-compensated reductions in plain loop order.

#include <cmath>
#include <cstddef>

#include "kernels_impl.hpp"

namespace idc::kernels {
namespace {

// Neumaier variant of Kahan summation: also compensates when the incoming
// term is larger than the running sum.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

void sincos_scalar(const double* x, double* s, double* c, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = std::sin(x[i]);
        c[i] = std::cos(x[i]);
    }
}

void rabi_phases_scalar(double xi, double delta, double t, double* out, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
        const double kk = static_cast<double>(k);
        const double inner = xi * kk + delta;   // kept as mul+add: the AVX2
        const double a = kk * inner;            // variant mirrors this exact
        out[k] = t * std::sqrt(a);              // operation sequence
    }
}

void evolve_branches_scalar(const std::complex<double>* c,
                            const double* sin_x, const double* cos_x,
                            std::complex<double>* g, std::complex<double>* e,
                            std::size_t n) {
    if (n == 0)
        return;
    for (std::size_t k = 0; k < n; ++k)
        g[k] = {c[k].real() * cos_x[k], c[k].imag() * cos_x[k]};
    // -i (a + ib) s = b s - i a s
    for (std::size_t k = 1; k < n; ++k)
        e[k - 1] = {c[k].imag() * sin_x[k], -(c[k].real() * sin_x[k])};
    e[n - 1] = {0.0, 0.0};
}

double norm_squared_scalar(const std::complex<double>* a, std::size_t n) {
    CompensatedSum acc;
    const double* d = reinterpret_cast<const double*>(a);
    for (std::size_t i = 0; i < 2 * n; ++i)
        acc.add(d[i] * d[i]);
    return acc.value();
}

void power_sums_scalar(const std::complex<double>* a, std::size_t n, double* out) {
    CompensatedSum acc[6];
    for (std::size_t k = 0; k < n; ++k) {
        const double w = a[k].real() * a[k].real() + a[k].imag() * a[k].imag();
        const double kk = static_cast<double>(k);
        double term = w;
        for (int p = 0; p < 6; ++p) {
            acc[p].add(term);
            term *= kk;
        }
    }
    for (int p = 0; p < 6; ++p)
        out[p] = acc[p].value();
}

std::complex<double> inner_product_scalar(const std::complex<double>* a,
                                          const std::complex<double>* b,
                                          std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        re += a[k].real() * b[k].real() + a[k].imag() * b[k].imag();
        im += a[k].real() * b[k].imag() - a[k].imag() * b[k].real();
    }
    return {re, im};
}

} // namespace

const dispatch_table scalar_table = {
    sincos_scalar,
    rabi_phases_scalar,
    evolve_branches_scalar,
    norm_squared_scalar,
    power_sums_scalar,
    inner_product_scalar,
};

} // namespace idc::kernels
