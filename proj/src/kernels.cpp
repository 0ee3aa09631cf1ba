// Backend selection and the public kernel entry points.

#include "idc/kernels.hpp"

#include <cstdlib>
#include <string>

#include "idc/errors.hpp"
#include "kernels_impl.hpp"

namespace idc::kernels {
namespace {

bool host_has_avx2() {
#if IDC_HAVE_AVX2
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

backend detect_backend() {
    if (const char* env = std::getenv("IDCSIM_KERNEL")) {
        const std::string v(env);
        if (v == "scalar")
            return backend::scalar;
        if (v == "avx2") {
            if (!host_has_avx2())
                throw error("IDCSIM_KERNEL=avx2 but this host has no AVX2+FMA");
            return backend::avx2;
        }
        if (!v.empty() && v != "auto")
            throw error("IDCSIM_KERNEL must be one of scalar, avx2, auto (got '" + v + "')");
    }
    return host_has_avx2() ? backend::avx2 : backend::scalar;
}

struct State {
    backend selected;
    const dispatch_table* table;
};

State& state() {
    static State s = [] {
        const backend b = detect_backend();
        return State{b, &table_for(b)};
    }();
    return s;
}

} // namespace

const char* backend_name(backend b) {
    switch (b) {
    case backend::scalar:
        return "scalar";
    case backend::avx2:
        return "avx2";
    }
    return "unknown";
}

bool backend_available(backend b) {
    return b == backend::scalar || (b == backend::avx2 && host_has_avx2());
}

const dispatch_table& table_for(backend b) {
#if IDC_HAVE_AVX2
    if (b == backend::avx2)
        return avx2_table;
#else
    if (b == backend::avx2)
        throw error("AVX2 kernels not compiled into this build");
#endif
    return scalar_table;
}

backend active_backend() {
    return state().selected;
}

void force_backend(backend b) {
    if (!backend_available(b))
        throw error(std::string("kernel backend unavailable on this host: ") + backend_name(b));
    state().selected = b;
    state().table = &table_for(b);
}

void sincos(const double* x, double* s, double* c, std::size_t n) {
    state().table->sincos(x, s, c, n);
}

void rabi_phases(double xi, double delta, double t, double* out, std::size_t n) {
    state().table->rabi_phases(xi, delta, t, out, n);
}

void evolve_branches(const std::complex<double>* c, const double* sin_x,
                     const double* cos_x, std::complex<double>* g,
                     std::complex<double>* e, std::size_t n) {
    state().table->evolve_branches(c, sin_x, cos_x, g, e, n);
}

double norm_squared(const std::complex<double>* a, std::size_t n) {
    return state().table->norm_squared(a, n);
}

void power_sums(const std::complex<double>* a, std::size_t n, double out[6]) {
    state().table->power_sums(a, n, out);
}

double weighted_power_sum(const std::complex<double>* a, std::size_t n, int p) {
    if (p < 0 || p > 5)
        throw error("weighted_power_sum: power must be in [0, 5]");
    double sums[6];
    state().table->power_sums(a, n, sums);
    return sums[p];
}

std::complex<double> inner_product(const std::complex<double>* a,
                                   const std::complex<double>* b, std::size_t n) {
    return state().table->inner_product(a, b, n);
}

} // namespace idc::kernels
