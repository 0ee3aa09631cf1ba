#include "idc/dynamics.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "idc/errors.hpp"
#include "idc/kernels.hpp"

namespace idc {
namespace {

// Joint dimension ceiling for the dense oracle.  2 * (cutoff+1) above this
// is refused rather than silently thrashing memory.
constexpr std::size_t kMaxOracleJointDim = 2048;

double one_norm(const OperatorMatrix& m) {
    double best = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i)
            col += std::abs(m.at(i, j));
        best = std::max(best, col);
    }
    return best;
}

} // namespace

double JointState::norm_squared() const {
    return kernels::norm_squared(ground.data(), ground.size()) +
           kernels::norm_squared(excited.data(), excited.size());
}

JointState evolve_exact(const FieldState& psi0, const InterpolationParams& p,
                        double lambda_t) {
    validate(p);
    if (!(lambda_t >= 0.0))
        throw error("evolve_exact: lambda_t must be nonnegative");

    const std::size_t dim = psi0.amplitudes.size();
    std::vector<double> phases(dim), sines(dim), cosines(dim);
    kernels::rabi_phases(p.xi, p.delta, lambda_t, phases.data(), dim);
    kernels::sincos(phases.data(), sines.data(), cosines.data(), dim);

    JointState out;
    out.lambda_t = lambda_t;
    out.ground.resize(dim);
    out.excited.resize(dim);
    kernels::evolve_branches(psi0.amplitudes.data(), sines.data(), cosines.data(),
                             out.ground.data(), out.excited.data(), dim);
    return out;
}

OperatorMatrix matrix_exponential(const OperatorMatrix& x, double tol) {
    if (x.rows() != x.cols())
        throw error("matrix_exponential: matrix must be square");
    const std::size_t d = x.rows();

    const double nrm = one_norm(x);
    if (nrm == 0.0)
        return OperatorMatrix::identity(d);

    // Scale so the series argument has 1-norm <= 0.5, sum with a running
    // remainder bound, square back up.
    int s = 0;
    double scaled = nrm;
    while (scaled > 0.5 && s < 64) {
        scaled *= 0.5;
        ++s;
    }
    const double factor = std::ldexp(1.0, -s); // exact
    OperatorMatrix xs = std::complex<double>(factor) * x;

    OperatorMatrix sum = OperatorMatrix::identity(d) + xs;
    OperatorMatrix term = xs;
    double term_bound = scaled; // ||xs||^k / k! majorant
    for (int k = 2; k <= 64; ++k) {
        term = std::complex<double>(1.0 / k) * (term * xs);
        sum = sum + term;
        term_bound *= scaled / k;
        // Tail after term k is bounded by term_bound * r/(1-r), r = ||xs||/(k+2)
        const double r = scaled / (k + 2);
        const double remainder = term_bound * (scaled / (k + 1)) / (1.0 - r);
        if (remainder < tol)
            break;
    }
    for (int i = 0; i < s; ++i)
        sum = sum * sum;
    sum.set_label("exp(" + x.label() + ")");
    return sum;
}

JointState evolve_oracle(const FieldState& psi0, const InterpolationParams& p,
                         double lambda_t, std::size_t cutoff) {
    validate(p);
    if (!(lambda_t >= 0.0))
        throw error("evolve_oracle: lambda_t must be nonnegative");
    if (psi0.tail_bound >= 1e-12)
        throw error("evolve_oracle: initial state tail_bound must be < 1e-12");
    for (std::size_t n = cutoff + 1; n < psi0.amplitudes.size(); ++n)
        if (std::abs(psi0.amplitudes[n]) > 1e-15)
            throw error("evolve_oracle: psi0 not supported on the requested cutoff");

    const std::size_t dim = 2 * (cutoff + 1);
    if (dim > kMaxOracleJointDim) {
        std::ostringstream msg;
        msg << "evolve_oracle: joint dimension " << dim << " exceeds the ceiling "
            << kMaxOracleJointDim;
        throw resource_limit(msg.str());
    }

    // Resonant interaction with the coupling folded into the time argument:
    // exp(-i H_I t) = exp(-i (lambda t) M), M = sigma+ R + sigma- Rdag.
    InterpolationParams unit = p;
    unit.lambda = 1.0;
    const OperatorMatrix m_int =
        hamiltonian_matrices(unit, 1.0, 1.0, cutoff).interaction;
    const OperatorMatrix u =
        matrix_exponential(std::complex<double>(0.0, -lambda_t) * m_int);

    std::vector<std::complex<double>> v(dim);
    const std::size_t copy = std::min(cutoff + 1, psi0.amplitudes.size());
    for (std::size_t n = 0; n < copy; ++n)
        v[2 * n] = psi0.amplitudes[n];
    const auto w = u.apply(v);

    JointState out;
    out.lambda_t = lambda_t;
    out.ground.resize(cutoff + 1);
    out.excited.resize(cutoff + 1);
    for (std::size_t n = 0; n <= cutoff; ++n) {
        out.ground[n] = w[2 * n];
        out.excited[n] = w[2 * n + 1];
    }
    return out;
}

double SmallTimeCoefficients::n_g(double lambda_t) const {
    return n_mean - lambda_t * lambda_t * n_g_curvature;
}

double SmallTimeCoefficients::n_total(double lambda_t) const {
    return n_mean - lambda_t * lambda_t * n_total_curvature;
}

std::optional<double> SmallTimeCoefficients::n_e(double lambda_t) const {
    if (!n_e_intercept || !n_e_curvature)
        return std::nullopt;
    return *n_e_intercept - lambda_t * lambda_t * *n_e_curvature;
}

SmallTimeCoefficients small_time_series(const FieldState& psi0,
                                        const InterpolationParams& p) {
    validate(p);
    double sums[6];
    kernels::power_sums(psi0.amplitudes.data(), psi0.amplitudes.size(), sums);
    if (sums[0] < std::numeric_limits<double>::min())
        throw error("small_time_series: zero-norm state");

    const double m1 = sums[1] / sums[0];
    const double m2 = sums[2] / sums[0];
    const double m3 = sums[3] / sums[0];
    const double m4 = sums[4] / sums[0];
    const double m5 = sums[5] / sums[0];
    const double xi = p.xi, dl = p.delta;

    SmallTimeCoefficients c;
    c.n_mean = m1;
    c.n_g_curvature = xi * (m3 - m2 * m1) + dl * (m2 - m1 * m1);
    c.n_total_curvature = xi * m2 + dl * m1; // = <A>

    const double a1 = c.n_total_curvature;
    if (a1 > 0.0) {
        const double na = xi * m3 + dl * m2;
        const double a2 = xi * xi * m4 + 2.0 * xi * dl * m3 + dl * dl * m2;
        const double na2 = xi * xi * m5 + 2.0 * xi * dl * m4 + dl * dl * m3;
        c.n_e_intercept = na / a1 - 1.0;
        c.n_e_curvature = (na2 * a1 - na * a2) / (3.0 * a1 * a1);
    }
    return c;
}

double fidelity(const JointState& a, const JointState& b) {
    if (a.ground.size() != b.ground.size() || a.excited.size() != b.excited.size())
        throw error("fidelity: dimension mismatch");
    const auto overlap =
        kernels::inner_product(a.ground.data(), b.ground.data(), a.ground.size()) +
        kernels::inner_product(a.excited.data(), b.excited.data(), a.excited.size());
    return std::norm(overlap);
}

} // namespace idc
