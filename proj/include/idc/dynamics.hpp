#ifndef IDC_DYNAMICS_HPP_
#define IDC_DYNAMICS_HPP_

// Time evolution of |psi>|g> under the resonant interaction
// H_I = lambda (sigma+ R + sigma- Rdag).  Two independent routes:
//  * evolve_exact - the analytic propagator, diagonal per Fock block:
//      |Psi(t)> = cos(lt sqrt(A))|psi>|g> - i R sin(lt sqrt(A))/sqrt(A) |psi>|e>
//    which reduces to scalar cosines/sines of lt*sqrt(A_n); O(N) per time
//    point and exactly unitary.
//  * evolve_oracle - a dense matrix exponential of -i H_I t that ignores the
//    block structure entirely, so agreement between the two is evidence
//    rather than tautology.
// Time is always the dimensionless product lambda*t.

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "idc/algebra.hpp"
#include "idc/fock.hpp"

namespace idc {

struct JointState {
    // Field amplitudes conditioned on the atom branch, unnormalized.
    // ||ground||^2 + ||excited||^2 = 1 up to the initial truncation tail.
    std::vector<std::complex<double>> ground;
    std::vector<std::complex<double>> excited;
    double lambda_t = 0.0;

    std::size_t cutoff() const { return ground.size() - 1; }
    double norm_squared() const;
};

// Analytic propagation:
//   ground[n]    = c_n cos(lt sqrt(A_n))
//   excited[n-1] = -i c_n sin(lt sqrt(A_n))   for n >= 1.
// The removable 0/0 of sin(lt sqrt(A))/sqrt(A) at A_0 = 0 never arises in
// this form: R annihilates |0>, so the n = 0 term is dropped algebraically
// before any division.
JointState evolve_exact(const FieldState& psi0, const InterpolationParams& p,
                        double lambda_t);

// Brute-force propagation: exp(-i H_I t) computed by scaling-and-squaring
// with a certified Taylor-remainder bound, applied to the joint vector.
// psi0 must be supported on 0..cutoff with tail_bound < 1e-12.  Throws
// idc::resource_limit if the joint dimension exceeds the configured ceiling.
JointState evolve_oracle(const FieldState& psi0, const InterpolationParams& p,
                         double lambda_t, std::size_t cutoff);

// exp(X) for a square matrix, scaling-and-squaring Taylor series.  The series
// is summed until the remainder bound ||X||^(k+1)/(k+1)! * 1/(1-||X||/(k+2))
// drops below tol.  Deterministic (fixed summation order).
OperatorMatrix matrix_exponential(const OperatorMatrix& x, double tol = 1e-16);

// Coefficients of the small-time expansions about lt = 0:
//   n_g(lt)     ~ <n> - lt^2 [ xi(<n^3> - <n^2><n>) + delta Var n ]
//   n_e(lt)     ~ <nA>/<A> - 1 - lt^2/(3<A>^2) [ <nA^2><A> - <nA><A^2> ]
//   n_total(lt) ~ <n>(1 - lt^2 delta) - lt^2 xi <n^2>
// with <A> = xi<n^2> + delta<n>, <nA> = xi<n^3> + delta<n^2>,
// <nA^2> = xi^2<n^5> + 2 xi delta<n^4> + delta^2<n^3>,
// <A^2> = xi^2<n^4> + 2 xi delta<n^3> + delta^2<n^2>.
// The e-branch entries are empty when <A> = 0 (e.g. vacuum input).
struct SmallTimeCoefficients {
    double n_mean = 0.0;
    double n_g_curvature = 0.0;
    std::optional<double> n_e_intercept;
    std::optional<double> n_e_curvature;
    double n_total_curvature = 0.0;

    double n_g(double lambda_t) const;
    double n_total(double lambda_t) const;
    std::optional<double> n_e(double lambda_t) const;
};

SmallTimeCoefficients small_time_series(const FieldState& psi0,
                                        const InterpolationParams& p);

// |<a|b>|^2 over the joint space.  Throws idc::error on dimension mismatch.
double fidelity(const JointState& a, const JointState& b);

} // namespace idc

#endif
