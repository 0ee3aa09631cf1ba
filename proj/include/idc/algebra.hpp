#ifndef IDC_ALGEBRA_HPP_
#define IDC_ALGEBRA_HPP_

// The two-parameter deformed ladder family
//   R = a sqrt(xi n + delta),  Rdag = sqrt(xi n + delta) adag,
//   R0 = (delta + xi)/2 + xi n,     A = Rdag R,
// which closes under commutation:
//   [R, Rdag] = 2 R0,  [R0, Rdag] = xi Rdag,  [R0, R] = -xi R.
// (xi, delta) selects the model: JCM (0,1), BSM (1,0), SM (k,1), RLM (1,2k).
// Operators are exposed both as diagonal eigenvalue curves (the fast path the
// propagator uses) and as dense truncated matrices (the slow path the algebra
// checks and the oracle use); the test suite cross-checks the two.

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace idc {

struct InterpolationParams {
    double xi = 0.0;     // intensity-dependence strength, >= 0
    double delta = 1.0;  // linear-coupling offset, >= 0
    double lambda = 1.0; // atom-field coupling, > 0 (radians per unit time)
};

// Throws idc::error on xi < 0, delta < 0, lambda <= 0 or (xi, delta) == (0, 0).
void validate(const InterpolationParams& p);

InterpolationParams jcm();
InterpolationParams bsm();
InterpolationParams sm(double k);
InterpolationParams rlm(double k);

struct ModelPreset {
    enum class Family { jcm, bsm, sm, rlm };
    Family family = Family::jcm;
    double k = 1.0; // used by SM and RLM only; must be > 0 there

    InterpolationParams params(double lambda = 1.0) const;
    std::string name() const;
    // Accepts "JCM", "BSM", "SM", "RLM" (case-insensitive).
    static std::optional<ModelPreset> parse(std::string_view text, double k = 1.0);
};

// Eigenvalue of A = Rdag R on |n>:  A_n = n (xi n + delta).
// The Rabi frequency of Fock block n is lambda * sqrt(A_n).
double a_eigenvalue(const InterpolationParams& p, std::size_t n);

// Dense complex matrix on the truncated space.  Row-major, value semantics.
class OperatorMatrix {
public:
    OperatorMatrix() = default;
    OperatorMatrix(std::size_t rows, std::size_t cols, std::string label = {});

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::string& label() const { return label_; }
    void set_label(std::string label) { label_ = std::move(label); }

    std::complex<double>& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const std::complex<double>& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    OperatorMatrix adjoint() const;
    double max_abs() const;
    // Max |entry| over rows and columns < interior: the subspace where
    // truncation artifacts of a ladder algebra cannot appear.
    double max_abs_interior(std::size_t interior) const;

    static OperatorMatrix identity(std::size_t n);

    friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
    friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
    friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
    friend OperatorMatrix operator*(std::complex<double> s, const OperatorMatrix& a);

    // Matrix-vector product, fixed summation order.
    std::vector<std::complex<double>> apply(const std::vector<std::complex<double>>& v) const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::string label_;
    std::vector<std::complex<double>> data_;
};

// A B - B A.
OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

enum class OpName { a, a_dagger, n, r, r_dagger, r0, a_of_r };

std::string to_string(OpName op);
// Accepts a, a_dagger, n, R, R_dagger, R0, A.  Throws idc::error on unknown names.
OpName parse_op_name(std::string_view text);

// Dense (cutoff+1)^2 matrix of the named operator in the Fock basis.
// R has entries R[n-1, n] = sqrt(n) sqrt(xi n + delta); R0 and A are diagonal.
OperatorMatrix build_operator(const InterpolationParams& p, OpName which, std::size_t cutoff);

// Max-abs-entry of (LHS - RHS) on the interior subspace for each closure
// relation.  Requires cutoff >= 3.
std::map<std::string, double> commutator_residuals(const InterpolationParams& p,
                                                   std::size_t cutoff);

// Joint-space matrices in the ordered product basis
// {|0,g>, |0,e>, |1,g>, |1,e>, ...}: index 2n for |n,g>, 2n+1 for |n,e>.
struct HamiltonianParts {
    OperatorMatrix full;        // atomic + interaction, summed entrywise
    OperatorMatrix atomic;      // omega (n + sigma_z / 2)
    OperatorMatrix interaction; // (omega0 - omega)/2 sigma_z + lambda (sigma+ R + sigma- Rdag)
};

HamiltonianParts hamiltonian_matrices(const InterpolationParams& p,
                                      double omega, double omega0,
                                      std::size_t cutoff);

} // namespace idc

#endif
