#include "idc/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "idc/errors.hpp"

namespace idc {

void validate(const InterpolationParams& p) {
    if (!std::isfinite(p.xi) || p.xi < 0.0)
        throw error("interpolation: xi must be finite and >= 0");
    if (!std::isfinite(p.delta) || p.delta < 0.0)
        throw error("interpolation: delta must be finite and >= 0");
    if (p.xi == 0.0 && p.delta == 0.0)
        throw error("interpolation: (xi, delta) = (0, 0) gives no coupling");
    if (!std::isfinite(p.lambda) || p.lambda <= 0.0)
        throw error("interpolation: lambda must be finite and > 0");
}

InterpolationParams jcm() { return {0.0, 1.0, 1.0}; }
InterpolationParams bsm() { return {1.0, 0.0, 1.0}; }

InterpolationParams sm(double k) {
    if (!(k > 0.0))
        throw error("SM preset: k must be > 0");
    return {k, 1.0, 1.0};
}

InterpolationParams rlm(double k) {
    if (!(k > 0.0))
        throw error("RLM preset: k must be > 0");
    return {1.0, 2.0 * k, 1.0};
}

InterpolationParams ModelPreset::params(double lambda) const {
    InterpolationParams p;
    switch (family) {
    case Family::jcm:
        p = jcm();
        break;
    case Family::bsm:
        p = bsm();
        break;
    case Family::sm:
        p = sm(k);
        break;
    case Family::rlm:
        p = rlm(k);
        break;
    }
    p.lambda = lambda;
    validate(p);
    return p;
}

std::string ModelPreset::name() const {
    switch (family) {
    case Family::jcm:
        return "JCM";
    case Family::bsm:
        return "BSM";
    case Family::sm:
        return "SM";
    case Family::rlm:
        return "RLM";
    }
    return "?";
}

std::optional<ModelPreset> ModelPreset::parse(std::string_view text, double k) {
    std::string up(text);
    std::transform(up.begin(), up.end(), up.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
    if (up == "JCM")
        return ModelPreset{Family::jcm, k};
    if (up == "BSM")
        return ModelPreset{Family::bsm, k};
    if (up == "SM")
        return ModelPreset{Family::sm, k};
    if (up == "RLM")
        return ModelPreset{Family::rlm, k};
    return std::nullopt;
}

double a_eigenvalue(const InterpolationParams& p, std::size_t n) {
    const double nn = static_cast<double>(n);
    return nn * (p.xi * nn + p.delta);
}

OperatorMatrix::OperatorMatrix(std::size_t rows, std::size_t cols, std::string label)
    : rows_(rows), cols_(cols), label_(std::move(label)), data_(rows * cols) {}

OperatorMatrix OperatorMatrix::adjoint() const {
    OperatorMatrix out(cols_, rows_, label_.empty() ? "" : label_ + "^dag");
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out.at(j, i) = std::conj(at(i, j));
    return out;
}

double OperatorMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : data_)
        m = std::max(m, std::abs(v));
    return m;
}

double OperatorMatrix::max_abs_interior(std::size_t interior) const {
    const std::size_t r = std::min(interior, rows_);
    const std::size_t c = std::min(interior, cols_);
    double m = 0.0;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m = std::max(m, std::abs(at(i, j)));
    return m;
}

OperatorMatrix OperatorMatrix::identity(std::size_t n) {
    OperatorMatrix out(n, n, "I");
    for (std::size_t i = 0; i < n; ++i)
        out.at(i, i) = 1.0;
    return out;
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw error("matrix +: dimension mismatch");
    OperatorMatrix out(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i)
        out.data_[i] = a.data_[i] + b.data_[i];
    return out;
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw error("matrix -: dimension mismatch");
    OperatorMatrix out(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i)
        out.data_[i] = a.data_[i] - b.data_[i];
    return out;
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.cols_ != b.rows_)
        throw error("matrix *: dimension mismatch");
    OperatorMatrix out(a.rows_, b.cols_);
    // i-k-j order, fixed summation sequence for reproducibility
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const std::complex<double> aik = a.at(i, k);
            if (aik == std::complex<double>(0.0, 0.0))
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                out.at(i, j) += aik * b.at(k, j);
        }
    }
    return out;
}

OperatorMatrix operator*(std::complex<double> s, const OperatorMatrix& a) {
    OperatorMatrix out(a.rows_, a.cols_, a.label_);
    for (std::size_t i = 0; i < a.data_.size(); ++i)
        out.data_[i] = s * a.data_[i];
    return out;
}

std::vector<std::complex<double>> OperatorMatrix::apply(
    const std::vector<std::complex<double>>& v) const {
    if (v.size() != cols_)
        throw error("matrix apply: dimension mismatch");
    std::vector<std::complex<double>> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        std::complex<double> acc = 0.0;
        for (std::size_t j = 0; j < cols_; ++j)
            acc += at(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
    return a * b - b * a;
}

std::string to_string(OpName op) {
    switch (op) {
    case OpName::a:
        return "a";
    case OpName::a_dagger:
        return "a_dagger";
    case OpName::n:
        return "n";
    case OpName::r:
        return "R";
    case OpName::r_dagger:
        return "R_dagger";
    case OpName::r0:
        return "R0";
    case OpName::a_of_r:
        return "A";
    }
    return "?";
}

OpName parse_op_name(std::string_view text) {
    if (text == "a")
        return OpName::a;
    if (text == "a_dagger" || text == "adag")
        return OpName::a_dagger;
    if (text == "n")
        return OpName::n;
    if (text == "R" || text == "r")
        return OpName::r;
    if (text == "R_dagger" || text == "Rdag" || text == "r_dagger")
        return OpName::r_dagger;
    if (text == "R0" || text == "r0")
        return OpName::r0;
    if (text == "A")
        return OpName::a_of_r;
    throw error("unknown operator name: " + std::string(text));
}

OperatorMatrix build_operator(const InterpolationParams& p, OpName which, std::size_t cutoff) {
    validate(p);
    const std::size_t dim = cutoff + 1;
    OperatorMatrix m(dim, dim, to_string(which));
    switch (which) {
    case OpName::a:
        for (std::size_t n = 1; n < dim; ++n)
            m.at(n - 1, n) = std::sqrt(static_cast<double>(n));
        break;
    case OpName::a_dagger:
        for (std::size_t n = 1; n < dim; ++n)
            m.at(n, n - 1) = std::sqrt(static_cast<double>(n));
        break;
    case OpName::n:
        for (std::size_t n = 0; n < dim; ++n)
            m.at(n, n) = static_cast<double>(n);
        break;
    case OpName::r:
        // R|n> = sqrt(n) sqrt(xi n + delta) |n-1>
        for (std::size_t n = 1; n < dim; ++n) {
            const double nn = static_cast<double>(n);
            m.at(n - 1, n) = std::sqrt(nn) * std::sqrt(p.xi * nn + p.delta);
        }
        break;
    case OpName::r_dagger:
        for (std::size_t n = 1; n < dim; ++n) {
            const double nn = static_cast<double>(n);
            m.at(n, n - 1) = std::sqrt(nn) * std::sqrt(p.xi * nn + p.delta);
        }
        break;
    case OpName::r0:
        for (std::size_t n = 0; n < dim; ++n)
            m.at(n, n) = 0.5 * (p.delta + p.xi) + p.xi * static_cast<double>(n);
        break;
    case OpName::a_of_r:
        for (std::size_t n = 0; n < dim; ++n)
            m.at(n, n) = a_eigenvalue(p, n);
        break;
    }
    return m;
}

std::map<std::string, double> commutator_residuals(const InterpolationParams& p,
                                                   std::size_t cutoff) {
    validate(p);
    if (cutoff < 3)
        throw error("commutator_residuals: cutoff must be >= 3");

    const auto R = build_operator(p, OpName::r, cutoff);
    const auto Rd = build_operator(p, OpName::r_dagger, cutoff);
    const auto R0 = build_operator(p, OpName::r0, cutoff);
    const auto N = build_operator(p, OpName::n, cutoff);
    const std::complex<double> xi = p.xi;

    // The top Fock level of any truncated ladder algebra violates the
    // relations by construction, so residuals are taken on indices < cutoff.
    const std::size_t interior = cutoff;
    std::map<std::string, double> res;
    res["[R,Rdag]-2R0"] =
        (commutator(R, Rd) - std::complex<double>(2.0) * R0).max_abs_interior(interior);
    res["[R0,Rdag]-xi*Rdag"] = (commutator(R0, Rd) - xi * Rd).max_abs_interior(interior);
    res["[R0,R]+xi*R"] = (commutator(R0, R) + xi * R).max_abs_interior(interior);
    res["[R,n]-R"] = (commutator(R, N) - R).max_abs_interior(interior);
    res["[Rdag,n]+Rdag"] = (commutator(Rd, N) + Rd).max_abs_interior(interior);
    return res;
}

HamiltonianParts hamiltonian_matrices(const InterpolationParams& p,
                                      double omega, double omega0,
                                      std::size_t cutoff) {
    validate(p);
    if (cutoff < 1)
        throw error("hamiltonian_matrices: cutoff must be >= 1");

    const std::size_t dim = 2 * (cutoff + 1);
    const double delta_omega = omega0 - omega;

    OperatorMatrix atomic(dim, dim, "H_A");
    OperatorMatrix interaction(dim, dim, "H_I");

    for (std::size_t n = 0; n <= cutoff; ++n) {
        const double nn = static_cast<double>(n);
        atomic.at(2 * n, 2 * n) = omega * (nn - 0.5);          // |n,g>
        atomic.at(2 * n + 1, 2 * n + 1) = omega * (nn + 0.5);  // |n,e>
        interaction.at(2 * n, 2 * n) = -0.5 * delta_omega;
        interaction.at(2 * n + 1, 2 * n + 1) = 0.5 * delta_omega;
    }
    // lambda (sigma+ R + sigma- Rdag): couples |n,g> <-> |n-1,e>
    for (std::size_t n = 1; n <= cutoff; ++n) {
        const double nn = static_cast<double>(n);
        const double g = p.lambda * std::sqrt(nn) * std::sqrt(p.xi * nn + p.delta);
        interaction.at(2 * (n - 1) + 1, 2 * n) = g;
        interaction.at(2 * n, 2 * (n - 1) + 1) = g;
    }

    HamiltonianParts parts{atomic + interaction, std::move(atomic), std::move(interaction)};
    parts.full.set_label("H");
    return parts;
}

} // namespace idc
