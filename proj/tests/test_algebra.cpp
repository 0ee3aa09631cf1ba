#include <doctest.h>

#include <cmath>
#include <random>

#include "idc/algebra.hpp"
#include "idc/dynamics.hpp"
#include "idc/errors.hpp"

using namespace idc;

namespace {

InterpolationParams random_params(std::mt19937& rng) {
    std::uniform_real_distribution<double> uxi(0.0, 1.0), udl(0.0, 2.0);
    InterpolationParams p{uxi(rng), udl(rng), 1.0};
    if (p.xi == 0.0 && p.delta == 0.0)
        p.delta = 1.0;
    return p;
}

} // namespace

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(validate(InterpolationParams{-0.1, 1.0, 1.0}), error);
    CHECK_THROWS_AS(validate(InterpolationParams{0.0, -1.0, 1.0}), error);
    CHECK_THROWS_AS(validate(InterpolationParams{0.0, 0.0, 1.0}), error);
    CHECK_THROWS_AS(validate(InterpolationParams{0.0, 1.0, 0.0}), error);
    CHECK_NOTHROW(validate(InterpolationParams{0.0, 2.0, 1.0})); // delta > 1 allowed
}

TEST_CASE("presets map onto the documented corners") {
    CHECK(jcm().xi == 0.0);
    CHECK(jcm().delta == 1.0);
    CHECK(bsm().xi == 1.0);
    CHECK(bsm().delta == 0.0);
    CHECK(sm(0.7).xi == 0.7);
    CHECK(sm(0.7).delta == 1.0);
    CHECK(rlm(1.5).xi == 1.0);
    CHECK(rlm(1.5).delta == 3.0);
    CHECK_THROWS_AS(sm(0.0), error);
    CHECK_THROWS_AS(rlm(-1.0), error);

    CHECK(ModelPreset::parse("jcm")->name() == "JCM");
    CHECK(ModelPreset::parse("RLM", 2.0)->params().delta == 4.0);
    CHECK(!ModelPreset::parse("XYZ"));
}

TEST_CASE("A_n eigenvalue curve") {
    CHECK(a_eigenvalue(jcm(), 5) == 5.0);
    CHECK(a_eigenvalue(bsm(), 3) == 9.0);
    // RLM k=1: A_2 = 2 (2 + 2) = 8, cross-checked against the dense Rdag R
    CHECK(a_eigenvalue(rlm(1.0), 2) == 8.0);
    const auto rd = build_operator(rlm(1.0), OpName::r_dagger, 5);
    const auto r = build_operator(rlm(1.0), OpName::r, 5);
    const auto a = rd * r;
    CHECK(std::abs(a.at(2, 2) - std::complex<double>(8.0)) < 1e-12);
}

TEST_CASE("property: A_n nondecreasing with A_0 = 0") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const auto p = random_params(rng);
        CHECK(a_eigenvalue(p, 0) == 0.0);
        double prev = 0.0;
        for (std::size_t n = 1; n <= 50; ++n) {
            const double an = a_eigenvalue(p, n);
            CHECK(an >= prev);
            prev = an;
        }
    }
}

TEST_CASE("R matrix entries") {
    const auto r_bsm = build_operator(bsm(), OpName::r, 3);
    CHECK(std::abs(r_bsm.at(0, 1) - std::complex<double>(1.0)) < 1e-15);
    CHECK(std::abs(r_bsm.at(1, 2) - std::complex<double>(2.0)) < 1e-15);
    CHECK(std::abs(r_bsm.at(2, 3) - std::complex<double>(3.0)) < 1e-15);
    CHECK(std::abs(r_bsm.at(1, 1)) == 0.0);

    // JCM reduces R to the plain annihilation operator
    const auto r_jcm = build_operator(jcm(), OpName::r, 3);
    const auto a = build_operator(jcm(), OpName::a, 3);
    for (std::size_t i = 0; i <= 3; ++i)
        for (std::size_t j = 0; j <= 3; ++j)
            CHECK(r_jcm.at(i, j) == a.at(i, j));

    CHECK_THROWS_AS(parse_op_name("bogus"), error);
    CHECK(parse_op_name("R_dagger") == OpName::r_dagger);
}

TEST_CASE("A operator consistent with the eigencurve, R entries with sqrt(A_n)") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const auto p = random_params(rng);
        const auto a_op = build_operator(p, OpName::a_of_r, 12);
        const auto r = build_operator(p, OpName::r, 12);
        for (std::size_t n = 0; n <= 12; ++n)
            CHECK(std::abs(a_op.at(n, n) - std::complex<double>(a_eigenvalue(p, n))) < 1e-12);
        for (std::size_t n = 1; n <= 12; ++n)
            CHECK(std::abs(r.at(n - 1, n) - std::sqrt(a_eigenvalue(p, n))) < 1e-12);
    }
}

TEST_CASE("property: preset equivalence is entrywise exact") {
    const auto sm_preset = ModelPreset{ModelPreset::Family::sm, 0.35};
    const auto rlm_preset = ModelPreset{ModelPreset::Family::rlm, 0.8};
    const auto r1 = build_operator(sm_preset.params(), OpName::r, 10);
    const auto r2 = build_operator(InterpolationParams{0.35, 1.0, 1.0}, OpName::r, 10);
    const auto r3 = build_operator(rlm_preset.params(), OpName::r, 10);
    const auto r4 = build_operator(InterpolationParams{1.0, 1.6, 1.0}, OpName::r, 10);
    for (std::size_t i = 0; i <= 10; ++i)
        for (std::size_t j = 0; j <= 10; ++j) {
            CHECK(r1.at(i, j) == r2.at(i, j));
            CHECK(r3.at(i, j) == r4.at(i, j));
        }
}

TEST_CASE("property: R_dagger is exactly the conjugate transpose of R") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const auto p = random_params(rng);
        const auto r = build_operator(p, OpName::r, 15);
        const auto rd = build_operator(p, OpName::r_dagger, 15);
        const auto radj = r.adjoint();
        for (std::size_t i = 0; i <= 15; ++i)
            for (std::size_t j = 0; j <= 15; ++j)
                CHECK(rd.at(i, j) == radj.at(i, j));
    }
}

TEST_CASE("commutator residuals vanish on the interior") {
    for (const auto& p : {bsm(), jcm(), InterpolationParams{0.5, 0.5, 1.0}}) {
        const auto res = commutator_residuals(p, 20);
        CHECK(res.size() == 5);
        for (const auto& [name, value] : res) {
            INFO(name);
            CHECK(value < 1e-12);
        }
    }
    CHECK_THROWS_AS(commutator_residuals(jcm(), 2), error);
}

TEST_CASE("JCM: [R, Rdag] is the identity on the interior") {
    const auto p = jcm();
    const auto c = commutator(build_operator(p, OpName::r, 20),
                              build_operator(p, OpName::r_dagger, 20));
    for (std::size_t n = 0; n < 20; ++n)
        CHECK(std::abs(c.at(n, n) - std::complex<double>(1.0)) < 1e-12);
}

TEST_CASE("property: [R, Rdag] diagonal equals delta + xi + 2 xi n") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const auto p = random_params(rng);
        const auto c = commutator(build_operator(p, OpName::r, 16),
                                  build_operator(p, OpName::r_dagger, 16));
        for (std::size_t n = 0; n < 16; ++n) {
            const double expected = p.delta + p.xi + 2.0 * p.xi * static_cast<double>(n);
            CHECK(std::abs(c.at(n, n) - std::complex<double>(expected)) < 1e-12);
        }
    }
}

TEST_CASE("joint Hamiltonian structure") {
    // single-excitation block of the JCM: only |1,g> <-> |0,e> couple
    const auto h = hamiltonian_matrices(jcm(), 1.0, 1.0, 1);
    const auto& hi = h.interaction;
    CHECK(std::abs(hi.at(1, 2) - std::complex<double>(1.0)) < 1e-15);
    CHECK(std::abs(hi.at(2, 1) - std::complex<double>(1.0)) < 1e-15);
    double offblock = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (!((i == 1 && j == 2) || (i == 2 && j == 1)))
                offblock = std::max(offblock, std::abs(hi.at(i, j)));
    CHECK(offblock == 0.0); // resonance: zero diagonal too

    // full = atomic + interaction, exactly
    const auto diff = h.full - (h.atomic + h.interaction);
    CHECK(diff.max_abs() == 0.0);
}

TEST_CASE("constants of motion commute on the interior") {
    std::mt19937 rng(19);
    auto check_params = [&](const InterpolationParams& p) {
        const auto h = hamiltonian_matrices(p, 1.0, 1.0, 20);
        const std::size_t interior = 2 * 20;
        CHECK(commutator(h.full, h.atomic).max_abs_interior(interior) < 1e-10);
        CHECK(commutator(h.full, h.interaction).max_abs_interior(interior) < 1e-10);
        CHECK(commutator(h.atomic, h.interaction).max_abs_interior(interior) < 1e-10);
    };
    check_params(bsm());
    check_params(jcm());
    for (int trial = 0; trial < 5; ++trial)
        check_params(random_params(rng));
}

TEST_CASE("detuned interaction picks up the sigma_z diagonal") {
    const auto h = hamiltonian_matrices(jcm(), 1.0, 1.5, 3);
    CHECK(std::abs(h.interaction.at(0, 0) - std::complex<double>(-0.25)) < 1e-15);
    CHECK(std::abs(h.interaction.at(1, 1) - std::complex<double>(0.25)) < 1e-15);
}

TEST_CASE("matrix exponential basics") {
    // exp(0) = I
    const auto z = OperatorMatrix(3, 3);
    const auto i3 = matrix_exponential(z);
    CHECK((i3 - OperatorMatrix::identity(3)).max_abs() == 0.0);

    // diagonal argument
    OperatorMatrix d(2, 2);
    d.at(0, 0) = {0.3, 0.0};
    d.at(1, 1) = {0.0, -1.2};
    const auto ed = matrix_exponential(d);
    CHECK(std::abs(ed.at(0, 0) - std::exp(std::complex<double>(0.3, 0.0))) < 1e-14);
    CHECK(std::abs(ed.at(1, 1) - std::exp(std::complex<double>(0.0, -1.2))) < 1e-14);
    CHECK(std::abs(ed.at(0, 1)) == 0.0);

    // exp(-i theta sigma_x) = cos(theta) I - i sin(theta) sigma_x
    const double theta = 0.77;
    OperatorMatrix sx(2, 2);
    sx.at(0, 1) = {0.0, -theta};
    sx.at(1, 0) = {0.0, -theta};
    const auto u = matrix_exponential(sx);
    CHECK(std::abs(u.at(0, 0) - std::complex<double>(std::cos(theta), 0.0)) < 1e-14);
    CHECK(std::abs(u.at(0, 1) - std::complex<double>(0.0, -std::sin(theta))) < 1e-14);

    // unitarity for a larger anti-Hermitian argument
    const auto hi = hamiltonian_matrices(bsm(), 1.0, 1.0, 15).interaction;
    const auto ub = matrix_exponential(std::complex<double>(0.0, -2.5) * hi);
    const auto gram = ub.adjoint() * ub - OperatorMatrix::identity(ub.rows());
    CHECK(gram.max_abs() < 1e-13);
}
