#include <doctest.h>

#include <cmath>
#include <random>

#include "idc/errors.hpp"
#include "idc/fock.hpp"

using namespace idc;

namespace {

// Independent oracle: Poisson(mu) moments and tails by direct long double
// pmf summation, no FieldState involved.
long double poisson_pmf(double mu, int n) {
    long double p = std::exp((long double)-mu);
    for (int k = 1; k <= n; ++k)
        p *= (long double)mu / k;
    return p;
}

long double poisson_moment(double mu, int order, int terms = 400) {
    long double acc = 0.0L;
    for (int n = 0; n <= terms; ++n)
        acc += std::pow((long double)n, order) * poisson_pmf(mu, n);
    return acc;
}

long double poisson_tail_above(double mu, int cutoff, int terms = 400) {
    long double acc = 0.0L;
    for (int n = cutoff + 1; n <= cutoff + terms; ++n)
        acc += poisson_pmf(mu, n);
    return acc;
}

} // namespace

TEST_CASE("vacuum coherent state") {
    const auto s = coherent_state(0.0, 0.0, 10);
    CHECK(s.amplitudes[0] == std::complex<double>(1.0, 0.0));
    for (std::size_t n = 1; n <= 10; ++n)
        CHECK(s.amplitudes[n] == std::complex<double>(0.0, 0.0));
    CHECK(s.tail_bound == 0.0);
}

TEST_CASE("coherent state nbar=3 at cutoff 40") {
    const auto s = coherent_state(3.0, 0.0, 40);
    // |c_0|^2 = e^-3, frozen from the pmf oracle
    CHECK(std::abs(std::norm(s.amplitudes[0]) - 0.049787068367863944) < 1e-15);
    CHECK(std::abs(std::norm(s.amplitudes[0]) - (double)poisson_pmf(3.0, 0)) < 1e-15);
    CHECK(s.tail_bound < 1e-12);
    CHECK(std::abs(s.tail_bound - (double)poisson_tail_above(3.0, 40)) < 1e-15);
}

TEST_CASE("coherent state rejects insufficient cutoff") {
    // Poisson(3) tail above n=4 is about 0.1847
    CHECK_THROWS_AS(coherent_state(3.0, 0.0, 4), insufficient_cutoff);
    try {
        coherent_state(3.0, 0.0, 4);
    } catch (const insufficient_cutoff& e) {
        CHECK(e.tail_mass == doctest::Approx(0.18473675547622787).epsilon(1e-12));
        CHECK(e.tail_mass ==
              doctest::Approx((double)poisson_tail_above(3.0, 4)).epsilon(1e-12));
        CHECK(std::string(e.what()).find("insufficient cutoff") != std::string::npos);
    }
}

TEST_CASE("coherent state phase enters amplitudes but not weights") {
    const auto s0 = coherent_state(2.5, 0.0, 30);
    const auto s1 = coherent_state(2.5, 1.234, 30);
    for (std::size_t n = 0; n <= 30; ++n)
        CHECK(std::norm(s0.amplitudes[n]) ==
              doctest::Approx(std::norm(s1.amplitudes[n])).epsilon(1e-14));
    // phase of c_n advances by n * phase
    const auto arg1 = std::arg(s1.amplitudes[1]);
    CHECK(arg1 == doctest::Approx(1.234).epsilon(1e-12));
}

TEST_CASE("coherent state argument validation") {
    CHECK_THROWS_AS(coherent_state(3.0, 0.0, 0), error);
    CHECK_THROWS_AS(coherent_state(-1.0, 0.0, 10), error);
    CHECK_THROWS_AS(coherent_state(std::nan(""), 0.0, 10), error);
}

TEST_CASE("fock states") {
    const auto v = fock_state(0, 5);
    CHECK(v.amplitudes.size() == 6);
    CHECK(v.amplitudes[0] == std::complex<double>(1.0, 0.0));
    const auto f3 = fock_state(3, 5);
    CHECK(f3.amplitudes[3] == std::complex<double>(1.0, 0.0));
    CHECK(f3.tail_bound == 0.0);
    CHECK_THROWS_AS(fock_state(7, 5), error);
}

TEST_CASE("moments of basis and coherent states") {
    CHECK(moment(fock_state(3, 8), 2) == doctest::Approx(9.0).epsilon(1e-14));
    const auto s = coherent_state(3.0, 0.0, 60);
    CHECK(std::abs(moment(s, 1) - 3.0) < 1e-10);
    // <n^2> = nbar^2 + nbar = 12 for Poisson(3); frozen plus the pmf oracle
    CHECK(std::abs(moment(s, 2) - 12.0) < 1e-9);
    CHECK(std::abs(moment(s, 2) - (double)poisson_moment(3.0, 2)) < 1e-9);
    // the higher moments the small-time expansions depend on
    CHECK(moment(s, 3) == doctest::Approx((double)poisson_moment(3.0, 3)).epsilon(1e-12));
    CHECK(moment(s, 4) == doctest::Approx((double)poisson_moment(3.0, 4)).epsilon(1e-12));
    CHECK(moment(s, 5) == doctest::Approx((double)poisson_moment(3.0, 5)).epsilon(1e-12));
    CHECK(moment(s, 3) == doctest::Approx(57.0).epsilon(1e-12));
    CHECK(moment(s, 4) == doctest::Approx(309.0).epsilon(1e-12));
    CHECK(moment(s, 5) == doctest::Approx(1866.0).epsilon(1e-12));
}

TEST_CASE("moment errors") {
    FieldState dead;
    dead.amplitudes.assign(4, {0.0, 0.0});
    CHECK_THROWS_AS(moment(dead, 1), error);
    CHECK_THROWS_AS(moment(fock_state(1, 4), 6), error);
    CHECK_THROWS_AS(moment(fock_state(1, 4), -1), error);
}

TEST_CASE("property: norm + tail identity and moment invariants") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> unbar(0.0, 40.0), uphase(-3.14, 3.14);
    for (int trial = 0; trial < 50; ++trial) {
        const double nbar = unbar(rng);
        const auto s = coherent_state(nbar, uphase(rng), default_cutoff(nbar));
        CHECK(std::abs(s.norm_squared() + s.tail_bound - 1.0) < 1e-12);
        CHECK(std::abs(moment(s, 0) - 1.0) < 1e-12);
        if (s.tail_bound < 1e-12 && nbar > 0.01) {
            // coherent factorial-moment identity: Var n = <n>
            const double var = moment(s, 2) - moment(s, 1) * moment(s, 1);
            CHECK(std::abs(var - moment(s, 1)) < 1e-8);
        }
    }
}

TEST_CASE("default cutoff keeps the tail below 1e-12 up to nbar = 100") {
    for (const double nbar : {0.0, 0.5, 1.0, 3.0, 10.0, 30.0, 100.0}) {
        const auto s = coherent_state(nbar, 0.0, default_cutoff(nbar));
        CHECK(s.tail_bound < 1e-12);
    }
}
