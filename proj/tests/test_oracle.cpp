#include <cmath>
#include <numbers>

#include "doctest.h"
#include "udw/errors.hpp"
#include "udw/oracle.hpp"

using namespace udw;
using namespace udw::oracle;
using doctest::Approx;

TEST_CASE("ladder operator") {
    const Matrix a = annihilation(5);
    CHECK(std::abs(a(0, 1) - 1.0) < 1e-15);
    CHECK(std::abs(a(2, 3) - std::sqrt(3.0)) < 1e-15);
    const Matrix n = a.adjoint() * a;
    for (int i = 0; i < 5; ++i) CHECK(std::abs(n(i, i) - double(i)) < 1e-14);
}

TEST_CASE("displacement matrix elements") {
    const TruncatedMode m{40, 1.0};
    const auto d = displacement_matrix(m, 1.0);
    CHECK(std::abs(d.matrix(0, 0) - std::exp(-0.5)) < 1e-13);
    const std::complex<double> beta{0.6, -0.8};
    const auto e = displacement_matrix(m, beta);
    double fact = 1.0;
    for (int n = 0; n < 8; ++n) {
        if (n > 0) fact *= n;
        const auto ref = std::exp(-0.5 * std::norm(beta)) * std::pow(beta, n) / std::sqrt(fact);
        CHECK(std::abs(e.matrix(n, 0) - ref) < 1e-13);
    }
    CHECK(e.truncation_defect < kTruncationLimit);
}

TEST_CASE("truncation screening") {
    CHECK_THROWS_AS((void)displacement_matrix({4, 1.0}, 2.0), TruncationTooSmall);
    CHECK_THROWS_AS((void)density_matrix({Cat{5.0}, 1}, 10), TruncationTooSmall);
    CHECK_THROWS_AS(TruncatedMode({1, 1.0}).validate(), InvalidParameter);
}

TEST_CASE("density matrices") {
    for (const StateFamily f : {StateFamily{Fock{3}}, StateFamily{Cat{1.0}}, StateFamily{Coherent{{0.5, 0.3}}},
                                StateFamily{Thermal{0.5}}}) {
        const Matrix rho = density_matrix({f, 1}, 40);
        CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
        CHECK((rho - rho.adjoint()).norm() < 1e-14);
    }
    const Matrix th = density_matrix({Thermal{1.0}, 1}, 60);
    CHECK(std::abs(th(2, 2) - 0.125) < 1e-14);
}

TEST_CASE("overlap trace matches the closed forms") {
    const TruncatedMode m{40, 1.3};
    const std::complex<double> chi{0.21, -0.17};
    for (const StateFamily f : {StateFamily{Fock{1}}, StateFamily{Fock{2}}, StateFamily{Cat{1.0}},
                                StateFamily{Coherent{{0.5, 0.3}}}, StateFamily{Thermal{0.5}}}) {
        const StateSpec s{f, 1};
        const auto ot = overlap_trace(s, m, chi, 2.1);
        const auto ref = witness_value(s, chi) * std::exp(-2.0 * std::norm(chi));
        CHECK(std::abs(ot - ref) < 1e-10);
    }
}

TEST_CASE("opposite signs give the conjugate overlap") {
    const TruncatedMode m{40, 0.8};
    const Matrix rho = density_matrix({Coherent{{0.4, -0.2}}, 1}, 40);
    const std::complex<double> chi{0.3, 0.1};
    CHECK(std::abs(overlap_trace(rho, m, chi, 1.7, -1) - std::conj(overlap_trace(rho, m, chi, 1.7, +1))) < 1e-13);
}

TEST_CASE("end-to-end gaps do not grow with the cutoff") {
    const auto cav = CavityConfig::at_antinode(4.0, 1.0, 2);
    const auto tr = TrajectorySpec::make_inertial(0.3, cav.x0, cav.L);
    double prev = 1.0;
    for (int cutoff : {30, 40, 60}) {
        const auto r = end_to_end_check({Cat{1.0}, 2}, cav, {0.4}, tr, 3.0, 8, cutoff);
        CHECK(r.gap < 1e-6);
        CHECK(r.gap <= prev + 1e-10);
        prev = r.gap;
    }
}

TEST_CASE("forced oscillator phase and Trotter convergence") {
    const TruncatedMode m{60, 1.0};
    auto one = [](double) { return 1.0; };
    const auto c = compare_trotter(m, one, std::numbers::pi, 64, +1, 10);
    CHECK(c.beta == Approx(std::numbers::pi).epsilon(1e-10));
    // zeta = -i Int_0^pi e^{it} dt = 2
    CHECK(std::abs(c.zeta - std::complex<double>{2.0, 0.0}) < 1e-12);

    auto drive = [](double t) { return 0.5 + 0.3 * std::cos(2.0 * t); };
    const double g1 = compare_trotter(m, drive, 2.0, 32, +1, 10).gap;
    const double g2 = compare_trotter(m, drive, 2.0, 64, -1, 10).gap;
    const double g3 = compare_trotter(m, drive, 2.0, 128, +1, 10).gap;
    CHECK(g2 < g1);
    CHECK(g3 < g2);
    CHECK(std::log2(g1 / g3) / 2.0 >= 1.0);
}

TEST_CASE("suite restricted to one family") {
    SuiteOptions o;
    o.family = 2;  // Coherent
    const auto results = run_suite(o);
    REQUIRE(results.size() >= 3);
    for (const auto& r : results) CHECK_MESSAGE(r.passed, r.name << " gap " << r.gap << " " << r.error);
}
