#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "udw/errors.hpp"
#include "udw/witness.hpp"

using namespace udw;
using doctest::Approx;

namespace {

// Single oscillator with w = 4 / sqrt(pi) coupled at lambda = 1.7.
struct Oscillator {
    CavityConfig cavity;
    TrajectorySpec traj;
    CouplingSpec coupling{1.7};
    Oscillator() {
        cavity = CavityConfig::at_antinode(2.0, 1.0, 1);
        cavity.omega_override = 4.0 / std::sqrt(std::numbers::pi);
        traj = TrajectorySpec::make_static(cavity.x0, cavity.L);
    }
};

}  // namespace

TEST_CASE("laguerre") {
    CHECK(laguerre(0, 3.3) == 1.0);
    CHECK(laguerre(1, 3.3) == Approx(-2.3));
    CHECK(laguerre(3, 0.7) == Approx(-0.42216666666666667).epsilon(1e-14));
    CHECK(laguerre(5, 2.5) == Approx(1.0325520833333333).epsilon(1e-14));
}

TEST_CASE("closed-form witnesses") {
    for (cplx c : {cplx{0.1, 0.2}, cplx{-1.3, 0.4}, cplx{0.0, 2.0}}) {
        CHECK(witness_fock(1, c) == 1.0 - 4.0 * std::norm(c));
        CHECK(std::abs(witness_coherent({0.3, -1.1}, c)) == Approx(1.0).epsilon(1e-15));
    }
    CHECK(witness_cat(1.0, {0.0, std::numbers::pi / 4}) == Approx(-std::tanh(1.0)).epsilon(1e-14));
    CHECK(witness_thermal(0.25, {0.6, 0.8}) == Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(witness_value({Fock{0}, 1}, {3.0, 1.0}) == cplx{1.0, 0.0});
    CHECK(witness_value({Fock{2}, 1}, {0.5, 0.0}).real() == Approx(laguerre(2, 1.0)));
    // coherent phase 4 Im(conj(alpha) chi)
    CHECK(std::arg(witness_coherent({1.0, 0.0}, {0.0, 0.1})) == Approx(0.4));
    CHECK(extract_witness({0.5, 0.0}, 0.25).real() == Approx(0.5 * std::exp(0.5)));
    CHECK_THROWS_AS((void)witness_fock(0, {}), InvalidParameter);
    CHECK_THROWS_AS((void)extract_witness({1.0, 0.0}, 400.0), NumericalFailure);
}

TEST_CASE("cat witness survives large displacements") {
    const double w = witness_cat(8.0, {20.0, 0.3});
    CHECK(std::isfinite(w));
    CHECK(witness_cat(1e-8, {0.2, 0.1}) == Approx(1.0).epsilon(1e-6));
}

TEST_CASE("grids") {
    const auto g = uniform_grid(10.0, 11);
    REQUIRE(g.size() == 11);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 10.0);
    CHECK(g[3] == Approx(3.0));
    CHECK(default_sample_count(500.0, mode_frequency(5000, 10000.0, 1.0)) == 5929);
    CHECK(default_sample_count(1.0, 1.0) == 2000);
}

TEST_CASE("static oscillator series: peaks and first violation") {
    Oscillator o;
    const auto taus = uniform_grid(6.0, 60001);
    const auto s = witness_series({Fock{1}, 1}, o.cavity, o.coupling, o.traj, taus);
    const auto v = violation_metrics(s);
    // |1 - 2.89 pi| and 2/w asin(sqrt(2 / (2.89 pi))), mpmath
    CHECK(v.max_abs_w == Approx(8.0792027688745025).epsilon(1e-7));
    REQUIRE(v.first_violation_tau.has_value());
    CHECK(*v.first_violation_tau >= 0.43296400466886052);
    CHECK(*v.first_violation_tau <= 0.43296400466886052 + 1e-4);
    CHECK(std::abs(v.argmax_tau - std::pow(std::numbers::pi, 1.5) / 4) < 1e-4);
}

TEST_CASE("classical families never violate") {
    Oscillator o;
    const auto taus = uniform_grid(10.0, 2001);
    for (const StateFamily f : {StateFamily{Coherent{{0.7, 0.2}}}, StateFamily{Thermal{5.0}}}) {
        const auto v = violation_metrics(witness_series({f, 1}, o.cavity, o.coupling, o.traj, taus));
        CHECK_FALSE(v.first_violation_tau.has_value());
        CHECK(v.max_abs_w <= 1.0 + 1e-12);
    }
    const auto coh = violation_metrics(witness_series({Coherent{{0.7, 0.2}}, 1}, o.cavity, o.coupling, o.traj, taus));
    CHECK(coh.max_abs_w == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("time averaging") {
    WitnessSeries s;
    s.taus = {0.0, 1.0, 2.0, 3.0};
    s.w_abs = {0.0, 1.0, 2.0, 3.0};
    s.valid = {true, true, true, true};
    CHECK(time_averaged_witness(s, 0.0, 3.0) == Approx(1.5));
    CHECK(time_averaged_witness(s, 0.5, 2.5) == Approx(1.5));
    CHECK(time_averaged_witness(s, 1.0, 1.5) == Approx(1.25));
    s.valid[2] = false;
    CHECK(std::isnan(time_averaged_witness(s, 0.0, 3.0)));
    CHECK_THROWS_AS((void)time_averaged_witness(s, 2.0, 1.0), InvalidParameter);
}

TEST_CASE("asymptote value") {
    auto cav = CavityConfig::at_antinode(4.0, 1.0, 2);
    const auto tr = TrajectorySpec::make_accelerated(0.8, cav.x0, cav.L);
    const double tw = *wall_time(tr);
    const StateSpec fock{Fock{1}, 2};
    CHECK(asymptote_value(fock, cav, {0.0}, tr, tw) == 1.0);
    const double at = asymptote_value(fock, cav, {0.4}, tr, tw + 1.0);
    CHECK(std::abs(asymptote_value(fock, cav, {0.4}, tr, 2 * (tw + 1.0)) - at) < 1e-9);
    CHECK_THROWS_AS((void)asymptote_value(fock, cav, {0.4}, tr, 0.5 * tw), InvalidParameter);
    CHECK_THROWS_AS((void)asymptote_value(fock, cav, {0.4}, TrajectorySpec::make_static(cav.x0, cav.L), 10.0),
                    InvalidParameter);
}

TEST_CASE("series validation") {
    auto cav = CavityConfig::at_antinode(4.0, 1.0, 2);
    const auto taus = uniform_grid(1.0, 5);
    CHECK_THROWS_AS((void)witness_series({Fock{1}, 3}, cav, {0.4}, TrajectorySpec::make_static(1.0, 4.0), taus),
                    InvalidParameter);
    CHECK_THROWS_AS((void)witness_series({Fock{1}, 2}, cav, {0.4}, TrajectorySpec::make_static(1.0, 5.0), taus),
                    InvalidParameter);
    CHECK_THROWS_AS((void)witness_series({Thermal{-1.0}, 2}, cav, {0.4}, TrajectorySpec::make_static(1.0, 4.0), taus),
                    InvalidParameter);
    CHECK_THROWS_AS((DetectorState{{0.9, 0.0}, 0.5}.validate()), InvalidParameter);
}
