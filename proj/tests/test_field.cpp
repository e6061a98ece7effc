#include <cmath>
#include <numbers>

#include "doctest.h"
#include "udw/errors.hpp"
#include "udw/field.hpp"

using namespace udw;
using doctest::Approx;

TEST_CASE("mode_frequency reference values") {
    // sqrt((pi/2)^2 + 1), mpmath
    CHECK(mode_frequency(5000, 10000.0, 1.0) == Approx(1.8620958891185866).epsilon(1e-15));
    CHECK(mode_frequency(1, 1.0, 0.0) == Approx(std::numbers::pi).epsilon(1e-15));
    CHECK(mode_frequency(3, 2.0, 0.0) == Approx(1.5 * std::numbers::pi).epsilon(1e-15));
}

TEST_CASE("mode_frequency massless scaling") {
    for (double s : {0.5, 2.0, 7.25, 1000.0}) {
        CHECK(mode_frequency(4, s * 3.0, 0.0) * s == Approx(mode_frequency(4, 3.0, 0.0)).epsilon(1e-14));
    }
}

TEST_CASE("mode_frequency rejects bad input") {
    CHECK_THROWS_AS((void)mode_frequency(0, 1.0, 1.0), InvalidParameter);
    CHECK_THROWS_AS((void)mode_frequency(1, 0.0, 1.0), InvalidParameter);
    CHECK_THROWS_AS((void)mode_frequency(1, 1.0, -1.0), InvalidParameter);
}

TEST_CASE("mode_function values and walls") {
    CHECK(mode_function(1, 1.0, 1.0 / 3.0) == Approx(0.48860251190291992).epsilon(1e-14));
    CHECK(mode_function(7, 5.0, 0.0) == 0.0);
    CHECK(mode_function(7, 5.0, 5.0) == 0.0);
    // antinode of mode k at L / (2k)
    CHECK(mode_function(5000, 10000.0, 1.0) == Approx(1.0 / std::sqrt(5000 * std::numbers::pi)).epsilon(1e-12));
    CHECK_THROWS_AS((void)mode_function(1, 1.0, -1e-9), InvalidParameter);
    CHECK_THROWS_AS((void)mode_function(1, 1.0, 1.0 + 1e-9), InvalidParameter);
}

TEST_CASE("ModeSpec and CavityConfig") {
    const auto m = ModeSpec::make(3, 4.0, 1.0);
    CHECK(m.omega() == mode_frequency(3, 4.0, 1.0));
    CHECK(m.wavenumber() == Approx(3 * std::numbers::pi / 4.0));
    CHECK_FALSE(m.is_oscillator());

    const auto osc = ModeSpec::with_frequency(1, 2.0, 2.5);
    CHECK(osc.is_oscillator());
    CHECK(osc.omega() == 2.5);
    CHECK(osc.amplitude(0.7) == 1.0);

    auto cav = CavityConfig::at_antinode(4.0, 1.0, 2);
    CHECK(cav.x0 == 1.0);
    cav.validate();
    CHECK(cav.probed_mode().k() == 2);
    cav.omega_override = 3.0;
    CHECK(cav.probed_mode().is_oscillator());
    CHECK_FALSE(cav.mode(1).is_oscillator());

    CavityConfig bad;
    bad.x0 = bad.L;
    CHECK_THROWS_AS(bad.validate(), InvalidParameter);
    bad = CavityConfig{};
    bad.k0 = 0;
    CHECK_THROWS_AS(bad.validate(), InvalidParameter);
}
