#include <cmath>
#include <sstream>
#include <string>

#include "doctest.h"
#include "udw/errors.hpp"
#include "udw/run.hpp"

using namespace udw;
using doctest::Approx;

TEST_CASE("state and trajectory parsing") {
    CHECK(std::get<Fock>(parse_state("fock:3")).n == 3);
    CHECK(std::get<Cat>(parse_state("cat:1.5")).alpha0 == 1.5);
    CHECK(std::get<Coherent>(parse_state("coherent:0.5,-0.25")).alpha0 == cplx{0.5, -0.25});
    CHECK(std::get<Coherent>(parse_state("coherent:2")).alpha0 == cplx{2.0, 0.0});
    CHECK(std::get<Thermal>(parse_state("thermal:0.5")).nbar == 0.5);
    CHECK_THROWS_AS((void)parse_state("fock:1.5"), InvalidParameter);
    CHECK_THROWS_AS((void)parse_state("squeezed:1"), InvalidParameter);
    CHECK_THROWS_AS((void)parse_state("cat:"), InvalidParameter);

    CHECK(std::holds_alternative<Static>(parse_motion("static")));
    CHECK(std::get<Inertial>(parse_motion("inertial:0.7")).v == 0.7);
    CHECK(std::get<Accelerated>(parse_motion("accel:0.8")).a == 0.8);
    CHECK_THROWS_AS((void)parse_motion("accel:x"), InvalidParameter);
    CHECK_THROWS_AS((void)parse_motion("circular:1"), InvalidParameter);
}

TEST_CASE("number formatting") {
    CHECK(format_number(1.0) == "1.00000000000e+00");
    CHECK(format_number(-0.0) == "0.00000000000e+00");
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(format_number(-1234.5678) == "-1.23456780000e+03");
}

TEST_CASE("run config defaults") {
    RunConfig c;
    CHECK(c.coupling().lambda == Approx(2 * std::sqrt(5000.0)));
    CHECK(c.cavity().x0 == 1.0);
    CHECK(c.tau_grid().size() == 5929);
    c.validate();

    RunConfig bad;
    bad.samples = 0;
    CHECK_THROWS_AS(bad.validate(), InvalidParameter);
    bad = RunConfig{};
    bad.omega_override = 2.0;
    bad.motion = Inertial{0.5};
    CHECK_THROWS_AS(bad.validate(), InvalidParameter);
    bad = RunConfig{};
    bad.x0 = 1e4;
    CHECK_THROWS_AS(bad.validate(), InvalidParameter);
}

TEST_CASE("witness csv layout") {
    RunConfig c;
    c.k0 = 2;
    c.L = 4.0;
    c.lambda = 0.4;
    c.tau_max = 1.0;
    c.samples = 3;
    std::ostringstream os;
    write_witness_csv(os, run_witness(c));
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "tau,re_chi,im_chi,re_w,im_w,abs_w,violates");
    std::getline(is, line);
    CHECK(line == "0.00000000000e+00,0.00000000000e+00,0.00000000000e+00,1.00000000000e+00,0.00000000000e+00,"
                  "1.00000000000e+00,0");
    int rows = 1;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 3);
}

TEST_CASE("scan values and validation") {
    const auto v = scan_values(0.5, 0.95, 200);
    REQUIRE(v.size() == 200);
    CHECK(v.front() == 0.5);
    CHECK(v.back() == 0.95);
    CHECK(scan_values(1.0, 2.0, 1).size() == 1);

    RunConfig c;
    c.scan_from = 0.5;
    c.scan_to = 1.2;
    c.scan_steps = 4;
    CHECK_THROWS_AS((void)run_scan(c, ScanAxis::Velocity), InvalidParameter);
    c.scan_to = 0.9;
    c.t2 = 600.0;
    CHECK_THROWS_AS((void)run_scan(c, ScanAxis::Velocity), InvalidParameter);

    RunConfig alpha;
    alpha.scan_from = 0.1;
    alpha.scan_to = 1.0;
    alpha.scan_steps = 3;
    alpha.motion = Accelerated{0.8};
    CHECK_THROWS_AS((void)run_scan(alpha, ScanAxis::Alpha), InvalidParameter);  // Fock state
    alpha.state = Cat{1.0};
    alpha.motion = Static{};
    CHECK_THROWS_AS((void)run_scan(alpha, ScanAxis::Alpha), InvalidParameter);
}

TEST_CASE("scan output does not depend on the thread count") {
    RunConfig c;
    c.scan_from = 0.5;
    c.scan_to = 5.0;
    c.scan_steps = 7;
    c.state = Cat{1.0};
    std::string first;
    for (int jobs : {1, 3, 8}) {
        c.jobs = jobs;
        std::ostringstream os;
        write_scan_csv(os, run_scan(c, ScanAxis::Acceleration));
        if (first.empty()) first = os.str();
        CHECK(os.str() == first);
    }
    CHECK(first.rfind("param_value,metric\n", 0) == 0);
}

TEST_CASE("failed scan points become NaN") {
    RunConfig c;
    c.scan_from = 0.001;
    c.scan_to = 1.0;
    c.scan_steps = 2;
    c.eval_at = 100.0;  // before the wall for a = 0.001
    const auto pts = run_scan(c, ScanAxis::Acceleration);
    REQUIRE(pts.size() == 2);
    CHECK(std::isnan(pts[0].metric));
    CHECK_FALSE(pts[0].warning.empty());
    CHECK(std::isfinite(pts[1].metric));
}
