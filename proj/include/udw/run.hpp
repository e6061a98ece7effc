#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "udw/field.hpp"
#include "udw/response.hpp"
#include "udw/trajectory.hpp"
#include "udw/witness.hpp"

namespace udw {

/// Everything one CLI invocation needs. Unset optionals take the defaults
/// derived from the other fields (lambda = 2 sqrt(k0), x0 = L / (2 k0),
/// samples = default_sample_count).
struct RunConfig {
    StateFamily state = Fock{1};
    int k0 = 5000;
    double L = 10000.0;
    double m = 1.0;
    std::optional<double> x0;
    std::optional<double> lambda;
    std::optional<double> omega_override;
    Motion motion = Static{};

    double tau_max = 500.0;
    std::optional<std::size_t> samples;
    double t1 = 0.0;
    double t2 = 500.0;
    double eval_at = 500.0;
    double tol = kDefaultTol;
    bool force_quadrature = false;
    int kmax = 16;
    int cutoff = 40;
    int jobs = 1;

    double scan_from = 0.0;
    double scan_to = 0.0;
    int scan_steps = 0;

    [[nodiscard]] CavityConfig cavity() const;
    [[nodiscard]] CouplingSpec coupling() const;
    [[nodiscard]] StateSpec state_spec() const;
    [[nodiscard]] TrajectorySpec trajectory() const;
    [[nodiscard]] ChiOptions chi_options() const;
    [[nodiscard]] std::vector<double> tau_grid() const;

    /// Throws InvalidParameter naming the first bad field.
    void validate() const;
};

/// "fock:N", "cat:A0", "coherent:RE,IM" (or "coherent:RE"), "thermal:NBAR".
[[nodiscard]] StateFamily parse_state(const std::string& text);
/// "static", "inertial:V", "accel:A".
[[nodiscard]] Motion parse_motion(const std::string& text);

/// 12 significant digits, C locale, "nan" for NaN.
[[nodiscard]] std::string format_number(double x);

[[nodiscard]] WitnessSeries run_witness(const RunConfig& cfg);
void write_witness_csv(std::ostream& os, const WitnessSeries& series);

enum class ScanAxis { Velocity, Acceleration, Alpha };

struct ScanPoint {
    double param = 0.0;
    double metric = 0.0;  ///< NaN when the point failed
    std::string warning;
};

/// Velocity: time-averaged |W| over [t1, t2]. Acceleration and alpha0:
/// asymptote value at eval_at. Points run on cfg.jobs threads; failures
/// become NaN with a warning.
[[nodiscard]] std::vector<ScanPoint> run_scan(const RunConfig& cfg, ScanAxis axis);
void write_scan_csv(std::ostream& os, const std::vector<ScanPoint>& points);

[[nodiscard]] std::vector<double> scan_values(double from, double to, int steps);

}  // namespace udw
