#include "udw/field.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "udw/errors.hpp"

namespace udw {

namespace {

void check_mode_args(int k, double L) {
    if (k < 1) throw InvalidParameter("k: mode index must be >= 1, got " + std::to_string(k));
    if (!(L > 0.0) || !std::isfinite(L))
        throw InvalidParameter("L: cavity length must be positive and finite");
}

}  // namespace

double mode_frequency(int k, double L, double m) {
    check_mode_args(k, L);
    if (!(m >= 0.0) || !std::isfinite(m)) throw InvalidParameter("m: field mass must be >= 0");
    const double q = k * std::numbers::pi / L;
    return std::hypot(q, m);
}

double mode_function(int k, double L, double x) {
    check_mode_args(k, L);
    if (!(x >= 0.0 && x <= L))
        throw InvalidParameter("x: position " + std::to_string(x) + " outside [0, L]");
    const double kpi = k * std::numbers::pi;
    // sin(k*pi) is not exactly zero in floating point; pin the wall nodes.
    if (x == L) return 0.0;
    return std::sin(kpi * x / L) / std::sqrt(kpi);
}

ModeSpec ModeSpec::make(int k, double L, double m) {
    return ModeSpec(k, L, m, mode_frequency(k, L, m), false);
}

ModeSpec ModeSpec::with_frequency(int k, double L, double omega) {
    check_mode_args(k, L);
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw InvalidParameter("omega-override: frequency must be positive");
    return ModeSpec(k, L, 0.0, omega, true);
}

double ModeSpec::wavenumber() const noexcept { return k_ * std::numbers::pi / L_; }

double ModeSpec::amplitude(double x) const {
    return oscillator_ ? 1.0 : mode_function(k_, L_, x);
}

CavityConfig CavityConfig::at_antinode(double L, double m, int k0) {
    CavityConfig c;
    c.L = L;
    c.m = m;
    c.k0 = k0;
    c.x0 = L / (2.0 * k0);
    return c;
}

void CavityConfig::validate() const {
    if (!(L > 0.0) || !std::isfinite(L)) throw InvalidParameter("L: cavity length must be positive");
    if (!(m >= 0.0) || !std::isfinite(m)) throw InvalidParameter("m: field mass must be >= 0");
    if (k0 < 1) throw InvalidParameter("k0: probed mode index must be >= 1");
    if (!(x0 >= 0.0 && x0 < L)) throw InvalidParameter("x0: start position must lie in [0, L)");
    if (omega_override && !(*omega_override > 0.0))
        throw InvalidParameter("omega-override: frequency must be positive");
}

ModeSpec CavityConfig::mode(int k) const {
    if (omega_override && k == k0) return ModeSpec::with_frequency(k, L, *omega_override);
    return ModeSpec::make(k, L, m);
}

}  // namespace udw
