#include "udw/trajectory.hpp"

#include <cmath>
#include <sstream>

#include "udw/errors.hpp"

namespace udw {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

double lorentz_factor(double v) { return 1.0 / std::sqrt((1.0 - v) * (1.0 + v)); }

}  // namespace

double free_position(const TrajectorySpec& traj, double tau) {
    return std::visit(
        overloaded{
            [&](const Static&) { return traj.x0; },
            [&](const Inertial& m) { return traj.x0 + m.v * lorentz_factor(m.v) * tau; },
            [&](const Accelerated& m) {
                // cosh(a tau) - 1 = 2 sinh^2(a tau / 2), without the cancellation.
                const double s = std::sinh(0.5 * m.a * tau);
                return traj.x0 + 2.0 * s * s / m.a;
            },
        },
        traj.motion);
}

TrajectorySpec TrajectorySpec::make_static(double x0, double L) {
    TrajectorySpec t{Static{}, x0, L};
    t.validate();
    return t;
}

TrajectorySpec TrajectorySpec::make_inertial(double v, double x0, double L) {
    TrajectorySpec t{Inertial{v}, x0, L};
    t.validate();
    return t;
}

TrajectorySpec TrajectorySpec::make_accelerated(double a, double x0, double L) {
    TrajectorySpec t{Accelerated{a}, x0, L};
    t.validate();
    return t;
}

void TrajectorySpec::validate() const {
    if (!(L > 0.0) || !std::isfinite(L)) throw InvalidParameter("L: cavity length must be positive");
    if (!(x0 >= 0.0 && x0 < L)) throw InvalidParameter("x0: start position must lie in [0, L)");
    std::visit(overloaded{
                   [](const Static&) {},
                   [](const Inertial& m) {
                       if (!(m.v > 0.0 && m.v < 1.0))
                           throw InvalidParameter("traj: inertial velocity must satisfy 0 < v < 1");
                   },
                   [](const Accelerated& m) {
                       if (!(m.a > 0.0) || !std::isfinite(m.a))
                           throw InvalidParameter("traj: acceleration must be positive");
                   },
               },
               motion);
}

std::string TrajectorySpec::describe() const {
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const Static&) { os << "static"; },
                   [&](const Inertial& m) { os << "inertial:" << m.v; },
                   [&](const Accelerated& m) { os << "accel:" << m.a; },
               },
               motion);
    return os.str();
}

double position(const TrajectorySpec& traj, double tau) {
    if (auto tw = wall_time(traj); tw && tau >= *tw) return traj.L;
    const double x = free_position(traj, tau);
    return x < traj.L ? x : traj.L;
}

double coordinate_velocity(const TrajectorySpec& traj, double tau) {
    if (auto tw = wall_time(traj); tw && tau >= *tw) return 0.0;
    return free_velocity(traj, tau);
}

double free_displacement(const TrajectorySpec& traj, double t0, double dt) {
    return std::visit(
        overloaded{
            [](const Static&) { return 0.0; },
            [&](const Inertial& m) { return m.v * lorentz_factor(m.v) * dt; },
            [&](const Accelerated& m) {
                // cosh(a (t0 + dt)) - cosh(a t0) = 2 sinh(a (t0 + dt / 2)) sinh(a dt / 2)
                return 2.0 * std::sinh(m.a * (t0 + 0.5 * dt)) * std::sinh(0.5 * m.a * dt) / m.a;
            },
        },
        traj.motion);
}

double free_velocity(const TrajectorySpec& traj, double tau) {
    return std::visit(overloaded{
                          [](const Static&) { return 0.0; },
                          [](const Inertial& m) { return m.v * lorentz_factor(m.v); },
                          [&](const Accelerated& m) { return std::sinh(m.a * tau); },
                      },
                      traj.motion);
}

std::optional<double> wall_time(const TrajectorySpec& traj) {
    const double gap = traj.L - traj.x0;
    return std::visit(overloaded{
                          [](const Static&) -> std::optional<double> { return std::nullopt; },
                          [&](const Inertial& m) -> std::optional<double> {
                              return gap / (m.v * lorentz_factor(m.v));
                          },
                          [&](const Accelerated& m) -> std::optional<double> {
                              return std::acosh(1.0 + m.a * gap) / m.a;
                          },
                      },
                      traj.motion);
}

}  // namespace udw
