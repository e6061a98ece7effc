#pragma once

#include <optional>
#include <string>
#include <variant>

namespace udw {

struct Static {};

/// Constant coordinate velocity v (0 < v < 1).
struct Inertial {
    double v;
};

/// Constant proper acceleration a > 0, starting from rest.
struct Accelerated {
    double a;
};

using Motion = std::variant<Static, Inertial, Accelerated>;

/// Detector worldline in the cavity rest frame, parametrized by proper time.
/// Moving detectors travel to the right wall and stay there; every mode
/// function vanishes at x = L, so the coupling switches off on arrival.
struct TrajectorySpec {
    Motion motion = Static{};
    double x0 = 0.0;
    double L = 1.0;

    static TrajectorySpec make_static(double x0, double L);
    static TrajectorySpec make_inertial(double v, double x0, double L);
    static TrajectorySpec make_accelerated(double a, double x0, double L);

    /// Throws InvalidParameter naming the offending field.
    void validate() const;

    [[nodiscard]] bool is_static() const { return std::holds_alternative<Static>(motion); }
    [[nodiscard]] std::string describe() const;
};

/// x(tau), clamped to L once the wall is reached. Non-decreasing in tau.
[[nodiscard]] double position(const TrajectorySpec& traj, double tau);

/// The worldline formula without the wall clamp; may exceed L.
[[nodiscard]] double free_position(const TrajectorySpec& traj, double tau);

/// free_position(t0 + dt) - free_position(t0), accurate to relative
/// rounding even when both positions are large.
[[nodiscard]] double free_displacement(const TrajectorySpec& traj, double t0, double dt);

/// dx/dtau of the worldline formula, ignoring the wall.
[[nodiscard]] double free_velocity(const TrajectorySpec& traj, double tau);

/// Coordinate velocity dx/dtau; zero from the wall time on.
[[nodiscard]] double coordinate_velocity(const TrajectorySpec& traj, double tau);

/// Proper time at which the detector reaches x = L, or nullopt if never.
[[nodiscard]] std::optional<double> wall_time(const TrajectorySpec& traj);

}  // namespace udw
