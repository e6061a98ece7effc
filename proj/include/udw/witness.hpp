#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "udw/field.hpp"
#include "udw/response.hpp"
#include "udw/trajectory.hpp"

namespace udw {

struct Fock {
    int n = 1;
};
/// Even cat (|a0> + |-a0>) / norm with real a0 > 0.
struct Cat {
    double alpha0 = 1.0;
};
struct Coherent {
    cplx alpha0{};
};
struct Thermal {
    double nbar = 0.0;
};

using StateFamily = std::variant<Fock, Cat, Coherent, Thermal>;

/// Field state: `family` in mode k0, vacuum in every other mode.
struct StateSpec {
    StateFamily family = Fock{1};
    int k0 = 1;

    void validate() const;
    [[nodiscard]] std::string describe() const;
};

/// Qubit state in the sigma_x basis. Only the coherence w0 evolves.
struct DetectorState {
    cplx w0{0.5, 0.0};
    double p0 = 0.5;

    /// Requires a valid density matrix and w0 != 0.
    void validate() const;
};

/// Violations are reported only above 1 + kBoundTolerance.
inline constexpr double kBoundTolerance = 1e-9;

/// Laguerre polynomial L_n(x) by upward recurrence.
[[nodiscard]] double laguerre(int n, double x);

/// Fock |N>, N >= 1: L_N(4 |chi|^2).
[[nodiscard]] double witness_fock(int n, cplx chi);
[[nodiscard]] double witness_cat(double alpha0, cplx chi);
/// Modulus exactly one.
[[nodiscard]] cplx witness_coherent(cplx alpha0, cplx chi);
[[nodiscard]] double witness_thermal(double nbar, cplx chi);

/// Closed-form witness for any supported family (Fock 0 is the vacuum).
[[nodiscard]] cplx witness_value(const StateSpec& state, cplx chi);

/// Witness from measured detector coherence: (w / w0) * exp(2 sum_k |chi_k|^2).
[[nodiscard]] cplx extract_witness(cplx w_ratio, double chi_sum);

struct WitnessSeries {
    std::vector<double> taus;
    std::vector<ChiValue> chi;
    std::vector<cplx> w_complex;
    std::vector<double> w_abs;
    std::vector<bool> violates;
    std::vector<bool> valid;          ///< false where chi evaluation failed
    std::vector<std::string> errors;  ///< failure message per invalid sample

    [[nodiscard]] std::size_t size() const { return taus.size(); }
};

/// n evenly spaced points on [0, tau_max], both ends included.
[[nodiscard]] std::vector<double> uniform_grid(double tau_max, std::size_t samples);

/// max(2000, enough points for 40 per period 2 pi / omega) on [0, tau_max].
[[nodiscard]] std::size_t default_sample_count(double tau_max, double omega);

[[nodiscard]] WitnessSeries witness_series(const StateSpec& state, const CavityConfig& cavity,
                                           const CouplingSpec& coupling, const TrajectorySpec& traj,
                                           std::span<const double> tau_grid, const ChiOptions& opts = {});

/// Trapezoid mean of |W| over [t1, t2]; NaN if an invalid sample is involved.
[[nodiscard]] double time_averaged_witness(const WitnessSeries& series, double t1, double t2);

struct ViolationMetrics {
    std::optional<double> first_violation_tau;
    double max_abs_w = 0.0;
    double argmax_tau = 0.0;
};

[[nodiscard]] ViolationMetrics violation_metrics(const WitnessSeries& series);

/// |W(T)| for an accelerated detector once it rests at the wall.
/// Rejects T below the wall time.
[[nodiscard]] double asymptote_value(const StateSpec& state, const CavityConfig& cavity,
                                     const CouplingSpec& coupling, const TrajectorySpec& traj, double T,
                                     const ChiOptions& opts = {});

}  // namespace udw
