#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "udw/field.hpp"
#include "udw/trajectory.hpp"

namespace udw {

using cplx = std::complex<double>;

enum class Branch { StaticClosedForm, InertialClosedForm, InertialResonanceLimit, Quadrature };

[[nodiscard]] std::string to_string(Branch b);

/// Detector response amplitude chi_k(tau) = -i lambda Int_0^tau F_k(x(t)) e^{i w_k t} dt.
struct ChiValue {
    cplx value{};
    Branch branch = Branch::StaticClosedForm;
    double err_estimate = 0.0;  ///< absolute; zero for closed forms
};

struct CouplingSpec {
    double lambda = 0.0;
    void validate() const;
};

/// Relative half-width of the band around w_L = w_k handled by the
/// resonance branch of the inertial closed form.
inline constexpr double kResonanceBand = 1e-6;
inline constexpr double kDefaultTol = 1e-10;

struct ChiOptions {
    double tol = kDefaultTol;  ///< absolute quadrature tolerance
    bool force_quadrature = false;
    double resonance_band = kResonanceBand;
    int max_depth = 20;
    std::size_t max_panels = 20'000'000;
};

[[nodiscard]] ChiValue chi_static(const ModeSpec& mode, const CouplingSpec& coupling, double x0, double tau);

/// Rate at which an inertial detector crosses the maxima of `mode`:
/// k pi v / (L sqrt(1 - v^2)).
[[nodiscard]] double crossing_rate(const ModeSpec& mode, double v);

/// Closed form for inertial motion, valid for tau up to the wall time.
/// Inside the resonance band the expression is evaluated in a form that is
/// regular at w_L = w_k, where it reduces to the linearly growing limit.
[[nodiscard]] ChiValue chi_inertial_analytic(const ModeSpec& mode, const CouplingSpec& coupling,
                                             const TrajectorySpec& traj, double tau,
                                             double resonance_band = kResonanceBand);

/// Adaptive Gauss-Kronrod evaluation of the defining integral over
/// [t_begin, t_end] (clipped at the wall time). Panels never exceed 1/8 of
/// the shorter of the mode period and the local mode-crossing period.
[[nodiscard]] ChiValue chi_quadrature_segment(const ModeSpec& mode, const CouplingSpec& coupling,
                                              const TrajectorySpec& traj, double t_begin, double t_end,
                                              const ChiOptions& opts = {});

[[nodiscard]] ChiValue chi_quadrature(const ModeSpec& mode, const CouplingSpec& coupling,
                                      const TrajectorySpec& traj, double tau, const ChiOptions& opts = {});

/// Static -> closed form, Inertial -> closed form, Accelerated -> quadrature,
/// unless opts.force_quadrature. Times past the wall evaluate at the wall.
[[nodiscard]] ChiValue chi(const ModeSpec& mode, const CouplingSpec& coupling, const TrajectorySpec& traj,
                           double tau, const ChiOptions& opts = {});

struct ChiSample {
    ChiValue chi;
    bool ok = true;
    std::string error;  ///< failure message when !ok
};

/// chi on an increasing grid. Quadrature routes accumulate segment by
/// segment; a failed sample is flagged and later samples are recomputed
/// from zero.
[[nodiscard]] std::vector<ChiSample> chi_series(const ModeSpec& mode, const CouplingSpec& coupling,
                                                const TrajectorySpec& traj, std::span<const double> taus,
                                                const ChiOptions& opts = {});

struct ModeSumOptions {
    double rel_tail_tol = 1e-10;
    int block = 16;
    int hard_cap = 1 << 16;
    ChiOptions chi;
};

/// Sum over k of |chi_k(tau)|^2, stopped once a block of `block` consecutive
/// modes adds less than rel_tail_tol of the running sum.
[[nodiscard]] double chi_mode_sum(const CavityConfig& cavity, const CouplingSpec& coupling,
                                  const TrajectorySpec& traj, double tau, const ModeSumOptions& opts = {});

/// Sum of |chi_k(tau)|^2 over exactly k = 1..k_count.
[[nodiscard]] double chi_mode_sum_fixed(const CavityConfig& cavity, const CouplingSpec& coupling,
                                        const TrajectorySpec& traj, double tau, int k_count,
                                        const ChiOptions& opts = {});

/// Inertial velocity at which crossing_rate matches the mode frequency.
[[nodiscard]] double critical_velocity(const ModeSpec& mode);

/// Int_{tau0}^{tau} dt' Int_{tau0}^{t'} dt'' f(t') f(t'') sin(omega (t' - t'')).
/// The forced-oscillator phase; only the oracle needs it.
[[nodiscard]] double phase_beta(const std::function<double(double)>& f, double omega, double tau0, double tau,
                                double tol = 1e-12);

}  // namespace udw
