#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "udw/field.hpp"
#include "udw/response.hpp"
#include "udw/trajectory.hpp"
#include "udw/witness.hpp"

namespace udw::oracle {

using Matrix = Eigen::MatrixXcd;

/// Largest tolerated truncation defect of a displacement on the state support.
inline constexpr double kTruncationLimit = 1e-8;
/// Population allowed above the cutoff when building a state.
inline constexpr double kStateTailLimit = 1e-12;

/// Single bosonic mode in the number basis |0>..|cutoff-1>.
struct TruncatedMode {
    int cutoff = 40;
    double omega = 1.0;
    void validate() const;
};

[[nodiscard]] Matrix annihilation(int cutoff);

struct Displacement {
    Matrix matrix;
    /// ||D^dag D - I|| of the truncated exponential itself.
    double unitarity_defect = 0.0;
    /// Unitarity defect of the retained block of a displacement computed in
    /// a basis twice as large, restricted to columns 0..support: the
    /// probability leaking above the cutoff.
    double truncation_defect = 0.0;
};

/// exp(beta a^dag - beta^* a) by scaling and squaring in the truncated basis.
/// `support` is the highest level the operator will act on (default
/// cutoff / 2). Throws TruncationTooSmall above kTruncationLimit.
[[nodiscard]] Displacement displacement_matrix(const TruncatedMode& mode, std::complex<double> beta,
                                               int support = -1);

/// D(sign chi e^{-i w tau}) exp(-i w tau n), the factorized mode propagator
/// without its global phase.
[[nodiscard]] Matrix evolve_closed_form(const TruncatedMode& mode, std::complex<double> chi, double tau, int sign,
                                        int support = -1);

/// Midpoint product of interaction-picture steps for H = w n + sign f(t)(a + a^dag),
/// returned in the Schroedinger picture.
[[nodiscard]] Matrix evolve_trotter(const TruncatedMode& mode, const std::function<double(double)>& drive,
                                    double tau, int steps, int sign);

struct TrotterComparison {
    double gap = 0.0;   ///< operator norm on columns 0..levels-1
    double beta = 0.0;  ///< restored global phase
    std::complex<double> zeta{};
};

/// Compares evolve_trotter with e^{i beta} D(zeta e^{-i w tau}) e^{-i w tau n}
/// on the lowest `levels` number states.
[[nodiscard]] TrotterComparison compare_trotter(const TruncatedMode& mode, const std::function<double(double)>& drive,
                                                double tau, int steps, int sign, int levels);

/// Density matrix of `state`'s probed-mode family; TruncationTooSmall if more
/// than kStateTailLimit of the population lies above the cutoff.
[[nodiscard]] Matrix density_matrix(const StateSpec& state, int cutoff);

/// Tr{U_s rho U_{-s}^dag} with U from evolve_closed_form.
[[nodiscard]] std::complex<double> overlap_trace(const Matrix& rho, const TruncatedMode& mode,
                                                 std::complex<double> chi, double tau, int sign = +1);
[[nodiscard]] std::complex<double> overlap_trace(const StateSpec& state, const TruncatedMode& mode,
                                                 std::complex<double> chi, double tau);

struct EndToEndReport {
    std::complex<double> w_ratio{};         ///< simulated w(tau) / w(0)
    double chi_sum = 0.0;                   ///< sum_k |chi_k|^2 over k <= K_max
    std::complex<double> extracted{};       ///< extract_witness(w_ratio, chi_sum)
    std::complex<double> closed_form{};     ///< witness_value(state, chi_k0)
    double gap = 0.0;
};

/// Simulates the detector coherence mode by mode in truncated bases (chi_k
/// from quadrature), extracts the witness, and compares it with the closed form
/// (chi_k0 from the dispatching evaluator).
[[nodiscard]] EndToEndReport end_to_end_check(const StateSpec& state, const CavityConfig& cavity,
                                              const CouplingSpec& coupling, const TrajectorySpec& traj, double tau,
                                              int k_max, int cutoff, const DetectorState& detector = {});

struct CheckResult {
    std::string name;
    double gap = 0.0;
    double threshold = 0.0;
    bool passed = false;
    std::string error;  ///< set when the check threw
};

struct SuiteOptions {
    int cutoff = 40;
    int trotter_cutoff = 60;
    int k_max = 16;
    /// Restrict the end-to-end checks to one state family (variant index of StateFamily).
    std::optional<std::size_t> family;
};

/// Fixed desk-scale suite: k0=2, L=4, m=1, lambda=0.4, static and inertial
/// v=0.3 detectors, four state families, plus the Trotter comparison.
[[nodiscard]] std::vector<CheckResult> run_suite(const SuiteOptions& opts);

}  // namespace udw::oracle
