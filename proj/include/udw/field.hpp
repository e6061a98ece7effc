#pragma once

#include <optional>

namespace udw {

/// Angular frequency of cavity mode k: sqrt((k*pi/L)^2 + m^2).
/// Throws InvalidParameter for k < 1, L <= 0 or m < 0.
[[nodiscard]] double mode_frequency(int k, double L, double m);

/// Mode function sin(k*pi*x/L) / sqrt(k*pi). Rejects x outside [0, L].
[[nodiscard]] double mode_function(int k, double L, double x);

/// One mode of the 1-D cavity. Construct through make() so the frequency is
/// always the one mode_frequency returns.
class ModeSpec {
public:
    static ModeSpec make(int k, double L, double m);

    /// Single-oscillator mode with an explicitly given frequency and unit
    /// coupling amplitude; models a detector coupled to one harmonic
    /// oscillator rather than to a cavity field.
    static ModeSpec with_frequency(int k, double L, double omega);

    [[nodiscard]] int k() const noexcept { return k_; }
    [[nodiscard]] double L() const noexcept { return L_; }
    [[nodiscard]] double m() const noexcept { return m_; }
    [[nodiscard]] double omega() const noexcept { return omega_; }
    [[nodiscard]] double wavenumber() const noexcept;  ///< k*pi/L
    [[nodiscard]] bool is_oscillator() const noexcept { return oscillator_; }

    /// Coupling amplitude at x: the mode function, or 1 for an oscillator mode.
    [[nodiscard]] double amplitude(double x) const;

private:
    ModeSpec(int k, double L, double m, double omega, bool oscillator)
        : k_(k), L_(L), m_(m), omega_(omega), oscillator_(oscillator) {}

    int k_;
    double L_;
    double m_;
    double omega_;
    bool oscillator_;
};

/// Cavity geometry plus the probed mode and the detector start point.
struct CavityConfig {
    double L = 10000.0;
    double m = 1.0;
    int k0 = 5000;
    double x0 = 1.0;
    /// When set, the probed mode is replaced by a bare oscillator of this
    /// frequency (unit coupling amplitude). Only static detectors may use it.
    std::optional<double> omega_override;

    /// Config with x0 at the leftmost antinode of mode k0, L / (2 k0).
    static CavityConfig at_antinode(double L, double m, int k0);

    /// Throws InvalidParameter naming the first bad field.
    void validate() const;

    [[nodiscard]] ModeSpec mode(int k) const;
    [[nodiscard]] ModeSpec probed_mode() const { return mode(k0); }
};

}  // namespace udw
