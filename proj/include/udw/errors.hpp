#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace udw {

/// A caller supplied a parameter outside its physical or numerical domain.
/// The message names the offending field.
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation did not reach its requested accuracy, or produced a
/// non-finite intermediate. Carries the best available estimate when one exists.
class NumericalFailure : public std::runtime_error {
public:
    explicit NumericalFailure(const std::string& what,
                              std::optional<std::complex<double>> best = std::nullopt)
        : std::runtime_error(what), best_estimate_(best) {}

    [[nodiscard]] const std::optional<std::complex<double>>& best_estimate() const noexcept {
        return best_estimate_;
    }

private:
    std::optional<std::complex<double>> best_estimate_;
};

/// The truncated Fock basis is too small for the state or displacement at hand.
class TruncationTooSmall : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

}  // namespace udw
