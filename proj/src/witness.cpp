#include "udw/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "udw/errors.hpp"

namespace udw {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

constexpr double kMaxExp = 700.0;

// Trajectory and cavity describe the same box and start point.
void check_geometry(const CavityConfig& cavity, const TrajectorySpec& traj) {
    if (traj.L != cavity.L) throw InvalidParameter("traj: cavity length differs from the cavity config");
    if (traj.x0 != cavity.x0) throw InvalidParameter("x0: trajectory start differs from the cavity config");
}

}  // namespace

void StateSpec::validate() const {
    if (k0 < 1) throw InvalidParameter("k0: probed mode index must be >= 1");
    std::visit(overloaded{
                   [](const Fock& s) {
                       if (s.n < 0) throw InvalidParameter("state: Fock number must be >= 0");
                   },
                   [](const Cat& s) {
                       if (!(s.alpha0 > 0.0) || !std::isfinite(s.alpha0))
                           throw InvalidParameter("state: cat amplitude must be > 0");
                   },
                   [](const Coherent& s) {
                       if (!std::isfinite(s.alpha0.real()) || !std::isfinite(s.alpha0.imag()))
                           throw InvalidParameter("state: coherent amplitude must be finite");
                   },
                   [](const Thermal& s) {
                       if (!(s.nbar >= 0.0) || !std::isfinite(s.nbar))
                           throw InvalidParameter("state: thermal occupation must be >= 0");
                   },
               },
               family);
}

std::string StateSpec::describe() const {
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const Fock& s) { os << "fock:" << s.n; },
                   [&](const Cat& s) { os << "cat:" << s.alpha0; },
                   [&](const Coherent& s) { os << "coherent:" << s.alpha0.real() << "," << s.alpha0.imag(); },
                   [&](const Thermal& s) { os << "thermal:" << s.nbar; },
               },
               family);
    return os.str();
}

void DetectorState::validate() const {
    if (!(p0 >= 0.0 && p0 <= 1.0)) throw InvalidParameter("p0: population must lie in [0, 1]");
    if (std::abs(w0) > std::sqrt(p0 * (1.0 - p0)) * (1.0 + 1e-12))
        throw InvalidParameter("w0: coherence too large for a valid density matrix");
    if (w0 == cplx{}) throw InvalidParameter("w0: zero initial coherence carries no witness signal");
}

double laguerre(int n, double x) {
    if (n < 0) throw InvalidParameter("N: Laguerre degree must be >= 0");
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = 1.0 - x;
    for (int j = 1; j < n; ++j) {
        const double next = ((2.0 * j + 1.0 - x) * cur - j * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double witness_fock(int n, cplx chi) {
    if (n < 1) throw InvalidParameter("state: Fock witness needs N >= 1");
    return laguerre(n, 4.0 * std::norm(chi));
}

double witness_cat(double alpha0, cplx chi) {
    if (!(alpha0 > 0.0)) throw InvalidParameter("state: cat amplitude must be > 0");
    const double a2 = 2.0 * alpha0 * alpha0;
    const double r = 4.0 * alpha0 * chi.real();
    // e^{-2 a^2} cosh(r) as a sum of two exponentials, so large |r| only
    // overflows when the product itself does.
    const double hi = std::abs(r) - a2;
    if (hi > kMaxExp) throw NumericalFailure("witness_cat: cosh term overflows (4 alpha0 Re chi too large)");
    const double cosh_term = 0.5 * (std::exp(r - a2) + std::exp(-r - a2));
    return (std::cos(4.0 * alpha0 * chi.imag()) + cosh_term) / (1.0 + std::exp(-a2));
}

cplx witness_coherent(cplx alpha0, cplx chi) {
    return std::polar(1.0, 4.0 * (std::conj(alpha0) * chi).imag());
}

double witness_thermal(double nbar, cplx chi) {
    if (!(nbar >= 0.0)) throw InvalidParameter("state: thermal occupation must be >= 0");
    return std::exp(-4.0 * nbar * std::norm(chi));
}

cplx witness_value(const StateSpec& state, cplx chi) {
    return std::visit(overloaded{
                          [&](const Fock& s) -> cplx { return s.n == 0 ? 1.0 : witness_fock(s.n, chi); },
                          [&](const Cat& s) -> cplx { return witness_cat(s.alpha0, chi); },
                          [&](const Coherent& s) { return witness_coherent(s.alpha0, chi); },
                          [&](const Thermal& s) -> cplx { return witness_thermal(s.nbar, chi); },
                      },
                      state.family);
}

cplx extract_witness(cplx w_ratio, double chi_sum) {
    if (!std::isfinite(w_ratio.real()) || !std::isfinite(w_ratio.imag()))
        throw InvalidParameter("w_ratio: must be finite");
    if (!(chi_sum >= 0.0)) throw InvalidParameter("chi_sum: must be >= 0");
    if (2.0 * chi_sum > kMaxExp) throw NumericalFailure("extract_witness: decoherence factor overflows");
    return w_ratio * std::exp(2.0 * chi_sum);
}

std::vector<double> uniform_grid(double tau_max, std::size_t samples) {
    if (samples == 0) throw InvalidParameter("samples: grid must not be empty");
    if (!(tau_max >= 0.0) || !std::isfinite(tau_max)) throw InvalidParameter("tau-max: must be >= 0");
    if (samples > 1 && !(tau_max > 0.0)) throw InvalidParameter("tau-max: must be > 0 for more than one sample");
    std::vector<double> g(samples);
    if (samples == 1) {
        g[0] = tau_max;
        return g;
    }
    const double n = static_cast<double>(samples - 1);
    for (std::size_t i = 0; i < samples; ++i) g[i] = tau_max * (static_cast<double>(i) / n);
    return g;
}

std::size_t default_sample_count(double tau_max, double omega) {
    const double per_period = 40.0;
    const double needed = std::ceil(per_period * tau_max * omega / (2.0 * std::numbers::pi)) + 1.0;
    return std::max<std::size_t>(2000, static_cast<std::size_t>(needed));
}

WitnessSeries witness_series(const StateSpec& state, const CavityConfig& cavity, const CouplingSpec& coupling,
                             const TrajectorySpec& traj, std::span<const double> tau_grid, const ChiOptions& opts) {
    state.validate();
    cavity.validate();
    coupling.validate();
    traj.validate();
    check_geometry(cavity, traj);
    if (state.k0 != cavity.k0) throw InvalidParameter("k0: state and cavity probe different modes");
    if (tau_grid.empty()) throw InvalidParameter("samples: grid must not be empty");
    for (std::size_t i = 0; i < tau_grid.size(); ++i) {
        if (!(tau_grid[i] >= 0.0)) throw InvalidParameter("tau: grid times must be >= 0");
        if (i > 0 && !(tau_grid[i] > tau_grid[i - 1])) throw InvalidParameter("tau: grid must be strictly increasing");
    }

    const ModeSpec mode = cavity.probed_mode();
    const auto samples = chi_series(mode, coupling, traj, tau_grid, opts);

    const std::size_t n = tau_grid.size();
    WitnessSeries s;
    s.taus.assign(tau_grid.begin(), tau_grid.end());
    s.chi.resize(n);
    s.w_complex.resize(n);
    s.w_abs.resize(n);
    s.violates.assign(n, false);
    s.valid.assign(n, true);
    s.errors.resize(n);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < n; ++i) {
        s.chi[i] = samples[i].chi;
        bool ok = samples[i].ok;
        std::string err = samples[i].error;
        if (ok) {
            try {
                s.w_complex[i] = witness_value(state, samples[i].chi.value);
            } catch (const NumericalFailure& e) {
                ok = false;
                err = e.what();
            }
        }
        if (!ok) {
            s.valid[i] = false;
            s.errors[i] = err;
            s.w_complex[i] = {nan, nan};
            s.w_abs[i] = nan;
            continue;
        }
        s.w_abs[i] = std::abs(s.w_complex[i]);
        s.violates[i] = s.w_abs[i] > 1.0 + kBoundTolerance;
    }
    return s;
}

double time_averaged_witness(const WitnessSeries& series, double t1, double t2) {
    if (series.size() < 2) throw InvalidParameter("t1/t2: averaging needs at least two samples");
    if (!(t1 < t2)) throw InvalidParameter("t1/t2: need t1 < t2");
    const auto& t = series.taus;
    const auto& w = series.w_abs;
    if (t1 < t.front() || t2 > t.back()) throw InvalidParameter("t1/t2: averaging window outside the tau grid");

    // Linear interpolation of |W| at an arbitrary time inside the grid.
    auto value_at = [&](double x, std::size_t& seg) {
        seg = static_cast<std::size_t>(std::upper_bound(t.begin(), t.end(), x) - t.begin());
        seg = std::clamp<std::size_t>(seg, 1, t.size() - 1);
        const std::size_t j = seg - 1;
        const double f = (x - t[j]) / (t[j + 1] - t[j]);
        return w[j] + f * (w[j + 1] - w[j]);
    };

    std::size_t lo = 0;
    std::size_t hi = 0;
    const double w1 = value_at(t1, lo);  // t[lo-1] <= t1 < t[lo]
    const double w2 = value_at(t2, hi);
    if (!series.valid.empty()) {
        for (std::size_t i = lo - 1; i <= hi; ++i)
            if (!series.valid[i]) return std::numeric_limits<double>::quiet_NaN();
    }
    double area = 0.0;
    double prev_t = t1;
    double prev_w = w1;
    for (std::size_t i = lo; i < hi; ++i) {
        area += 0.5 * (prev_w + w[i]) * (t[i] - prev_t);
        prev_t = t[i];
        prev_w = w[i];
    }
    area += 0.5 * (prev_w + w2) * (t2 - prev_t);
    return area / (t2 - t1);
}

ViolationMetrics violation_metrics(const WitnessSeries& series) {
    if (series.size() == 0) throw InvalidParameter("series: must not be empty");
    ViolationMetrics m;
    bool seen = false;
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (!series.valid[i]) continue;
        if (series.violates[i] && !m.first_violation_tau) m.first_violation_tau = series.taus[i];
        if (!seen || series.w_abs[i] > m.max_abs_w) {
            m.max_abs_w = series.w_abs[i];
            m.argmax_tau = series.taus[i];
            seen = true;
        }
    }
    if (!seen) m.max_abs_w = std::numeric_limits<double>::quiet_NaN();
    return m;
}

double asymptote_value(const StateSpec& state, const CavityConfig& cavity, const CouplingSpec& coupling,
                       const TrajectorySpec& traj, double T, const ChiOptions& opts) {
    state.validate();
    cavity.validate();
    coupling.validate();
    traj.validate();
    check_geometry(cavity, traj);
    if (!std::holds_alternative<Accelerated>(traj.motion))
        throw InvalidParameter("traj: asymptote needs an accelerated trajectory");
    const double tw = *wall_time(traj);
    if (!(T >= tw)) {
        std::ostringstream os;
        os.precision(12);
        os << "eval-at: T=" << T << " is before the detector reaches the wall; minimum valid T is " << tw;
        throw InvalidParameter(os.str());
    }
    const ChiValue c = chi(cavity.probed_mode(), coupling, traj, T, opts);
    return std::abs(witness_value(state, c.value));
}

}  // namespace udw
