#include "udw/response.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "udw/errors.hpp"
#include "udw/quadrature.hpp"

namespace udw {

namespace {

constexpr cplx I{0.0, 1.0};

// (e^{i W tau} - 1) / (i W), regular at W = 0 where it equals tau.
cplx phase_integral(double W, double tau) {
    const double x = 0.5 * W * tau;
    const double sinc = std::abs(x) < 1e-4 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
    return tau * sinc * std::polar(1.0, x);
}

const Inertial& inertial_motion(const TrajectorySpec& traj) {
    const auto* m = std::get_if<Inertial>(&traj.motion);
    if (!m) throw InvalidParameter("traj: inertial closed form needs an inertial trajectory");
    return *m;
}

void check_finite(cplx z, const std::string& where) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw NumericalFailure(where + ": non-finite intermediate");
}

void check_mode_traj(const ModeSpec& mode, const TrajectorySpec& traj) {
    if (mode.is_oscillator() && !traj.is_static())
        throw InvalidParameter("omega-override: a bare oscillator mode needs a static detector");
}

}  // namespace

std::string to_string(Branch b) {
    switch (b) {
        case Branch::StaticClosedForm: return "static-closed-form";
        case Branch::InertialClosedForm: return "inertial-closed-form";
        case Branch::InertialResonanceLimit: return "inertial-resonance-limit";
        case Branch::Quadrature: return "quadrature";
    }
    return "unknown";
}

void CouplingSpec::validate() const {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidParameter("lambda: coupling must be >= 0");
}

ChiValue chi_static(const ModeSpec& mode, const CouplingSpec& coupling, double x0, double tau) {
    if (!(tau >= 0.0)) throw InvalidParameter("tau: must be >= 0");
    const double w = mode.omega();
    const double g = coupling.lambda * mode.amplitude(x0);
    // e^{i w tau} - 1 = 2i sin(w tau / 2) e^{i w tau / 2}
    const cplx value = -g * 2.0 * I * std::sin(0.5 * w * tau) * std::polar(1.0, 0.5 * w * tau) / w;
    return {value, Branch::StaticClosedForm, 0.0};
}

double crossing_rate(const ModeSpec& mode, double v) {
    return mode.wavenumber() * v / std::sqrt((1.0 - v) * (1.0 + v));
}

ChiValue chi_inertial_analytic(const ModeSpec& mode, const CouplingSpec& coupling, const TrajectorySpec& traj,
                               double tau, double resonance_band) {
    const Inertial& motion = inertial_motion(traj);
    if (mode.is_oscillator()) throw InvalidParameter("omega-override: needs a static detector");
    if (!(tau >= 0.0)) throw InvalidParameter("tau: must be >= 0");
    if (const auto tw = wall_time(traj); tw && tau > *tw * (1.0 + 1e-12))
        throw InvalidParameter("tau: inertial closed form holds only up to the wall time");

    const double w = mode.omega();
    const double wl = crossing_rate(mode, motion.v);
    const double phi = mode.wavenumber() * traj.x0;
    const double pref = coupling.lambda / std::sqrt(mode.k() * std::numbers::pi);

    ChiValue out;
    if (std::abs(wl - w) < resonance_band * w) {
        // sin split into exponentials; the co-rotating term stays finite at w_L = w.
        out.value = -0.5 * pref *
                    (std::polar(1.0, phi) * phase_integral(w + wl, tau) -
                     std::polar(1.0, -phi) * phase_integral(w - wl, tau));
        out.branch = Branch::InertialResonanceLimit;
    } else {
        const double theta = wl * tau + phi;
        const cplx num = std::polar(1.0, w * tau) * cplx(w * std::sin(theta), wl * std::cos(theta)) -
                         cplx(w * std::sin(phi), wl * std::cos(phi));
        out.value = pref * num / ((wl - w) * (wl + w));
        out.branch = Branch::InertialClosedForm;
    }
    check_finite(out.value, "chi_inertial_analytic");
    return out;
}

ChiValue chi_quadrature_segment(const ModeSpec& mode, const CouplingSpec& coupling, const TrajectorySpec& traj,
                                double t_begin, double t_end, const ChiOptions& opts) {
    check_mode_traj(mode, traj);
    if (!(t_begin >= 0.0) || !(t_end >= t_begin)) throw InvalidParameter("tau: need 0 <= t_begin <= t_end");
    if (!(opts.tol > 0.0)) throw InvalidParameter("tol: must be positive");

    ChiValue out{cplx{}, Branch::Quadrature, 0.0};
    const auto tw = wall_time(traj);
    const double stop = tw ? std::min(t_end, *tw) : t_end;
    if (coupling.lambda == 0.0 || !(stop > t_begin)) return out;

    const double w = mode.omega();
    const double kq = mode.wavenumber();
    const double norm = mode.is_oscillator() ? 1.0 : 1.0 / std::sqrt(mode.k() * std::numbers::pi);
    // Phases reach 1e3-1e4 rad on long runs; evaluate them once per panel
    // and add only the small in-panel offsets at the nodes.
    auto make_panel = [&](double t0) {
        const cplx carrier0 = std::polar(1.0, w * t0);
        const double theta0 = kq * free_position(traj, t0);
        const double s0 = std::sin(theta0);
        const double c0 = std::cos(theta0);
        return [=, &traj, &mode](double u) -> cplx {
            double amp = 1.0;
            if (!mode.is_oscillator()) {
                const double dtheta = kq * free_displacement(traj, t0, u);
                amp = norm * (s0 * std::cos(dtheta) + c0 * std::sin(dtheta));
            }
            return amp * carrier0 * std::polar(1.0, w * u);
        };
    };
    const double cap_mode = 2.0 * std::numbers::pi / (8.0 * w);
    auto cap_at = [&](double t) {
        const double rate = kq * free_velocity(traj, t);
        return rate > 0.0 ? std::min(cap_mode, 2.0 * std::numbers::pi / (8.0 * rate)) : cap_mode;
    };
    // The crossing rate never decreases along these worldlines, so checking
    // the far end of the tentative panel bounds the whole panel.
    auto panel_cap = [&](double t) {
        const double h0 = cap_at(t);
        return std::min(h0, cap_at(std::min(t + h0, stop)));
    };

    // The integrand carries no lambda; scale the tolerance to match.
    const quad::PanelOptions po{opts.tol / coupling.lambda, opts.max_depth, opts.max_panels};
    const auto res = quad::integrate_panels_local(make_panel, t_begin, stop, panel_cap, po);

    out.value = -I * coupling.lambda * res.value;
    out.err_estimate = coupling.lambda * res.error;
    check_finite(out.value, "chi_quadrature");
    if (!res.converged) {
        std::ostringstream os;
        os << "chi_quadrature: no convergence on [" << t_begin << ", " << stop << "] after " << res.panels
           << " panels (error estimate " << out.err_estimate << ")";
        throw NumericalFailure(os.str(), out.value);
    }
    return out;
}

ChiValue chi_quadrature(const ModeSpec& mode, const CouplingSpec& coupling, const TrajectorySpec& traj, double tau,
                        const ChiOptions& opts) {
    return chi_quadrature_segment(mode, coupling, traj, 0.0, tau, opts);
}

ChiValue chi(const ModeSpec& mode, const CouplingSpec& coupling, const TrajectorySpec& traj, double tau,
             const ChiOptions& opts) {
    check_mode_traj(mode, traj);
    coupling.validate();
    if (!(tau >= 0.0)) throw InvalidParameter("tau: must be >= 0");
    if (opts.force_quadrature || std::holds_alternative<Accelerated>(traj.motion))
        return chi_quadrature(mode, coupling, traj, tau, opts);
    if (traj.is_static()) return chi_static(mode, coupling, traj.x0, tau);
    const auto tw = wall_time(traj);
    return chi_inertial_analytic(mode, coupling, traj, std::min(tau, *tw), opts.resonance_band);
}

std::vector<ChiSample> chi_series(const ModeSpec& mode, const CouplingSpec& coupling, const TrajectorySpec& traj,
                                  std::span<const double> taus, const ChiOptions& opts) {
    std::vector<ChiSample> out(taus.size());
    const bool quadrature = opts.force_quadrature || std::holds_alternative<Accelerated>(traj.motion);

    auto direct = [&](std::size_t i) {
        try {
            out[i].chi = chi(mode, coupling, traj, taus[i], opts);
        } catch (const NumericalFailure& e) {
            out[i].ok = false;
            out[i].error = e.what();
            if (e.best_estimate()) out[i].chi = {*e.best_estimate(), Branch::Quadrature, opts.tol};
        }
    };

    if (!quadrature) {
        for (std::size_t i = 0; i < taus.size(); ++i) direct(i);
        return out;
    }

    // Spread the tolerance uniformly per unit time over [0, last tau].
    const double horizon = taus.empty() ? 0.0 : taus.back();
    ChiOptions seg = opts;
    bool broken = false;
    ChiValue acc{cplx{}, Branch::Quadrature, 0.0};
    double t_prev = 0.0;
    for (std::size_t i = 0; i < taus.size(); ++i) {
        if (broken) {
            direct(i);
            continue;
        }
        const double len = taus[i] - t_prev;
        seg.tol = horizon > 0.0 ? opts.tol * std::max(len, 0.0) / horizon : opts.tol;
        try {
            if (seg.tol > 0.0) {
                const ChiValue piece = chi_quadrature_segment(mode, coupling, traj, t_prev, taus[i], seg);
                acc.value += piece.value;
                acc.err_estimate += piece.err_estimate;
            }
            out[i].chi = acc;
            t_prev = taus[i];
        } catch (const NumericalFailure& e) {
            out[i].ok = false;
            out[i].error = e.what();
            broken = true;
        }
    }
    return out;
}

double chi_mode_sum(const CavityConfig& cavity, const CouplingSpec& coupling, const TrajectorySpec& traj,
                    double tau, const ModeSumOptions& opts) {
    if (!(opts.rel_tail_tol > 0.0)) throw InvalidParameter("rel_tail_tol: must be positive");
    if (opts.block < 1 || opts.hard_cap < 1) throw InvalidParameter("kmax: mode cap must be >= 1");
    double total = 0.0;
    double block_sum = 0.0;
    for (int k = 1; k <= opts.hard_cap; ++k) {
        const double a = std::norm(chi(cavity.mode(k), coupling, traj, tau, opts.chi).value);
        total += a;
        block_sum += a;
        if (k % opts.block == 0) {
            if (block_sum <= opts.rel_tail_tol * total) return total;
            block_sum = 0.0;
        }
    }
    std::ostringstream os;
    os << "chi_mode_sum: tail not below " << opts.rel_tail_tol << " after " << opts.hard_cap
       << " modes; partial sum " << total;
    throw NumericalFailure(os.str(), cplx(total, 0.0));
}

double chi_mode_sum_fixed(const CavityConfig& cavity, const CouplingSpec& coupling, const TrajectorySpec& traj,
                          double tau, int k_count, const ChiOptions& opts) {
    if (k_count < 1) throw InvalidParameter("kmax: mode count must be >= 1");
    double total = 0.0;
    for (int k = 1; k <= k_count; ++k) total += std::norm(chi(cavity.mode(k), coupling, traj, tau, opts).value);
    return total;
}

double critical_velocity(const ModeSpec& mode) {
    if (mode.m() == 0.0) return 1.0 / std::numbers::sqrt2;
    const double q = mode.wavenumber() / mode.m();
    const double q2 = q * q;
    return std::sqrt((1.0 + q2) / (1.0 + 2.0 * q2));
}

double phase_beta(const std::function<double(double)>& f, double omega, double tau0, double tau, double tol) {
    if (!(tau >= tau0)) throw InvalidParameter("tau: phase_beta needs tau >= tau0");
    if (!(omega > 0.0)) throw InvalidParameter("omega: must be positive");
    if (tau == tau0) return 0.0;

    const double cap = 2.0 * std::numbers::pi / (8.0 * omega);
    auto fixed_cap = [cap](double) { return cap; };
    const quad::PanelOptions inner_opt{0.5 * tol / (tau - tau0 + 1.0), 20, 10'000'000};
    bool ok = true;
    auto inner = [&](double t1) {
        if (t1 <= tau0) return 0.0;
        auto g = [&](double t2) { return f(t2) * std::sin(omega * (t1 - t2)); };
        const auto r = quad::integrate_panels(g, tau0, t1, fixed_cap, inner_opt);
        ok = ok && r.converged;
        return f(t1) * r.value;
    };
    const auto outer = quad::integrate_panels(inner, tau0, tau, fixed_cap, quad::PanelOptions{tol, 20, 10'000'000});
    if (!ok || !outer.converged)
        throw NumericalFailure("phase_beta: nested quadrature did not converge", cplx(outer.value, 0.0));
    return outer.value;
}

}  // namespace udw
