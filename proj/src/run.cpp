#include "udw/run.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "udw/errors.hpp"
#include "udw/parallel.hpp"

namespace udw {

namespace {

double parse_real(const std::string& text, const std::string& field) {
    std::istringstream is(text);
    is.imbue(std::locale::classic());
    double x = 0.0;
    is >> x;
    if (is.fail() || !is.eof() || !std::isfinite(x))
        throw InvalidParameter(field + ": cannot parse number '" + text + "'");
    return x;
}

std::pair<std::string, std::string> split_kind(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) return {text, ""};
    return {text.substr(0, colon), text.substr(colon + 1)};
}

}  // namespace

StateFamily parse_state(const std::string& text) {
    const auto [kind, arg] = split_kind(text);
    if (kind == "fock") {
        const double n = parse_real(arg, "state");
        if (n != std::floor(n) || n < 0 || n > 1e6) throw InvalidParameter("state: Fock number must be a non-negative integer");
        return Fock{static_cast<int>(n)};
    }
    if (kind == "cat") return Cat{parse_real(arg, "state")};
    if (kind == "coherent") {
        const auto comma = arg.find(',');
        if (comma == std::string::npos) return Coherent{cplx{parse_real(arg, "state"), 0.0}};
        return Coherent{cplx{parse_real(arg.substr(0, comma), "state"), parse_real(arg.substr(comma + 1), "state")}};
    }
    if (kind == "thermal") return Thermal{parse_real(arg, "state")};
    throw InvalidParameter("state: unknown family '" + text + "' (fock:N|cat:A0|coherent:RE,IM|thermal:NBAR)");
}

Motion parse_motion(const std::string& text) {
    const auto [kind, arg] = split_kind(text);
    if (kind == "static" && arg.empty()) return Static{};
    if (kind == "inertial") return Inertial{parse_real(arg, "traj")};
    if (kind == "accel") return Accelerated{parse_real(arg, "traj")};
    throw InvalidParameter("traj: unknown trajectory '" + text + "' (static|inertial:V|accel:A)");
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) x = 0.0;  // drop the sign of negative zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", x);
    return buf;
}

CavityConfig RunConfig::cavity() const {
    CavityConfig c;
    c.L = L;
    c.m = m;
    c.k0 = k0;
    c.x0 = x0 ? *x0 : L / (2.0 * k0);
    c.omega_override = omega_override;
    return c;
}

CouplingSpec RunConfig::coupling() const { return {lambda ? *lambda : 2.0 * std::sqrt(static_cast<double>(k0))}; }

StateSpec RunConfig::state_spec() const { return {state, k0}; }

TrajectorySpec RunConfig::trajectory() const {
    const CavityConfig c = cavity();
    return TrajectorySpec{motion, c.x0, c.L};
}

ChiOptions RunConfig::chi_options() const {
    ChiOptions o;
    o.tol = tol;
    o.force_quadrature = force_quadrature;
    return o;
}

std::vector<double> RunConfig::tau_grid() const {
    const std::size_t n = samples ? *samples : default_sample_count(tau_max, cavity().probed_mode().omega());
    return uniform_grid(tau_max, n);
}

void RunConfig::validate() const {
    if (k0 < 1) throw InvalidParameter("k0: probed mode index must be >= 1");
    cavity().validate();
    coupling().validate();
    state_spec().validate();
    if (!(tol > 0.0)) throw InvalidParameter("tol: must be positive");
    if (jobs < 1) throw InvalidParameter("jobs: must be >= 1");
    if (kmax < 1) throw InvalidParameter("kmax: must be >= 1");
    if (samples && *samples == 0) throw InvalidParameter("samples: grid must not be empty");
    if (!(tau_max >= 0.0) || !std::isfinite(tau_max)) throw InvalidParameter("tau-max: must be >= 0");
    const TrajectorySpec traj = trajectory();
    if (traj.x0 >= traj.L) throw InvalidParameter("x0: start position must lie in [0, L)");
    traj.validate();
    if (omega_override && !traj.is_static())
        throw InvalidParameter("omega-override: a bare oscillator mode needs --traj static");
}

WitnessSeries run_witness(const RunConfig& cfg) {
    cfg.validate();
    const auto grid = cfg.tau_grid();
    return witness_series(cfg.state_spec(), cfg.cavity(), cfg.coupling(), cfg.trajectory(), grid, cfg.chi_options());
}

void write_witness_csv(std::ostream& os, const WitnessSeries& s) {
    os << "tau,re_chi,im_chi,re_w,im_w,abs_w,violates\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        os << format_number(s.taus[i]) << ',' << format_number(s.chi[i].value.real()) << ','
           << format_number(s.chi[i].value.imag()) << ',' << format_number(s.w_complex[i].real()) << ','
           << format_number(s.w_complex[i].imag()) << ',' << format_number(s.w_abs[i]) << ','
           << (s.violates[i] ? 1 : 0) << '\n';
    }
}

std::vector<double> scan_values(double from, double to, int steps) {
    if (steps < 1) throw InvalidParameter("steps: scan needs at least one point");
    if (steps == 1) return {from};
    if (!(to > from)) throw InvalidParameter("from/to: scan range must satisfy from < to");
    std::vector<double> v(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) v[static_cast<std::size_t>(i)] = from + (to - from) * (static_cast<double>(i) / (steps - 1));
    return v;
}

std::vector<ScanPoint> run_scan(const RunConfig& cfg, ScanAxis axis) {
    const auto values = scan_values(cfg.scan_from, cfg.scan_to, cfg.scan_steps);
    const double lo = values.front();
    const double hi = values.back();
    switch (axis) {
        case ScanAxis::Velocity:
            if (!(lo > 0.0 && hi < 1.0)) throw InvalidParameter("from/to: velocities must lie in (0, 1)");
            break;
        case ScanAxis::Acceleration:
            if (!(lo > 0.0)) throw InvalidParameter("from/to: accelerations must be positive");
            break;
        case ScanAxis::Alpha:
            if (!(lo > 0.0)) throw InvalidParameter("from/to: alpha0 values must be positive");
            if (!std::holds_alternative<Cat>(cfg.state) && !std::holds_alternative<Coherent>(cfg.state))
                throw InvalidParameter("state: alpha0 scan needs a cat or coherent state");
            if (!std::holds_alternative<Accelerated>(cfg.motion))
                throw InvalidParameter("traj: alpha0 scan needs an accelerated trajectory");
            break;
    }

    // Validate a representative point up front so bad flags fail as a whole.
    RunConfig probe = cfg;
    if (axis == ScanAxis::Velocity) probe.motion = Inertial{lo};
    if (axis == ScanAxis::Acceleration) probe.motion = Accelerated{lo};
    probe.validate();
    if (axis == ScanAxis::Velocity) {
        if (!(cfg.t1 < cfg.t2) || cfg.t1 < 0.0 || cfg.t2 > cfg.tau_max)
            throw InvalidParameter("t1/t2: averaging window must satisfy 0 <= t1 < t2 <= tau-max");
    }

    std::vector<ScanPoint> out(values.size());
    parallel_for(values.size(), cfg.jobs, [&](std::size_t i) {
        RunConfig point = cfg;
        const double p = values[i];
        out[i].param = p;
        try {
            switch (axis) {
                case ScanAxis::Velocity: {
                    point.motion = Inertial{p};
                    const auto s = run_witness(point);
                    out[i].metric = time_averaged_witness(s, cfg.t1, cfg.t2);
                    break;
                }
                case ScanAxis::Acceleration:
                    point.motion = Accelerated{p};
                    point.validate();
                    out[i].metric = asymptote_value(point.state_spec(), point.cavity(), point.coupling(),
                                                    point.trajectory(), cfg.eval_at, point.chi_options());
                    break;
                case ScanAxis::Alpha:
                    if (std::holds_alternative<Cat>(cfg.state))
                        point.state = Cat{p};
                    else
                        point.state = Coherent{cplx{p, 0.0}};
                    point.validate();
                    out[i].metric = asymptote_value(point.state_spec(), point.cavity(), point.coupling(),
                                                    point.trajectory(), cfg.eval_at, point.chi_options());
                    break;
            }
            if (std::isnan(out[i].metric)) out[i].warning = "invalid samples inside the averaging window";
        } catch (const std::exception& e) {
            out[i].metric = std::numeric_limits<double>::quiet_NaN();
            out[i].warning = e.what();
        }
    });
    return out;
}

void write_scan_csv(std::ostream& os, const std::vector<ScanPoint>& points) {
    os << "param_value,metric\n";
    for (const auto& p : points) os << format_number(p.param) << ',' << format_number(p.metric) << '\n';
}

}  // namespace udw
