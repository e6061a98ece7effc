// Command-line driver: witness series, parameter scans and oracle checks.
//
// Exit codes: 0 ok, 2 invalid parameters, 3 numerical failure.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "udw/errors.hpp"
#include "udw/oracle.hpp"
#include "udw/run.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

struct Flags {
    std::string state = "fock:1";
    std::optional<std::string> traj;
    int k0 = 5000;
    double L = 10000.0;
    double m = 1.0;
    std::optional<double> x0;
    std::optional<double> lambda;
    std::optional<double> omega_override;
    double tau_max = 500.0;
    std::optional<long long> samples;
    double t1 = 0.0;
    double t2 = 500.0;
    double eval_at = 500.0;
    double tol = udw::kDefaultTol;
    int kmax = 16;
    int cutoff = 40;
    std::optional<int> trotter_cutoff;
    std::string out = "-";
    int jobs = 1;
    bool force_quadrature = false;
    std::optional<double> from;
    std::optional<double> to;
    std::optional<int> steps;
};

CLI::Option* add_physics(CLI::App* app, Flags& f) {
    auto* state = app->add_option("--state", f.state, "fock:N | cat:A0 | coherent:RE,IM | thermal:NBAR");
    app->add_option("--traj", f.traj, "static | inertial:V | accel:A");
    app->add_option("--k0", f.k0, "probed mode index");
    app->add_option("--L", f.L, "cavity length");
    app->add_option("--m", f.m, "field mass");
    app->add_option("--x0", f.x0, "detector start position (default L/(2 k0))");
    app->add_option("--lambda", f.lambda, "coupling strength (default 2 sqrt(k0))");
    app->add_option("--tol", f.tol, "absolute quadrature tolerance");
    app->add_option("--force-quadrature", f.force_quadrature, "evaluate chi by quadrature on every route")
        ->expected(0, 1)
        ->default_str("false");
    app->add_option("--out", f.out, "output CSV path ('-' for stdout)");
    return state;
}

void add_grid(CLI::App* app, Flags& f) {
    app->add_option("--tau-max", f.tau_max, "end of the proper-time grid");
    app->add_option("--samples", f.samples, "grid points (default: 40 per mode period, at least 2000)");
}

void add_scan(CLI::App* app, Flags& f) {
    app->add_option("--from", f.from, "first scan value");
    app->add_option("--to", f.to, "last scan value");
    app->add_option("--steps", f.steps, "number of scan points");
    app->add_option("--jobs", f.jobs, "worker threads");
}

udw::RunConfig to_config(const Flags& f, const std::string& default_traj, double from, double to, int steps) {
    udw::RunConfig c;
    c.state = udw::parse_state(f.state);
    c.motion = udw::parse_motion(f.traj ? *f.traj : default_traj);
    c.k0 = f.k0;
    c.L = f.L;
    c.m = f.m;
    c.x0 = f.x0;
    c.lambda = f.lambda;
    c.omega_override = f.omega_override;
    c.tau_max = f.tau_max;
    if (f.samples) {
        if (*f.samples <= 0) throw udw::InvalidParameter("samples: grid must not be empty");
        c.samples = static_cast<std::size_t>(*f.samples);
    }
    c.t1 = f.t1;
    c.t2 = f.t2;
    c.eval_at = f.eval_at;
    c.tol = f.tol;
    c.force_quadrature = f.force_quadrature;
    c.kmax = f.kmax;
    c.cutoff = f.cutoff;
    c.jobs = f.jobs;
    c.scan_from = f.from.value_or(from);
    c.scan_to = f.to.value_or(to);
    c.scan_steps = f.steps.value_or(steps);
    return c;
}

// Runs `write` against the requested output stream.
template <class Fn>
void with_output(const std::string& path, Fn&& write) {
    if (path == "-") {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw udw::InvalidParameter("out: cannot open '" + path + "' for writing");
    write(os);
    if (!os) throw udw::NumericalFailure("out: write to '" + path + "' failed");
}

int cmd_witness(const Flags& f) {
    const auto cfg = to_config(f, "static", 0.0, 0.0, 0);
    const auto series = udw::run_witness(cfg);
    with_output(f.out, [&](std::ostream& os) { udw::write_witness_csv(os, series); });
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (!series.valid[i]) {
            std::cerr << "numerical failure at tau=" << series.taus[i]
                      << " (branch " << udw::to_string(series.chi[i].branch) << "): " << series.errors[i] << "\n";
            return kExitNumerical;
        }
    }
    return kExitOk;
}

int cmd_scan(const Flags& f, udw::ScanAxis axis, bool state_given) {
    udw::RunConfig cfg;
    switch (axis) {
        case udw::ScanAxis::Velocity: cfg = to_config(f, "static", 0.5, 0.95, 200); break;
        case udw::ScanAxis::Acceleration: cfg = to_config(f, "static", 0.05, 5.0, 100); break;
        case udw::ScanAxis::Alpha: cfg = to_config(f, "accel:0.8", 0.1, 3.0, 100); break;
    }
    if (axis == udw::ScanAxis::Alpha && !state_given) cfg.state = udw::Cat{1.0};
    const auto points = udw::run_scan(cfg, axis);
    with_output(f.out, [&](std::ostream& os) { udw::write_scan_csv(os, points); });
    for (const auto& p : points)
        if (!p.warning.empty()) std::cerr << "warning: point " << p.param << ": " << p.warning << "\n";
    return kExitOk;
}

int cmd_oracle(const Flags& f, bool state_given) {
    udw::oracle::SuiteOptions opts;
    opts.cutoff = f.cutoff;
    opts.k_max = f.kmax;
    opts.trotter_cutoff = f.trotter_cutoff.value_or(60);
    if (state_given) opts.family = udw::parse_state(f.state).index();
    if (opts.cutoff < 2 || opts.trotter_cutoff < 2) throw udw::InvalidParameter("cutoff: must be >= 2");
    if (opts.k_max < 2) throw udw::InvalidParameter("kmax: must include the probed mode k0=2");

    const auto results = udw::oracle::run_suite(opts);
    std::optional<std::string> first_failure;
    for (const auto& r : results) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name;
        if (r.error.empty())
            std::cout << "  gap=" << udw::format_number(r.gap) << "  threshold=" << udw::format_number(r.threshold);
        else
            std::cout << "  error: " << r.error;
        std::cout << "\n";
        if (!r.passed && !first_failure) first_failure = r.name;
    }
    if (first_failure) {
        std::cerr << "oracle check failed: " << *first_failure << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonclassicality witness for cavity fields probed by a moving Unruh-DeWitt detector"};
    app.require_subcommand(1);
    Flags f;

    auto* witness = app.add_subcommand("witness", "witness series on a proper-time grid");
    add_physics(witness, f);
    add_grid(witness, f);
    witness->add_option("--omega-override", f.omega_override,
                        "replace the probed mode by a bare oscillator of this frequency (static detector)");

    auto* scan_v = app.add_subcommand("scan-velocity", "time-averaged |W| against inertial velocity");
    add_physics(scan_v, f);
    add_grid(scan_v, f);
    add_scan(scan_v, f);
    scan_v->add_option("--t1", f.t1, "averaging window start");
    scan_v->add_option("--t2", f.t2, "averaging window end");

    auto* scan_a = app.add_subcommand("scan-acceleration", "asymptotic |W| against proper acceleration");
    add_physics(scan_a, f);
    add_scan(scan_a, f);
    scan_a->add_option("--eval-at", f.eval_at, "evaluation time T (must exceed the wall time)");

    auto* scan_al = app.add_subcommand("scan-alpha", "asymptotic |W| against the cat amplitude alpha0");
    auto* scan_al_state = add_physics(scan_al, f);
    add_scan(scan_al, f);
    scan_al->add_option("--eval-at", f.eval_at, "evaluation time T (must exceed the wall time)");

    auto* oracle = app.add_subcommand("oracle", "truncated Fock-space cross-checks of the closed forms");
    auto* oracle_state = oracle->add_option("--state", f.state, "restrict end-to-end checks to one state family");
    oracle->add_option("--kmax", f.kmax, "modes in the simulated product");
    oracle->add_option("--cutoff", f.cutoff, "Fock basis size for end-to-end checks");
    oracle->add_option("--trotter-cutoff", f.trotter_cutoff, "Fock basis size for the Trotter check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (*witness) return cmd_witness(f);
        if (*scan_v) return cmd_scan(f, udw::ScanAxis::Velocity, true);
        if (*scan_a) return cmd_scan(f, udw::ScanAxis::Acceleration, true);
        if (*scan_al) return cmd_scan(f, udw::ScanAxis::Alpha, scan_al_state->count() > 0);
        if (*oracle) return cmd_oracle(f, oracle_state->count() > 0);
    } catch (const udw::InvalidParameter& e) {
        std::cerr << "invalid parameter: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const udw::NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitInvalid;
}
