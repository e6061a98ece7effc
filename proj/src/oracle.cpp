#include "udw/oracle.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "udw/errors.hpp"
#include "udw/quadrature.hpp"

namespace udw::oracle {

namespace {

using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

Matrix generator(int dim, cplx beta) {
    const Matrix a = annihilation(dim);
    return beta * a.adjoint() - std::conj(beta) * a;
}

// diag(e^{i phase n})
Eigen::VectorXcd number_phases(int dim, double phase) {
    Eigen::VectorXcd d(dim);
    for (int n = 0; n < dim; ++n) d(n) = std::polar(1.0, phase * n);
    return d;
}

double spectral_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

int resolve_support(const TruncatedMode& mode, int support) {
    if (support < 0) return mode.cutoff / 2;
    return std::min(support, mode.cutoff - 1);
}

// Highest level carrying population once a tail of at most kStateTailLimit is dropped.
int support_level(const Matrix& rho) {
    double tail = 0.0;
    for (int n = static_cast<int>(rho.rows()) - 1; n > 0; --n) {
        tail += std::abs(rho(n, n).real());
        if (tail > kStateTailLimit) return n;
    }
    return 0;
}

Matrix pure_state(const Eigen::VectorXcd& psi) { return psi * psi.adjoint(); }

void require_tail(double kept, int cutoff, const std::string& what) {
    const double tail = 1.0 - kept;
    if (tail > kStateTailLimit) {
        std::ostringstream os;
        os << "cutoff " << cutoff << " too small for " << what << ": population " << tail << " above the cutoff";
        throw TruncationTooSmall(os.str());
    }
}

}  // namespace

void TruncatedMode::validate() const {
    if (cutoff < 2) throw InvalidParameter("cutoff: truncated basis needs at least 2 levels");
    if (!(omega > 0.0)) throw InvalidParameter("omega: must be positive");
}

Matrix annihilation(int cutoff) {
    Matrix a = Matrix::Zero(cutoff, cutoff);
    for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

Displacement displacement_matrix(const TruncatedMode& mode, cplx beta, int support) {
    mode.validate();
    const int n = mode.cutoff;
    const int s = resolve_support(mode, support);

    Displacement out;
    out.matrix = generator(n, beta).exp();
    out.unitarity_defect = (out.matrix.adjoint() * out.matrix - Matrix::Identity(n, n)).norm();

    const int padded = 2 * n;
    const Matrix big = generator(padded, beta).exp();
    const Matrix block = big.topLeftCorner(n, s + 1);
    out.truncation_defect = (block.adjoint() * block - Matrix::Identity(s + 1, s + 1)).norm();

    const double defect = std::max(out.unitarity_defect, out.truncation_defect);
    if (!(defect <= kTruncationLimit)) {
        std::ostringstream os;
        os << "cutoff " << n << " too small for displacement |beta|=" << std::abs(beta) << " on levels 0.." << s
           << ": truncation defect " << defect;
        throw TruncationTooSmall(os.str());
    }
    return out;
}

Matrix evolve_closed_form(const TruncatedMode& mode, cplx chi, double tau, int sign, int support) {
    if (sign != 1 && sign != -1) throw InvalidParameter("sign: must be +1 or -1");
    const double wt = mode.omega * tau;
    const Matrix d = displacement_matrix(mode, static_cast<double>(sign) * chi * std::polar(1.0, -wt), support).matrix;
    return d * number_phases(mode.cutoff, -wt).asDiagonal();
}

Matrix evolve_trotter(const TruncatedMode& mode, const std::function<double(double)>& drive, double tau, int steps,
                      int sign) {
    mode.validate();
    if (steps < 1) throw InvalidParameter("steps: must be >= 1");
    if (sign != 1 && sign != -1) throw InvalidParameter("sign: must be +1 or -1");
    const int n = mode.cutoff;

    // a e^{-i w t} + a^dag e^{i w t} = R(t) X R(t)^dag, R(t) = e^{i w t n}, X = a + a^dag.
    const Matrix a = annihilation(n);
    const Eigen::MatrixXd x = (a + a.adjoint()).real();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(x);
    const Matrix v = eig.eigenvectors().cast<cplx>();
    const Eigen::VectorXd lam = eig.eigenvalues();

    const double dt = tau / steps;
    Matrix u = Matrix::Identity(n, n);
    Eigen::VectorXcd phases(n);
    for (int j = 0; j < steps; ++j) {
        const double t = (j + 0.5) * dt;
        const double s = sign * drive(t) * dt;
        for (int i = 0; i < n; ++i) phases(i) = std::polar(1.0, -s * lam(i));
        const Eigen::VectorXcd r = number_phases(n, mode.omega * t);
        const Matrix step = r.asDiagonal() * (v * phases.asDiagonal() * v.adjoint()) * r.conjugate().asDiagonal();
        u = step * u;
    }
    return number_phases(n, -mode.omega * tau).asDiagonal() * u;
}

TrotterComparison compare_trotter(const TruncatedMode& mode, const std::function<double(double)>& drive, double tau,
                                  int steps, int sign, int levels) {
    mode.validate();
    if (levels < 1 || levels > mode.cutoff) throw InvalidParameter("levels: must lie in [1, cutoff]");
    TrotterComparison out;
    const double w = mode.omega;
    // zeta = -i Int_0^tau f e^{i w t}; the phase beta is even in f.
    const double cap = 2.0 * std::numbers::pi / (8.0 * w);
    auto integrand = [&](double t) { return drive(t) * std::polar(1.0, w * t); };
    const auto z = quad::integrate_panels(integrand, 0.0, tau, [cap](double) { return cap; },
                                          quad::PanelOptions{1e-13, 20, 10'000'000});
    out.zeta = -I * z.value;
    out.beta = phase_beta(drive, w, 0.0, tau);

    const Matrix closed = std::polar(1.0, out.beta) * evolve_closed_form(mode, out.zeta, tau, sign, levels - 1);
    const Matrix trotter = evolve_trotter(mode, drive, tau, steps, sign);
    out.gap = spectral_norm((closed - trotter).leftCols(levels));
    return out;
}

Matrix density_matrix(const StateSpec& state, int cutoff) {
    state.validate();
    if (cutoff < 2) throw InvalidParameter("cutoff: truncated basis needs at least 2 levels");
    return std::visit(
        overloaded{
            [&](const Fock& s) -> Matrix {
                if (s.n >= cutoff) require_tail(0.0, cutoff, "Fock state");
                Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(cutoff);
                psi(s.n) = 1.0;
                return pure_state(psi);
            },
            [&](const Coherent& s) -> Matrix {
                Eigen::VectorXcd psi(cutoff);
                cplx term = std::exp(-0.5 * std::norm(s.alpha0));
                double kept = 0.0;
                for (int n = 0; n < cutoff; ++n) {
                    psi(n) = term;
                    kept += std::norm(term);
                    term *= s.alpha0 / std::sqrt(n + 1.0);
                }
                require_tail(kept, cutoff, "coherent state");
                return pure_state(psi);
            },
            [&](const Cat& s) -> Matrix {
                const double a = s.alpha0;
                const double norm = 1.0 / std::sqrt(2.0 * (1.0 + std::exp(-2.0 * a * a)));
                Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(cutoff);
                double term = std::exp(-0.5 * a * a);  // e^{-a^2/2} a^n / sqrt(n!)
                double kept = 0.0;
                for (int n = 0; n < cutoff; ++n) {
                    if (n % 2 == 0) {
                        psi(n) = 2.0 * norm * term;
                        kept += std::norm(psi(n));
                    }
                    term *= a / std::sqrt(n + 1.0);
                }
                require_tail(kept, cutoff, "cat state");
                return pure_state(psi);
            },
            [&](const Thermal& s) -> Matrix {
                Matrix rho = Matrix::Zero(cutoff, cutoff);
                const double q = s.nbar / (1.0 + s.nbar);
                double p = 1.0 / (1.0 + s.nbar);
                double kept = 0.0;
                for (int n = 0; n < cutoff; ++n) {
                    rho(n, n) = p;
                    kept += p;
                    p *= q;
                }
                require_tail(kept, cutoff, "thermal state");
                return rho;
            },
        },
        state.family);
}

cplx overlap_trace(const Matrix& rho, const TruncatedMode& mode, cplx chi, double tau, int sign) {
    mode.validate();
    if (rho.rows() != mode.cutoff || rho.cols() != mode.cutoff)
        throw InvalidParameter("rho: dimension differs from the cutoff");
    const int s = support_level(rho);
    const Matrix up = evolve_closed_form(mode, chi, tau, sign, s);
    const Matrix um = evolve_closed_form(mode, chi, tau, -sign, s);
    return (up * rho * um.adjoint()).trace();
}

cplx overlap_trace(const StateSpec& state, const TruncatedMode& mode, cplx chi, double tau) {
    return overlap_trace(density_matrix(state, mode.cutoff), mode, chi, tau, +1);
}

EndToEndReport end_to_end_check(const StateSpec& state, const CavityConfig& cavity, const CouplingSpec& coupling,
                                const TrajectorySpec& traj, double tau, int k_max, int cutoff,
                                const DetectorState& detector) {
    state.validate();
    cavity.validate();
    coupling.validate();
    traj.validate();
    detector.validate();
    if (state.k0 != cavity.k0) throw InvalidParameter("k0: state and cavity probe different modes");
    if (k_max < cavity.k0) throw InvalidParameter("kmax: must include the probed mode");
    if (cavity.omega_override) throw InvalidParameter("omega-override: not supported by the oracle");

    const ChiOptions oracle_chi{1e-12, true};
    const StateSpec vacuum{Fock{0}, state.k0};

    cplx product = 1.0;
    for (int k = 1; k <= k_max; ++k) {
        const ModeSpec mode = cavity.mode(k);
        const cplx chik = chi_quadrature(mode, coupling, traj, tau, oracle_chi).value;
        const TruncatedMode tm{cutoff, mode.omega()};
        product *= overlap_trace(k == cavity.k0 ? state : vacuum, tm, chik, tau);
    }

    EndToEndReport r;
    const cplx w_tau = detector.w0 * product;
    r.w_ratio = w_tau / detector.w0;
    r.chi_sum = chi_mode_sum_fixed(cavity, coupling, traj, tau, k_max);
    r.extracted = extract_witness(r.w_ratio, r.chi_sum);
    r.closed_form = witness_value(state, chi(cavity.probed_mode(), coupling, traj, tau).value);
    r.gap = std::abs(r.extracted - r.closed_form);
    return r;
}

std::vector<CheckResult> run_suite(const SuiteOptions& opts) {
    const CavityConfig cavity = CavityConfig::at_antinode(4.0, 1.0, 2);
    const CouplingSpec coupling{0.4};
    const double tau = 3.0;

    struct Case {
        std::string name;
        StateFamily family;
    };
    const std::vector<Case> states{
        {"fock:1", Fock{1}},
        {"cat:1", Cat{1.0}},
        {"coherent:0.5,0.3", Coherent{cplx{0.5, 0.3}}},
        {"thermal:0.5", Thermal{0.5}},
    };
    const std::vector<TrajectorySpec> trajs{
        TrajectorySpec::make_static(cavity.x0, cavity.L),
        TrajectorySpec::make_inertial(0.3, cavity.x0, cavity.L),
    };

    std::vector<CheckResult> out;
    for (const auto& c : states) {
        if (opts.family && *opts.family != c.family.index()) continue;
        for (const auto& traj : trajs) {
            CheckResult r;
            r.name = "end-to-end " + c.name + " " + traj.describe();
            r.threshold = 1e-6;
            try {
                r.gap = end_to_end_check(StateSpec{c.family, cavity.k0}, cavity, coupling, traj, tau, opts.k_max,
                                         opts.cutoff)
                            .gap;
                r.passed = r.gap < r.threshold;
            } catch (const std::exception& e) {
                r.error = e.what();
            }
            out.push_back(r);
        }
    }

    CheckResult t;
    t.name = "trotter vs closed form (constant drive, omega=1, tau=pi)";
    t.threshold = 1e-5;
    try {
        const TruncatedMode tm{opts.trotter_cutoff, 1.0};
        const auto cmp = compare_trotter(tm, [](double) { return 1.0; }, std::numbers::pi, 4096, +1,
                                         std::max(1, opts.trotter_cutoff / 6));
        t.gap = cmp.gap;
        t.passed = t.gap < t.threshold;
    } catch (const std::exception& e) {
        t.error = e.what();
    }
    out.push_back(t);
    return out;
}

}  // namespace udw::oracle
