#include "qsdspin/validate.hpp"

#include "qsdspin/qsd.hpp"
#include "qsdspin/rng.hpp"
#include "qsdspin/spin_models.hpp"
#include "qsdspin/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qsdspin {

namespace {

const Spin kSpins[] = {Spin::half(), Spin::one(), Spin::three_halves()};

DensityMatrix random_state(int dim, RandomStream& rng) {
    DensityMatrix rho = CMatrix::Zero(dim, dim);
    double total = 0.0;
    for (int k = 0; k < dim; ++k) {
        Eigen::Matrix<cplx, Eigen::Dynamic, 1, 0, kMaxDim, 1> v(dim);
        for (int i = 0; i < dim; ++i) v[i] = cplx(rng.normal(), rng.normal());
        v.normalize();
        const double w = rng.uniform();
        rho += w * v * v.adjoint();
        total += w;
    }
    return rho / total;
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(3);
    s << v;
    return s.str();
}

ValidationCheck bound(std::string name, double value, double tol, std::string detail = {}) {
    ValidationCheck c;
    c.name = std::move(name);
    c.value = value;
    c.tolerance = tol;
    c.passed = std::isfinite(value) && value <= tol;
    c.detail = detail.empty() ? "max deviation " + fmt(value) + " (bound " + fmt(tol) + ")" : std::move(detail);
    return c;
}

// Coherence-coordinate image of a traceless Hermitian increment.
RVector coherence_of_increment(const CMatrix& d, CoherenceModel model) {
    const int dim = static_cast<int>(d.rows());
    const CMatrix rho = CMatrix::Identity(dim, dim) / static_cast<double>(dim) + d;
    return density_to_coherence(0.5 * (rho + rho.adjoint()), model).values;
}

CMatrix noise_operator(const DensityMatrix& rho, const OpenSystem& open) {
    const CMatrix& l = open.lindblad(0);
    const CMatrix& ld = open.lindblad_adjoint(0);
    const cplx mean = (rho * (l + ld)).trace();
    return rho * ld + l * rho - mean * rho;
}

ValidationCheck check_fixed_points() {
    double worst = 0.0;
    for (Spin spin : kSpins) {
        const auto sys = build_spin_system(spin);
        ModelParams p;
        p.epsilon = 0.0;
        p.alpha = 1.3;
        p.dt = 1e-3;
        p.duration = 1.0;
        for (ModelKind kind : {ModelKind::matrix, ModelKind::kraus, ModelKind::coherence, ModelKind::components}) {
            if (!model_unavailable_reason(kind, spin).empty()) continue;
            for (double m : sys.sz_eigenvalues) {
                const DensityMatrix rho0 = eigenprojector(sys, m);
                auto stepper = make_stepper(kind, sys, p, rho0);
                RandomStream rng(3, 0);
                for (int i = 0; i < 200; ++i) {
                    const DensityMatrix before = stepper->density();
                    stepper->advance(rng);
                    worst = std::max(worst, (stepper->density() - before).cwiseAbs().maxCoeff());
                }
            }
        }
    }
    return bound("fixed points (eps = 0, every eigenprojector, every stepper)", worst, 1e-12);
}

ValidationCheck check_trace_increment(std::uint64_t seed) {
    RandomStream rng(seed, 1);
    double worst = 0.0;
    for (Spin spin : kSpins) {
        const auto sys = build_spin_system(spin);
        ModelParams p;
        p.alpha = 1.7;
        const OpenSystem open = spin_open_system(sys, p);
        for (int i = 0; i < 50; ++i) {
            const DensityMatrix rho = random_state(sys.dim, rng);
            const double dW[1] = {0.03 * rng.normal()};
            worst = std::max(worst, std::abs(qsd_increment(rho, open, 1e-3, dW).trace()));
        }
    }
    return bound("trace of the matrix increment", worst, 1e-12);
}

ValidationCheck check_kraus_positivity() {
    const auto sys = build_spin_system(Spin::three_halves());
    ModelParams p;
    p.alpha = 3.0;
    p.dt = 1e-4;
    p.duration = 10.0;
    auto stepper = make_stepper(ModelKind::kraus, sys, p, maximally_mixed(sys));
    RandomStream rng(11, 0);
    double lo = 1.0;
    for (long long i = 0; i < 100000; ++i) {
        stepper->advance(rng);
        if (i % 10 == 0) lo = std::min(lo, min_eigenvalue(stepper->density()));
    }
    return bound("Kraus map positivity (spin 3/2, alpha = 3, 1e5 steps)", -lo, 1e-8,
                 "min eigenvalue " + fmt(lo));
}

ValidationCheck check_projections(std::uint64_t seed) {
    RandomStream rng(seed, 2);
    double worst = 0.0;
    for (Spin spin : {Spin::one(), Spin::three_halves()}) {
        const auto sys = build_spin_system(spin);
        const CoherenceModel model = default_coherence_model(sys.dim);
        ModelParams p;
        p.alpha = 0.9;
        p.epsilon = 1.3;
        const OpenSystem open = spin_open_system(sys, p);
        for (int i = 0; i < 20; ++i) {
            const DensityMatrix rho = random_state(sys.dim, rng);
            const RVector x = density_to_coherence(rho, model).values;
            ItoCoefficients c;
            if (sys.dim == 3) spin1_coherence_coefficients(x, p, c);
            else spin32_coherence_coefficients(x, p, c);
            const RVector drift = coherence_of_increment(lindblad_rhs(rho, open), model);
            const RVector noise = coherence_of_increment(noise_operator(rho, open), model);
            worst = std::max(worst, (c.drift - drift).cwiseAbs().maxCoeff());
            worst = std::max(worst, (c.diffusion.col(0) - noise).cwiseAbs().maxCoeff());
        }
    }
    {
        const auto sys = build_spin_system(Spin::one());
        ModelParams p;
        p.alpha = 0.9;
        p.epsilon = 1.3;
        const OpenSystem open = spin_open_system(sys, p);
        const std::vector<CMatrix> ops{sys.sz,
                                       sys.sx,
                                       sys.sy,
                                       sys.sy * sys.sy,
                                       sys.sz * sys.sz,
                                       sys.sy * sys.sz + sys.sz * sys.sy,
                                       sys.sz * sys.sx + sys.sx * sys.sz};
        const CMatrix xyz = sys.sx * sys.sy * sys.sz;
        const CMatrix xy = sys.sx * sys.sy + sys.sy * sys.sx;
        for (int i = 0; i < 20; ++i) {
            const DensityMatrix rho = random_state(3, rng);
            ItoCoefficients c;
            spin1_component_coefficients(spin1_components_from_density(rho, sys), p, c);
            const CMatrix d = lindblad_rhs(rho, open);
            const CMatrix b = noise_operator(rho, open);
            for (int k = 0; k < 7; ++k) {
                worst = std::max(worst, std::abs(c.drift[k] - (ops[k] * d).trace().real()));
                worst = std::max(worst, std::abs(c.diffusion(k, 0) - (ops[k] * b).trace().real()));
            }
            const cplx dd = (xyz * d).trace(), bb = (xyz * b).trace();
            worst = std::max({worst, std::abs(c.drift[7] - dd.real()), std::abs(c.drift[8] - dd.imag()),
                              std::abs(c.diffusion(7, 0) - bb.real()), std::abs(c.diffusion(8, 0) - bb.imag())});
            worst = std::max(worst, std::abs(c.drift[9] - (xy * d).trace().real()));
            worst = std::max(worst, std::abs(c.diffusion(9, 0) - (xy * b).trace().real()));
        }
    }
    return bound("model coefficients equal the projected master equation", worst, 1e-12);
}

double pathwise_gap(Spin spin, ModelKind a, ModelKind b, double dt, double duration, double alpha) {
    const auto sys = build_spin_system(spin);
    ModelParams p;
    p.alpha = alpha;
    p.dt = dt;
    p.duration = duration;
    const DensityMatrix rho0 = spin == Spin::half()
                                   ? coherence_to_density({CoherenceModel::rabi_angle, RVector::Constant(1, 0.3)}, sys)
                                   : eigenprojector(sys, sys.sz_eigenvalues.back());
    auto sa = make_stepper(a, sys, p, rho0);
    auto sb = make_stepper(b, sys, p, rho0);
    RandomStream ra(5, 0), rb(5, 0);
    double gap = 0.0;
    const long long n = p.n_steps();
    for (long long i = 0; i < n; ++i) {
        sa->advance(ra);
        sb->advance(rb);
        gap = std::max(gap, std::abs(sa->components().sz - sb->components().sz));
    }
    return gap;
}

ValidationCheck check_pathwise() {
    double worst = 0.0;
    std::string detail;
    const struct {
        Spin spin;
        ModelKind a, b;
    } pairs[] = {{Spin::half(), ModelKind::components, ModelKind::rabi_angle},
                 {Spin::half(), ModelKind::matrix, ModelKind::coherence},
                 {Spin::one(), ModelKind::matrix, ModelKind::coherence},
                 {Spin::one(), ModelKind::coherence, ModelKind::components},
                 {Spin::three_halves(), ModelKind::matrix, ModelKind::coherence}};
    for (const auto& pr : pairs) {
        const double g = pathwise_gap(pr.spin, pr.a, pr.b, 1e-4, 2.0, 1.0);
        if (!detail.empty()) detail += "; ";
        detail += "spin " + pr.spin.to_string() + " " + std::string(to_string(pr.a)) + "/" +
                  std::string(to_string(pr.b)) + " " + fmt(g);
        worst = std::max(worst, g);
    }
    return bound("pathwise model equivalence (shared noise, T = 2, alpha = 1)", worst, 0.05, detail);
}

ValidationCheck check_rabi_oracle() {
    const auto sys = build_spin_system(Spin::half());
    ModelParams p;
    p.alpha = 0.0;
    const OpenSystem open = spin_open_system(sys, p);
    const auto rec = lindblad_integrate(eigenprojector(sys, 0.5), open, sys, 1e-3, 10.0, 10);
    double worst = 0.0;
    for (std::size_t i = 0; i < rec.size(); ++i)
        worst = std::max(worst, std::abs(rec.components[i].sz - 0.5 * std::cos(rec.times[i])));
    return bound("Lindblad integrator vs exact Rabi oscillation", worst, 1e-6);
}

ValidationCheck check_dephasing_oracle() {
    const auto sys = build_spin_system(Spin::half());
    ModelParams p;
    p.alpha = 1.0;
    const OpenSystem open = spin_open_system(sys, p);
    CoherenceVector cv{CoherenceModel::bloch3, RVector(3)};
    cv.values << 0.6, 0.0, 0.8;
    const auto rec = lindblad_integrate(coherence_to_density(cv, sys), open, sys, 1e-3, 5.0, 10);
    double worst = 0.0;
    for (std::size_t i = 0; i < rec.size(); ++i)
        worst = std::max(worst, std::abs(rec.components[i].sx - 0.3 * std::exp(-0.5 * rec.times[i])));
    return bound("Lindblad integrator vs analytic <Sx> decay", worst, 1e-6);
}

ValidationCheck check_ensemble_oracle(int threads) {
    const auto sys = build_spin_system(Spin::half());
    ModelParams p;
    p.alpha = 1.0;
    p.dt = 1e-3;
    p.duration = 2.0;
    p.seed = 9;
    EnsembleOptions eo;
    eo.n_traj = 800;
    eo.stride = 50;
    eo.threads = threads;
    const auto ens = run_ensemble(ModelKind::matrix, Spin::half(), p, InitialState::eigenstate(0.5), eo);
    const auto ode = lindblad_integrate(eigenprojector(sys, 0.5), spin_open_system(sys, p), sys, 1e-3, 2.0, 50);
    double worst = 0.0;
    for (std::size_t i = 0; i < ens.times.size(); ++i) {
        const double se = std::max(ens.se_sz[i], 1e-3);
        worst = std::max(worst, std::abs(ens.mean_sz[i] - ode.components[i].sz) / se);
    }
    return bound("ensemble mean <Sz> vs Lindblad (standard errors)", worst, 4.0,
                 "max |mean - ode| / se = " + fmt(worst) + " (bound 4)");
}

} // namespace

std::vector<ValidationCheck> run_validation_suite(const ValidationOptions& options,
                                                  const std::function<void(const ValidationCheck&)>& progress) {
    const std::vector<std::pair<std::string, std::function<ValidationCheck()>>> checks{
        {"fixed points", [] { return check_fixed_points(); }},
        {"trace", [&] { return check_trace_increment(options.seed); }},
        {"kraus positivity", [] { return check_kraus_positivity(); }},
        {"projections", [&] { return check_projections(options.seed); }},
        {"pathwise", [] { return check_pathwise(); }},
        {"rabi oracle", [] { return check_rabi_oracle(); }},
        {"dephasing oracle", [] { return check_dephasing_oracle(); }},
        {"ensemble oracle", [&] { return check_ensemble_oracle(options.threads); }},
    };
    std::vector<ValidationCheck> out;
    for (const auto& [name, fn] : checks) {
        ValidationCheck c;
        try {
            c = fn();
        } catch (const std::exception& e) {
            c.name = name;
            c.passed = false;
            c.detail = std::string("threw: ") + e.what();
        }
        if (progress) progress(c);
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace qsdspin
