#include "qsdspin/qsd.hpp"

#include <cmath>
#include <sstream>

namespace qsdspin {

namespace {

constexpr cplx kI{0.0, 1.0};

std::string dump_matrix(const CMatrix& m) {
    std::ostringstream out;
    out.precision(17);
    out << "[";
    for (int i = 0; i < m.rows(); ++i) {
        out << (i ? ";" : "");
        for (int j = 0; j < m.cols(); ++j)
            out << (j ? "," : "") << m(i, j).real() << (m(i, j).imag() < 0 ? "" : "+")
                << m(i, j).imag() << "i";
    }
    out << "]";
    return out.str();
}

double trace_error(const DensityMatrix& rho) {
    return std::abs(rho.trace() - cplx(1.0, 0.0));
}

} // namespace

OpenSystem::OpenSystem(CMatrix hamiltonian, std::vector<CMatrix> lindblad)
    : h_(std::move(hamiltonian)), l_(std::move(lindblad)) {
    if (h_.rows() != h_.cols() || h_.rows() == 0)
        throw std::invalid_argument("Hamiltonian must be a non-empty square matrix");
    if ((h_ - h_.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("Hamiltonian is not Hermitian");
    for (const auto& l : l_) {
        if (l.rows() != h_.rows() || l.cols() != h_.cols())
            throw std::invalid_argument("Lindblad operator dimension does not match the Hamiltonian");
        l_dag_.push_back(l.adjoint());
        l_dag_l_.push_back(l.adjoint() * l);
    }
}

OpenSystem spin_open_system(const SpinSystem& sys, const ModelParams& params) {
    return OpenSystem(params.epsilon * sys.sx, {params.alpha * sys.sz});
}

// --------------------------------------------------------------------------
// Unravelled master equation

DensityMatrix qsd_increment(const DensityMatrix& rho, const OpenSystem& sys, double dt,
                            std::span<const double> dW) {
    if (static_cast<int>(dW.size()) != sys.channels())
        throw std::invalid_argument("qsd step: one Wiener increment per Lindblad channel required");
    if (rho.rows() != sys.dim() || rho.cols() != sys.dim())
        throw std::invalid_argument("qsd step: density matrix dimension mismatch");

    const CMatrix& h = sys.hamiltonian();
    DensityMatrix d = (-kI * dt) * (h * rho - rho * h);
    for (int k = 0; k < sys.channels(); ++k) {
        const CMatrix& l = sys.lindblad(k);
        const CMatrix& ld = sys.lindblad_adjoint(k);
        const CMatrix& ldl = sys.lindblad_dag_lindblad(k);
        const CMatrix l_rho = l * rho;
        const CMatrix rho_ld = rho * ld;
        d += dt * (l_rho * ld - 0.5 * (ldl * rho + rho * ldl));
        const cplx mean = (l_rho + rho_ld).trace(); // Tr[rho (L + L^+)]
        d += dW[k] * (rho_ld + l_rho - mean * rho);
    }
    return d;
}

DensityMatrix qsd_matrix_step(const DensityMatrix& rho, const OpenSystem& sys, double dt,
                              std::span<const double> dW, StepCounters* counters) {
    DensityMatrix next = rho + qsd_increment(rho, sys, dt, dW);
    next = 0.5 * (next + next.adjoint()).eval();
    if (!next.allFinite())
        throw NumericalError("non-finite density matrix in qsd step",
                             counters ? counters->steps : -1, dump_matrix(rho));
    const cplx tr = next.trace();
    if (std::abs(tr - cplx(1.0, 0.0)) > 1e-12) {
        next /= tr.real();
        if (counters) ++counters->renormalizations;
    }
    if (counters) ++counters->steps;
    return next;
}

DensityMatrix qsd_matrix_step(const DensityMatrix& rho, const CMatrix& hamiltonian,
                              const std::vector<CMatrix>& lindblad, double dt,
                              std::span<const double> dW) {
    return qsd_matrix_step(rho, OpenSystem(hamiltonian, lindblad), dt, dW);
}

// --------------------------------------------------------------------------
// Kraus map

std::vector<CMatrix> kraus_operators(const OpenSystem& sys, double dt) {
    const int d = sys.dim();
    const int n_ops = 2 * sys.channels();
    const double norm = 1.0 / std::sqrt(static_cast<double>(n_ops));
    const CMatrix eye = CMatrix::Identity(d, d);
    std::vector<CMatrix> ops;
    ops.reserve(n_ops);
    for (int k = 0; k < sys.channels(); ++k) {
        const CMatrix base = -kI * dt * sys.hamiltonian() - 0.5 * dt * sys.lindblad_dag_lindblad(k);
        const CMatrix jump = std::sqrt(dt) * sys.lindblad(k);
        ops.push_back(norm * (eye + base + jump));
        ops.push_back(norm * (eye + base - jump));
    }
    return ops;
}

double kraus_completeness_residual(const OpenSystem& sys, double dt) {
    const int d = sys.dim();
    CMatrix sum = CMatrix::Zero(d, d);
    for (const auto& m : kraus_operators(sys, dt)) sum += m.adjoint() * m;
    return (sum - CMatrix::Identity(d, d)).norm();
}

int kraus_step_inplace(DensityMatrix& rho, std::span<const CMatrix> kraus, double uniform) {
    const int n = static_cast<int>(kraus.size());
    // Branch weights and candidate states; n is 2 for the shipped models.
    CMatrix candidates[2 * kMaxChannels];
    double weights[2 * kMaxChannels];
    double total = 0.0;
    for (int k = 0; k < n; ++k) {
        candidates[k].noalias() = kraus[k] * rho * kraus[k].adjoint();
        weights[k] = candidates[k].trace().real();
        total += weights[k] > 0.0 ? weights[k] : 0.0;
    }
    if (!(total > 0.0)) throw std::invalid_argument("kraus_step: all branch probabilities are non-positive");

    const double target = uniform * total;
    double acc = 0.0;
    int chosen = n - 1;
    for (int k = 0; k < n; ++k) {
        if (weights[k] <= 0.0) continue;
        acc += weights[k];
        if (target < acc) {
            chosen = k;
            break;
        }
    }
    while (weights[chosen] <= 0.0) --chosen;
    rho = candidates[chosen] / weights[chosen];
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return chosen;
}

KrausOutcome kraus_step(const DensityMatrix& rho, const OpenSystem& sys, double dt, double uniform) {
    if (!(uniform >= 0.0 && uniform < 1.0))
        throw std::invalid_argument("kraus_step: uniform draw must lie in [0, 1)");
    if (rho.rows() != sys.dim()) throw std::invalid_argument("kraus_step: dimension mismatch");
    if (2 * sys.channels() > 2 * kMaxChannels)
        throw std::invalid_argument("kraus_step: too many Lindblad channels");
    const auto ops = kraus_operators(sys, dt);

    KrausOutcome out;
    double total = 0.0;
    for (const auto& m : ops) {
        const double w = (m * rho * m.adjoint()).trace().real();
        out.probabilities.push_back(w);
        total += w > 0.0 ? w : 0.0;
    }
    if (!(total > 0.0)) throw std::invalid_argument("kraus_step: all branch probabilities are non-positive");
    for (auto& p : out.probabilities) p = p > 0.0 ? p / total : 0.0;

    out.rho = rho;
    out.branch = kraus_step_inplace(out.rho, ops, uniform);
    return out;
}

// --------------------------------------------------------------------------
// Lindblad equation

DensityMatrix lindblad_rhs(const DensityMatrix& rho, const OpenSystem& sys) {
    const CMatrix& h = sys.hamiltonian();
    DensityMatrix d = -kI * (h * rho - rho * h);
    for (int k = 0; k < sys.channels(); ++k) {
        const CMatrix& ldl = sys.lindblad_dag_lindblad(k);
        d += sys.lindblad(k) * rho * sys.lindblad_adjoint(k) - 0.5 * (ldl * rho + rho * ldl);
    }
    return d;
}

namespace {

DensityMatrix rk4_step(const DensityMatrix& rho, const OpenSystem& sys, double h) {
    const DensityMatrix k1 = lindblad_rhs(rho, sys);
    const DensityMatrix k2 = lindblad_rhs(rho + 0.5 * h * k1, sys);
    const DensityMatrix k3 = lindblad_rhs(rho + 0.5 * h * k2, sys);
    const DensityMatrix k4 = lindblad_rhs(rho + h * k3, sys);
    return rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

DensityMatrix guarded_step(const DensityMatrix& rho, const OpenSystem& sys, double h, int depth,
                           long long& halvings) {
    DensityMatrix next = rk4_step(rho, sys, h);
    if (trace_error(next) > 1e-8 && depth < 20) {
        ++halvings;
        const DensityMatrix mid = guarded_step(rho, sys, 0.5 * h, depth + 1, halvings);
        next = guarded_step(mid, sys, 0.5 * h, depth + 1, halvings);
    }
    return next;
}

} // namespace

TrajectoryRecord lindblad_integrate(const DensityMatrix& rho0, const OpenSystem& open,
                                    const SpinSystem& spin, double dt, double duration,
                                    int stride) {
    if (stride < 1) throw std::invalid_argument("lindblad_integrate: stride must be >= 1");
    ModelParams params;
    params.dt = dt;
    params.duration = duration;
    params.epsilon = 0.0;
    params.validate();

    const auto report = check_physical(rho0);
    if (!report.passed) throw std::invalid_argument("lindblad_integrate: initial state is not physical");

    const CoherenceModel model = default_coherence_model(spin.dim);
    TrajectoryRecord rec;
    rec.state_names = component_names(model);
    rec.meta.model_kind = "lindblad";
    rec.meta.spin = spin.spin;
    rec.meta.stride = stride;
    rec.meta.params = params;

    auto sample = [&](double t, const DensityMatrix& rho) {
        rec.times.push_back(t);
        const auto cv = density_to_coherence(0.5 * (rho + rho.adjoint()), model);
        rec.states.insert(rec.states.end(), cv.values.begin(), cv.values.end());
        rec.components.push_back(spin_components(rho, spin));
        rec.purity.push_back(purity(rho));
        rec.densities.push_back(rho);
    };

    DensityMatrix rho = rho0;
    sample(0.0, rho);
    const long long n = params.n_steps();
    for (long long step = 1; step <= n; ++step) {
        rho = guarded_step(rho, open, dt, 0, rec.meta.step_halvings);
        if (!rho.allFinite()) throw NumericalError("non-finite state in lindblad_integrate", step, dump_matrix(rho));
        if (step % stride == 0) sample(static_cast<double>(step) * dt, rho);
    }
    rec.meta.steps = n;
    return rec;
}

} // namespace qsdspin
