#include "qsdspin/spin_models.hpp"
#include "qsdspin/trajectory.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qsdspin {

void Stepper::advance(RandomStream& rng) {
    double dW[kMaxChannels];
    const double scale = std::sqrt(dt_);
    for (int k = 0; k < channels(); ++k) dW[k] = scale * rng.normal();
    advance(std::span<const double>(dW, channels()));
}

namespace {

constexpr cplx kI{0.0, 1.0};

template <int D>
using Mat = Eigen::Matrix<cplx, D, D>;

std::string dump(const CMatrix& m) {
    std::ostringstream out;
    out.precision(17);
    out << m;
    return out.str();
}

// Shared bits of the two density-matrix steppers.
template <int D>
class DensityStepper : public Stepper {
public:
    DensityStepper(const SpinSystem& sys, const ModelParams& params, const DensityMatrix& rho0)
        : sys_(sys), model_(default_coherence_model(sys.dim)), rho_(rho0) {
        dt_ = params.dt;
        sx_ = sys.sx;
        sy_ = sys.sy;
        sz_ = sys.sz;
    }

    const std::vector<std::string>& state_names() const override { return component_names(model_); }
    void state_values(std::vector<double>& out) const override {
        const auto cv = density_to_coherence(density(), model_);
        out.assign(cv.values.begin(), cv.values.end());
    }
    DensityMatrix density() const override { return rho_; }
    SpinComponents components() const override {
        return {(sx_ * rho_).trace().real(), (sy_ * rho_).trace().real(),
                (sz_ * rho_).trace().real()};
    }
    double purity() const override { return (rho_ * rho_).trace().real(); }

protected:
    SpinSystem sys_;
    CoherenceModel model_;
    Mat<D> rho_;
    Mat<D> sx_, sy_, sz_;
};

template <int D>
class MatrixStepper final : public DensityStepper<D> {
    using Base = DensityStepper<D>;

public:
    MatrixStepper(const SpinSystem& sys, const ModelParams& params, const DensityMatrix& rho0)
        : Base(sys, params, rho0) {
        const OpenSystem open = spin_open_system(sys, params);
        h_ = open.hamiltonian();
        l_ = open.lindblad(0);
        ld_ = open.lindblad_adjoint(0);
        ldl_ = open.lindblad_dag_lindblad(0);
    }

    ModelKind kind() const override { return ModelKind::matrix; }
    long long renormalizations() const override { return renorm_; }

    void advance(std::span<const double> dW) override {
        const double dt = this->dt_;
        Mat<D>& rho = this->rho_;
        const Mat<D> l_rho = l_ * rho;
        const Mat<D> rho_ld = rho * ld_;
        const cplx mean = (l_rho + rho_ld).trace();
        Mat<D> d = (-kI * dt) * (h_ * rho - rho * h_);
        d += dt * (l_rho * ld_ - 0.5 * (ldl_ * rho + rho * ldl_));
        d += dW[0] * (rho_ld + l_rho - mean * rho);
        rho += d;
        rho = (0.5 * (rho + rho.adjoint())).eval();
        if (!rho.allFinite())
            throw NumericalError("non-finite density matrix", this->steps_, dump(CMatrix(rho)));
        const cplx tr = rho.trace();
        if (std::abs(tr - 1.0) > 1e-12) {
            rho /= tr.real();
            ++renorm_;
        }
        ++this->steps_;
    }

private:
    Mat<D> h_, l_, ld_, ldl_;
    long long renorm_ = 0;
};

template <int D>
class KrausStepper final : public DensityStepper<D> {
    using Base = DensityStepper<D>;

public:
    KrausStepper(const SpinSystem& sys, const ModelParams& params, const DensityMatrix& rho0)
        : Base(sys, params, rho0) {
        const auto ops = kraus_operators(spin_open_system(sys, params), params.dt);
        // M_+- = K +- J
        k_ = 0.5 * (ops[0] + ops[1]);
        j_ = 0.5 * (ops[0] - ops[1]);
        kd_ = k_.adjoint();
        jd_ = j_.adjoint();
    }

    ModelKind kind() const override { return ModelKind::kraus; }

    /// Branch + is taken when the uniform Phi(dW / sqrt(dt)) falls below p_+.
    void advance(std::span<const double> dW) override {
        const double xi = dW[0] / std::sqrt(this->dt_);
        const double u = 0.5 * std::erfc(-xi / std::numbers::sqrt2);
        step_uniform(u < 1.0 ? u : std::nextafter(1.0, 0.0));
    }

    void step_uniform(double u) {
        Mat<D>& rho = this->rho_;
        const Mat<D> k_rho = k_ * rho;
        const Mat<D> j_rho = j_ * rho;
        const Mat<D> diag = k_rho * kd_ + j_rho * jd_;
        const Mat<D> cross = k_rho * jd_ + j_rho * kd_;
        const double t_diag = diag.trace().real();
        const double t_cross = cross.trace().real();
        const double w_plus = std::max(t_diag + t_cross, 0.0);
        const double w_minus = std::max(t_diag - t_cross, 0.0);
        const double total = w_plus + w_minus;
        if (!(total > 0.0))
            throw NumericalError("kraus step: all branch probabilities are non-positive", this->steps_,
                                 dump(CMatrix(rho)));
        if (u * total < w_plus)
            rho = (diag + cross) / w_plus;
        else
            rho = (diag - cross) / w_minus;
        rho = (0.5 * (rho + rho.adjoint())).eval();
        ++this->steps_;
    }

private:
    Mat<D> k_, j_, kd_, jd_;
};

// Euler-Maruyama on a real parametrization.
class ItoStepper : public Stepper {
public:
    ItoStepper(ModelKind kind, ItoSystem system, RVector x0, double dt)
        : kind_(kind), system_(std::move(system)), x_(std::move(x0)) {
        dt_ = dt;
        dw_.resize(system_.channels);
    }

    ModelKind kind() const override { return kind_; }
    int channels() const override { return system_.channels; }

    void advance(std::span<const double> dW) override {
        for (int k = 0; k < system_.channels; ++k) dw_[k] = dW[k];
        euler_maruyama_step_inplace(system_, x_, dt_, dw_, scratch_, steps_);
        ++steps_;
    }

    void state_values(std::vector<double>& out) const override { out.assign(x_.begin(), x_.end()); }
    const RVector& x() const { return x_; }

protected:
    ModelKind kind_;
    ItoSystem system_;
    RVector x_;
    RVector dw_;
    ItoCoefficients scratch_;
};

class CoherenceStepper final : public ItoStepper {
public:
    CoherenceStepper(ItoSystem system, CoherenceModel model, const SpinSystem& sys,
                     const DensityMatrix& rho0, double dt)
        : ItoStepper(ModelKind::coherence, std::move(system),
                     density_to_coherence(rho0, model).values, dt),
          model_(model), sys_(sys) {}

    const std::vector<std::string>& state_names() const override { return component_names(model_); }
    DensityMatrix density() const override { return coherence_to_density({model_, x_}, sys_); }
    SpinComponents components() const override { return spin_components(CoherenceVector{model_, x_}, sys_); }
    double purity() const override { return qsdspin::purity(CoherenceVector{model_, x_}); }

private:
    CoherenceModel model_;
    SpinSystem sys_;
};

class RabiStepper final : public ItoStepper {
public:
    RabiStepper(const ModelParams& params, const DensityMatrix& rho0)
        : ItoStepper(ModelKind::rabi_angle, rabi_angle_system(params),
                     density_to_coherence(rho0, CoherenceModel::rabi_angle).values, params.dt),
          sys_(build_spin_system(Spin::half())) {}

    const std::vector<std::string>& state_names() const override {
        return component_names(CoherenceModel::rabi_angle);
    }
    DensityMatrix density() const override {
        return coherence_to_density({CoherenceModel::rabi_angle, x_}, sys_);
    }
    SpinComponents components() const override { return {0.0, -0.5 * std::sin(x_[0]), 0.5 * std::cos(x_[0])}; }
    double purity() const override { return 1.0; }

private:
    SpinSystem sys_;
};

class HalfComponentStepper final : public ItoStepper {
public:
    HalfComponentStepper(const SpinSystem& sys, const ModelParams& params, const DensityMatrix& rho0)
        : ItoStepper(ModelKind::components, spin_half_component_system(params),
                     spin_half_components_from_density(rho0, sys), params.dt) {}

    const std::vector<std::string>& state_names() const override { return spin_half_component_names(); }
    DensityMatrix density() const override { return spin_half_components_to_density(x_); }
    SpinComponents components() const override { return {x_[1], x_[2], x_[0]}; }
    double purity() const override {
        return 0.5 + 2.0 * (x_[0] * x_[0] + x_[1] * x_[1] + x_[2] * x_[2]);
    }
};

class Spin1ComponentStepper final : public ItoStepper {
public:
    Spin1ComponentStepper(const SpinSystem& sys, const ModelParams& params, const DensityMatrix& rho0)
        : ItoStepper(ModelKind::components, spin1_component_system(params),
                     spin1_components_from_density(rho0, sys), params.dt) {}

    const std::vector<std::string>& state_names() const override { return spin1_component_names(); }
    DensityMatrix density() const override { return spin1_components_to_density(x_); }
    SpinComponents components() const override { return {x_[1], x_[2], x_[0]}; }
    double purity() const override {
        const DensityMatrix rho = density();
        return (rho * rho).trace().real();
    }
};

template <template <int> class T>
std::unique_ptr<Stepper> by_dim(const SpinSystem& sys, const ModelParams& params,
                                const DensityMatrix& rho0) {
    switch (sys.dim) {
    case 2: return std::make_unique<T<2>>(sys, params, rho0);
    case 3: return std::make_unique<T<3>>(sys, params, rho0);
    case 4: return std::make_unique<T<4>>(sys, params, rho0);
    }
    throw std::invalid_argument("unsupported Hilbert dimension");
}

} // namespace

std::unique_ptr<Stepper> make_stepper(ModelKind kind, const SpinSystem& sys, const ModelParams& params,
                                      const DensityMatrix& rho0) {
    params.validate();
    if (const auto why = model_unavailable_reason(kind, sys.spin); !why.empty())
        throw std::invalid_argument(why);
    if (rho0.rows() != sys.dim || rho0.cols() != sys.dim)
        throw std::invalid_argument("initial state dimension does not match the spin");

    switch (kind) {
    case ModelKind::matrix: return by_dim<MatrixStepper>(sys, params, rho0);
    case ModelKind::kraus: return by_dim<KrausStepper>(sys, params, rho0);
    case ModelKind::coherence: {
        const CoherenceModel model = default_coherence_model(sys.dim);
        ItoSystem system = sys.dim == 2   ? ItoSystem{}
                           : sys.dim == 3 ? spin1_coherence_system(params)
                                          : spin32_coherence_system(params);
        if (sys.dim == 2) {
            // Bloch vector r = 2 (<Sx>, <Sy>, <Sz>): same equations as the components, rescaled.
            system.dimension = 3;
            system.channels = 1;
            system.evaluate = [params](const RVector& r, ItoCoefficients& out) {
                RVector c(3);
                c << 0.5 * r[2], 0.5 * r[0], 0.5 * r[1];
                ItoCoefficients tmp;
                spin_half_component_coefficients(c, params, tmp);
                out.drift.resize(3);
                out.diffusion.resize(3, 1);
                out.drift << 2.0 * tmp.drift[1], 2.0 * tmp.drift[2], 2.0 * tmp.drift[0];
                out.diffusion(0, 0) = 2.0 * tmp.diffusion(1, 0);
                out.diffusion(1, 0) = 2.0 * tmp.diffusion(2, 0);
                out.diffusion(2, 0) = 2.0 * tmp.diffusion(0, 0);
            };
        }
        return std::make_unique<CoherenceStepper>(std::move(system), model, sys, rho0, params.dt);
    }
    case ModelKind::components:
        if (sys.dim == 2) return std::make_unique<HalfComponentStepper>(sys, params, rho0);
        return std::make_unique<Spin1ComponentStepper>(sys, params, rho0);
    case ModelKind::rabi_angle: {
        const auto c = spin_components(rho0, sys);
        if (std::abs(qsdspin::purity(rho0) - 1.0) > 1e-9 || std::abs(c.sx) > 1e-9)
            throw std::invalid_argument(
                "rabi-angle model needs a pure initial state with <Sx> = 0");
        return std::make_unique<RabiStepper>(params, rho0);
    }
    }
    throw std::invalid_argument("unknown model kind");
}

} // namespace qsdspin
