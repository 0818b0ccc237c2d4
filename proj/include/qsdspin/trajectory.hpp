// trajectory.hpp: model kinds, initial states, steppers and the single
// trajectory / ensemble runners.

#pragma once

#include "qsdspin/qsd.hpp"
#include "qsdspin/record.hpp"
#include "qsdspin/rng.hpp"
#include "qsdspin/sde.hpp"
#include "qsdspin/spin_algebra.hpp"

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qsdspin {

enum class ModelKind { matrix, kraus, coherence, components, rabi_angle };

std::string_view to_string(ModelKind kind);
/// Accepts "matrix", "kraus", "coherence", "components", "rabi-angle" (or "rabi_angle").
ModelKind parse_model_kind(std::string_view text);
/// Empty when the pair is supported, otherwise the reason it is not.
std::string model_unavailable_reason(ModelKind kind, Spin spin);

// --------------------------------------------------------------------------
// Initial states

struct InitialState {
    enum class Kind { eigenstate, mixed, coherence, density, uniform_angle };
    Kind kind = Kind::eigenstate;
    double m = 0.0;             // eigenstate: S_z eigenvalue
    std::vector<double> values; // coherence: full vector of the spin's default parametrization
    DensityMatrix rho;          // density

    static InitialState eigenstate(double m);
    static InitialState mixed();
    static InitialState coherence(std::vector<double> values);
    static InitialState density(DensityMatrix rho);
    static InitialState uniform_angle();

    /// "down" (lowest eigenstate), "up", "mixed", "uniform-angle", a number
    /// (eigenvalue, e.g. "-3/2" or "-1.5") or "cv:a,b,c,...".
    static InitialState parse(std::string_view text);
    std::string to_string() const;
};

/// The starting density matrix. uniform_angle draws phi on [0, 2pi) from the
/// initial_state purpose of (seed, stream) and is spin-1/2 only.
DensityMatrix resolve_initial_state(const InitialState& init, const SpinSystem& sys,
                                    std::uint64_t seed, std::uint64_t stream);

// --------------------------------------------------------------------------
// Steppers

/// One fixed-dt integrator bound to a model and a current state. Every
/// stepper consumes exactly channels() standard normals per step from a
/// RandomStream (the Kraus stepper maps the first through the normal CDF to
/// its branch-selection uniform), so steppers driven by the same stream see
/// the same noise.
class Stepper {
public:
    virtual ~Stepper() = default;

    virtual ModelKind kind() const = 0;
    virtual int channels() const { return 1; }
    /// Advance with explicit Wiener increments (channels() values).
    virtual void advance(std::span<const double> dW) = 0;
    void advance(RandomStream& rng);

    virtual const std::vector<std::string>& state_names() const = 0;
    virtual void state_values(std::vector<double>& out) const = 0;
    virtual DensityMatrix density() const = 0;
    virtual SpinComponents components() const = 0;
    virtual double purity() const = 0;
    /// Model-specific bookkeeping (matrix stepper trace corrections).
    virtual long long renormalizations() const { return 0; }

    long long steps() const { return steps_; }
    double dt() const { return dt_; }

protected:
    long long steps_ = 0;
    double dt_ = 0.0;
};

std::unique_ptr<Stepper> make_stepper(ModelKind kind, const SpinSystem& sys,
                                      const ModelParams& params, const DensityMatrix& rho0);

// --------------------------------------------------------------------------
// Runners

struct RunOptions {
    int stride = 10;
    std::uint64_t stream = 0;
    bool record_densities = false;
    bool check_physicality = true;
    double positivity_warn = 1e-8; // counted in meta.positivity_warnings
    /// Hard failure threshold. Negative means "model default" (see
    /// default_positivity_fail).
    double positivity_fail = -1.0;
};

/// The hard positivity floor used when RunOptions::positivity_fail < 0:
/// 1e-6 for the Kraus map, 0.5 for the Euler-Maruyama models (a divergence
/// guard: their pathwise positivity defect is O(alpha^2 dt) per step and is
/// reported through the warning count instead).
double default_positivity_fail(ModelKind kind, Spin spin, const ModelParams& params);

/// floor(duration / dt) steps, sampled at t = 0 and every stride-th step.
/// Throws NumericalError (with step index and state) when a sampled state
/// has min eigenvalue below -positivity_fail or goes non-finite.
TrajectoryRecord run_trajectory(ModelKind kind, Spin spin, const ModelParams& params,
                                const InitialState& init, const RunOptions& options = {});

struct EnsembleOptions {
    std::size_t n_traj = 1;
    int stride = 10;
    int threads = 0; // 0 = hardware concurrency
    std::uint64_t first_stream = 0;
    bool keep_trajectories = false;
    bool check_physicality = true;
};

struct EnsembleResult {
    std::vector<double> times;
    std::vector<double> mean_sx, mean_sy, mean_sz, mean_purity;
    std::vector<double> se_sx, se_sy, se_sz, se_purity; // standard errors of the means
    std::vector<DensityMatrix> mean_density;
    std::size_t n_traj = 0;
    long long positivity_warnings = 0;
    double min_eigenvalue = 1.0;
    std::vector<TrajectoryRecord> trajectories; // filled if keep_trajectories
};

struct TrajectoryFailure {
    std::size_t index;
    long long step;
    std::string message;
};

class EnsembleError : public NumericalError {
public:
    explicit EnsembleError(std::vector<TrajectoryFailure> failures);
    const std::vector<TrajectoryFailure>& failures() const noexcept { return failures_; }

private:
    std::vector<TrajectoryFailure> failures_;
};

/// Trajectory i uses stream first_stream + i. Reduction is over fixed blocks
/// of trajectories in index order, so results do not depend on the thread
/// count. Throws EnsembleError listing every failed trajectory.
EnsembleResult run_ensemble(ModelKind kind, Spin spin, const ModelParams& params,
                            const InitialState& init, const EnsembleOptions& options);

} // namespace qsdspin
