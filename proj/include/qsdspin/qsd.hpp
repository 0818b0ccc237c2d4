// qsd.hpp: density-matrix level dynamics. The unravelled stochastic master
// equation (Euler-Maruyama), the positivity-preserving Kraus-map stepper and
// the deterministic Lindblad integrator.

#pragma once

#include "qsdspin/record.hpp"
#include "qsdspin/sde.hpp"
#include "qsdspin/spin_algebra.hpp"

#include <span>
#include <vector>

namespace qsdspin {

/// Hamiltonian plus Lindblad channels, with the products every stepper needs
/// precomputed. Construction throws std::invalid_argument for a
/// non-Hermitian Hamiltonian or mismatched dimensions.
class OpenSystem {
public:
    OpenSystem(CMatrix hamiltonian, std::vector<CMatrix> lindblad);

    int dim() const { return static_cast<int>(h_.rows()); }
    int channels() const { return static_cast<int>(l_.size()); }
    const CMatrix& hamiltonian() const { return h_; }
    const CMatrix& lindblad(int k) const { return l_[k]; }
    const CMatrix& lindblad_adjoint(int k) const { return l_dag_[k]; }
    const CMatrix& lindblad_dag_lindblad(int k) const { return l_dag_l_[k]; }

private:
    CMatrix h_;
    std::vector<CMatrix> l_, l_dag_, l_dag_l_;
};

/// H = epsilon S_x with the single channel L = alpha S_z.
OpenSystem spin_open_system(const SpinSystem& sys, const ModelParams& params);

struct StepCounters {
    long long steps = 0;
    long long renormalizations = 0;
};

/// The increment d(rho) of the unravelled equation for one step:
///   -i[H, rho] dt + sum_k (L rho L^+ - {L^+ L, rho}/2) dt
///   + sum_k (rho L^+ + L rho - Tr[rho (L + L^+)] rho) dW_k.
/// Its trace vanishes in exact arithmetic.
DensityMatrix qsd_increment(const DensityMatrix& rho, const OpenSystem& sys, double dt,
                            std::span<const double> dW);

/// rho + d(rho), Hermitized. Rounding drift of the trace beyond 1e-12 is
/// removed by renormalization and counted. Throws NumericalError on
/// non-finite entries.
DensityMatrix qsd_matrix_step(const DensityMatrix& rho, const OpenSystem& sys, double dt,
                              std::span<const double> dW, StepCounters* counters = nullptr);

DensityMatrix qsd_matrix_step(const DensityMatrix& rho, const CMatrix& hamiltonian,
                              const std::vector<CMatrix>& lindblad, double dt,
                              std::span<const double> dW);

// --------------------------------------------------------------------------
// Kraus map

/// M_{+-k} = (I + A_{+-k}) / sqrt(N), A_{+-k} = -iH dt - L^+L dt / 2 +- L sqrt(dt),
/// N = 2 * channels. Ordered +0, -0, +1, -1, ...
std::vector<CMatrix> kraus_operators(const OpenSystem& sys, double dt);

/// Frobenius norm of sum_k M_k^+ M_k - I.
double kraus_completeness_residual(const OpenSystem& sys, double dt);

struct KrausOutcome {
    DensityMatrix rho;
    int branch = 0;                    // index into kraus_operators()
    std::vector<double> probabilities; // renormalized to sum to one
};

/// Chooses branch k with probability Tr(M_k rho M_k^+) / sum_j Tr(M_j rho M_j^+)
/// using `uniform` in [0, 1) and returns M_k rho M_k^+ / Tr(M_k rho M_k^+).
/// Throws std::invalid_argument if every branch has non-positive weight.
KrausOutcome kraus_step(const DensityMatrix& rho, const OpenSystem& sys, double dt, double uniform);

/// Same as kraus_step but with precomputed operators; the hot path.
int kraus_step_inplace(DensityMatrix& rho, std::span<const CMatrix> kraus, double uniform);

// --------------------------------------------------------------------------
// Deterministic Lindblad evolution

DensityMatrix lindblad_rhs(const DensityMatrix& rho, const OpenSystem& sys);

/// Classical RK4 on the Lindblad equation. A step whose trace error exceeds
/// 1e-8 is redone as two half steps (recursively); halvings are counted in
/// meta.step_halvings. Records every `stride` steps, with densities.
TrajectoryRecord lindblad_integrate(const DensityMatrix& rho0, const OpenSystem& open,
                                    const SpinSystem& spin, double dt, double duration,
                                    int stride = 1);

} // namespace qsdspin
