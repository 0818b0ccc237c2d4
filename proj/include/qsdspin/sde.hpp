// sde.hpp: model parameters, generic Ito systems and the Euler-Maruyama step.

#pragma once

#include "qsdspin/types.hpp"

#include <cstdint>
#include <functional>

namespace qsdspin {

struct ModelParams {
    double epsilon = 1.0; // Rabi drive, H = epsilon * S_x
    double alpha = 0.0;   // measurement coupling, L = alpha * S_z
    double dt = 1e-4;
    double duration = 10.0;
    std::uint64_t seed = 1;

    /// Throws std::invalid_argument when an invariant is violated.
    /// epsilon = 0 is accepted (measurement-only runs).
    void validate() const;
    /// floor(duration / dt), robust to representation error in the ratio.
    long long n_steps() const;
};

struct ItoCoefficients {
    RVector drift;         // A_i
    NoiseMatrix diffusion; // B_ij, n x channels
};

/// dx_i = A_i(x) dt + sum_j B_ij(x) dW_j. The evaluator must be pure.
struct ItoSystem {
    int dimension = 0;
    int channels = 1;
    std::function<void(const RVector& x, ItoCoefficients& out)> evaluate;
};

/// x' = x + A(x) dt + B(x) dW. Throws NumericalError (with a dump of x and
/// the coefficients) if the evaluator returns non-finite values.
RVector euler_maruyama_step(const ItoSystem& system, const RVector& x, double dt,
                            const RVector& dW);

/// In-place variant reusing a coefficient buffer; used by the trajectory loop.
void euler_maruyama_step_inplace(const ItoSystem& system, RVector& x, double dt, const RVector& dW,
                                 ItoCoefficients& scratch, long long step_index = -1);

} // namespace qsdspin
