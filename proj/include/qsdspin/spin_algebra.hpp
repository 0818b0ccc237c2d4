// spin_algebra.hpp: spin operators, generator bases, coherence-vector
// parametrizations and physicality diagnostics for spin 1/2, 1 and 3/2.

#pragma once

#include "qsdspin/types.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace qsdspin {

/// A spin quantum number stored as twice its value (1, 2 or 3).
class Spin {
public:
    constexpr Spin() = default;
    static Spin from_twice(int twice);
    /// Accepts "1/2", "1", "3/2", "0.5", "1.5".
    static Spin parse(std::string_view text);

    static Spin half() { return from_twice(1); }
    static Spin one() { return from_twice(2); }
    static Spin three_halves() { return from_twice(3); }

    int twice() const noexcept { return twice_; }
    double value() const noexcept { return 0.5 * twice_; }
    int dim() const noexcept { return twice_ + 1; }
    std::string to_string() const;

    friend bool operator==(Spin a, Spin b) noexcept { return a.twice_ == b.twice_; }

private:
    constexpr explicit Spin(int twice) : twice_(twice) {}
    int twice_ = 1;
};

struct SpinSystem {
    Spin spin;
    int dim = 2;
    CMatrix sx, sy, sz;
    std::vector<double> sz_eigenvalues; // descending, m = +spin ... -spin
};

/// Standard angular-momentum matrices in the S_z eigenbasis ordered
/// m = +spin ... -spin. Throws std::invalid_argument for other spins.
SpinSystem build_spin_system(Spin spin);

/// Projector |m><m| onto the S_z eigenstate with eigenvalue m.
DensityMatrix eigenprojector(const SpinSystem& sys, double m);
DensityMatrix maximally_mixed(const SpinSystem& sys);

// --------------------------------------------------------------------------
// Generator bases

enum class BasisKind { pauli, gell_mann, su2xsu2 };

struct GeneratorBasis {
    BasisKind kind;
    std::vector<CMatrix> matrices;
    double normalization; // Tr(G_i G_j) = normalization * delta_ij
};

GeneratorBasis generator_basis(BasisKind kind);

// --------------------------------------------------------------------------
// Coherence vectors

enum class CoherenceModel {
    rabi_angle, // phi, spin-1/2 pure states in the (y, z) plane
    bloch3,     // (x, y, z)
    gm8,        // (s, m, u, v, k, x, y, z)
    su15,       // (v, e, f, g, h, j, k, l, m, n, o, p, q, s, u)
};

struct CoherenceVector {
    CoherenceModel model;
    RVector values;
};

int model_size(CoherenceModel model);
int model_dim(CoherenceModel model);
const std::vector<std::string>& component_names(CoherenceModel model);
std::string_view to_string(CoherenceModel model);
/// The full (not reduced) coherence parametrization for a Hilbert dimension.
CoherenceModel default_coherence_model(int dim);

DensityMatrix coherence_to_density(const CoherenceVector& cv, const SpinSystem& sys);
/// Left inverse of coherence_to_density. Throws on non-Hermitian input or
/// when the model does not match the matrix dimension. For rabi_angle the
/// y-z projection of the Bloch vector defines phi in (-pi, pi].
CoherenceVector density_to_coherence(const DensityMatrix& rho, CoherenceModel model);

// --------------------------------------------------------------------------
// Observables

struct SpinComponents {
    double sx = 0.0;
    double sy = 0.0;
    double sz = 0.0;
};

SpinComponents spin_components(const DensityMatrix& rho, const SpinSystem& sys);
/// Closed forms in the coherence-vector variables.
SpinComponents spin_components(const CoherenceVector& cv, const SpinSystem& sys);

double purity(const DensityMatrix& rho);
double purity(const CoherenceVector& cv);

// --------------------------------------------------------------------------
// Physicality

struct PhysicalityReport {
    double trace_deviation = 0.0;
    double hermiticity_deviation = 0.0;
    std::vector<double> eigenvalues; // ascending
    double min_eigenvalue = 0.0;
    double det = 0.0;
    double log_det = 0.0; // -infinity when det <= 0
    bool passed = false;
};

/// Diagnostic only: never throws. Passes when the trace is within 1e-10 of
/// one, the matrix is Hermitian to 1e-12 and the smallest eigenvalue is at
/// least -tol.
PhysicalityReport check_physical(const DensityMatrix& rho, double tol = 1e-8);

/// Smallest eigenvalue of the Hermitian part of rho.
double min_eigenvalue(const DensityMatrix& rho);

} // namespace qsdspin
