// spin_models.hpp: Ito coefficient evaluators for the parametrized models.
//
// State layouts:
//   rabi angle        (phi)
//   spin-1/2 comps    (<Sz>, <Sx>, <Sy>)
//   spin-1 gm8        (s, m, u, v, k, x, y, z)
//   spin-1 comps      (<Sz>, <Sx>, <Sy>, <Sy^2>, <Sz^2>, <{Sy,Sz}>, <{Sz,Sx}>,
//                      Re<SxSySz>, Im<SxSySz>, <{Sx,Sy}>)
//   spin-3/2 su15     (v, e, f, g, h, j, k, l, m, n, o, p, q, s, u)

#pragma once

#include "qsdspin/sde.hpp"
#include "qsdspin/spin_algebra.hpp"

#include <string>
#include <vector>

namespace qsdspin {

struct ScalarCoefficients {
    double drift = 0.0;
    double diffusion = 0.0;
};

/// d(phi) = (eps - alpha^2 sin(2 phi) / 4) dt - alpha sin(phi) dW.
ScalarCoefficients rabi_angle_coefficients(double phi, const ModelParams& params);

void spin_half_component_coefficients(const RVector& x, const ModelParams& params,
                                      ItoCoefficients& out);

void spin1_coherence_coefficients(const RVector& r, const ModelParams& params, ItoCoefficients& out);

/// The eight coupled component equations with <SxSySz> split into real and
/// imaginary parts, closed by a tenth variable <{Sx,Sy}>:
///   d<{Sz,Sx}> gains + eps <{Sx,Sy}> dt,
///   d<{Sx,Sy}> = -eps <{Sz,Sx}> dt - 2 alpha^2 <{Sx,Sy}> dt - 2 alpha <Sz><{Sx,Sy}> dW.
/// Both extra terms vanish on the <Sx> = 0 sector.
void spin1_component_coefficients(const RVector& c, const ModelParams& params, ItoCoefficients& out);

/// Projection of the unravelled equation on the SU(2)xSU(2) basis, with H = +eps S_x.
void spin32_coherence_coefficients(const RVector& s, const ModelParams& params, ItoCoefficients& out);

/// dP = alpha^2 (1 - r_z^2)(1 - P) dt + 2 alpha r_z (1 - P) dW.
double spin_half_purity_increment(const RVector& r, double purity, const ModelParams& params,
                                  double dW);

ItoSystem rabi_angle_system(const ModelParams& params);
ItoSystem spin_half_component_system(const ModelParams& params);
ItoSystem spin1_coherence_system(const ModelParams& params);
ItoSystem spin1_component_system(const ModelParams& params);
ItoSystem spin32_coherence_system(const ModelParams& params);

// --------------------------------------------------------------------------
// Component-model state maps

inline constexpr int kSpin1ComponentSize = 10;

const std::vector<std::string>& spin_half_component_names();
const std::vector<std::string>& spin1_component_names();

RVector spin_half_components_from_density(const DensityMatrix& rho, const SpinSystem& sys);
DensityMatrix spin_half_components_to_density(const RVector& x);

/// Expectations of the ten component operators.
RVector spin1_components_from_density(const DensityMatrix& rho, const SpinSystem& sys);
/// Reconstructs rho from <Sz>, <Sx>, <Sy>, <Sy^2>, <Sz^2> and the three
/// symmetrized products (the <SxSySz> pair is redundant for spin 1).
DensityMatrix spin1_components_to_density(const RVector& c);

} // namespace qsdspin
