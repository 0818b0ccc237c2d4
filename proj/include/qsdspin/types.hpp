// types.hpp: small dense linear-algebra aliases and the error types shared by
// every module.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace qsdspin {

using cplx = std::complex<double>;

// Hilbert dimensions never exceed 4 (spin 3/2); fixed maximum sizes keep
// every matrix on the stack.
inline constexpr int kMaxDim = 4;
inline constexpr int kMaxParams = 16;
inline constexpr int kMaxChannels = 4;

using CMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;
using RVector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxParams, 1>;
using NoiseMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxParams, kMaxChannels>;

// The physical state rho. Invariants (Hermitian, unit trace, positive) are
// checked by check_physical rather than enforced by the type.
using DensityMatrix = CMatrix;

/// Raised on malformed configuration. Carries the offending key and the
/// 1-based line number (0 when the problem is not tied to a line).
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, int line, const std::string& message)
        : std::runtime_error(message), key_(std::move(key)), line_(line) {}

    const std::string& key() const noexcept { return key_; }
    int line() const noexcept { return line_; }

private:
    std::string key_;
    int line_;
};

/// Raised when an integration produces non-finite values or leaves the
/// physical state space beyond tolerance.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& message, long long step, std::string state_dump)
        : std::runtime_error(message), step_(step), state_(std::move(state_dump)) {}

    long long step() const noexcept { return step_; }
    const std::string& state_dump() const noexcept { return state_; }

private:
    long long step_;
    std::string state_;
};

} // namespace qsdspin
