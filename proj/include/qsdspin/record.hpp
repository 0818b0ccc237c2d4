// record.hpp: sampled trajectory data shared by the engine, analysis and IO.

#pragma once

#include "qsdspin/sde.hpp"
#include "qsdspin/spin_algebra.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qsdspin {

struct TrajectoryMetadata {
    ModelParams params;
    std::string model_kind;
    Spin spin;
    int stride = 1;
    std::uint64_t stream = 0;
    long long steps = 0;
    long long renormalizations = 0;    // matrix stepper trace corrections
    long long positivity_warnings = 0; // samples with min eigenvalue in (-hard, -soft)
    double min_eigenvalue = 1.0;       // smallest eigenvalue seen at checked samples
    long long step_halvings = 0;       // deterministic integrator only
};

/// Samples taken every `stride` steps (and at t = 0). Times are uniformly
/// spaced by stride * dt.
struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<std::string> state_names;
    std::vector<double> states; // row-major, size() x state_names.size()
    std::vector<SpinComponents> components;
    std::vector<double> purity;
    std::vector<DensityMatrix> densities; // optional, filled on request
    TrajectoryMetadata meta;

    std::size_t size() const { return times.size(); }
    std::size_t state_width() const { return state_names.size(); }
    std::span<const double> state(std::size_t i) const {
        return {states.data() + i * state_width(), state_width()};
    }
    std::vector<double> sz() const;
    std::vector<double> sy() const;
    std::vector<double> sx() const;
    /// Column of the state block by name; throws std::out_of_range.
    std::vector<double> state_column(const std::string& name) const;
};

} // namespace qsdspin
