// validate.hpp: the invariant suite behind `qsdspin validate`.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qsdspin {

struct ValidationCheck {
    std::string name;
    bool passed = false;
    double value = 0.0;     // measured quantity
    double tolerance = 0.0; // bound it is compared against
    std::string detail;
};

struct ValidationOptions {
    std::uint64_t seed = 20240611;
    int threads = 0;
};

/// Fixed points, trace preservation, Kraus positivity, coefficient
/// projections, pathwise model equivalence and the Lindblad oracle.
/// Each check is independent; a throwing check is reported as failed.
std::vector<ValidationCheck> run_validation_suite(const ValidationOptions& options = {},
                                                  const std::function<void(const ValidationCheck&)>& progress = {});

} // namespace qsdspin
