#include "qsdspin/sde.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace qsdspin {

void ModelParams::validate() const {
    if (!std::isfinite(epsilon) || epsilon < 0.0)
        throw std::invalid_argument("epsilon must be a finite non-negative number");
    if (!std::isfinite(alpha) || alpha < 0.0)
        throw std::invalid_argument("alpha must be a finite non-negative number");
    if (!std::isfinite(dt) || !(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!std::isfinite(duration) || duration < 0.0)
        throw std::invalid_argument("duration must be non-negative");
    if (duration > 0.0 && dt > duration) throw std::invalid_argument("dt must not exceed duration");
}

long long ModelParams::n_steps() const {
    const double ratio = duration / dt;
    const double nearest = std::round(ratio);
    if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, nearest))
        return static_cast<long long>(nearest);
    return static_cast<long long>(std::floor(ratio));
}

namespace {

std::string dump(const RVector& x, const ItoCoefficients& c) {
    std::ostringstream out;
    out.precision(17);
    out << "x=[";
    for (int i = 0; i < x.size(); ++i) out << (i ? "," : "") << x[i];
    out << "] A=[";
    for (int i = 0; i < c.drift.size(); ++i) out << (i ? "," : "") << c.drift[i];
    out << "] B=[";
    for (int i = 0; i < c.diffusion.rows(); ++i)
        for (int j = 0; j < c.diffusion.cols(); ++j)
            out << ((i || j) ? "," : "") << c.diffusion(i, j);
    out << "]";
    return out.str();
}

} // namespace

void euler_maruyama_step_inplace(const ItoSystem& system, RVector& x, double dt, const RVector& dW,
                                 ItoCoefficients& scratch, long long step_index) {
    if (x.size() != system.dimension || dW.size() != system.channels)
        throw std::invalid_argument("euler_maruyama_step: inconsistent dimensions");
    system.evaluate(x, scratch);
    if (!scratch.drift.allFinite() || !scratch.diffusion.allFinite())
        throw NumericalError("non-finite SDE coefficients", step_index, dump(x, scratch));
    x.noalias() += scratch.drift * dt;
    x.noalias() += scratch.diffusion * dW;
}

RVector euler_maruyama_step(const ItoSystem& system, const RVector& x, double dt,
                            const RVector& dW) {
    RVector out = x;
    ItoCoefficients scratch;
    euler_maruyama_step_inplace(system, out, dt, dW, scratch);
    return out;
}

} // namespace qsdspin
