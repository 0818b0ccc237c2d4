#include "qsdspin/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qsdspin {

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream, StreamPurpose purpose) {
    const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
    const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq{lo(seed), hi(seed), lo(stream), hi(stream),
                      static_cast<std::uint32_t>(purpose), 0x51d5u};
    engine_.seed(seq);
}

double RandomStream::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform(); // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

NoisePath wiener_path(std::uint64_t seed, std::uint64_t stream, std::size_t n_steps,
                      std::size_t n_channels, double dt) {
    if (n_steps == 0) throw std::invalid_argument("wiener_path: n_steps must be at least 1");
    if (n_channels == 0) throw std::invalid_argument("wiener_path: n_channels must be at least 1");
    if (!(dt > 0.0)) throw std::invalid_argument("wiener_path: dt must be positive");

    NoisePath path;
    path.n_steps = n_steps;
    path.n_channels = n_channels;
    path.dt = dt;
    path.seed = seed;
    path.stream = stream;
    path.increments.resize(n_steps * n_channels);

    RandomStream rng(seed, stream);
    const double scale = std::sqrt(dt);
    for (auto& w : path.increments) w = scale * rng.normal();
    return path;
}

} // namespace qsdspin
