// rng.hpp: reproducible per-trajectory random streams and Wiener paths.

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace qsdspin {

/// What a stream is used for. Different purposes of the same (seed, stream)
/// pair are statistically independent, so e.g. drawing a random initial
/// state never shifts the noise sequence.
enum class StreamPurpose : std::uint32_t { noise = 0, initial_state = 1, bootstrap = 2 };

/// A 64-bit Mersenne Twister keyed by (seed, stream index, purpose) through
/// std::seed_seq; both are fully specified by the standard, so sequences are
/// bit-identical across platforms. Normals come from Box-Muller (a fixed
/// number of uniforms per pair, no rejection).
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream,
                 StreamPurpose purpose = StreamPurpose::noise);

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal.
    double normal();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

struct NoisePath {
    std::size_t n_steps = 0;
    std::size_t n_channels = 0;
    double dt = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::vector<double> increments; // row-major n_steps x n_channels

    double operator()(std::size_t step, std::size_t channel) const {
        return increments[step * n_channels + channel];
    }
};

/// Wiener increments with mean 0 and variance dt. The draw order matches
/// what the trajectory steppers consume (step-major, channel-minor), so a
/// path generated here equals the noise a stepper sees for the same
/// (seed, stream).
NoisePath wiener_path(std::uint64_t seed, std::uint64_t stream, std::size_t n_steps,
                      std::size_t n_channels, double dt);

} // namespace qsdspin
