#include "qsdspin/trajectory.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

namespace qsdspin {

namespace {

constexpr std::size_t kBlock = 64;

std::string describe(const std::vector<TrajectoryFailure>& failures) {
    std::string msg = std::to_string(failures.size()) + " trajectory(ies) failed; first: #" +
                      std::to_string(failures.front().index) + " at step " +
                      std::to_string(failures.front().step) + ": " + failures.front().message;
    return msg;
}

// Running sums over one block of trajectories.
struct Partial {
    std::vector<double> s1, s2; // per sample: sx, sy, sz, purity
    std::vector<DensityMatrix> rho;
    long long warnings = 0;
    double min_eig = 1.0;

    void init(std::size_t samples, int dim) {
        s1.assign(4 * samples, 0.0);
        s2.assign(4 * samples, 0.0);
        rho.assign(samples, CMatrix::Zero(dim, dim));
    }
};

} // namespace

EnsembleError::EnsembleError(std::vector<TrajectoryFailure> failures)
    : NumericalError(describe(failures), failures.front().step, {}), failures_(std::move(failures)) {}

EnsembleResult run_ensemble(ModelKind kind, Spin spin, const ModelParams& params,
                            const InitialState& init, const EnsembleOptions& options) {
    if (options.n_traj < 1) throw std::invalid_argument("n_traj must be >= 1");
    if (options.stride < 1) throw std::invalid_argument("stride must be >= 1");
    params.validate();
    if (const auto why = model_unavailable_reason(kind, spin); !why.empty())
        throw std::invalid_argument(why);

    const std::size_t n = options.n_traj;
    const std::size_t samples = static_cast<std::size_t>(params.n_steps() / options.stride) + 1;
    const std::size_t n_blocks = (n + kBlock - 1) / kBlock;
    const int dim = spin.dim();

    std::vector<Partial> partials(n_blocks);
    std::vector<TrajectoryRecord> kept(options.keep_trajectories ? n : 0);
    std::vector<TrajectoryFailure> failures;
    std::mutex failure_mutex;
    std::atomic<std::size_t> next_block{0};

    auto worker = [&] {
        for (;;) {
            const std::size_t b = next_block.fetch_add(1);
            if (b >= n_blocks) return;
            Partial& part = partials[b];
            part.init(samples, dim);
            const std::size_t end = std::min(n, (b + 1) * kBlock);
            for (std::size_t i = b * kBlock; i < end; ++i) {
                RunOptions ro;
                ro.stride = options.stride;
                ro.stream = options.first_stream + i;
                ro.record_densities = true;
                ro.check_physicality = options.check_physicality;
                TrajectoryRecord rec;
                try {
                    rec = run_trajectory(kind, spin, params, init, ro);
                } catch (const NumericalError& e) {
                    std::lock_guard lock(failure_mutex);
                    failures.push_back({i, e.step(), e.what()});
                    continue;
                } catch (const std::exception& e) {
                    std::lock_guard lock(failure_mutex);
                    failures.push_back({i, -1, e.what()});
                    continue;
                }
                for (std::size_t t = 0; t < samples; ++t) {
                    const auto& c = rec.components[t];
                    const double v[4] = {c.sx, c.sy, c.sz, rec.purity[t]};
                    for (int q = 0; q < 4; ++q) {
                        part.s1[4 * t + q] += v[q];
                        part.s2[4 * t + q] += v[q] * v[q];
                    }
                    part.rho[t] += rec.densities[t];
                }
                part.warnings += rec.meta.positivity_warnings;
                part.min_eig = std::min(part.min_eig, rec.meta.min_eigenvalue);
                if (options.keep_trajectories) {
                    rec.densities.clear();
                    kept[i] = std::move(rec);
                }
            }
        }
    };

    unsigned threads = options.threads > 0 ? static_cast<unsigned>(options.threads)
                                           : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_blocks));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    if (!failures.empty()) {
        std::sort(failures.begin(), failures.end(),
                  [](const auto& a, const auto& b) { return a.index < b.index; });
        throw EnsembleError(std::move(failures));
    }

    // Block partials are combined in block order.
    std::vector<double> s1(4 * samples, 0.0), s2(4 * samples, 0.0);
    std::vector<DensityMatrix> rho(samples, CMatrix::Zero(dim, dim));
    EnsembleResult out;
    for (const auto& part : partials) {
        for (std::size_t k = 0; k < s1.size(); ++k) {
            s1[k] += part.s1[k];
            s2[k] += part.s2[k];
        }
        for (std::size_t t = 0; t < samples; ++t) rho[t] += part.rho[t];
        out.positivity_warnings += part.warnings;
        out.min_eigenvalue = std::min(out.min_eigenvalue, part.min_eig);
    }

    const double nn = static_cast<double>(n);
    out.n_traj = n;
    out.times.resize(samples);
    std::vector<double>* means[4] = {&out.mean_sx, &out.mean_sy, &out.mean_sz, &out.mean_purity};
    std::vector<double>* ses[4] = {&out.se_sx, &out.se_sy, &out.se_sz, &out.se_purity};
    for (int q = 0; q < 4; ++q) {
        means[q]->resize(samples);
        ses[q]->resize(samples);
    }
    for (std::size_t t = 0; t < samples; ++t) {
        out.times[t] = static_cast<double>(t) * static_cast<double>(options.stride) * params.dt;
        for (int q = 0; q < 4; ++q) {
            const double mean = s1[4 * t + q] / nn;
            (*means[q])[t] = mean;
            if (n > 1) {
                const double var = std::max(0.0, (s2[4 * t + q] - nn * mean * mean) / (nn - 1.0));
                (*ses[q])[t] = std::sqrt(var / nn);
            } else {
                (*ses[q])[t] = 0.0;
            }
        }
        rho[t] /= nn;
    }
    out.mean_density = std::move(rho);
    out.trajectories = std::move(kept);
    return out;
}

} // namespace qsdspin
