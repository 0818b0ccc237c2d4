#include "qsdspin/analysis.hpp"
#include "qsdspin/rng.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace qsdspin {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

double wrap_angle(double phi) {
    double w = std::fmod(phi, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    if (w >= kTwoPi) w = 0.0;
    return w;
}

ChiSquareResult finish(double stat, int dof) {
    ChiSquareResult r;
    r.statistic = stat;
    r.dof = dof;
    r.p_value = dof > 0 ? boost::math::cdf(boost::math::complement(
                              boost::math::chi_squared_distribution<double>(dof), stat))
                        : 1.0;
    return r;
}

std::vector<double> histogram(const std::vector<std::vector<double>>& series, int n_bins,
                              double from, double to) {
    std::vector<double> counts(n_bins, 0.0);
    const double width = kTwoPi / n_bins;
    for (const auto& s : series) {
        const std::size_t a = static_cast<std::size_t>(std::floor(from * static_cast<double>(s.size())));
        const std::size_t b = static_cast<std::size_t>(std::floor(to * static_cast<double>(s.size())));
        for (std::size_t i = a; i < b; ++i) {
            int bin = static_cast<int>(wrap_angle(s[i]) / width);
            counts[std::min(bin, n_bins - 1)] += 1.0;
        }
    }
    return counts;
}

} // namespace

// --------------------------------------------------------------------------
// Vicinities

VicinitySpec VicinitySpec::for_spin(Spin spin, double half_width) {
    VicinitySpec v;
    v.eigenvalues = build_spin_system(spin).sz_eigenvalues;
    v.half_width = half_width;
    v.validate();
    return v;
}

void VicinitySpec::validate() const {
    if (eigenvalues.empty()) throw std::invalid_argument("vicinity: no eigenvalues");
    if (!(half_width > 0.0)) throw std::invalid_argument("vicinity: half_width must be positive");
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < eigenvalues.size(); ++i)
        for (std::size_t j = i + 1; j < eigenvalues.size(); ++j)
            gap = std::min(gap, std::abs(eigenvalues[i] - eigenvalues[j]));
    if (!(half_width < 0.5 * gap))
        throw std::invalid_argument("vicinity: half_width must be below half the eigenvalue gap");
}

int VicinitySpec::locate(double sz) const {
    for (std::size_t i = 0; i < eigenvalues.size(); ++i)
        if (std::abs(sz - eigenvalues[i]) <= half_width) return static_cast<int>(i);
    return -1;
}

std::vector<Residence> residence_probabilities(std::span<const double> sz, const VicinitySpec& spec) {
    spec.validate();
    if (sz.empty()) throw std::invalid_argument("residence_probabilities: empty trajectory");
    std::vector<Residence> out(spec.eigenvalues.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i].eigenvalue = spec.eigenvalues[i];
    for (double v : sz) {
        const int k = spec.locate(v);
        if (k >= 0) ++out[k].samples;
    }
    for (auto& r : out) r.probability = static_cast<double>(r.samples) / static_cast<double>(sz.size());
    return out;
}

std::vector<Residence> residence_probabilities(const TrajectoryRecord& rec, const VicinitySpec& spec) {
    const auto sz = rec.sz();
    return residence_probabilities(std::span<const double>(sz), spec);
}

// --------------------------------------------------------------------------
// Return times

std::vector<ReturnTimeStats> mean_return_times(std::span<const double> sz, double sample_dt,
                                               const VicinitySpec& spec) {
    spec.validate();
    if (!(sample_dt > 0.0)) throw std::invalid_argument("mean_return_times: sample spacing must be positive");
    const std::size_t n_eig = spec.eigenvalues.size();

    enum class Phase { never, inside, out_unarmed, out_armed };
    std::vector<Phase> phase(n_eig, Phase::never);
    std::vector<std::size_t> exit_index(n_eig, 0);
    std::vector<double> sum(n_eig, 0.0), sum2(n_eig, 0.0);
    std::vector<ReturnTimeStats> out(n_eig);
    for (std::size_t k = 0; k < n_eig; ++k) out[k].eigenvalue = spec.eigenvalues[k];

    for (std::size_t i = 0; i < sz.size(); ++i) {
        const int where = spec.locate(sz[i]);
        for (std::size_t k = 0; k < n_eig; ++k) {
            const bool here = where == static_cast<int>(k);
            switch (phase[k]) {
            case Phase::never:
                if (here) phase[k] = Phase::inside;
                break;
            case Phase::inside:
                if (!here) {
                    phase[k] = where >= 0 ? Phase::out_armed : Phase::out_unarmed;
                    exit_index[k] = i;
                    ++out[k].exits;
                }
                break;
            case Phase::out_unarmed:
            case Phase::out_armed:
                if (here) {
                    if (phase[k] == Phase::out_armed) {
                        const double d = static_cast<double>(i - exit_index[k]) * sample_dt;
                        sum[k] += d;
                        sum2[k] += d * d;
                        ++out[k].count;
                    }
                    phase[k] = Phase::inside;
                } else if (where >= 0) {
                    phase[k] = Phase::out_armed;
                }
                break;
            }
        }
    }

    for (std::size_t k = 0; k < n_eig; ++k) {
        auto& r = out[k];
        const double c = static_cast<double>(r.count);
        r.mean = r.count ? sum[k] / c : kNaN;
        if (r.count >= 2) {
            const double var = std::max(0.0, (sum2[k] - c * r.mean * r.mean) / (c - 1.0));
            r.standard_error = std::sqrt(var / c);
        } else {
            r.standard_error = kNaN;
        }
    }
    return out;
}

std::vector<ReturnTimeStats> mean_return_times(const TrajectoryRecord& rec, const VicinitySpec& spec) {
    if (rec.size() < 2) throw std::invalid_argument("mean_return_times: need at least two samples");
    const auto sz = rec.sz();
    return mean_return_times(std::span<const double>(sz), rec.times[1] - rec.times[0], spec);
}

ReturnTimeStats pool_return_times(std::span<const ReturnTimeStats> parts) {
    ReturnTimeStats out;
    if (parts.empty()) return out;
    out.eigenvalue = parts.front().eigenvalue;
    double sum = 0.0, sum2 = 0.0;
    for (const auto& p : parts) {
        out.exits += p.exits;
        if (p.count == 0) continue;
        const double c = static_cast<double>(p.count);
        sum += p.mean * c;
        // Recover the per-part second moment from its standard error.
        const double var = p.count >= 2 ? p.standard_error * p.standard_error * c : 0.0;
        sum2 += (c - 1.0) * var + c * p.mean * p.mean;
        out.count += p.count;
    }
    const double c = static_cast<double>(out.count);
    out.mean = out.count ? sum / c : kNaN;
    out.standard_error =
        out.count >= 2 ? std::sqrt(std::max(0.0, (sum2 - c * out.mean * out.mean) / (c - 1.0)) / c) : kNaN;
    return out;
}

// --------------------------------------------------------------------------
// Angle statistics

std::vector<double> AngleHistogram::centres() const {
    std::vector<double> c(counts.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = 0.5 * (edges[i] + edges[i + 1]);
    return c;
}

double stationary_angle_pdf(double phi, double alpha, double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("stationary_angle_pdf: epsilon must be positive");
    return (1.0 + 3.0 * alpha * alpha / (4.0 * epsilon) * std::sin(2.0 * phi)) / kTwoPi;
}

AngleHistogram angle_pdf(const std::vector<std::vector<double>>& phi_series, int n_bins, double alpha,
                         double epsilon, double burn_in) {
    if (n_bins < 8) throw std::invalid_argument("angle_pdf: need at least 8 bins");
    if (!(burn_in >= 0.0 && burn_in < 1.0)) throw std::invalid_argument("angle_pdf: burn-in must be in [0, 1)");
    AngleHistogram h;
    h.counts = histogram(phi_series, n_bins, burn_in, 1.0);
    h.n_samples = static_cast<std::size_t>(std::accumulate(h.counts.begin(), h.counts.end(), 0.0));
    if (h.n_samples == 0) throw std::invalid_argument("angle_pdf: no samples after burn-in");
    h.bin_width = kTwoPi / n_bins;
    h.edges.resize(n_bins + 1);
    for (int i = 0; i <= n_bins; ++i) h.edges[i] = h.bin_width * i;
    h.density.resize(n_bins);
    for (int i = 0; i < n_bins; ++i)
        h.density[i] = h.counts[i] / (static_cast<double>(h.n_samples) * h.bin_width);
    if (epsilon > 0.0)
        for (double c : h.centres()) h.reference.push_back(stationary_angle_pdf(c, alpha, epsilon));
    return h;
}

ChiSquareResult chi_square_uniformity(std::span<const double> counts) {
    if (counts.empty()) throw std::invalid_argument("chi_square_uniformity: no bins");
    const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
    const double expected = total / static_cast<double>(counts.size());
    double stat = 0.0;
    for (double c : counts) stat += (c - expected) * (c - expected) / expected;
    return finish(stat, static_cast<int>(counts.size()) - 1);
}

ChiSquareResult chi_square_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty()) throw std::invalid_argument("chi_square_two_sample: bin mismatch");
    const double na = std::accumulate(a.begin(), a.end(), 0.0);
    const double nb = std::accumulate(b.begin(), b.end(), 0.0);
    double stat = 0.0;
    int used = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double row = a[i] + b[i];
        if (row <= 0.0) continue;
        ++used;
        const double ea = row * na / (na + nb), eb = row * nb / (na + nb);
        stat += (a[i] - ea) * (a[i] - ea) / ea + (b[i] - eb) * (b[i] - eb) / eb;
    }
    return finish(stat, used - 1);
}

double chi_square_critical(int dof, double significance) {
    return boost::math::quantile(
        boost::math::complement(boost::math::chi_squared_distribution<double>(dof), significance));
}

ChiSquareResult angle_stationarity(const std::vector<std::vector<double>>& phi_series, int n_bins,
                                   double burn_in) {
    const double mid = burn_in + 0.5 * (1.0 - burn_in);
    const auto first = histogram(phi_series, n_bins, burn_in, mid);
    const auto second = histogram(phi_series, n_bins, mid, 1.0);
    return chi_square_two_sample(first, second);
}

double pearson_correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.size() < 2) throw std::invalid_argument("pearson_correlation: size mismatch");
    const double n = static_cast<double>(a.size());
    const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
    const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (saa == 0.0 || sbb == 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

RateEstimate mean_rabi_rate(std::span<const double> phi, double sample_dt, std::uint64_t seed) {
    if (phi.size() < 2 || !(sample_dt > 0.0)) throw std::invalid_argument("mean_rabi_rate: zero duration");
    const std::size_t n = phi.size() - 1;
    const double total_time = static_cast<double>(n) * sample_dt;
    RateEstimate est;
    est.rate = (phi.back() - phi.front()) / total_time;

    const std::size_t block = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::sqrt(double(n)))));
    const std::size_t n_blocks = (n + block - 1) / block;
    const std::size_t starts = n - block + 1;
    RandomStream rng(seed, 0, StreamPurpose::bootstrap);
    constexpr int kReplicates = 200;
    double s = 0.0, s2 = 0.0;
    for (int r = 0; r < kReplicates; ++r) {
        double acc = 0.0;
        std::size_t used = 0;
        for (std::size_t b = 0; b < n_blocks; ++b) {
            const std::size_t start = std::min(starts - 1, static_cast<std::size_t>(rng.uniform() * double(starts)));
            acc += phi[start + block] - phi[start];
            used += block;
        }
        const double rate = acc / (static_cast<double>(used) * sample_dt);
        s += rate;
        s2 += rate * rate;
    }
    const double mean = s / kReplicates;
    est.standard_error = std::sqrt(std::max(0.0, (s2 - kReplicates * mean * mean) / (kReplicates - 1)));
    return est;
}

// --------------------------------------------------------------------------
// Occupancy

Occupancy2D occupancy_2d(std::span<const SpinComponents> samples, Spin spin, int n_bins) {
    if (n_bins < 1) throw std::invalid_argument("occupancy_2d: n_bins must be positive");
    Occupancy2D h;
    h.n_bins = n_bins;
    h.lo = -spin.value();
    h.hi = spin.value();
    h.counts.assign(static_cast<std::size_t>(n_bins) * n_bins, 0);
    const double width = (h.hi - h.lo) / n_bins;
    auto bin = [&](double v) {
        const int b = static_cast<int>(std::floor((v - h.lo) / width));
        return std::clamp(b, 0, n_bins - 1);
    };
    for (const auto& c : samples) {
        ++h.counts[static_cast<std::size_t>(bin(c.sy)) * n_bins + bin(c.sz)];
        ++h.total;
    }
    return h;
}

Occupancy2D occupancy_2d(const TrajectoryRecord& rec, int n_bins) {
    return occupancy_2d(std::span<const SpinComponents>(rec.components), rec.meta.spin, n_bins);
}

// --------------------------------------------------------------------------
// Summary

AnalysisSummary summarize(const TrajectoryRecord& rec, const AnalysisOptions& options) {
    if (rec.size() < 2) throw std::invalid_argument("analysis needs at least two samples");
    AnalysisSummary s;
    s.spin = rec.meta.spin;
    s.vicinity = VicinitySpec::for_spin(rec.meta.spin, options.half_width);
    s.n_samples = rec.size();
    s.sample_dt = rec.times[1] - rec.times[0];
    s.residence = residence_probabilities(rec, s.vicinity);
    s.return_times = mean_return_times(rec, s.vicinity);
    s.occupancy = occupancy_2d(rec, options.occupancy_bins);
    if (std::find(rec.state_names.begin(), rec.state_names.end(), "phi") != rec.state_names.end()) {
        const auto phi = rec.state_column("phi");
        s.angle = angle_pdf({phi}, options.angle_bins, rec.meta.params.alpha, rec.meta.params.epsilon,
                            options.burn_in);
        s.rabi_rate = mean_rabi_rate(phi, s.sample_dt, rec.meta.params.seed);
    }
    return s;
}

} // namespace qsdspin
