// analysis.hpp: Zeno statistics computed from recorded trajectories.

#pragma once

#include "qsdspin/record.hpp"
#include "qsdspin/spin_algebra.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace qsdspin {

struct VicinitySpec {
    std::vector<double> eigenvalues;
    double half_width = 0.1;

    static VicinitySpec for_spin(Spin spin, double half_width = 0.1);
    /// Throws std::invalid_argument unless 0 < half_width < min gap / 2.
    void validate() const;
    /// Index of the eigenvalue whose vicinity contains sz, or -1.
    int locate(double sz) const;
};

struct Residence {
    double eigenvalue = 0.0;
    double probability = 0.0;
    std::size_t samples = 0;
};

/// Fraction of samples with |<Sz> - m| <= half_width, per eigenvalue.
/// Throws std::invalid_argument on an empty series.
std::vector<Residence> residence_probabilities(std::span<const double> sz, const VicinitySpec& spec);
std::vector<Residence> residence_probabilities(const TrajectoryRecord& rec, const VicinitySpec& spec);

struct ReturnTimeStats {
    double eigenvalue = 0.0;
    double mean = 0.0;           // NaN when count == 0
    double standard_error = 0.0; // NaN when count < 2
    std::size_t count = 0;       // completed episodes
    std::size_t exits = 0;       // episodes started
};

/// Per eigenvalue m: an episode starts at the first sample outside m's
/// vicinity, is armed once another eigenvalue's vicinity is entered and
/// completes at the first sample back inside m's vicinity. Unarmed and
/// unfinished episodes are dropped.
std::vector<ReturnTimeStats> mean_return_times(std::span<const double> sz, double sample_dt,
                                               const VicinitySpec& spec);
std::vector<ReturnTimeStats> mean_return_times(const TrajectoryRecord& rec, const VicinitySpec& spec);

/// Merges per-trajectory statistics into pooled episode means.
ReturnTimeStats pool_return_times(std::span<const ReturnTimeStats> parts);

// --------------------------------------------------------------------------
// Rabi-angle statistics

struct AngleHistogram {
    std::vector<double> edges;     // n_bins + 1, on [0, 2 pi]
    std::vector<double> counts;
    std::vector<double> density;   // sum density * width = 1
    std::vector<double> reference; // (1 + (3 alpha^2 / 4 eps) sin 2phi) / 2pi at bin centres
    double bin_width = 0.0;
    std::size_t n_samples = 0;

    std::vector<double> centres() const;
};

/// Pools phi mod 2pi over all series after discarding the first
/// burn_in fraction of each. Throws on empty input or n_bins < 8.
AngleHistogram angle_pdf(const std::vector<std::vector<double>>& phi_series, int n_bins,
                         double alpha, double epsilon, double burn_in = 0.1);

/// Small-alpha stationary density; eps must be positive.
double stationary_angle_pdf(double phi, double alpha, double epsilon);

struct ChiSquareResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
};

/// Pearson chi-square of histogram counts against the uniform density.
ChiSquareResult chi_square_uniformity(std::span<const double> counts);
/// Homogeneity chi-square between two count vectors over the same bins.
ChiSquareResult chi_square_two_sample(std::span<const double> a, std::span<const double> b);
/// Upper-tail critical value of the chi-square distribution.
double chi_square_critical(int dof, double significance);

/// First half vs second half (post burn-in) homogeneity test of the pooled angle histogram.
ChiSquareResult angle_stationarity(const std::vector<std::vector<double>>& phi_series, int n_bins,
                                   double burn_in = 0.1);

double pearson_correlation(std::span<const double> a, std::span<const double> b);

struct RateEstimate {
    double rate = 0.0;
    double standard_error = 0.0;
};

/// (phi(T) - phi(0)) / T with a moving-block bootstrap error (block length
/// ceil(sqrt(n)), 200 replicates, deterministic in `seed`). Throws if T = 0.
RateEstimate mean_rabi_rate(std::span<const double> phi, double sample_dt, std::uint64_t seed = 0);

// --------------------------------------------------------------------------
// Phase-space occupancy

struct Occupancy2D {
    int n_bins = 51;
    double lo = -0.5, hi = 0.5;
    std::vector<std::size_t> counts; // row-major [sy bin][sz bin]
    std::size_t total = 0;

    std::size_t at(int iy, int iz) const { return counts[static_cast<std::size_t>(iy) * n_bins + iz]; }
};

/// Counts of (<Sy>, <Sz>) over an n_bins x n_bins grid on [-spin, spin]^2.
/// Samples outside the square (Euler drift) go to the edge bins.
Occupancy2D occupancy_2d(std::span<const SpinComponents> samples, Spin spin, int n_bins = 51);
Occupancy2D occupancy_2d(const TrajectoryRecord& rec, int n_bins = 51);

// --------------------------------------------------------------------------
// Aggregate

struct AnalysisSummary {
    Spin spin;
    VicinitySpec vicinity;
    std::size_t n_samples = 0;
    double sample_dt = 0.0;
    std::vector<Residence> residence;
    std::vector<ReturnTimeStats> return_times;
    std::optional<AngleHistogram> angle;
    std::optional<RateEstimate> rabi_rate;
    std::optional<Occupancy2D> occupancy;
};

struct AnalysisOptions {
    double half_width = 0.1;
    int angle_bins = 100;
    int occupancy_bins = 51;
    double burn_in = 0.1;
};

/// Everything that applies to the record: residence and return times
/// always; angle histogram and Rabi rate when a "phi" column is present;
/// occupancy always.
AnalysisSummary summarize(const TrajectoryRecord& rec, const AnalysisOptions& options = {});

} // namespace qsdspin
