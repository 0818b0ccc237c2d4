#include "doctest.h"

#include "qsdspin/analysis.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace qsdspin;

TEST_CASE("vicinity specification") {
    const auto v = VicinitySpec::for_spin(Spin::three_halves());
    CHECK(v.eigenvalues == std::vector<double>{1.5, 0.5, -0.5, -1.5});
    CHECK(v.locate(1.45) == 0);
    CHECK(v.locate(1.0) == -1);
    CHECK(v.locate(-0.6) == 2);
    CHECK_THROWS(VicinitySpec::for_spin(Spin::one(), 0.5).validate());
    CHECK_THROWS(VicinitySpec::for_spin(Spin::one(), 0.0).validate());
}

TEST_CASE("residence probabilities count samples inside each window") {
    const std::vector<double> sz{0.5, 0.45, 0.0, -0.5, -0.55, -0.7, 0.3, 0.5};
    const auto r = residence_probabilities(sz, VicinitySpec::for_spin(Spin::half()));
    CHECK(r[0].samples == 3);
    CHECK(r[1].samples == 2);
    CHECK(r[0].probability == doctest::Approx(3.0 / 8));
    CHECK(r[1].probability == doctest::Approx(2.0 / 8));
    CHECK_THROWS(residence_probabilities(std::vector<double>{}, VicinitySpec::for_spin(Spin::half())));
}

TEST_CASE("return times need a visit elsewhere") {
    const auto spec = VicinitySpec::for_spin(Spin::half());
    // up: exits at 2, visits down at 3, back at 6 -> 4; exits at 7, returns at 8 without
    // visiting down -> dropped; exits at 9, down at 10, back at 12 -> 6 (dt = 0.5)
    const std::vector<double> sz{0.5, 0.5, 0.0, -0.5, -0.5, 0.0, 0.5, 0.2, 0.5, 0.1, -0.5, 0.0, 0.5};
    const auto r = mean_return_times(sz, 0.5, spec);
    CHECK(r[0].count == 2);
    CHECK(r[0].exits == 3);
    CHECK(r[0].mean == doctest::Approx((2.0 + 1.5) / 2));
    CHECK(r[0].standard_error == doctest::Approx(0.25));
    // down: exits at 5 -> back at 10 after visiting up -> 2.5; exit at 11 unfinished
    CHECK(r[1].count == 1);
    CHECK(r[1].mean == doctest::Approx(2.5));
    CHECK(std::isnan(r[1].standard_error));

    const std::vector<ReturnTimeStats> parts{r[0], r[0]};
    const auto pooled = pool_return_times(parts);
    CHECK(pooled.count == 4);
    CHECK(pooled.mean == doctest::Approx(r[0].mean));
}

TEST_CASE("chi-square helpers") {
    CHECK(chi_square_critical(99, 0.01) == doctest::Approx(134.642).epsilon(1e-5));
    CHECK(chi_square_critical(1, 0.05) == doctest::Approx(3.841459).epsilon(1e-6));
    const std::vector<double> flat(50, 100.0);
    const auto u = chi_square_uniformity(flat);
    CHECK(u.statistic == doctest::Approx(0.0));
    CHECK(u.dof == 49);
    CHECK(u.p_value == doctest::Approx(1.0));
    std::vector<double> skew(50, 100.0);
    skew[0] = 200;
    const auto s = chi_square_uniformity(skew);
    // expected 102 per bin
    CHECK(s.statistic == doctest::Approx((98.0 * 98 + 49 * 4.0) / 102));
    const auto two = chi_square_two_sample(flat, flat);
    CHECK(two.statistic == doctest::Approx(0.0));
}

TEST_CASE("pearson correlation") {
    const std::vector<double> a{1, 2, 3, 4, 5}, b{2, 4, 6, 8, 10}, c{5, 4, 3, 2, 1};
    CHECK(pearson_correlation(a, b) == doctest::Approx(1.0));
    CHECK(pearson_correlation(a, c) == doctest::Approx(-1.0));
}

TEST_CASE("stationary angle density is normalised") {
    const int n = 10000;
    double s = 0;
    for (int i = 0; i < n; ++i) s += stationary_angle_pdf((i + 0.5) * 2 * std::numbers::pi / n, 0.5, 1.0);
    CHECK(s * 2 * std::numbers::pi / n == doctest::Approx(1.0));
    CHECK(stationary_angle_pdf(std::numbers::pi / 4, 0.5, 1.0) > stationary_angle_pdf(3 * std::numbers::pi / 4, 0.5, 1.0));
}

TEST_CASE("angle histogram of a uniform rotation") {
    std::vector<double> phi;
    for (int i = 0; i <= 100000; ++i) phi.push_back(0.001 * i); // 100 rad at constant rate
    const auto h = angle_pdf({phi}, 50, 0.0, 1.0, 0.0);
    CHECK(h.edges.size() == 51);
    CHECK(h.n_samples == phi.size());
    double mass = 0;
    for (double d : h.density) mass += d * h.bin_width;
    CHECK(mass == doctest::Approx(1.0));
    for (double d : h.density) CHECK(d == doctest::Approx(1 / (2 * std::numbers::pi)).epsilon(0.05));
    CHECK(h.reference[0] == doctest::Approx(1 / (2 * std::numbers::pi)));
    CHECK_THROWS(angle_pdf({phi}, 4, 0.0, 1.0));
}

TEST_CASE("mean Rabi rate of a linear angle is exact") {
    std::vector<double> phi;
    for (int i = 0; i <= 4000; ++i) phi.push_back(0.3 + 0.75 * 0.01 * i);
    const auto r = mean_rabi_rate(phi, 0.01, 3);
    CHECK(r.rate == doctest::Approx(0.75));
    CHECK(r.standard_error < 1e-12);
}

TEST_CASE("mean Rabi rate error bar covers a noisy drift") {
    std::mt19937_64 g(4);
    std::normal_distribution<double> n(0.0, 0.1);
    std::vector<double> phi{0.0};
    for (int i = 0; i < 40000; ++i) phi.push_back(phi.back() + 0.01 + n(g));
    const auto r = mean_rabi_rate(phi, 0.01, 1);
    CHECK(r.standard_error > 0);
    CHECK(std::abs(r.rate - 1.0) < 5 * r.standard_error);
}

TEST_CASE("occupancy grid") {
    std::vector<SpinComponents> pts{{0, 0.0, 0.0}, {0, -1.0, -1.0}, {0, 1.0, 1.0}, {0, 3.0, 0.0}};
    const auto o = occupancy_2d(pts, Spin::one(), 5);
    CHECK(o.total == 4);
    CHECK(o.at(2, 2) == 1);
    CHECK(o.at(0, 0) == 1);
    CHECK(o.at(4, 4) == 1);
    CHECK(o.at(4, 2) == 1); // clamped to the edge
}
