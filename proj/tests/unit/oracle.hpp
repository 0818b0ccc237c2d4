// Independent reference constructions used by the unit tests. Nothing here
// calls into the library.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Spin matrices from the ladder operators, basis m = s, s-1, ..., -s.
struct SpinOps {
    Mat sx, sy, sz;
};

inline SpinOps spin_ops(int twice) {
    const int d = twice + 1;
    const double s = 0.5 * twice;
    Mat sp = Mat::Zero(d, d), sz = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const double m = s - i;
        sz(i, i) = m;
        if (i > 0) sp(i - 1, i) = std::sqrt(s * (s + 1) - m * (m + 1)); // S+ |m> -> |m+1>
    }
    const Mat sm = sp.adjoint();
    return {(sp + sm) / 2.0, (sp - sm) / cplx(0, 2), sz};
}

inline std::vector<Mat> pauli() {
    Mat i2 = Mat::Identity(2, 2), x(2, 2), y(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    y << 0, cplx(0, -1), cplx(0, 1), 0;
    z << 1, 0, 0, -1;
    return {i2, x, y, z};
}

inline std::vector<Mat> gell_mann() {
    std::vector<Mat> l(8, Mat::Zero(3, 3));
    const cplx i(0, 1);
    l[0](0, 1) = l[0](1, 0) = 1;
    l[1](0, 1) = -i;
    l[1](1, 0) = i;
    l[2](0, 0) = 1;
    l[2](1, 1) = -1;
    l[3](0, 2) = l[3](2, 0) = 1;
    l[4](0, 2) = -i;
    l[4](2, 0) = i;
    l[5](1, 2) = l[5](2, 1) = 1;
    l[6](1, 2) = -i;
    l[6](2, 1) = i;
    l[7](0, 0) = l[7](1, 1) = 1 / std::sqrt(3.0);
    l[7](2, 2) = -2 / std::sqrt(3.0);
    return l;
}

// sigma_a (x) sigma_b, a-major, (0, 0) skipped.
inline std::vector<Mat> su2xsu2() {
    const auto p = pauli();
    std::vector<Mat> out;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            if (a == 0 && b == 0) continue;
            Mat k(4, 4);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) k.block(2 * r, 2 * c, 2, 2) = p[a](r, c) * p[b];
            out.push_back(k);
        }
    return out;
}

// Mixture of d random pure states with random weights.
inline Mat random_density(int d, std::mt19937_64& g) {
    std::normal_distribution<double> n;
    std::uniform_real_distribution<double> u(0.05, 1.0);
    Mat rho = Mat::Zero(d, d);
    double total = 0;
    for (int k = 0; k < d; ++k) {
        Vec v(d);
        for (int i = 0; i < d; ++i) v[i] = cplx(n(g), n(g));
        v.normalize();
        const double w = u(g);
        rho += w * v * v.adjoint();
        total += w;
    }
    return rho / total;
}

inline Mat pure(const Vec& v) { return v.normalized() * v.normalized().adjoint(); }

// Stochastic master equation pieces for H = eps Sx, L = alpha Sz (Hermitian).
inline Mat sme_drift(const Mat& rho, const SpinOps& s, double eps, double alpha) {
    const Mat h = eps * s.sx, l = alpha * s.sz;
    const cplx i(0, 1);
    return -i * (h * rho - rho * h) + l * rho * l - 0.5 * (l * l * rho + rho * l * l);
}

inline Mat sme_noise(const Mat& rho, const SpinOps& s, double alpha) {
    const Mat l = alpha * s.sz;
    const double mean = 2 * (rho * l).trace().real();
    return rho * l + l * rho - mean * rho;
}

inline double expect(const Mat& op, const Mat& rho) { return (op * rho).trace().real(); }

} // namespace oracle
