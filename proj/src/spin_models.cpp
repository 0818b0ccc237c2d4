#include "qsdspin/spin_models.hpp"

#include <Eigen/LU>

#include <cmath>

namespace qsdspin {

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);

void prepare(ItoCoefficients& out, int n) {
    if (out.drift.size() != n) out.drift.resize(n);
    if (out.diffusion.rows() != n || out.diffusion.cols() != 1) out.diffusion.resize(n, 1);
}

void require_size(const RVector& x, int n, const char* what) {
    if (x.size() != n)
        throw std::invalid_argument(std::string(what) + ": expected a state of size " +
                                    std::to_string(n) + ", got " + std::to_string(x.size()));
}

ItoSystem make_system(int n, void (*fn)(const RVector&, const ModelParams&, ItoCoefficients&),
                      const ModelParams& params) {
    ItoSystem sys;
    sys.dimension = n;
    sys.channels = 1;
    sys.evaluate = [fn, params](const RVector& x, ItoCoefficients& out) { fn(x, params, out); };
    return sys;
}

} // namespace

ScalarCoefficients rabi_angle_coefficients(double phi, const ModelParams& p) {
    return {p.epsilon - 0.25 * p.alpha * p.alpha * std::sin(2.0 * phi), -p.alpha * std::sin(phi)};
}

void spin_half_component_coefficients(const RVector& x, const ModelParams& p, ItoCoefficients& out) {
    require_size(x, 3, "spin-1/2 components");
    prepare(out, 3);
    const double a = p.alpha, e = p.epsilon, a2 = a * a;
    const double sz = x[0], sx = x[1], sy = x[2];
    out.drift << e * sy, -0.5 * a2 * sx, -e * sz - 0.5 * a2 * sy;
    out.diffusion(0, 0) = 2.0 * a * (0.25 - sz * sz);
    out.diffusion(1, 0) = -2.0 * a * sz * sx;
    out.diffusion(2, 0) = -2.0 * a * sz * sy;
}

void spin1_coherence_coefficients(const RVector& r, const ModelParams& p, ItoCoefficients& out) {
    require_size(r, 8, "spin-1 coherence vector");
    prepare(out, 8);
    const double a = p.alpha, e = p.epsilon, a2 = a * a;
    const double s = r[0], m = r[1], u = r[2], v = r[3], k = r[4], x = r[5], y = r[6], z = r[7];

    const double lower = -3.0 + 2.0 * kSqrt3 * u + 6.0 * z;
    const double upper = 3.0 + 2.0 * kSqrt3 * u + 6.0 * z;
    const double outer = kSqrt3 * u + 3.0 * z;

    auto& A = out.drift;
    auto& B = out.diffusion;
    A[0] = e * k / kSqrt2 - 0.5 * a2 * s;
    A[1] = -e * (2.0 * u + v) / kSqrt2 - 0.5 * a2 * m;
    A[2] = e * (2.0 * m - y) / kSqrt2;
    A[3] = e * (m - y) / kSqrt2 - 2.0 * a2 * v;
    A[4] = e * (-s + x) / kSqrt2 - 2.0 * a2 * k;
    A[5] = -e * k / kSqrt2 - 0.5 * a2 * x;
    A[6] = e * (u + v - kSqrt3 * z) / kSqrt2 - 0.5 * a2 * y;
    A[7] = e * std::sqrt(1.5) * y;

    B(0, 0) = -a * s * lower / 3.0;
    B(1, 0) = -a * m * lower / 3.0;
    B(2, 0) = a * (1.0 - 2.0 * u * u + kSqrt3 * u * (1.0 - 2.0 * z) + z) / kSqrt3;
    B(3, 0) = -2.0 / 3.0 * a * v * outer;
    B(4, 0) = -2.0 / 3.0 * a * k * outer;
    B(5, 0) = -a * x * upper / 3.0;
    B(6, 0) = -a * y * upper / 3.0;
    B(7, 0) = -a * (-1.0 + 2.0 * z) * (3.0 + kSqrt3 * u + 3.0 * z) / 3.0;
}

void spin1_component_coefficients(const RVector& c, const ModelParams& p, ItoCoefficients& out) {
    require_size(c, kSpin1ComponentSize, "spin-1 components");
    prepare(out, kSpin1ComponentSize);
    const double a = p.alpha, e = p.epsilon, a2 = a * a;
    const double sz = c[0], sx = c[1], sy = c[2], sy2 = c[3], sz2 = c[4];
    const double yz = c[5], zx = c[6], re = c[7], im = c[8], xy = c[9];

    auto& A = out.drift;
    auto& B = out.diffusion;
    A[0] = e * sy;
    B(0, 0) = 2.0 * a * (sz2 - sz * sz);

    A[1] = -0.5 * a2 * sx;
    B(1, 0) = a * (zx - 2.0 * sz * sx);

    A[2] = -e * sz - 0.5 * a2 * sy;
    B(2, 0) = a * (yz - 2.0 * sz * sy);

    // i<SxSySz> contributes its real part, -Im<SxSySz>.
    A[3] = -e * yz - a2 * (-im + sz2 + sy2 - 1.0);
    B(3, 0) = a * sz * (1.0 - 2.0 * sy2);

    A[4] = e * yz;
    B(4, 0) = 2.0 * a * sz * (1.0 - sz2);

    A[5] = 2.0 * e * (sy2 - sz2) - 0.5 * a2 * yz;
    B(5, 0) = a * (sy - 2.0 * sz * yz);

    A[6] = e * xy - 0.5 * a2 * zx;
    B(6, 0) = a * (sx - 2.0 * sz * zx);

    // d<SxSySz> = i eps <{Sy,Sz}> dt + i alpha^2 (<Sz^2> + 2i<SxSySz>) dt
    //             + i alpha <Sz> (1 + 2i<SxSySz>) dW
    A[7] = -2.0 * a2 * re;
    A[8] = e * yz + a2 * sz2 - 2.0 * a2 * im;
    B(7, 0) = -2.0 * a * sz * re;
    B(8, 0) = a * sz * (1.0 - 2.0 * im);

    A[9] = -e * zx - 2.0 * a2 * xy;
    B(9, 0) = -2.0 * a * sz * xy;
}

void spin32_coherence_coefficients(const RVector& x, const ModelParams& pr, ItoCoefficients& out) {
    require_size(x, 15, "spin-3/2 coherence vector");
    prepare(out, 15);
    const double a = pr.alpha, ep = pr.epsilon, a2 = a * a;
    const double v = x[0], e = x[1], f = x[2], g = x[3], h = x[4], j = x[5], k = x[6], l = x[7];
    const double m = x[8], n = x[9], o = x[10], p = x[11], q = x[12], s = x[13], u = x[14];
    const double F = f + 2.0 * p; // 2<Sz>

    auto& A = out.drift;
    auto& B = out.diffusion;
    A[0] = ep * o - 0.5 * a2 * v;
    A[1] = -ep * (kSqrt3 * f + k) - 0.5 * a2 * e;
    A[2] = ep * (kSqrt3 * e + j - m);
    A[3] = ep * s - 2.0 * a2 * g;
    A[4] = -0.5 * a2 * (5.0 * h - 4.0 * n);
    A[5] = -ep * (f + kSqrt3 * k - p) - 0.5 * a2 * (5.0 * j + 4.0 * m);
    A[6] = ep * (e + kSqrt3 * j) - 2.0 * a2 * k;
    A[7] = -ep * q - 2.0 * a2 * l;
    A[8] = ep * (f - p) - 0.5 * a2 * (4.0 * j + 5.0 * m);
    A[9] = -ep * kSqrt3 * o + a2 * (2.0 * h - 2.5 * n);
    A[10] = ep * (kSqrt3 * n - v) - 2.0 * a2 * o;
    A[11] = ep * (m - j);
    A[12] = ep * l - 0.5 * a2 * q;
    A[13] = -ep * (g + kSqrt3 * u) - 0.5 * a2 * s;
    A[14] = ep * kSqrt3 * s;

    B(0, 0) = a * (2.0 * q - v * F);
    B(1, 0) = a * (2.0 * s - e * F);
    B(2, 0) = -a * (-1.0 + f * f + 2.0 * f * p - 2.0 * u);
    B(3, 0) = a * (k - g * F);
    B(4, 0) = -a * h * F;
    B(5, 0) = -a * j * F;
    B(6, 0) = a * (g - k * F);
    B(7, 0) = a * (o - l * F);
    B(8, 0) = -a * m * F;
    B(9, 0) = -a * n * F;
    B(10, 0) = a * (l - o * F);
    B(11, 0) = a * (2.0 - p * F + u);
    B(12, 0) = -a * (f * q + 2.0 * p * q - 2.0 * v);
    B(13, 0) = a * (2.0 * e - s * F);
    B(14, 0) = a * (2.0 * f + p - u * F);
}

double spin_half_purity_increment(const RVector& r, double purity, const ModelParams& p, double dW) {
    require_size(r, 3, "bloch vector");
    const double rz = r[2];
    return p.alpha * p.alpha * (1.0 - rz * rz) * (1.0 - purity) * p.dt +
           2.0 * p.alpha * rz * (1.0 - purity) * dW;
}

ItoSystem rabi_angle_system(const ModelParams& params) {
    ItoSystem sys;
    sys.dimension = 1;
    sys.channels = 1;
    sys.evaluate = [params](const RVector& x, ItoCoefficients& out) {
        prepare(out, 1);
        const auto c = rabi_angle_coefficients(x[0], params);
        out.drift[0] = c.drift;
        out.diffusion(0, 0) = c.diffusion;
    };
    return sys;
}

ItoSystem spin_half_component_system(const ModelParams& params) {
    return make_system(3, &spin_half_component_coefficients, params);
}
ItoSystem spin1_coherence_system(const ModelParams& params) {
    return make_system(8, &spin1_coherence_coefficients, params);
}
ItoSystem spin1_component_system(const ModelParams& params) {
    return make_system(kSpin1ComponentSize, &spin1_component_coefficients, params);
}
ItoSystem spin32_coherence_system(const ModelParams& params) {
    return make_system(15, &spin32_coherence_coefficients, params);
}

// --------------------------------------------------------------------------
// State maps

const std::vector<std::string>& spin_half_component_names() {
    static const std::vector<std::string> names{"Sz", "Sx", "Sy"};
    return names;
}

const std::vector<std::string>& spin1_component_names() {
    static const std::vector<std::string> names{"Sz",   "Sx",   "Sy",        "Sy2",       "Sz2",
                                                "SySz", "SzSx", "SxSySz_re", "SxSySz_im", "SxSy"};
    return names;
}

RVector spin_half_components_from_density(const DensityMatrix& rho, const SpinSystem& sys) {
    if (sys.dim != 2 || rho.rows() != 2) throw std::invalid_argument("spin-1/2 components need a 2x2 state");
    const auto c = spin_components(rho, sys);
    RVector x(3);
    x << c.sz, c.sx, c.sy;
    return x;
}

DensityMatrix spin_half_components_to_density(const RVector& x) {
    require_size(x, 3, "spin-1/2 components");
    CoherenceVector cv{CoherenceModel::bloch3, RVector(3)};
    cv.values << 2.0 * x[1], 2.0 * x[2], 2.0 * x[0];
    return coherence_to_density(cv, build_spin_system(Spin::half()));
}

namespace {

struct Spin1Operators {
    std::vector<CMatrix> ops; // the eight independent component operators
    Eigen::Matrix<double, 8, 8> inverse;
    Eigen::Matrix<double, 8, 1> offset;
};

const Spin1Operators& spin1_operators() {
    static const Spin1Operators cache = [] {
        Spin1Operators c;
        const auto sys = build_spin_system(Spin::one());
        const CMatrix &x = sys.sx, &y = sys.sy, &z = sys.sz;
        c.ops = {z, x, y, y * y, z * z, y * z + z * y, z * x + x * z, x * y + y * x};
        // <O_k> = Tr(O_k)/3 + (sqrt3/3) sum_j R_j Tr(O_k lambda_j)
        const auto gm = generator_basis(BasisKind::gell_mann);
        Eigen::Matrix<double, 8, 8> a;
        for (int k = 0; k < 8; ++k) {
            c.offset[k] = c.ops[k].trace().real() / 3.0;
            for (int j = 0; j < 8; ++j)
                a(k, j) = kSqrt3 / 3.0 * (c.ops[k] * gm.matrices[j]).trace().real();
        }
        c.inverse = a.inverse();
        return c;
    }();
    return cache;
}

} // namespace

RVector spin1_components_from_density(const DensityMatrix& rho, const SpinSystem& sys) {
    if (sys.dim != 3 || rho.rows() != 3) throw std::invalid_argument("spin-1 components need a 3x3 state");
    const auto& ops = spin1_operators().ops;
    const cplx xyz = (sys.sx * sys.sy * sys.sz * rho).trace();
    RVector c(kSpin1ComponentSize);
    for (int k = 0; k < 7; ++k) c[k] = (ops[k] * rho).trace().real();
    c[7] = xyz.real();
    c[8] = xyz.imag();
    c[9] = (ops[7] * rho).trace().real();
    return c;
}

DensityMatrix spin1_components_to_density(const RVector& c) {
    require_size(c, kSpin1ComponentSize, "spin-1 components");
    const auto& cache = spin1_operators();
    Eigen::Matrix<double, 8, 1> values;
    for (int k = 0; k < 7; ++k) values[k] = c[k];
    values[7] = c[9];
    const Eigen::Matrix<double, 8, 1> r = cache.inverse * (values - cache.offset);
    CoherenceVector cv{CoherenceModel::gm8, RVector(8)};
    for (int k = 0; k < 8; ++k) cv.values[k] = r[k];
    return coherence_to_density(cv, build_spin_system(Spin::one()));
}

} // namespace qsdspin
