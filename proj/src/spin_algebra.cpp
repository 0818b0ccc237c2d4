#include "qsdspin/spin_algebra.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

namespace qsdspin {

namespace {

constexpr cplx kI{0.0, 1.0};

CMatrix pauli(int which) {
    CMatrix m = CMatrix::Zero(2, 2);
    switch (which) {
    case 0: m(0, 0) = 1.0; m(1, 1) = 1.0; break;
    case 1: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case 2: m(0, 1) = -kI; m(1, 0) = kI; break;
    case 3: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    }
    return m;
}

CMatrix kron2(const CMatrix& a, const CMatrix& b) {
    CMatrix out = CMatrix::Zero(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
    return out;
}

double hermiticity_deviation(const DensityMatrix& rho) {
    return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

void require_dim(const DensityMatrix& rho, int dim, const char* what) {
    if (rho.rows() != dim || rho.cols() != dim) {
        std::ostringstream msg;
        msg << what << ": expected a " << dim << "x" << dim << " matrix, got "
            << rho.rows() << "x" << rho.cols();
        throw std::invalid_argument(msg.str());
    }
}

double re_trace(const CMatrix& a, const CMatrix& b) {
    // Re Tr(a b) without forming the product.
    double acc = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k)
            acc += (a(i, k) * b(k, i)).real();
    return acc;
}

} // namespace

// --------------------------------------------------------------------------
// Spin

Spin Spin::from_twice(int twice) {
    if (twice < 1 || twice > 3)
        throw std::invalid_argument("unsupported spin " + std::to_string(0.5 * twice) +
                                    ": only 1/2, 1 and 3/2 are implemented");
    return Spin(twice);
}

Spin Spin::parse(std::string_view text) {
    std::string t(text);
    t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }),
            t.end());
    if (t == "1/2" || t == "0.5") return half();
    if (t == "1" || t == "1.0") return one();
    if (t == "3/2" || t == "1.5") return three_halves();
    throw std::invalid_argument("unsupported spin '" + t + "': expected 1/2, 1 or 3/2");
}

std::string Spin::to_string() const {
    return twice_ % 2 == 0 ? std::to_string(twice_ / 2) : std::to_string(twice_) + "/2";
}

SpinSystem build_spin_system(Spin spin) {
    SpinSystem sys;
    sys.spin = spin;
    sys.dim = spin.dim();
    const int d = sys.dim;
    const double j = spin.value();

    CMatrix splus = CMatrix::Zero(d, d);
    sys.sz = CMatrix::Zero(d, d);
    for (int a = 0; a < d; ++a) {
        const double m = j - a;
        sys.sz(a, a) = m;
        sys.sz_eigenvalues.push_back(m);
        // <m+1| S+ |m> sits one row above the diagonal in descending order.
        if (a > 0) splus(a - 1, a) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
    const CMatrix sminus = splus.adjoint();
    sys.sx = 0.5 * (splus + sminus);
    sys.sy = (splus - sminus) / (2.0 * kI);
    return sys;
}

DensityMatrix eigenprojector(const SpinSystem& sys, double m) {
    for (int a = 0; a < sys.dim; ++a) {
        if (std::abs(sys.sz_eigenvalues[a] - m) < 1e-9) {
            DensityMatrix rho = DensityMatrix::Zero(sys.dim, sys.dim);
            rho(a, a) = 1.0;
            return rho;
        }
    }
    throw std::invalid_argument("m = " + std::to_string(m) + " is not an S_z eigenvalue for spin " +
                                sys.spin.to_string());
}

DensityMatrix maximally_mixed(const SpinSystem& sys) {
    return DensityMatrix::Identity(sys.dim, sys.dim) / static_cast<double>(sys.dim);
}

// --------------------------------------------------------------------------
// Generator bases

GeneratorBasis generator_basis(BasisKind kind) {
    GeneratorBasis basis{kind, {}, 2.0};
    switch (kind) {
    case BasisKind::pauli:
        for (int i = 1; i <= 3; ++i) basis.matrices.push_back(pauli(i));
        break;
    case BasisKind::gell_mann: {
        auto zero = [] { return CMatrix::Zero(3, 3).eval(); };
        CMatrix l = zero();
        l(0, 1) = 1.0; l(1, 0) = 1.0;
        basis.matrices.push_back(l);
        l = zero(); l(0, 1) = -kI; l(1, 0) = kI;
        basis.matrices.push_back(l);
        l = zero(); l(0, 0) = 1.0; l(1, 1) = -1.0;
        basis.matrices.push_back(l);
        l = zero(); l(0, 2) = 1.0; l(2, 0) = 1.0;
        basis.matrices.push_back(l);
        l = zero(); l(0, 2) = -kI; l(2, 0) = kI;
        basis.matrices.push_back(l);
        l = zero(); l(1, 2) = 1.0; l(2, 1) = 1.0;
        basis.matrices.push_back(l);
        l = zero(); l(1, 2) = -kI; l(2, 1) = kI;
        basis.matrices.push_back(l);
        l = zero();
        l(0, 0) = 1.0 / std::sqrt(3.0);
        l(1, 1) = 1.0 / std::sqrt(3.0);
        l(2, 2) = -2.0 / std::sqrt(3.0);
        basis.matrices.push_back(l);
        break;
    }
    case BasisKind::su2xsu2: {
        basis.normalization = 4.0;
        // Sigma_1 .. Sigma_15 = sigma_a (x) sigma_b, (a, b) != (0, 0), a major.
        for (int a = 0; a <= 3; ++a)
            for (int b = 0; b <= 3; ++b)
                if (a != 0 || b != 0) basis.matrices.push_back(kron2(pauli(a), pauli(b)));
        break;
    }
    }
    return basis;
}

// --------------------------------------------------------------------------
// Coherence vectors

int model_size(CoherenceModel model) {
    switch (model) {
    case CoherenceModel::rabi_angle: return 1;
    case CoherenceModel::bloch3: return 3;
    case CoherenceModel::gm8: return 8;
    case CoherenceModel::su15: return 15;
    }
    return 0;
}

int model_dim(CoherenceModel model) {
    switch (model) {
    case CoherenceModel::rabi_angle:
    case CoherenceModel::bloch3: return 2;
    case CoherenceModel::gm8: return 3;
    case CoherenceModel::su15: return 4;
    }
    return 0;
}

const std::vector<std::string>& component_names(CoherenceModel model) {
    static const std::vector<std::string> rabi{"phi"};
    static const std::vector<std::string> bloch{"x", "y", "z"};
    static const std::vector<std::string> gm{"s", "m", "u", "v", "k", "x", "y", "z"};
    static const std::vector<std::string> su{"v", "e", "f", "g", "h", "j", "k", "l",
                                             "m", "n", "o", "p", "q", "s", "u"};
    switch (model) {
    case CoherenceModel::rabi_angle: return rabi;
    case CoherenceModel::bloch3: return bloch;
    case CoherenceModel::gm8: return gm;
    case CoherenceModel::su15: return su;
    }
    return bloch;
}

std::string_view to_string(CoherenceModel model) {
    switch (model) {
    case CoherenceModel::rabi_angle: return "rabi-angle";
    case CoherenceModel::bloch3: return "bloch3";
    case CoherenceModel::gm8: return "gm8";
    case CoherenceModel::su15: return "su15";
    }
    return "?";
}

CoherenceModel default_coherence_model(int dim) {
    switch (dim) {
    case 2: return CoherenceModel::bloch3;
    case 3: return CoherenceModel::gm8;
    case 4: return CoherenceModel::su15;
    }
    throw std::invalid_argument("no coherence parametrization for dimension " + std::to_string(dim));
}

DensityMatrix coherence_to_density(const CoherenceVector& cv, const SpinSystem& sys) {
    if (model_dim(cv.model) != sys.dim)
        throw std::invalid_argument(std::string("coherence model ") + std::string(to_string(cv.model)) +
                                    " does not match Hilbert dimension " + std::to_string(sys.dim));
    if (cv.values.size() != model_size(cv.model))
        throw std::invalid_argument("coherence vector has " + std::to_string(cv.values.size()) +
                                    " components, expected " + std::to_string(model_size(cv.model)));

    const int d = sys.dim;
    DensityMatrix rho = DensityMatrix::Identity(d, d);
    switch (cv.model) {
    case CoherenceModel::rabi_angle: {
        const double phi = cv.values[0];
        rho += std::cos(phi) * pauli(3) - std::sin(phi) * pauli(2);
        return rho * 0.5;
    }
    case CoherenceModel::bloch3: {
        const auto basis = generator_basis(BasisKind::pauli);
        for (int i = 0; i < 3; ++i) rho += cv.values[i] * basis.matrices[i];
        return rho * 0.5;
    }
    case CoherenceModel::gm8: {
        const auto basis = generator_basis(BasisKind::gell_mann);
        for (int i = 0; i < 8; ++i) rho += std::sqrt(3.0) * cv.values[i] * basis.matrices[i];
        return rho / 3.0;
    }
    case CoherenceModel::su15: {
        const auto basis = generator_basis(BasisKind::su2xsu2);
        for (int i = 0; i < 15; ++i) rho += cv.values[i] * basis.matrices[i];
        return rho * 0.25;
    }
    }
    return rho;
}

CoherenceVector density_to_coherence(const DensityMatrix& rho, CoherenceModel model) {
    require_dim(rho, model_dim(model), "density_to_coherence");
    const double herm = hermiticity_deviation(rho);
    if (herm > 1e-10)
        throw std::invalid_argument("density_to_coherence: matrix is not Hermitian (deviation " +
                                    std::to_string(herm) + ")");

    CoherenceVector cv{model, RVector::Zero(model_size(model))};
    switch (model) {
    case CoherenceModel::rabi_angle: {
        const double y = re_trace(rho, pauli(2));
        const double z = re_trace(rho, pauli(3));
        cv.values[0] = std::atan2(-y, z);
        break;
    }
    case CoherenceModel::bloch3: {
        const auto basis = generator_basis(BasisKind::pauli);
        for (int i = 0; i < 3; ++i) cv.values[i] = re_trace(rho, basis.matrices[i]);
        break;
    }
    case CoherenceModel::gm8: {
        const auto basis = generator_basis(BasisKind::gell_mann);
        for (int i = 0; i < 8; ++i)
            cv.values[i] = 0.5 * std::sqrt(3.0) * re_trace(rho, basis.matrices[i]);
        break;
    }
    case CoherenceModel::su15: {
        // rho = (I + s.Sigma)/4 with Tr(Sigma_i Sigma_j) = 4 delta_ij.
        const auto basis = generator_basis(BasisKind::su2xsu2);
        for (int i = 0; i < 15; ++i) cv.values[i] = re_trace(rho, basis.matrices[i]);
        break;
    }
    }
    return cv;
}

// --------------------------------------------------------------------------
// Observables

SpinComponents spin_components(const DensityMatrix& rho, const SpinSystem& sys) {
    require_dim(rho, sys.dim, "spin_components");
    return {re_trace(sys.sx, rho), re_trace(sys.sy, rho), re_trace(sys.sz, rho)};
}

SpinComponents spin_components(const CoherenceVector& cv, const SpinSystem& sys) {
    if (model_dim(cv.model) != sys.dim)
        throw std::invalid_argument("spin_components: coherence model does not match spin system");
    const auto& x = cv.values;
    const double r3 = std::sqrt(3.0);
    switch (cv.model) {
    case CoherenceModel::rabi_angle:
        return {0.0, -0.5 * std::sin(x[0]), 0.5 * std::cos(x[0])};
    case CoherenceModel::bloch3:
        return {0.5 * x[0], 0.5 * x[1], 0.5 * x[2]};
    case CoherenceModel::gm8: {
        const double c = std::sqrt(2.0 / 3.0);
        // (s, m, u, v, k, x, y, z)
        return {c * (x[5] + x[0]), c * (x[1] + x[6]), x[2] / r3 + x[7]};
    }
    case CoherenceModel::su15:
        // (v, e, f, g, h, j, k, l, m, n, o, p, q, s, u)
        return {0.5 * (x[4] + x[9] + r3 * x[0]), 0.5 * (r3 * x[1] - x[5] + x[8]),
                0.5 * x[2] + x[11]};
    }
    return {};
}

double purity(const DensityMatrix& rho) {
    return re_trace(rho, rho);
}

double purity(const CoherenceVector& cv) {
    const double sq = cv.values.squaredNorm();
    switch (cv.model) {
    case CoherenceModel::rabi_angle: return 1.0;
    case CoherenceModel::bloch3: return 0.5 * (1.0 + sq);
    case CoherenceModel::gm8: return 2.0 / 3.0 * sq + 1.0 / 3.0;
    case CoherenceModel::su15: return 0.25 * (1.0 + sq);
    }
    return 0.0;
}

// --------------------------------------------------------------------------
// Physicality

double min_eigenvalue(const DensityMatrix& rho) {
    const CMatrix h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

PhysicalityReport check_physical(const DensityMatrix& rho, double tol) {
    PhysicalityReport report;
    if (rho.rows() != rho.cols() || rho.rows() == 0) {
        report.log_det = -std::numeric_limits<double>::infinity();
        report.trace_deviation = std::numeric_limits<double>::infinity();
        return report;
    }
    if (!rho.allFinite()) {
        report.trace_deviation = std::numeric_limits<double>::quiet_NaN();
        report.log_det = -std::numeric_limits<double>::infinity();
        return report;
    }
    report.trace_deviation = std::abs(rho.trace() - cplx(1.0, 0.0));
    report.hermiticity_deviation = hermiticity_deviation(rho);

    const CMatrix h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    report.det = 1.0;
    for (int i = 0; i < ev.size(); ++i) {
        report.eigenvalues.push_back(ev(i));
        report.det *= ev(i);
    }
    report.min_eigenvalue = ev(0);
    report.log_det = report.det > 0.0 ? std::log(report.det)
                                      : -std::numeric_limits<double>::infinity();
    report.passed = report.trace_deviation <= 1e-10 && report.hermiticity_deviation <= 1e-12 &&
                    report.min_eigenvalue >= -tol;
    return report;
}

} // namespace qsdspin
