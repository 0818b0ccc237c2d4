#include "doctest.h"

#include "qsdspin/rng.hpp"
#include "qsdspin/sde.hpp"

#include <cmath>

using namespace qsdspin;

TEST_CASE("model parameter validation") {
    ModelParams p;
    CHECK_NOTHROW(p.validate());
    CHECK(p.n_steps() == 100000);
    p.dt = 0;
    CHECK_THROWS(p.validate());
    p.dt = 1e-3;
    p.duration = -1;
    CHECK_THROWS(p.validate());
    p.duration = 1;
    p.alpha = std::nan("");
    CHECK_THROWS(p.validate());
}

TEST_CASE("deterministic Euler step is (1 + A dt)^N") {
    ItoSystem sys;
    sys.dimension = 2;
    sys.channels = 1;
    sys.evaluate = [](const RVector& x, ItoCoefficients& c) {
        c.drift.resize(2);
        c.drift << x[1], -x[0];
        c.diffusion = NoiseMatrix::Zero(2, 1);
    };
    RVector x(2);
    x << 1, 0;
    const double dt = 1e-3;
    RVector dw = RVector::Zero(1);
    for (int i = 0; i < 1000; ++i) x = euler_maruyama_step(sys, x, dt, dw);
    // a rotation generator: each step scales the radius by sqrt(1 + dt^2)
    CHECK(x.squaredNorm() == doctest::Approx(std::pow(1 + dt * dt, 1000)).epsilon(1e-12));
}

TEST_CASE("strong convergence on geometric Brownian motion") {
    // dX = mu X dt + sigma X dW, exact X_T = X_0 exp((mu - sigma^2/2) T + sigma W_T)
    const double mu = 0.5, sigma = 0.8, T = 1.0;
    ItoSystem sys;
    sys.dimension = 1;
    sys.channels = 1;
    sys.evaluate = [&](const RVector& x, ItoCoefficients& c) {
        c.drift = RVector::Constant(1, mu * x[0]);
        c.diffusion = NoiseMatrix::Constant(1, 1, sigma * x[0]);
    };
    auto error = [&](int n) {
        double err = 0;
        for (int path = 0; path < 200; ++path) {
            const auto w = wiener_path(9, path, n, 1, T / n);
            RVector x = RVector::Constant(1, 1.0);
            ItoCoefficients scratch;
            double wt = 0;
            for (int i = 0; i < n; ++i) {
                RVector dw = RVector::Constant(1, w(i, 0));
                euler_maruyama_step_inplace(sys, x, T / n, dw, scratch, i);
                wt += w(i, 0);
            }
            err += std::abs(x[0] - std::exp((mu - 0.5 * sigma * sigma) * T + sigma * wt));
        }
        return err / 200;
    };
    const double e1 = error(64), e2 = error(1024);
    // order 1/2: a 16x finer step shrinks the error about 4x
    CHECK(e1 / e2 > 2.5);
    CHECK(e1 / e2 < 6.5);
}

TEST_CASE("non-finite states are reported") {
    ItoSystem sys;
    sys.dimension = 1;
    sys.channels = 1;
    sys.evaluate = [](const RVector& x, ItoCoefficients& c) {
        c.drift = RVector::Constant(1, 1e308 * x[0]);
        c.diffusion = NoiseMatrix::Zero(1, 1);
    };
    RVector x = RVector::Constant(1, 10.0);
    ItoCoefficients scratch;
    RVector dw = RVector::Zero(1);
    CHECK_THROWS_AS(euler_maruyama_step_inplace(sys, x, 1.0, dw, scratch, 7), NumericalError);
}
