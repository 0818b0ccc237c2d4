#include "qsdspin/analysis.hpp"
#include "qsdspin/config.hpp"
#include "qsdspin/io.hpp"
#include "qsdspin/qsd.hpp"
#include "qsdspin/trajectory.hpp"
#include "qsdspin/validate.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace qsdspin;

namespace {

py::array_t<double> to_numpy(const std::vector<double>& v) {
    py::array_t<double> a(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), a.mutable_data());
    return a;
}

py::dict record_dict(const TrajectoryRecord& rec) {
    py::dict d;
    d["t"] = to_numpy(rec.times);
    py::array_t<double> states({rec.size(), rec.state_width()});
    std::copy(rec.states.begin(), rec.states.end(), states.mutable_data());
    d["state"] = states;
    d["state_names"] = rec.state_names;
    d["sx"] = to_numpy(rec.sx());
    d["sy"] = to_numpy(rec.sy());
    d["sz"] = to_numpy(rec.sz());
    d["purity"] = to_numpy(rec.purity);
    d["min_eigenvalue"] = rec.meta.min_eigenvalue;
    d["positivity_warnings"] = rec.meta.positivity_warnings;
    return d;
}

ModelParams make_params(double alpha, double epsilon, double dt, double duration, std::uint64_t seed) {
    ModelParams p;
    p.alpha = alpha;
    p.epsilon = epsilon;
    p.dt = dt;
    p.duration = duration;
    p.seed = seed;
    p.validate();
    return p;
}

TrajectoryRecord record_from_arrays(const std::string& spin, py::array_t<double> t, py::array_t<double> sz) {
    if (t.size() != sz.size() || t.size() < 2) throw std::invalid_argument("t and sz need equal length >= 2");
    TrajectoryRecord rec;
    rec.meta.spin = Spin::parse(spin);
    auto tv = t.unchecked<1>();
    auto zv = sz.unchecked<1>();
    for (py::ssize_t i = 0; i < t.size(); ++i) {
        rec.times.push_back(tv(i));
        rec.components.push_back({0.0, 0.0, zv(i)});
        rec.purity.push_back(1.0);
    }
    return rec;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "qsdspin core bindings";
    m.attr("__version__") = version();

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    m.def(
        "simulate",
        [](const std::string& spin, const std::string& model, double alpha, double epsilon, double dt,
           double duration, std::uint64_t seed, const std::string& initial, int stride, std::uint64_t stream) {
            const Spin s = Spin::parse(spin);
            const ModelKind kind = parse_model_kind(model);
            if (auto why = model_unavailable_reason(kind, s); !why.empty()) throw std::invalid_argument(why);
            RunOptions ro;
            ro.stride = stride;
            ro.stream = stream;
            TrajectoryRecord rec;
            {
                py::gil_scoped_release release;
                rec = run_trajectory(kind, s, make_params(alpha, epsilon, dt, duration, seed),
                                     InitialState::parse(initial), ro);
            }
            return record_dict(rec);
        },
        py::arg("spin"), py::arg("model"), py::arg("alpha"), py::arg("epsilon") = 1.0, py::arg("dt") = 1e-4,
        py::arg("duration") = 10.0, py::arg("seed") = 1, py::arg("initial") = "down", py::arg("stride") = 10,
        py::arg("stream") = 0, "Integrate one trajectory; returns a dict of arrays.");

    m.def(
        "run_ensemble",
        [](const std::string& spin, const std::string& model, double alpha, double epsilon, double dt,
           double duration, std::uint64_t seed, std::size_t n_traj, const std::string& initial, int stride,
           int threads) {
            const Spin s = Spin::parse(spin);
            const ModelKind kind = parse_model_kind(model);
            if (auto why = model_unavailable_reason(kind, s); !why.empty()) throw std::invalid_argument(why);
            EnsembleOptions eo;
            eo.n_traj = n_traj;
            eo.stride = stride;
            eo.threads = threads;
            EnsembleResult r;
            {
                py::gil_scoped_release release;
                r = run_ensemble(kind, s, make_params(alpha, epsilon, dt, duration, seed), InitialState::parse(initial),
                                 eo);
            }
            py::dict d;
            d["t"] = to_numpy(r.times);
            d["sx"] = to_numpy(r.mean_sx);
            d["sy"] = to_numpy(r.mean_sy);
            d["sz"] = to_numpy(r.mean_sz);
            d["purity"] = to_numpy(r.mean_purity);
            d["sx_se"] = to_numpy(r.se_sx);
            d["sy_se"] = to_numpy(r.se_sy);
            d["sz_se"] = to_numpy(r.se_sz);
            d["purity_se"] = to_numpy(r.se_purity);
            d["n_traj"] = r.n_traj;
            return d;
        },
        py::arg("spin"), py::arg("model"), py::arg("alpha"), py::arg("epsilon") = 1.0, py::arg("dt") = 1e-4,
        py::arg("duration") = 10.0, py::arg("seed") = 1, py::arg("n_traj") = 100, py::arg("initial") = "down",
        py::arg("stride") = 10, py::arg("threads") = 0);

    m.def(
        "lindblad",
        [](const std::string& spin, double alpha, double epsilon, double dt, double duration,
           const std::string& initial, int stride) {
            const Spin s = Spin::parse(spin);
            const auto sys = build_spin_system(s);
            ModelParams p = make_params(alpha, epsilon, dt, duration, 1);
            const DensityMatrix rho0 = resolve_initial_state(InitialState::parse(initial), sys, 1, 0);
            return record_dict(lindblad_integrate(rho0, spin_open_system(sys, p), sys, dt, duration, stride));
        },
        py::arg("spin"), py::arg("alpha"), py::arg("epsilon") = 1.0, py::arg("dt") = 1e-3, py::arg("duration") = 10.0,
        py::arg("initial") = "down", py::arg("stride") = 10, "Ensemble-mean evolution of the master equation.");

    m.def(
        "kraus_completeness_residual",
        [](const std::string& spin, double alpha, double epsilon, double dt) {
            const auto sys = build_spin_system(Spin::parse(spin));
            return kraus_completeness_residual(spin_open_system(sys, make_params(alpha, epsilon, dt, 1.0, 1)), dt);
        },
        py::arg("spin"), py::arg("alpha"), py::arg("epsilon") = 1.0, py::arg("dt") = 1e-4);

    m.def(
        "analyze",
        [](const std::string& spin, py::array_t<double> t, py::array_t<double> sz, double half_width) {
            const TrajectoryRecord rec = record_from_arrays(spin, t, sz);
            const auto spec = VicinitySpec::for_spin(rec.meta.spin, half_width);
            spec.validate();
            py::list rows;
            const auto res = residence_probabilities(rec, spec);
            const auto ret = mean_return_times(rec, spec);
            for (std::size_t i = 0; i < res.size(); ++i) {
                py::dict row;
                row["eigenvalue"] = res[i].eigenvalue;
                row["residence"] = res[i].probability;
                row["mean_return_time"] = ret[i].mean;
                row["return_time_se"] = ret[i].standard_error;
                row["returns"] = ret[i].count;
                rows.append(row);
            }
            return rows;
        },
        py::arg("spin"), py::arg("t"), py::arg("sz"), py::arg("half_width") = 0.1,
        "Residence probabilities and mean return times of an <Sz> series.");

    m.def(
        "parse_config", [](const std::string& text) { return parse_config(text).to_json().dump(); },
        py::arg("text"), "Validate a config document; returns the resolved config as JSON text.");

    m.def(
        "validate",
        [](std::uint64_t seed) {
            ValidationOptions vo;
            vo.seed = seed;
            std::vector<ValidationCheck> checks;
            {
                py::gil_scoped_release release;
                checks = run_validation_suite(vo);
            }
            py::list out;
            for (const auto& c : checks) {
                py::dict d;
                d["name"] = c.name;
                d["passed"] = c.passed;
                d["value"] = c.value;
                d["tolerance"] = c.tolerance;
                d["detail"] = c.detail;
                out.append(d);
            }
            return out;
        },
        py::arg("seed") = ValidationOptions{}.seed);
}
