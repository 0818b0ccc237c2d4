#include "qsdspin/trajectory.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qsdspin {

// --------------------------------------------------------------------------
// TrajectoryRecord accessors

namespace {

template <typename F>
std::vector<double> column(const TrajectoryRecord& rec, F f) {
    std::vector<double> out;
    out.reserve(rec.components.size());
    for (const auto& c : rec.components) out.push_back(f(c));
    return out;
}

} // namespace

std::vector<double> TrajectoryRecord::sz() const { return column(*this, [](auto& c) { return c.sz; }); }
std::vector<double> TrajectoryRecord::sy() const { return column(*this, [](auto& c) { return c.sy; }); }
std::vector<double> TrajectoryRecord::sx() const { return column(*this, [](auto& c) { return c.sx; }); }

std::vector<double> TrajectoryRecord::state_column(const std::string& name) const {
    const auto it = std::find(state_names.begin(), state_names.end(), name);
    if (it == state_names.end()) throw std::out_of_range("no state column named '" + name + "'");
    const std::size_t col = static_cast<std::size_t>(it - state_names.begin());
    std::vector<double> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = states[i * state_width() + col];
    return out;
}

// --------------------------------------------------------------------------
// Model kinds

std::string_view to_string(ModelKind kind) {
    switch (kind) {
    case ModelKind::matrix: return "matrix";
    case ModelKind::kraus: return "kraus";
    case ModelKind::coherence: return "coherence";
    case ModelKind::components: return "components";
    case ModelKind::rabi_angle: return "rabi-angle";
    }
    return "?";
}

ModelKind parse_model_kind(std::string_view text) {
    if (text == "matrix") return ModelKind::matrix;
    if (text == "kraus") return ModelKind::kraus;
    if (text == "coherence") return ModelKind::coherence;
    if (text == "components") return ModelKind::components;
    if (text == "rabi-angle" || text == "rabi_angle") return ModelKind::rabi_angle;
    throw std::invalid_argument("unknown model '" + std::string(text) +
                                "': expected matrix, kraus, coherence, components or rabi-angle");
}

std::string model_unavailable_reason(ModelKind kind, Spin spin) {
    if (kind == ModelKind::components && spin == Spin::three_halves())
        return "model 'components' is not available for spin 3/2: no closed component system "
               "exists, use 'coherence' or 'matrix'";
    if (kind == ModelKind::rabi_angle && !(spin == Spin::half()))
        return "model 'rabi-angle' is only defined for spin 1/2";
    return {};
}

// --------------------------------------------------------------------------
// Initial states

InitialState InitialState::eigenstate(double m) {
    InitialState s;
    s.kind = Kind::eigenstate;
    s.m = m;
    return s;
}
InitialState InitialState::mixed() {
    InitialState s;
    s.kind = Kind::mixed;
    return s;
}
InitialState InitialState::coherence(std::vector<double> values) {
    InitialState s;
    s.kind = Kind::coherence;
    s.values = std::move(values);
    return s;
}
InitialState InitialState::density(DensityMatrix rho) {
    InitialState s;
    s.kind = Kind::density;
    s.rho = std::move(rho);
    return s;
}
InitialState InitialState::uniform_angle() {
    InitialState s;
    s.kind = Kind::uniform_angle;
    return s;
}

namespace {

double parse_number(std::string_view t) {
    const auto slash = t.find('/');
    if (slash != std::string_view::npos)
        return parse_number(t.substr(0, slash)) / parse_number(t.substr(slash + 1));
    if (!t.empty() && t.front() == '+') t.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
        throw std::invalid_argument("not a number: '" + std::string(t) + "'");
    return v;
}

std::string trim(std::string_view t) {
    const auto b = t.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = t.find_last_not_of(" \t");
    return std::string(t.substr(b, e - b + 1));
}

} // namespace

InitialState InitialState::parse(std::string_view text) {
    const std::string t = trim(text);
    if (t == "mixed") return mixed();
    if (t == "uniform-angle" || t == "uniform_angle") return uniform_angle();
    if (t == "down") return eigenstate(-std::numeric_limits<double>::infinity());
    if (t == "up") return eigenstate(std::numeric_limits<double>::infinity());
    if (t.rfind("cv:", 0) == 0) {
        std::vector<double> values;
        std::string_view rest = std::string_view(t).substr(3);
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            values.push_back(parse_number(trim(rest.substr(0, comma))));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (values.empty()) throw std::invalid_argument("empty coherence vector in initial state");
        return coherence(std::move(values));
    }
    try {
        return eigenstate(parse_number(t));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("unrecognized initial state '" + t +
                                    "': expected up, down, mixed, uniform-angle, an S_z "
                                    "eigenvalue or cv:a,b,...");
    }
}

std::string InitialState::to_string() const {
    std::ostringstream out;
    out.precision(17);
    switch (kind) {
    case Kind::eigenstate:
        if (std::isinf(m)) return m > 0 ? "up" : "down";
        out << m;
        return out.str();
    case Kind::mixed: return "mixed";
    case Kind::uniform_angle: return "uniform-angle";
    case Kind::coherence:
        out << "cv:";
        for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << values[i];
        return out.str();
    case Kind::density: return "density";
    }
    return "?";
}

DensityMatrix resolve_initial_state(const InitialState& init, const SpinSystem& sys,
                                    std::uint64_t seed, std::uint64_t stream) {
    switch (init.kind) {
    case InitialState::Kind::eigenstate: {
        double m = init.m;
        if (std::isinf(m)) m = m > 0 ? sys.sz_eigenvalues.front() : sys.sz_eigenvalues.back();
        return eigenprojector(sys, m);
    }
    case InitialState::Kind::mixed: return maximally_mixed(sys);
    case InitialState::Kind::coherence: {
        const CoherenceModel model = default_coherence_model(sys.dim);
        if (static_cast<int>(init.values.size()) != model_size(model))
            throw std::invalid_argument("initial coherence vector has " +
                                        std::to_string(init.values.size()) + " values; spin " +
                                        sys.spin.to_string() + " needs " +
                                        std::to_string(model_size(model)));
        CoherenceVector cv{model, RVector(model_size(model))};
        for (int i = 0; i < cv.values.size(); ++i) cv.values[i] = init.values[i];
        DensityMatrix rho = coherence_to_density(cv, sys);
        if (!check_physical(rho).passed)
            throw std::invalid_argument("initial coherence vector is not a physical state");
        return rho;
    }
    case InitialState::Kind::density: {
        if (init.rho.rows() != sys.dim) throw std::invalid_argument("initial density has the wrong dimension");
        if (!check_physical(init.rho).passed)
            throw std::invalid_argument("initial density matrix is not physical");
        return init.rho;
    }
    case InitialState::Kind::uniform_angle: {
        if (sys.dim != 2) throw std::invalid_argument("uniform-angle initial states are spin-1/2 only");
        RandomStream rng(seed, stream, StreamPurpose::initial_state);
        CoherenceVector cv{CoherenceModel::rabi_angle, RVector(1)};
        cv.values[0] = 2.0 * std::numbers::pi * rng.uniform();
        return coherence_to_density(cv, sys);
    }
    }
    throw std::invalid_argument("unknown initial state kind");
}

// --------------------------------------------------------------------------
// Single trajectory

double default_positivity_fail(ModelKind kind, Spin, const ModelParams&) {
    if (kind == ModelKind::kraus) return 1e-6;
    // Euler-Maruyama loses positivity by alpha^2 |c|^2 (dt - dW^2) per step and
    // the excursions accumulate; only a blow-up is treated as fatal.
    return 0.5;
}

namespace {

std::string dump_state(const Stepper& stepper) {
    std::vector<double> x;
    stepper.state_values(x);
    std::ostringstream out;
    out.precision(17);
    for (std::size_t i = 0; i < x.size(); ++i) out << (i ? " " : "") << x[i];
    return out.str();
}

} // namespace

TrajectoryRecord run_trajectory(ModelKind kind, Spin spin, const ModelParams& params,
                                const InitialState& init, const RunOptions& options) {
    params.validate();
    if (options.stride < 1) throw std::invalid_argument("stride must be >= 1");
    const SpinSystem sys = build_spin_system(spin);
    const DensityMatrix rho0 = resolve_initial_state(init, sys, params.seed, options.stream);
    auto stepper = make_stepper(kind, sys, params, rho0);
    RandomStream rng(params.seed, options.stream, StreamPurpose::noise);

    const double fail = options.positivity_fail >= 0.0 ? options.positivity_fail
                                                       : default_positivity_fail(kind, spin, params);
    const bool pure_by_construction = kind == ModelKind::rabi_angle;

    TrajectoryRecord rec;
    rec.state_names = stepper->state_names();
    rec.meta.params = params;
    rec.meta.model_kind = std::string(to_string(kind));
    rec.meta.spin = spin;
    rec.meta.stride = options.stride;
    rec.meta.stream = options.stream;

    const long long n = params.n_steps();
    const std::size_t samples = static_cast<std::size_t>(n / options.stride) + 1;
    rec.times.reserve(samples);
    rec.states.reserve(samples * rec.state_names.size());
    rec.components.reserve(samples);
    rec.purity.reserve(samples);

    std::vector<double> values;
    auto sample = [&](long long step) {
        stepper->state_values(values);
        for (double v : values)
            if (!std::isfinite(v)) throw NumericalError("non-finite state", step, dump_state(*stepper));
        rec.times.push_back(static_cast<double>(step) * params.dt);
        rec.states.insert(rec.states.end(), values.begin(), values.end());
        rec.components.push_back(stepper->components());
        rec.purity.push_back(stepper->purity());
        if (options.record_densities || (options.check_physicality && !pure_by_construction)) {
            const DensityMatrix rho = stepper->density();
            if (options.check_physicality && !pure_by_construction) {
                const double lo = min_eigenvalue(rho);
                rec.meta.min_eigenvalue = std::min(rec.meta.min_eigenvalue, lo);
                if (lo < -fail) {
                    std::ostringstream msg;
                    msg << "state left the physical region: min eigenvalue " << lo << " below -" << fail
                        << " at t = " << static_cast<double>(step) * params.dt;
                    throw NumericalError(msg.str(), step, dump_state(*stepper));
                }
                if (lo < -options.positivity_warn) ++rec.meta.positivity_warnings;
            }
            if (options.record_densities) rec.densities.push_back(rho);
        }
    };

    sample(0);
    for (long long step = 1; step <= n; ++step) {
        stepper->advance(rng);
        if (step % options.stride == 0) sample(step);
    }
    rec.meta.steps = n;
    rec.meta.renormalizations = stepper->renormalizations();
    return rec;
}

} // namespace qsdspin
