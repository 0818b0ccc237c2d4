#include "qsdspin/config.hpp"
#include "qsdspin/analysis.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <set>

namespace qsdspin {

namespace {

std::string trim(std::string_view t) {
    const auto b = t.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = t.find_last_not_of(" \t\r");
    return std::string(t.substr(b, e - b + 1));
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{
        "spin",  "model",      "alpha",  "epsilon",        "dt",      "duration",
        "seed",  "n_traj",     "stride", "stream",         "initial", "name",
        "input", "half_width", "n_bins", "occupancy_bins", "threads", "positivity_fail"};
    return keys;
}

[[noreturn]] void fail(const ConfigEntry& e, const std::string& why) {
    std::string where = e.line > 0 ? "line " + std::to_string(e.line) : "--set";
    throw ConfigError(e.key, e.line, where + ": " + e.key + ": " + why);
}

double to_double(const ConfigEntry& e, std::string_view text) {
    const std::string t = trim(text);
    double v = 0.0;
    const char* first = t.data();
    if (!t.empty() && t.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v))
        fail(e, "expected a number, got '" + t + "'");
    return v;
}

template <typename Int>
Int to_int(const ConfigEntry& e) {
    const std::string t = trim(e.value);
    Int v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
        fail(e, "expected an integer, got '" + t + "'");
    return v;
}

} // namespace

std::vector<ConfigEntry> parse_config_entries(std::string_view text) {
    std::vector<ConfigEntry> out;
    std::set<std::string> seen;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError("", line_no, "line " + std::to_string(line_no) + ": expected 'key = value'");
        ConfigEntry e{trim(std::string_view(body).substr(0, eq)), trim(std::string_view(body).substr(eq + 1)),
                      line_no};
        if (e.key.empty()) throw ConfigError("", line_no, "line " + std::to_string(line_no) + ": missing key");
        if (!seen.insert(e.key).second) fail(e, "duplicate key");
        out.push_back(std::move(e));
    }
    return out;
}

ConfigEntry parse_override(std::string_view text) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos)
        throw ConfigError(std::string(text), 0, "--set expects key=value, got '" + std::string(text) + "'");
    return {trim(text.substr(0, eq)), trim(text.substr(eq + 1)), 0};
}

RunConfig build_config(const std::vector<ConfigEntry>& entries) {
    // Last writer wins, so command-line overrides appended after the file apply.
    std::map<std::string, ConfigEntry> latest;
    for (const auto& e : entries) {
        if (!known_keys().count(e.key)) fail(e, "unknown key");
        latest[e.key] = e;
    }

    RunConfig c;
    for (const char* required : {"spin", "model", "alpha"})
        if (!latest.count(required))
            throw ConfigError(required, 0, std::string("missing required key '") + required + "'");

    for (const auto& [key, e] : latest) {
        try {
            if (key == "spin") c.spin = Spin::parse(e.value);
            else if (key == "model") c.model = parse_model_kind(e.value);
            else if (key == "alpha") {
                c.alpha.clear();
                std::string_view rest = e.value;
                while (true) {
                    const auto comma = rest.find(',');
                    c.alpha.push_back(to_double(e, rest.substr(0, comma)));
                    if (comma == std::string_view::npos) break;
                    rest.remove_prefix(comma + 1);
                }
            }
            else if (key == "epsilon") c.epsilon = to_double(e, e.value);
            else if (key == "dt") c.dt = to_double(e, e.value);
            else if (key == "duration") c.duration = to_double(e, e.value);
            else if (key == "seed") c.seed = to_int<std::uint64_t>(e);
            else if (key == "n_traj") c.n_traj = to_int<std::size_t>(e);
            else if (key == "stride") c.stride = to_int<int>(e);
            else if (key == "stream") c.stream = to_int<std::uint64_t>(e);
            else if (key == "initial") c.initial = InitialState::parse(e.value);
            else if (key == "name") c.name = e.value;
            else if (key == "input") c.input = e.value;
            else if (key == "half_width") c.half_width = to_double(e, e.value);
            else if (key == "n_bins") c.n_bins = to_int<int>(e);
            else if (key == "occupancy_bins") c.occupancy_bins = to_int<int>(e);
            else if (key == "threads") c.threads = to_int<int>(e);
            else if (key == "positivity_fail") c.positivity_fail = to_double(e, e.value);
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& ex) {
            fail(e, ex.what());
        }
    }

    auto check = [&](const char* key, bool ok, const std::string& why) {
        if (ok) return;
        const auto it = latest.find(key);
        fail(it != latest.end() ? it->second : ConfigEntry{key, "", 0}, why);
    };
    for (double a : c.alpha) check("alpha", a >= 0.0, "alpha must be >= 0");
    check("epsilon", c.epsilon >= 0.0, "epsilon must be >= 0");
    check("dt", c.dt > 0.0, "dt must be positive");
    check("duration", c.duration >= 0.0, "duration must be >= 0");
    check("dt", c.duration == 0.0 || c.dt <= c.duration, "dt must not exceed duration");
    check("n_traj", c.n_traj >= 1, "n_traj must be >= 1");
    check("stride", c.stride >= 1, "stride must be >= 1");
    check("n_bins", c.n_bins >= 8, "n_bins must be >= 8");
    check("occupancy_bins", c.occupancy_bins >= 1, "occupancy_bins must be >= 1");
    check("threads", c.threads >= 0, "threads must be >= 0");
    check("model", model_unavailable_reason(c.model, c.spin).empty(), model_unavailable_reason(c.model, c.spin));
    check("initial", c.initial.kind != InitialState::Kind::uniform_angle || c.spin == Spin::half(),
          "uniform-angle initial states need spin 1/2");
    try {
        VicinitySpec::for_spin(c.spin, c.half_width);
    } catch (const std::exception& ex) {
        check("half_width", false, ex.what());
    }
    if (c.initial.kind == InitialState::Kind::eigenstate && !std::isinf(c.initial.m)) {
        const auto eig = build_spin_system(c.spin).sz_eigenvalues;
        bool found = false;
        for (double m : eig) found = found || std::abs(m - c.initial.m) < 1e-9;
        check("initial", found, "initial eigenvalue is not an S_z eigenvalue of spin " + c.spin.to_string());
    }
    return c;
}

RunConfig parse_config(std::string_view text) { return build_config(parse_config_entries(text)); }

ModelParams RunConfig::params(double alpha_value) const {
    ModelParams p;
    p.alpha = alpha_value;
    p.epsilon = epsilon;
    p.dt = dt;
    p.duration = duration;
    p.seed = seed;
    return p;
}

nlohmann::ordered_json RunConfig::to_json() const {
    nlohmann::ordered_json j;
    j["spin"] = spin.to_string();
    j["model"] = std::string(qsdspin::to_string(model));
    j["alpha"] = alpha;
    j["epsilon"] = epsilon;
    j["dt"] = dt;
    j["duration"] = duration;
    j["seed"] = seed;
    j["n_traj"] = n_traj;
    j["stride"] = stride;
    j["stream"] = stream;
    j["initial"] = initial.to_string();
    j["name"] = name;
    if (!input.empty()) j["input"] = input;
    j["half_width"] = half_width;
    j["n_bins"] = n_bins;
    j["occupancy_bins"] = occupancy_bins;
    j["threads"] = threads;
    if (positivity_fail >= 0.0) j["positivity_fail"] = positivity_fail;
    return j;
}

} // namespace qsdspin
