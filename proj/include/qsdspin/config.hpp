// config.hpp: flat "key = value" experiment files.
//
//   # comment
//   spin = 3/2
//   model = coherence
//   alpha = 0, 0.5, 1, 3     # a list runs one job per value
//   dt = 1e-4

#pragma once

#include "qsdspin/sde.hpp"
#include "qsdspin/spin_algebra.hpp"
#include "qsdspin/trajectory.hpp"

#include "json.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace qsdspin {

struct ConfigEntry {
    std::string key;
    std::string value;
    int line = 0; // 0 for command-line overrides
};

struct RunConfig {
    Spin spin;
    ModelKind model = ModelKind::matrix;
    std::vector<double> alpha;
    double epsilon = 1.0;
    double dt = 1e-4;
    double duration = 10.0;
    std::uint64_t seed = 1;
    std::size_t n_traj = 1;
    int stride = 10;
    std::uint64_t stream = 0;
    InitialState initial = InitialState::parse("down");
    std::string name = "run";
    std::string input;
    double half_width = 0.1;
    int n_bins = 100;
    int occupancy_bins = 51;
    int threads = 0;
    double positivity_fail = -1.0; // < 0: model default

    ModelParams params(double alpha_value) const;
    nlohmann::ordered_json to_json() const;
};

/// Splits a document into entries. Throws ConfigError on malformed lines
/// and duplicate keys.
std::vector<ConfigEntry> parse_config_entries(std::string_view text);

/// Builds a validated RunConfig. spin, model and alpha are required; every
/// other key has a default. Later entries override earlier ones only when
/// they come from the command line (line 0). Throws ConfigError naming the
/// key and line for unknown keys, bad values and incompatible spin/model.
RunConfig build_config(const std::vector<ConfigEntry>& entries);

RunConfig parse_config(std::string_view text);

/// "key=value" from --set.
ConfigEntry parse_override(std::string_view text);

} // namespace qsdspin
