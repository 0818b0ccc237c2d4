// io.hpp: CSV trajectories, ensemble tables and JSON summaries.

#pragma once

#include "qsdspin/analysis.hpp"
#include "qsdspin/record.hpp"
#include "qsdspin/trajectory.hpp"

#include "json.hpp"

#include <iosfwd>
#include <string>

namespace qsdspin {

/// Shortest round-trip text for a double (at most 17 significant digits).
std::string format_double(double v);

/// Header lines "# key: value" written ahead of every table. `config` is
/// embedded verbatim as one JSON line.
struct Provenance {
    nlohmann::ordered_json config;
    std::string command;
};

/// Columns: t, state parameters, sx, sy, sz, purity.
void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& rec, const Provenance& prov);

/// Reads a trajectory written by write_trajectory_csv. Spin, model and
/// parameters come from the embedded config when present; otherwise the
/// spin is inferred from the state columns. Throws std::runtime_error with
/// the offending line on malformed input.
TrajectoryRecord read_trajectory_csv(std::istream& in);

/// Columns: t, then mean and standard error of sx, sy, sz and purity.
void write_ensemble_csv(std::ostream& out, const EnsembleResult& result, const Provenance& prov);

nlohmann::ordered_json to_json(const AnalysisSummary& summary);

std::string version();

} // namespace qsdspin
