#include "qsdspin/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#ifndef QSDSPIN_VERSION
#define QSDSPIN_VERSION "0.0.0"
#endif

namespace qsdspin {

std::string version() { return QSDSPIN_VERSION; }

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

void write_header(std::ostream& out, const Provenance& prov) {
    out << "# qsdspin " << version() << "\n";
    if (!prov.command.empty()) out << "# command: " << prov.command << "\n";
    out << "# config: " << prov.config.dump() << "\n";
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream s(line);
    while (std::getline(s, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_cell(const std::string& cell, int line) {
    if (cell == "nan") return std::nan("");
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size())
        throw std::runtime_error("line " + std::to_string(line) + ": not a number: '" + cell + "'");
    return v;
}

Spin spin_from_width(std::size_t width, const std::vector<std::string>& names) {
    if (width == 1 || width == 3) return Spin::half();
    if (width == 8 || width == 10) return Spin::one();
    if (width == 15) return Spin::three_halves();
    std::string all;
    for (const auto& n : names) all += n + " ";
    throw std::runtime_error("cannot infer the spin from state columns: " + all);
}

nlohmann::ordered_json number(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

} // namespace

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& rec, const Provenance& prov) {
    write_header(out, prov);
    out << "# model: " << rec.meta.model_kind << ", steps: " << rec.meta.steps
        << ", min_eigenvalue: " << format_double(rec.meta.min_eigenvalue)
        << ", positivity_warnings: " << rec.meta.positivity_warnings
        << ", renormalizations: " << rec.meta.renormalizations << "\n";
    out << "t";
    for (const auto& n : rec.state_names) out << "," << n;
    out << ",sx,sy,sz,purity\n";
    for (std::size_t i = 0; i < rec.size(); ++i) {
        out << format_double(rec.times[i]);
        for (double v : rec.state(i)) out << "," << format_double(v);
        const auto& c = rec.components[i];
        out << "," << format_double(c.sx) << "," << format_double(c.sy) << "," << format_double(c.sz)
            << "," << format_double(rec.purity[i]) << "\n";
    }
}

TrajectoryRecord read_trajectory_csv(std::istream& in) {
    TrajectoryRecord rec;
    std::string line;
    int line_no = 0;
    bool have_header = false;
    bool have_config = false;
    nlohmann::json config;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string tag = "# config: ";
            if (line.rfind(tag, 0) == 0) {
                try {
                    config = nlohmann::json::parse(line.substr(tag.size()));
                    have_config = true;
                } catch (const std::exception& e) {
                    throw std::runtime_error("line " + std::to_string(line_no) + ": bad config JSON: " + e.what());
                }
            }
            continue;
        }
        const auto cells = split(line);
        if (!have_header) {
            if (cells.size() < 6 || cells.front() != "t" || cells[cells.size() - 4] != "sx" ||
                cells.back() != "purity")
                throw std::runtime_error("line " + std::to_string(line_no) +
                                         ": expected header 't,<state...>,sx,sy,sz,purity'");
            rec.state_names.assign(cells.begin() + 1, cells.end() - 4);
            have_header = true;
            continue;
        }
        const std::size_t width = rec.state_names.size();
        if (cells.size() != width + 5)
            throw std::runtime_error("line " + std::to_string(line_no) + ": expected " +
                                     std::to_string(width + 5) + " cells, got " + std::to_string(cells.size()));
        rec.times.push_back(parse_cell(cells[0], line_no));
        for (std::size_t k = 0; k < width; ++k) rec.states.push_back(parse_cell(cells[1 + k], line_no));
        rec.components.push_back({parse_cell(cells[width + 1], line_no), parse_cell(cells[width + 2], line_no),
                                  parse_cell(cells[width + 3], line_no)});
        rec.purity.push_back(parse_cell(cells[width + 4], line_no));
    }
    if (!have_header) throw std::runtime_error("no CSV header found");

    if (have_config) {
        try {
            rec.meta.spin = Spin::parse(config.at("spin").get<std::string>());
            rec.meta.model_kind = config.at("model").get<std::string>();
            const auto alpha = config.at("alpha");
            rec.meta.params.alpha = alpha.is_array() ? alpha.at(0).get<double>() : alpha.get<double>();
            if (config.contains("alpha_run")) rec.meta.params.alpha = config.at("alpha_run").get<double>();
            rec.meta.params.epsilon = config.at("epsilon").get<double>();
            rec.meta.params.dt = config.at("dt").get<double>();
            rec.meta.params.duration = config.at("duration").get<double>();
            rec.meta.params.seed = config.at("seed").get<std::uint64_t>();
            rec.meta.stride = config.at("stride").get<int>();
            if (config.contains("stream")) rec.meta.stream = config.at("stream").get<std::uint64_t>();
        } catch (const std::exception& e) {
            throw std::runtime_error(std::string("embedded config is incomplete: ") + e.what());
        }
    } else {
        rec.meta.spin = spin_from_width(rec.state_names.size(), rec.state_names);
        if (rec.size() >= 2) rec.meta.params.dt = rec.times[1] - rec.times[0];
    }
    return rec;
}

void write_ensemble_csv(std::ostream& out, const EnsembleResult& r, const Provenance& prov) {
    write_header(out, prov);
    out << "# n_traj: " << r.n_traj << ", min_eigenvalue: " << format_double(r.min_eigenvalue)
        << ", positivity_warnings: " << r.positivity_warnings << "\n";
    out << "t,sx,sx_se,sy,sy_se,sz,sz_se,purity,purity_se\n";
    for (std::size_t i = 0; i < r.times.size(); ++i) {
        out << format_double(r.times[i]) << "," << format_double(r.mean_sx[i]) << ","
            << format_double(r.se_sx[i]) << "," << format_double(r.mean_sy[i]) << ","
            << format_double(r.se_sy[i]) << "," << format_double(r.mean_sz[i]) << ","
            << format_double(r.se_sz[i]) << "," << format_double(r.mean_purity[i]) << ","
            << format_double(r.se_purity[i]) << "\n";
    }
}

nlohmann::ordered_json to_json(const AnalysisSummary& s) {
    nlohmann::ordered_json j;
    j["spin"] = s.spin.to_string();
    j["half_width"] = s.vicinity.half_width;
    j["n_samples"] = s.n_samples;
    j["sample_dt"] = s.sample_dt;

    auto& res = j["residence"] = nlohmann::ordered_json::array();
    for (const auto& r : s.residence)
        res.push_back({{"eigenvalue", r.eigenvalue}, {"probability", r.probability}, {"samples", r.samples}});

    auto& ret = j["return_times"] = nlohmann::ordered_json::array();
    for (const auto& r : s.return_times)
        ret.push_back({{"eigenvalue", r.eigenvalue},
                       {"mean", number(r.mean)},
                       {"standard_error", number(r.standard_error)},
                       {"count", r.count},
                       {"exits", r.exits}});

    if (s.angle) {
        const auto& h = *s.angle;
        j["angle_histogram"] = {{"edges", h.edges},         {"counts", h.counts},
                                {"density", h.density},     {"reference", h.reference},
                                {"n_samples", h.n_samples}, {"bin_width", h.bin_width}};
    }
    if (s.rabi_rate)
        j["mean_rabi_rate"] = {{"rate", s.rabi_rate->rate}, {"standard_error", s.rabi_rate->standard_error}};
    if (s.occupancy) {
        const auto& o = *s.occupancy;
        j["occupancy"] = {{"n_bins", o.n_bins}, {"lo", o.lo}, {"hi", o.hi}, {"total", o.total}, {"counts", o.counts}};
    }
    return j;
}

} // namespace qsdspin
