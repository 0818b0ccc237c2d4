#include "qsdspin/commands.hpp"

#include "qsdspin/analysis.hpp"
#include "qsdspin/config.hpp"
#include "qsdspin/io.hpp"
#include "qsdspin/trajectory.hpp"
#include "qsdspin/validate.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace qsdspin {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::ofstream open_output(const fs::path& path) {
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

std::vector<ConfigEntry> gather_entries(const CommandOptions& o) {
    std::vector<ConfigEntry> entries;
    if (!o.config_path.empty()) entries = parse_config_entries(read_file(o.config_path));
    for (const auto& s : o.overrides) entries.push_back(parse_override(s));
    if (o.seed) entries.push_back({"seed", std::to_string(*o.seed), 0});
    if (o.threads) entries.push_back({"threads", std::to_string(*o.threads), 0});
    return entries;
}

std::string alpha_tag(double alpha) {
    std::string t = format_double(alpha);
    for (char& c : t)
        if (c == '-') c = 'm';
    return "_alpha" + t;
}

fs::path job_path(const RunConfig& cfg, const std::string& out_dir, std::size_t job, const std::string& suffix) {
    std::string stem = cfg.name;
    if (cfg.alpha.size() > 1) stem += alpha_tag(cfg.alpha[job]);
    return fs::path(out_dir) / (stem + suffix);
}

ojson job_config(const RunConfig& cfg, std::size_t job) {
    ojson j = cfg.to_json();
    j["alpha_run"] = cfg.alpha[job];
    return j;
}

void write_json(const fs::path& path, const ojson& j) {
    auto f = open_output(path);
    f << j.dump(2) << "\n";
}

int simulate(const RunConfig& cfg, const CommandOptions& o, std::ostream& out) {
    for (std::size_t job = 0; job < cfg.alpha.size(); ++job) {
        RunOptions ro;
        ro.stride = cfg.stride;
        ro.stream = cfg.stream;
        ro.positivity_fail = cfg.positivity_fail;
        const auto rec = run_trajectory(cfg.model, cfg.spin, cfg.params(cfg.alpha[job]), cfg.initial, ro);
        const fs::path path = job_path(cfg, o.out_dir, job, ".csv");
        auto f = open_output(path);
        write_trajectory_csv(f, rec, {job_config(cfg, job), o.command_line});
        out << "wrote " << path.string() << " (" << rec.size() << " samples, min eigenvalue "
            << format_double(rec.meta.min_eigenvalue) << ", " << rec.meta.positivity_warnings
            << " positivity warnings)\n";
    }
    return exit_ok;
}

int ensemble(const RunConfig& cfg, const CommandOptions& o, std::ostream& out) {
    for (std::size_t job = 0; job < cfg.alpha.size(); ++job) {
        const ModelParams p = cfg.params(cfg.alpha[job]);
        EnsembleOptions eo;
        eo.n_traj = cfg.n_traj;
        eo.stride = cfg.stride;
        eo.threads = cfg.threads;
        eo.first_stream = cfg.stream;
        eo.keep_trajectories = cfg.model == ModelKind::rabi_angle;
        const auto r = run_ensemble(cfg.model, cfg.spin, p, cfg.initial, eo);

        const ojson conf = job_config(cfg, job);
        const fs::path csv = job_path(cfg, o.out_dir, job, "_ensemble.csv");
        {
            auto f = open_output(csv);
            write_ensemble_csv(f, r, {conf, o.command_line});
        }

        ojson s;
        s["version"] = version();
        s["command"] = o.command_line;
        s["config"] = conf;
        s["n_traj"] = r.n_traj;
        s["positivity_warnings"] = r.positivity_warnings;
        s["min_eigenvalue"] = r.min_eigenvalue;
        const std::size_t last = r.times.size() - 1;
        s["final"] = {{"t", r.times[last]},
                      {"sx", r.mean_sx[last]},
                      {"sy", r.mean_sy[last]},
                      {"sz", r.mean_sz[last]},
                      {"purity", r.mean_purity[last]}};
        if (eo.keep_trajectories) {
            std::vector<std::vector<double>> phi;
            for (const auto& t : r.trajectories) phi.push_back(t.state_column("phi"));
            const auto h = angle_pdf(phi, cfg.n_bins, p.alpha, p.epsilon);
            const auto chi = chi_square_uniformity(h.counts);
            const auto st = angle_stationarity(phi, cfg.n_bins);
            s["angle_histogram"] = {{"edges", h.edges},     {"counts", h.counts},
                                    {"density", h.density}, {"reference", h.reference},
                                    {"n_samples", h.n_samples}};
            s["uniformity_chi2"] = {{"statistic", chi.statistic}, {"dof", chi.dof}, {"p_value", chi.p_value}};
            s["stationarity_chi2"] = {{"statistic", st.statistic}, {"dof", st.dof}, {"p_value", st.p_value}};
        }
        const fs::path summary = job_path(cfg, o.out_dir, job, "_ensemble.json");
        write_json(summary, s);
        out << "wrote " << csv.string() << " and " << summary.string() << " (" << r.n_traj << " trajectories)\n";
    }
    return exit_ok;
}

void analyze_file(const std::string& input, const fs::path& output, const AnalysisOptions& ao,
                  const std::string& command_line, std::ostream& out) {
    const std::string text = read_file(input);
    std::istringstream in(text);
    TrajectoryRecord rec;
    try {
        rec = read_trajectory_csv(in);
    } catch (const std::runtime_error& e) {
        throw IoError(input + ": " + e.what());
    }
    ojson j;
    j["version"] = version();
    j["command"] = command_line;
    j["input"] = input;
    const std::string tag = "# config: ";
    const auto at = text.find(tag);
    if (at != std::string::npos) {
        const auto end = text.find('\n', at);
        j["config"] = ojson::parse(text.substr(at + tag.size(), end - at - tag.size()));
    }
    const auto summary = summarize(rec, ao);
    const ojson body = to_json(summary);
    for (const auto& [k, v] : body.items()) j[k] = v;
    write_json(output, j);

    out << "wrote " << output.string() << "\n";
    out << "eigenvalue  residence  mean_return  se  episodes\n";
    for (std::size_t i = 0; i < summary.residence.size(); ++i) {
        const auto& r = summary.residence[i];
        const auto& t = summary.return_times[i];
        out << format_double(r.eigenvalue) << "  " << format_double(r.probability) << "  "
            << format_double(t.mean) << "  " << format_double(t.standard_error) << "  " << t.count << "\n";
    }
    if (summary.rabi_rate)
        out << "mean rabi rate " << format_double(summary.rabi_rate->rate) << " +- "
            << format_double(summary.rabi_rate->standard_error) << "\n";
}

AnalysisOptions analysis_options(double half_width, int n_bins, int occupancy_bins) {
    AnalysisOptions ao;
    ao.half_width = half_width;
    ao.angle_bins = n_bins;
    ao.occupancy_bins = occupancy_bins;
    return ao;
}

// Without a config only the analysis keys may be overridden.
int analyze_bare(const CommandOptions& o, std::ostream& out) {
    AnalysisOptions ao;
    for (const auto& s : o.overrides) {
        const ConfigEntry e = parse_override(s);
        if (e.key != "half_width" && e.key != "n_bins" && e.key != "occupancy_bins")
            throw ConfigError(e.key, 0, "--set: " + e.key + ": not an analysis option (pass --config for run keys)");
        // Reuse the config validation for the value itself.
        const RunConfig probe = build_config({{"spin", "1/2", 0}, {"model", "matrix", 0}, {"alpha", "0", 0}, e});
        ao = analysis_options(e.key == "half_width" ? probe.half_width : ao.half_width,
                              e.key == "n_bins" ? probe.n_bins : ao.angle_bins,
                              e.key == "occupancy_bins" ? probe.occupancy_bins : ao.occupancy_bins);
    }
    const fs::path output = fs::path(o.out_dir) / (fs::path(o.input).stem().string() + "_analysis.json");
    analyze_file(o.input, output, ao, o.command_line, out);
    return exit_ok;
}

int analyze(const RunConfig& cfg, const CommandOptions& o, std::ostream& out) {
    const AnalysisOptions ao = analysis_options(cfg.half_width, cfg.n_bins, cfg.occupancy_bins);
    const std::string explicit_input = !o.input.empty() ? o.input : cfg.input;
    if (!explicit_input.empty()) {
        const fs::path output = fs::path(o.out_dir) / (fs::path(explicit_input).stem().string() + "_analysis.json");
        analyze_file(explicit_input, output, ao, o.command_line, out);
        return exit_ok;
    }
    // Default: the files `simulate` writes for the same config.
    for (std::size_t job = 0; job < cfg.alpha.size(); ++job)
        analyze_file(job_path(cfg, o.out_dir, job, ".csv").string(), job_path(cfg, o.out_dir, job, "_analysis.json"),
                     ao, o.command_line, out);
    return exit_ok;
}

int validate(const CommandOptions& o, std::ostream& out) {
    ValidationOptions vo;
    if (o.seed) vo.seed = *o.seed;
    if (o.threads) vo.threads = *o.threads;
    int failed = 0;
    run_validation_suite(vo, [&](const ValidationCheck& c) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n" << std::flush;
        if (!c.passed) ++failed;
    });
    out << (failed == 0 ? "all checks passed\n" : std::to_string(failed) + " check(s) failed\n");
    return failed == 0 ? exit_ok : exit_validation;
}

void report(std::ostream& err, const ojson& record) { err << record.dump() << "\n"; }

} // namespace

int run_command(const std::string& sub, const CommandOptions& o, std::ostream& out, std::ostream& err) {
    try {
        if (sub == "validate") return validate(o, out);
        if (sub == "analyze" && o.config_path.empty()) {
            if (o.input.empty())
                throw ConfigError("input", 0, "analyze needs --input or a config naming the run");
            return analyze_bare(o, out);
        }
        if (sub != "simulate" && sub != "ensemble" && sub != "analyze")
            throw ConfigError("subcommand", 0, "unknown subcommand '" + sub + "'");
        const RunConfig cfg = build_config(gather_entries(o));
        if (sub == "simulate") return simulate(cfg, o, out);
        if (sub == "ensemble") return ensemble(cfg, o, out);
        return analyze(cfg, o, out);
    } catch (const ConfigError& e) {
        report(err, {{"error", "config"}, {"key", e.key()}, {"line", e.line()}, {"message", e.what()}});
        return exit_config;
    } catch (const EnsembleError& e) {
        ojson failures = ojson::array();
        for (const auto& f : e.failures())
            failures.push_back({{"trajectory", f.index}, {"step", f.step}, {"message", f.message}});
        report(err, {{"error", "numerical"}, {"message", e.what()}, {"failures", failures}});
        return exit_numerical;
    } catch (const NumericalError& e) {
        report(err, {{"error", "numerical"}, {"message", e.what()}, {"step", e.step()}, {"state", e.state_dump()}});
        return exit_numerical;
    } catch (const IoError& e) {
        report(err, {{"error", "io"}, {"message", e.what()}});
        return exit_config;
    } catch (const std::invalid_argument& e) {
        report(err, {{"error", "config"}, {"message", e.what()}});
        return exit_config;
    } catch (const std::exception& e) {
        report(err, {{"error", "numerical"}, {"message", e.what()}});
        return exit_numerical;
    }
}

} // namespace qsdspin
