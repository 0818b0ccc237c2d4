#include "doctest.h"

#include "qsdspin/commands.hpp"
#include "qsdspin/config.hpp"
#include "qsdspin/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qsdspin;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("qsdspin_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("doubles round trip through text") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0})
        CHECK(std::stod(format_double(v)) == v);
    CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("trajectory CSV round trip") {
    const auto cfg = parse_config("spin = 1\nmodel = coherence\nalpha = 1.5\ndt = 0.001\nduration = 0.3\n");
    const auto rec = run_trajectory(cfg.model, cfg.spin, cfg.params(1.5), cfg.initial);
    std::stringstream buf;
    write_trajectory_csv(buf, rec, {cfg.to_json(), "test"});
    const std::string text = buf.str();
    CHECK(text.find("# config: {") != std::string::npos);
    CHECK(text.find("t,s,m,u,v,k,x,y,z,sx,sy,sz,purity\n") != std::string::npos);
    const auto back = read_trajectory_csv(buf);
    CHECK(back.states == rec.states);
    CHECK(back.times == rec.times);
    CHECK(back.sz() == rec.sz());
    CHECK(back.meta.spin == Spin::one());
    CHECK(back.meta.params.alpha == 1.5);
}

TEST_CASE("malformed CSV input") {
    std::istringstream no_header("1,2,3\n");
    CHECK_THROWS(read_trajectory_csv(no_header));
    std::istringstream short_row("t,x,y,z,sx,sy,sz,purity\n0,1,2\n");
    CHECK_THROWS(read_trajectory_csv(short_row));
    std::istringstream bad_cell("t,x,y,z,sx,sy,sz,purity\n0,1,2,3,4,5,six,7\n");
    CHECK_THROWS(read_trajectory_csv(bad_cell));
    std::istringstream bare("t,phi,sx,sy,sz,purity\n0,0,0,0,0.5,1\n0.1,0.1,0,-0.05,0.49,1\n");
    const auto rec = read_trajectory_csv(bare);
    CHECK(rec.meta.spin == Spin::half());
    CHECK(rec.meta.params.dt == doctest::Approx(0.1));
}

TEST_CASE("simulate then analyze through the command layer") {
    const fs::path dir = scratch("cmd");
    const fs::path conf = dir / "run.conf";
    std::ofstream(conf) << "spin = 3/2\nmodel = coherence\nalpha = 2, 4\ndt = 0.0001\nduration = 5\nname = demo\n";
    CommandOptions o;
    o.config_path = conf.string();
    o.out_dir = (dir / "out").string();
    o.command_line = "qsdspin simulate";
    std::ostringstream out, err;
    CHECK(run_command("simulate", o, out, err) == exit_ok);
    CHECK(fs::exists(dir / "out" / "demo_alpha2.csv"));
    CHECK(fs::exists(dir / "out" / "demo_alpha4.csv"));
    const std::string first = slurp(dir / "out" / "demo_alpha4.csv");
    CHECK(run_command("simulate", o, out, err) == exit_ok);
    CHECK(slurp(dir / "out" / "demo_alpha4.csv") == first);

    CHECK(run_command("analyze", o, out, err) == exit_ok);
    const auto j = nlohmann::json::parse(slurp(dir / "out" / "demo_alpha4_analysis.json"));
    CHECK(j["residence"].size() == 4);
    CHECK(j["return_times"].size() == 4);
    CHECK(j["config"]["alpha_run"] == 4.0);
    CHECK(j["version"] == version());

    o.overrides = {"n_traj=8"};
    CHECK(run_command("ensemble", o, out, err) == exit_ok);
    const auto e = nlohmann::json::parse(slurp(dir / "out" / "demo_alpha2_ensemble.json"));
    CHECK(e["n_traj"] == 8);
}

TEST_CASE("command errors are machine readable") {
    const fs::path dir = scratch("err");
    const fs::path conf = dir / "bad.conf";
    std::ofstream(conf) << "spin = 3/2\nmodel = components\nalpha = 1\n";
    CommandOptions o;
    o.config_path = conf.string();
    o.out_dir = dir.string();
    std::ostringstream out, err;
    CHECK(run_command("simulate", o, out, err) == exit_config);
    const auto j = nlohmann::json::parse(err.str());
    CHECK(j["error"] == "config");
    CHECK(j["key"] == "model");
    CHECK(j["line"] == 2);

    std::ofstream(conf) << "spin = 3/2\nmodel = coherence\nalpha = 8\ndt = 0.001\nduration = 5\npositivity_fail = 1e-9\n";
    std::ostringstream err2;
    CHECK(run_command("simulate", o, out, err2) == exit_numerical);
    CHECK(nlohmann::json::parse(err2.str())["error"] == "numerical");

    CommandOptions missing;
    missing.input = (dir / "nothing.csv").string();
    std::ostringstream err3;
    CHECK(run_command("analyze", missing, out, err3) == exit_config);
}

TEST_CASE("validate subcommand") {
    CommandOptions o;
    std::ostringstream out, err;
    CHECK(run_command("validate", o, out, err) == exit_ok);
    CHECK(out.str().find("FAIL") == std::string::npos);
}
