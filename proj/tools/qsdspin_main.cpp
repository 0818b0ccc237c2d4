// qsdspin: command-line front end.

#include "qsdspin/commands.hpp"
#include "qsdspin/io.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <iostream>

#ifndef QSDSPIN_PRESET_DIR
#define QSDSPIN_PRESET_DIR "presets"
#endif

namespace {

std::string joined(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += i == 0 ? std::filesystem::path(argv[0]).filename().string() : argv[i];
    }
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum state diffusion of a measured spin"};
    app.set_version_flag("--version", qsdspin::version());
    app.require_subcommand(1);

    qsdspin::CommandOptions opts;
    std::string preset;
    std::uint64_t seed = 0;
    int threads = 0;

    auto add_common = [&](CLI::App* sub, bool with_config) {
        if (with_config) {
            sub->add_option("--config", opts.config_path, "experiment file");
            sub->add_option("--preset", preset, "shipped preset (fig2 ... fig9)");
            sub->add_option("--set", opts.overrides, "key=value override (repeatable)");
            sub->add_option("--out", opts.out_dir, "output directory");
        }
        sub->add_option("--seed", seed, "base seed");
        sub->add_option("--threads", threads, "worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
    };

    auto* simulate = app.add_subcommand("simulate", "one trajectory per alpha, written as CSV");
    add_common(simulate, true);
    auto* ensemble = app.add_subcommand("ensemble", "ensemble means per alpha, CSV plus JSON summary");
    add_common(ensemble, true);
    auto* analyze = app.add_subcommand("analyze", "Zeno statistics of a stored trajectory");
    add_common(analyze, true);
    analyze->add_option("--input", opts.input, "trajectory CSV");
    auto* validate = app.add_subcommand("validate", "run the invariant suite");
    add_common(validate, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : qsdspin::exit_config;
    }

    CLI::App* chosen = app.get_subcommands().front();
    if (chosen->count("--seed")) opts.seed = seed;
    if (chosen->count("--threads")) opts.threads = threads;
    if (!preset.empty()) {
        if (!opts.config_path.empty()) {
            std::cerr << R"({"error":"config","message":"--config and --preset are exclusive"})" << "\n";
            return qsdspin::exit_config;
        }
        opts.config_path = (std::filesystem::path(QSDSPIN_PRESET_DIR) / (preset + ".conf")).string();
    }
    opts.command_line = joined(argc, argv);
    return qsdspin::run_command(chosen->get_name(), opts, std::cout, std::cerr);
}
