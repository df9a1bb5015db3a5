#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "dlab/config.hpp"
#include "dlab/evolution.hpp"
#include "dlab/experiments.hpp"

int main(int argc, char** argv) {
    CLI::App app{"dispersive_lab: pseudospectral experiments for 1-D periodic "
                 "dispersive equations"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out";
    std::optional<std::uint64_t> seed;

    for (const std::string& name : dlab::experiment_names()) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "config file (key = value lines)");
        sub->add_option("--seed", seed, "seed override");
        sub->add_option("--out", out_dir, "output directory");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string experiment = app.get_subcommands().front()->get_name();

    try {
        dlab::Config cfg = config_path.empty()
                               ? dlab::Config{}
                               : dlab::Config::parse_file(config_path);
        cfg.set("experiment", experiment);
        if (!out_dir.empty()) cfg.set("output_dir", out_dir);
        const dlab::RunManifest man =
            dlab::run_experiment(experiment, cfg, out_dir, seed);
        std::cout << "wrote " << man.files.size() << " artifact(s) to "
                  << out_dir << " (seed " << man.seed << ")\n";
        return 0;
    } catch (const dlab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const dlab::BlowUpError& e) {
        std::cerr << "numerical abort: blow-up guard tripped at t = "
                  << e.last_stable_time << " (H^1 norm " << e.h1_norm << ")\n";
        return 3;
    } catch (const dlab::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
