#include "collapse/experiment.hpp"
#include "collapse/parallel.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"collapse-lab: experiments on collapsing hyper-Kaehler fibrations"};
    std::string sub;
    std::string config;
    std::string out = ".";
    std::string seed;
    int threads = 0;
    app.add_option("subcommand", sub, "potential | bs | spectrum | lower-bound | gh | sweep | oracle")
        ->required()
        ->check(CLI::IsMember(collapse::subcommands()));
    app.add_option("--config", config, "Path to the INI-style experiment config")->required();
    app.add_option("--out", out, "Output directory for artifacts");
    app.add_option("--seed", seed, "64-bit seed, overrides output.seed");
    app.add_option("--threads", threads, "Worker threads; falls back to COLLAPSE_SPEC_THREADS")->check(CLI::NonNegativeNumber);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : collapse::kExitValidation;
    }
    if (threads == 0) {
        if (const char* env = std::getenv("COLLAPSE_SPEC_THREADS")) {
            try {
                threads = std::stoi(env);
            } catch (const std::exception&) {
                std::cerr << "error: COLLAPSE_SPEC_THREADS is not an integer\n";
                return collapse::kExitValidation;
            }
        }
    }
    if (threads > 0) collapse::set_num_threads(threads);
    if (!seed.empty() && seed.find_first_not_of("0123456789") != std::string::npos) {
        std::cerr << "error: --seed must be an unsigned integer\n";
        return collapse::kExitValidation;
    }
    return collapse::run_experiment(sub, config, out, seed, std::cerr);
}
