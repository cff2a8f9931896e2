// vlcsec: secrecy-aware adaptive modulation and precoding simulator.
//
//   vlcsec run      --config paper.ini --out results [--seed 7] [--mode all]
//   vlcsec sweep    --config paper.ini --out results --seeds 1,2,3 [--mode all]
//   vlcsec validate --config paper.ini [--validate-level fast|full]

#include <iostream>

#include <CLI11.hpp>

#include "vlcsec/commands.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Q-learning adaptive PAM and precoding for VLC physical-layer security"};
    app.require_subcommand(1);

    vlcsec::RunArgs run_args;
    std::uint64_t seed = 0;
    auto* run = app.add_subcommand("run", "run adaptive and baseline episodes for every configured setup");
    run->add_option("--config", run_args.config_path, "experiment config file")->required()->check(CLI::ExistingFile);
    run->add_option("--out", run_args.out_dir, "output directory")->required();
    auto* seed_opt = run->add_option("--seed", seed, "override the config seed");
    run->add_option("--mode", run_args.mode, "adaptive | fixed64 | all")->default_val("all");

    vlcsec::SweepArgs sweep_args;
    std::string seed_list;
    auto* sweep = app.add_subcommand("sweep", "run every (setup, mode, seed) cell and aggregate across seeds");
    sweep->add_option("--config", sweep_args.config_path, "experiment config file")
        ->required()
        ->check(CLI::ExistingFile);
    sweep->add_option("--out", sweep_args.out_dir, "output directory")->required();
    sweep->add_option("--seeds", seed_list, "comma-separated seeds")->required();
    sweep->add_option("--mode", sweep_args.mode, "adaptive | fixed64 | all")->default_val("all");

    vlcsec::ValidateArgs validate_args;
    auto* validate = app.add_subcommand("validate", "run the Monte-Carlo and convergence oracles");
    validate->add_option("--config", validate_args.config_path, "experiment config file")
        ->required()
        ->check(CLI::ExistingFile);
    validate->add_option("--validate-level", validate_args.level, "fast | full")
        ->default_val("fast")
        ->check(CLI::IsMember({"fast", "full"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : vlcsec::kExitUsage;
    }

    if (*run) {
        if (*seed_opt) run_args.seed = seed;
        return vlcsec::cmd_run(run_args, std::cout, std::cerr);
    }
    if (*sweep) {
        try {
            sweep_args.seeds = vlcsec::parse_seed_list(seed_list);
        } catch (const std::exception& e) {
            std::cerr << "usage error: " << e.what() << '\n';
            return vlcsec::kExitUsage;
        }
        return vlcsec::cmd_sweep(sweep_args, std::cout, std::cerr);
    }
    return vlcsec::cmd_validate(validate_args, std::cout, std::cerr);
}
