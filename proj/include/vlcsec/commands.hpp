#pragma once

// Subcommand implementations behind the `vlcsec` executable. They return the
// process exit code and never call exit(), so tests drive them directly.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vlcsec/validation.hpp"

namespace vlcsec {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;  // also config parse errors
inline constexpr int kExitRuntime = 2;
inline constexpr int kExitValidation = 3;

struct RunArgs {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::string mode = "all";  // adaptive | fixed<M> | static<M> | all
};

struct ValidateArgs {
    std::string config_path;
    std::string level = "fast";
    ValidationHooks hooks;
};

struct SweepArgs {
    std::string config_path;
    std::vector<std::uint64_t> seeds;
    std::string out_dir;
    std::string mode = "all";
};

/// Writes <out>/<scenario>/<mode>/seed<k>.csv, a matching .qtable checkpoint,
/// <out>/summary.json and the effective <out>/config.ini.
int cmd_run(const RunArgs& args, std::ostream& out, std::ostream& err);

/// Prints one line per oracle; exit 3 naming the first failure.
int cmd_validate(const ValidateArgs& args, std::ostream& out, std::ostream& err);

/// cmd_run over several seeds at once, plus <out>/sweep_summary.json with
/// mean and standard deviation across seeds of every window statistic.
int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err);

/// Parses "1,2,7". Throws std::invalid_argument on an empty or malformed list.
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

}  // namespace vlcsec
