#include "vlcsec/commands.hpp"

#include <charconv>
#include <cmath>
#include <exception>
#include <filesystem>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "vlcsec/config.hpp"
#include "vlcsec/experiment.hpp"
#include "vlcsec/output.hpp"

namespace vlcsec {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct Cell {
    std::size_t prepared = 0;  // index into the prepared list
    std::uint64_t seed = 0;
    std::optional<EpisodeResult> result;
    std::string error;
};

struct Prepared {
    std::string scenario;
    RunMode mode;
    std::unique_ptr<PreparedScenario> data;
    std::string error;
};

std::vector<RunMode> select_modes(const ExperimentConfig& cfg, const std::string& mode)
{
    if (mode == "all") return configured_modes(cfg);
    return {parse_mode(mode, cfg)};
}

struct Execution {
    std::vector<Prepared> prepared;
    std::vector<Cell> cells;
    int failures = 0;
};

Execution execute(const ExperimentConfig& cfg, const std::vector<RunMode>& modes,
                  const std::vector<std::uint64_t>& seeds)
{
    Execution ex;
    for (const auto& sc : build_scenarios(cfg)) {
        for (const auto& mode : modes) {
            Prepared p{sc.name, mode, nullptr, {}};
            try {
                p.data = std::make_unique<PreparedScenario>(prepare(sc, make_run_config(cfg, mode, seeds.front())));
            } catch (const std::exception& e) {
                p.error = e.what();
            }
            ex.prepared.push_back(std::move(p));
        }
    }
    for (std::size_t i = 0; i < ex.prepared.size(); ++i)
        for (std::uint64_t seed : seeds) ex.cells.push_back(Cell{i, seed, std::nullopt, {}});

    const auto n = static_cast<std::int64_t>(ex.cells.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) {
        Cell& cell = ex.cells[static_cast<std::size_t>(i)];
        const Prepared& p = ex.prepared[cell.prepared];
        if (!p.data) {
            cell.error = p.error;
            continue;
        }
        try {
            cell.result = run_episode(*p.data, make_run_config(cfg, p.mode, cell.seed));
        } catch (const std::exception& e) {
            cell.error = e.what();
        }
    }
    for (const auto& c : ex.cells) ex.failures += c.result ? 0 : 1;
    return ex;
}

// Writes per-cell files and returns the run summary document.
ordered_json write_outputs(const ExperimentConfig& cfg, const Execution& ex, const std::vector<std::uint64_t>& seeds,
                           const fs::path& out)
{
    fs::create_directories(out);
    write_text_file(out / "config.ini", emit_config(cfg));

    ordered_json doc;
    doc["format"] = "vlcsec-summary v1";
    doc["seeds"] = seeds;
    doc["num_slots"] = cfg.num_slots;
    doc["window"] = cfg.summary_window;
    doc["runs"] = ordered_json::array();
    const int num_leds = static_cast<int>(cfg.luminaire_positions.size());

    for (const auto& cell : ex.cells) {
        const Prepared& p = ex.prepared[cell.prepared];
        const std::string mode = p.mode.label();
        ordered_json run;
        run["scenario"] = p.scenario;
        run["mode"] = mode;
        run["seed"] = cell.seed;
        if (!cell.result) {
            run["error"] = cell.error;
            doc["runs"].push_back(std::move(run));
            continue;
        }
        const fs::path csv = episode_csv_path(out, p.scenario, mode, cell.seed);
        std::ostringstream rows;
        write_episode_csv(rows, cell.result->logs, num_leds);
        write_text_file(csv, rows.str());

        fs::path qpath = csv;
        qpath.replace_extension(".qtable");
        std::ostringstream qrows;
        write_qtable(qrows, cell.result->q);
        write_text_file(qpath, qrows.str());

        run["csv"] = fs::relative(csv, out).generic_string();
        run["qtable"] = fs::relative(qpath, out).generic_string();
        run["summary"] = to_json(summarize(cell.result->logs, cfg.summary_window));
        doc["runs"].push_back(std::move(run));
    }
    write_text_file(out / "summary.json", doc.dump(2) + "\n");
    return doc;
}

ordered_json aggregate(const ordered_json& doc)
{
    // (scenario, mode) -> metric -> values across seeds
    std::map<std::pair<std::string, std::string>, std::map<std::string, std::vector<double>>> groups;
    std::vector<std::pair<std::string, std::string>> order;
    for (const auto& run : doc["runs"]) {
        if (!run.contains("summary")) continue;
        const auto key = std::make_pair(run["scenario"].get<std::string>(), run["mode"].get<std::string>());
        if (!groups.contains(key)) order.push_back(key);
        auto& g = groups[key];
        const auto& s = run["summary"];
        for (const char* metric : {"C_s_bits", "ber_bob", "ber_eve", "utility"})
            g[metric].push_back(s[metric]["mean"].get<double>());
        g["greedy_fraction"].push_back(s["greedy_fraction"].get<double>());
    }

    ordered_json agg;
    agg["format"] = "vlcsec-sweep-summary v1";
    agg["seeds"] = doc["seeds"];
    agg["window"] = doc["window"];
    agg["cells"] = ordered_json::array();
    for (const auto& key : order) {
        ordered_json cell;
        cell["scenario"] = key.first;
        cell["mode"] = key.second;
        const auto& g = groups[key];
        cell["n_seeds"] = g.at("utility").size();
        for (const char* metric : {"C_s_bits", "ber_bob", "ber_eve", "utility", "greedy_fraction"}) {
            const auto& v = g.at(metric);
            double mean = 0.0;
            for (double x : v) mean += x;
            mean /= static_cast<double>(v.size());
            double var = 0.0;
            for (double x : v) var += (x - mean) * (x - mean);
            const double sd = v.size() > 1 ? std::sqrt(var / static_cast<double>(v.size() - 1)) : 0.0;
            cell[metric] = {{"mean", mean}, {"std", sd}, {"per_seed", v}};
        }
        agg["cells"].push_back(std::move(cell));
    }
    return agg;
}

void report_failures(const Execution& ex, std::ostream& err)
{
    for (const auto& cell : ex.cells) {
        if (cell.result) continue;
        const Prepared& p = ex.prepared[cell.prepared];
        err << "failed: " << p.scenario << '/' << p.mode.label() << "/seed" << cell.seed << ": " << cell.error << '\n';
    }
}

template <class Body>
int guarded(std::ostream& err, Body&& body)
{
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "runtime error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

}  // namespace

std::vector<std::uint64_t> parse_seed_list(const std::string& text)
{
    std::vector<std::uint64_t> seeds;
    std::size_t start = 0;
    if (text.empty()) throw std::invalid_argument("seed list is empty");
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
            throw std::invalid_argument("bad seed '" + item + "' in seed list");
        seeds.push_back(v);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return seeds;
}

int cmd_run(const RunArgs& args, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const ExperimentConfig cfg = parse_config_file(args.config_path);
        const auto modes = select_modes(cfg, args.mode);
        const std::vector<std::uint64_t> seeds{args.seed.value_or(cfg.seed)};
        const Execution ex = execute(cfg, modes, seeds);
        write_outputs(cfg, ex, seeds, args.out_dir);
        out << "wrote " << ex.cells.size() - static_cast<std::size_t>(ex.failures) << " episode(s) to "
            << args.out_dir << '\n';
        if (ex.failures) {
            report_failures(ex, err);
            return kExitRuntime;
        }
        return kExitOk;
    });
}

int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        if (args.seeds.empty()) throw std::invalid_argument("sweep needs at least one seed");
        const ExperimentConfig cfg = parse_config_file(args.config_path);
        const auto modes = select_modes(cfg, args.mode);
        const Execution ex = execute(cfg, modes, args.seeds);
        const ordered_json doc = write_outputs(cfg, ex, args.seeds, args.out_dir);
        ordered_json agg = aggregate(doc);
        agg["failed"] = ordered_json::array();
        for (const auto& cell : ex.cells) {
            if (cell.result) continue;
            const Prepared& p = ex.prepared[cell.prepared];
            agg["failed"].push_back({{"scenario", p.scenario}, {"mode", p.mode.label()}, {"seed", cell.seed},
                                     {"error", cell.error}});
        }
        write_text_file(fs::path(args.out_dir) / "sweep_summary.json", agg.dump(2) + "\n");
        out << "sweep: " << ex.cells.size() << " episode(s), " << ex.failures << " failed\n";
        for (const auto& cell : agg["cells"])
            out << "  " << cell["scenario"].get<std::string>() << '/' << cell["mode"].get<std::string>()
                << ": utility " << cell["utility"]["mean"].get<double>() << " +- "
                << cell["utility"]["std"].get<double>() << ", C_s " << cell["C_s_bits"]["mean"].get<double>()
                << ", BER bob " << cell["ber_bob"]["mean"].get<double>() << ", BER eve "
                << cell["ber_eve"]["mean"].get<double>() << '\n';
        if (ex.failures) {
            report_failures(ex, err);
            return kExitRuntime;
        }
        return kExitOk;
    });
}

int cmd_validate(const ValidateArgs& args, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const ValidationLevel level = parse_validation_level(args.level);
        const ExperimentConfig cfg = parse_config_file(args.config_path);
        const auto outcomes = run_validation(cfg, level, args.hooks);
        const OracleOutcome* first_failure = nullptr;
        for (const auto& o : outcomes) {
            out << (o.passed ? "PASS  " : "FAIL  ") << o.name << "  " << o.detail << '\n';
            if (!o.passed && !first_failure) first_failure = &o;
        }
        if (first_failure) {
            err << "oracle failed: " << first_failure->name << '\n';
            return kExitValidation;
        }
        return kExitOk;
    });
}

}  // namespace vlcsec
