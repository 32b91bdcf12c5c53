// bband_sim: run the broadband cost/energy model over a run matrix.

#include "bband/data_io.hpp"
#include "bband/error.hpp"
#include "bband/pipeline.hpp"
#include "bband/report.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <thread>

namespace {

enum ExitCode : int
{
    kOk = 0,
    kUsage = 1,
    kValidation = 2,
    kRuntime = 3,
    kIo = 4,
};

std::filesystem::path default_cache_dir()
{
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg != nullptr && *xdg != '\0') {
        return std::filesystem::path(xdg) / "bband_sim";
    }
    if (const char* home = std::getenv("HOME"); home != nullptr && *home != '\0') {
        return std::filesystem::path(home) / ".cache" / "bband_sim";
    }
    return std::filesystem::temp_directory_path() / "bband_sim";
}

int default_jobs()
{
    const auto n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

void print_report(const bband::ValidationError& e)
{
    if (const auto* report = dynamic_cast<const bband::ValidationReport*>(&e)) {
        std::cerr << "validation failed with " << report->problems().size() << " problem(s):\n";
        for (const auto& p : report->problems()) {
            std::cerr << "  " << p << '\n';
        }
        return;
    }
    std::cerr << "validation error: " << e.what() << '\n';
}

int cmd_run(const std::filesystem::path& data, const std::filesystem::path& config, const std::filesystem::path& out,
            std::optional<std::uint64_t> seed, int jobs, const std::string& filter, bool no_cache)
{
    auto bundle = bband::load_bundle(data, config);
    if (seed) {
        bundle.config.simulation.seed = *seed;
    }
    auto runs = bband::enumerate_runs(bundle.config.axes.strategies, bundle.config.axes.scenarios);
    if (!filter.empty()) {
        runs = bband::filter_runs(runs, filter);
    }

    bband::PipelineOptions options;
    options.jobs = jobs;
    if (!no_cache) {
        options.cache_dir = bband::CapacityTableCache::resolve_dir(default_cache_dir());
    }
    const auto output = bband::run_pipeline(bundle, runs, options);

    bband::emit_results(output.results, out);
    bband::write_capacity_tables_csv(out / "capacity_tables.csv", output.tables);

    std::cerr << runs.size() - output.failures.size() << " of " << runs.size() << " runs completed, "
              << output.results.size() << " decile rows written to " << out.string() << '\n';
    if (!output.failures.empty()) {
        for (const auto& f : output.failures) {
            std::cerr << "run failed: " << f.message << '\n';
        }
        return kRuntime;
    }
    return kOk;
}

int cmd_validate(const std::filesystem::path& data, const std::filesystem::path& config)
{
    const auto bundle = bband::load_bundle(data, config);
    const auto runs = bband::enumerate_runs(bundle.config.axes.strategies, bundle.config.axes.scenarios);
    std::cout << "ok: " << bundle.regions.size() << " regions, " << bundle.countries.size() << " countries, "
              << runs.size() << " runs\n";
    return kOk;
}

int cmd_tables(const std::filesystem::path& config_path, const std::filesystem::path& out, int jobs)
{
    const auto config = bband::load_config(config_path);
    auto se = config.se_table_path.empty()
                  ? bband::SpectralEfficiencyTable::default_table()
                  : bband::load_se_table(config_path.parent_path() / config.se_table_path);
    se.mimo_layers = config.mimo_layers;
    se.mimo_efficiency = config.mimo_efficiency;

    std::vector<bband::CapacityTable> tables;
    for (auto g : config.axes.strategies.generations) {
        const auto it = config.frequency_sets.find(g);
        if (it == config.frequency_sets.end()) {
            throw bband::ValidationError("config has no frequency set for " + std::string(bband::to_string(g)));
        }
        tables.push_back(bband::build_capacity_table(config.simulation, se, it->second, config.density_grid, jobs));
    }
    std::error_code ec;
    std::filesystem::create_directories(out, ec);
    if (ec) {
        throw bband::IoError("cannot create output directory " + out.string() + ": " + ec.message());
    }
    bband::write_capacity_tables_csv(out / "capacity_tables.csv", tables);
    std::cerr << tables.size() << " capacity tables written to " << (out / "capacity_tables.csv").string() << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Mobile broadband cost, energy and emissions model"};
    app.require_subcommand(1);

    std::filesystem::path data;
    std::filesystem::path config;
    std::filesystem::path out;
    std::optional<std::uint64_t> seed;
    int jobs = default_jobs();
    std::string filter;
    bool no_cache = false;

    auto* run = app.add_subcommand("run", "Run the model over the configured run matrix");
    run->add_option("--data", data, "Input data directory")->required();
    run->add_option("--config", config, "Config JSON file")->required();
    run->add_option("--out", out, "Output directory")->required();
    run->add_option("--seed", seed, "Override the simulation seed");
    run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    run->add_option("--runs", filter, "Run filter, e.g. generation=4G,sharing=active|srn");
    run->add_flag("--no-cache", no_cache, "Do not read or write the capacity table cache");

    auto* validate = app.add_subcommand("validate", "Check inputs without running");
    validate->add_option("--data", data, "Input data directory")->required();
    validate->add_option("--config", config, "Config JSON file")->required();

    auto* tables = app.add_subcommand("tables", "Build capacity tables only");
    tables->add_option("--config", config, "Config JSON file")->required();
    tables->add_option("--out", out, "Output directory")->required();
    tables->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (run->parsed()) {
            return cmd_run(data, config, out, seed, jobs, filter, no_cache);
        }
        if (validate->parsed()) {
            return cmd_validate(data, config);
        }
        return cmd_tables(config, out, jobs);
    } catch (const bband::ValidationError& e) {
        print_report(e);
        return kValidation;
    } catch (const bband::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntime;
    }
}
