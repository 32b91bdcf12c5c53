#include "bband/data_io.hpp"
#include "bband/demand.hpp"
#include "bband/energy.hpp"
#include "bband/error.hpp"
#include "bband/pipeline.hpp"
#include "bband/radio.hpp"
#include "bband/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace py::literals;

namespace {

std::vector<bband::RunSpec> select_runs(const bband::InputBundle& bundle, const std::string& filter)
{
    auto runs = bband::enumerate_runs(bundle.config.axes.strategies, bundle.config.axes.scenarios);
    return filter.empty() ? runs : bband::filter_runs(runs, filter);
}

py::dict result_row(const bband::RunResult& r)
{
    const auto& s = r.run.strategy;
    return py::dict("run"_a = bband::run_key(r.run), "generation"_a = std::string(bband::to_string(s.generation)),
                    "backhaul"_a = std::string(bband::to_string(s.backhaul)),
                    "sharing"_a = std::string(bband::to_string(s.sharing)),
                    "policy"_a = std::string(bband::to_string(s.policy)),
                    "energy_strategy"_a = std::string(bband::to_string(s.energy_strategy)),
                    "capacity_gb_month"_a = r.run.scenario.capacity_gb_month,
                    "adoption"_a = std::string(bband::to_string(r.run.scenario.adoption)),
                    "country_iso3"_a = r.country_iso3, "decile"_a = r.decile_index,
                    "settlement"_a = std::string(bband::to_string(r.settlement)), "population"_a = r.population,
                    "area_km2"_a = r.area_km2, "area_demand_mbps_km2"_a = r.area_demand_mbps_km2,
                    "revenue_pv_usd"_a = r.revenue_pv_usd, "total_sites"_a = r.total_sites,
                    "existing_sites"_a = r.existing_sites, "new_sites"_a = r.new_sites,
                    "upgraded_sites"_a = r.upgraded_sites, "unserviceable"_a = r.unserviceable,
                    "network_usd"_a = r.network_usd, "administration_usd"_a = r.administration_usd,
                    "spectrum_usd"_a = r.spectrum_usd, "tax_usd"_a = r.tax_usd, "profit_usd"_a = r.profit_usd,
                    "private_cost_usd"_a = r.private_cost_usd, "subsidy_usd"_a = r.subsidy_usd,
                    "government_cost_usd"_a = r.government_cost_usd, "financial_cost_usd"_a = r.financial_cost_usd,
                    "operator_energy_share"_a = r.operator_energy_share, "energy_kwh"_a = r.energy_kwh,
                    "on_grid_kwh"_a = r.on_grid_kwh, "off_grid_kwh"_a = r.off_grid_kwh, "co2_kg"_a = r.co2_kg,
                    "nox_g"_a = r.nox_g, "sox_g"_a = r.sox_g, "pm10_g"_a = r.pm10_g);
}

bband::PipelineOutput run_released(const bband::InputBundle& bundle, const std::vector<bband::RunSpec>& runs,
                                   int jobs)
{
    py::gil_scoped_release release;
    bband::PipelineOptions options;
    options.jobs = jobs;
    return bband::run_pipeline(bundle, runs, options);
}

}  // namespace

PYBIND11_MODULE(_bband, m)
{
    m.doc() = "Mobile broadband cost, energy and emissions model.";

    auto validation = py::register_exception<bband::ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<bband::IoError>(m, "IoError", PyExc_OSError);
    (void)validation;

    py::class_<bband::InputBundle>(m, "Bundle")
        .def_property_readonly("region_count", [](const bband::InputBundle& b) { return b.regions.size(); })
        .def_property_readonly("countries",
                               [](const bband::InputBundle& b) {
                                   std::vector<std::string> out;
                                   for (const auto& [iso, c] : b.countries) {
                                       out.push_back(iso);
                                   }
                                   return out;
                               })
        .def_property(
            "seed", [](const bband::InputBundle& b) { return b.config.simulation.seed; },
            [](bband::InputBundle& b, std::uint64_t seed) { b.config.simulation.seed = seed; })
        .def_property(
            "trials", [](const bband::InputBundle& b) { return b.config.simulation.trials; },
            [](bband::InputBundle& b, int trials) { b.config.simulation.trials = trials; });

    m.def("load_bundle", &bband::load_bundle, "data_dir"_a, "config"_a,
          "Load and validate an input directory and config file.");

    m.def(
        "run_keys",
        [](const bband::InputBundle& bundle, const std::string& filter) {
            std::vector<std::string> keys;
            for (const auto& r : select_runs(bundle, filter)) {
                keys.push_back(bband::run_key(r));
            }
            return keys;
        },
        "bundle"_a, "filter"_a = "", "Run keys of the configured matrix, optionally filtered.");

    m.def(
        "run",
        [](const bband::InputBundle& bundle, const std::string& filter, int jobs) {
            const auto out = run_released(bundle, select_runs(bundle, filter), jobs);
            py::list rows;
            for (const auto& r : out.results) {
                rows.append(result_row(r));
            }
            py::list failures;
            for (const auto& f : out.failures) {
                failures.append(py::make_tuple(bband::run_key(f.run), f.message));
            }
            return py::dict("results"_a = rows, "failures"_a = failures);
        },
        "bundle"_a, "filter"_a = "", "jobs"_a = 1, "Run the model and return one dict per decile result.");

    m.def(
        "run_to_dir",
        [](const bband::InputBundle& bundle, const std::filesystem::path& out_dir, const std::string& filter,
           int jobs) {
            const auto out = run_released(bundle, select_runs(bundle, filter), jobs);
            bband::emit_results(out.results, out_dir);
            bband::write_capacity_tables_csv(out_dir / "capacity_tables.csv", out.tables);
            return out.failures.size();
        },
        "bundle"_a, "out_dir"_a, "filter"_a = "", "jobs"_a = 1,
        "Run the model and write the result CSVs; returns the number of failed runs.");

    m.def("busy_hour_rate_mbps", &bband::per_user_busy_hour_rate, "capacity_gb_month"_a, "days"_a = 30,
          "busy_hour_share"_a = 0.15);
    m.def(
        "noise_floor_dbm",
        [](double bandwidth_hz, double noise_figure_db, double temperature_k) {
            bband::SimulationParams p;
            p.noise_figure_db = noise_figure_db;
            p.temperature_k = temperature_k;
            return bband::noise_floor(p, bandwidth_hz);
        },
        "bandwidth_hz"_a, "noise_figure_db"_a = 1.5, "temperature_k"_a = 290.0);
    m.def(
        "path_loss_db", [](double distance_km, double freq_mhz) { return bband::free_space_path_loss(distance_km, freq_mhz); },
        "distance_km"_a, "freq_mhz"_a, "Free-space loss plus the non-line-of-sight penalty beyond the breakpoint.");
    m.def(
        "annual_energy_kwh",
        [](std::int64_t sites, const std::string& backhaul) {
            return bband::annual_energy(sites, 0, bband::EnergyParams{}, bband::parse_backhaul(backhaul));
        },
        "sites"_a, "backhaul"_a = "wireless");
    m.attr("output_files") = bband::kOutputFiles;
}
