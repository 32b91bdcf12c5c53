#pragma once

#include "bband/pipeline.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace bband {

/// Additive quantities summed over deciles.
struct Totals
{
    std::int64_t population = 0;
    double area_km2 = 0.0;
    double revenue_pv_usd = 0.0;
    std::int64_t total_sites = 0;
    std::int64_t existing_sites = 0;
    std::int64_t new_sites = 0;
    std::int64_t upgraded_sites = 0;
    int unserviceable_deciles = 0;
    double network_usd = 0.0;
    double administration_usd = 0.0;
    double spectrum_usd = 0.0;
    double tax_usd = 0.0;
    double profit_usd = 0.0;
    double private_cost_usd = 0.0;
    double subsidy_usd = 0.0;
    double government_cost_usd = 0.0;
    double financial_cost_usd = 0.0;
    double energy_kwh = 0.0;
    double on_grid_kwh = 0.0;
    double off_grid_kwh = 0.0;
    double co2_kg = 0.0;
    double nox_g = 0.0;
    double sox_g = 0.0;
    double pm10_g = 0.0;

    Totals& operator+=(const RunResult& r);
    Totals& operator+=(const Totals& o);
};

struct CountryResult
{
    RunSpec run;
    std::string country_iso3;
    Totals totals;
};

struct GlobalResult
{
    RunSpec run;
    Totals totals;
};

/// One row per (run, country), in input order. Input must be grouped by run.
std::vector<CountryResult> aggregate_by_country(std::span<const RunResult> results);

/// One row per run, summed over countries.
std::vector<GlobalResult> aggregate_global(std::span<const CountryResult> countries);

/// Writes results_decile.csv, results_country.csv and the four summary files.
/// Numbers carry 6 significant digits. Throws IoError with the path on failure.
void emit_results(std::span<const RunResult> results, const std::filesystem::path& out_dir);

inline const std::vector<std::string> kOutputFiles{
    "results_decile.csv",      "results_country.csv", "summary_by_technology.csv",
    "summary_by_sharing.csv",  "summary_by_policy.csv", "summary_emissions.csv",
};

}  // namespace bband
