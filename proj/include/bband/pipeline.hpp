#pragma once

#include "bband/data_io.hpp"
#include "bband/energy.hpp"
#include "bband/radio.hpp"
#include "bband/types.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bband {

/// One (country, decile, strategy, scenario) outcome.
struct RunResult
{
    RunSpec run;
    std::string country_iso3;
    int decile_index = 0;
    Settlement settlement = Settlement::Rural;
    std::int64_t population = 0;
    double area_km2 = 0.0;

    double area_demand_mbps_km2 = 0.0;
    double revenue_pv_usd = 0.0;

    std::int64_t total_sites = 0;
    std::int64_t existing_sites = 0;
    std::int64_t new_sites = 0;
    std::int64_t upgraded_sites = 0;
    bool unserviceable = false;

    double network_usd = 0.0;
    double administration_usd = 0.0;
    double spectrum_usd = 0.0;
    double tax_usd = 0.0;
    double profit_usd = 0.0;
    double private_cost_usd = 0.0;
    double subsidy_usd = 0.0;
    double government_cost_usd = 0.0;
    double financial_cost_usd = 0.0;

    double operator_energy_share = 1.0;
    double energy_kwh = 0.0;
    double on_grid_kwh = 0.0;
    double off_grid_kwh = 0.0;
    double co2_kg = 0.0;
    double nox_g = 0.0;
    double sox_g = 0.0;
    double pm10_g = 0.0;
};

struct RunFailure
{
    RunSpec run;
    std::string message;
};

struct PipelineOptions
{
    int jobs = 1;
    /// Disk cache for capacity tables; nullopt keeps tables in memory only.
    std::optional<std::filesystem::path> cache_dir;
};

struct PipelineOutput
{
    std::vector<RunResult> results;  // run order, then country, then decile
    std::vector<RunFailure> failures;
    std::vector<CapacityTable> tables;
};

/// Capacity tables needed by the bundle: one per (generation, distinct
/// country band set) over the generations in the run list.
std::vector<CapacityTable> build_tables_for_bundle(const InputBundle& bundle, std::span<const RunSpec> runs,
                                                   const PipelineOptions& options);

/// demand -> capacity -> dimensioning -> cost (sharing, policy,
/// cross-subsidy) -> energy/emissions for every run. A run that throws is
/// reported in `failures`; the others still complete.
PipelineOutput run_pipeline(const InputBundle& bundle, std::span<const RunSpec> runs,
                            const PipelineOptions& options = {});

/// Energy and emissions of one decile result recomputed from an explicit
/// per-year build schedule; used to audit linearity.
HorizonEnergy decile_horizon(const InputBundle& bundle, const RunResult& result,
                             std::span<const std::int64_t> schedule, std::int64_t existing_sites);

/// Filter expression over run axes, e.g. "generation=4G,sharing=active|srn,capacity=30".
/// Clauses are ','-separated and ANDed; alternatives within a clause use '|'.
/// Keys: generation, backhaul, sharing, policy, energy_strategy, capacity, adoption.
std::vector<RunSpec> filter_runs(std::span<const RunSpec> runs, const std::string& expr);

}  // namespace bband
