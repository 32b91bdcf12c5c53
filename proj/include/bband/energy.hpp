#pragma once

#include "bband/types.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bband {

struct EnergyParams
{
    double site_kwh_per_hour = 0.249;
    double backhaul_wireless_kwh_per_hour = 0.025;
    double backhaul_fiber_kwh_per_hour = 0.010;
    double hours_per_year = 8760.0;

    double backhaul_kwh_per_hour(Backhaul b) const noexcept;
    void validate() const;
};

/// Per-kWh emission factors of one generation source.
struct SpeciesFactors
{
    double co2_kg_kwh = 0.0;
    double nox_g_kwh = 0.0;
    double sox_g_kwh = 0.0;
    double pm10_g_kwh = 0.0;
};

inline constexpr std::string_view kDieselSource = "diesel";

struct EmissionFactors
{
    std::map<std::string, SpeciesFactors> by_source;

    const SpeciesFactors& at(const std::string& source) const;

    /// Requires a diesel row, non-negative values, and zero rows for the
    /// zero-emission sources (nuclear, hydro, renewables*).
    void validate() const;
};

using MixRow = std::map<std::string, double>;  // source -> share

/// Generation-mix shares per (region, year).
struct EnergyMixForecast
{
    std::map<std::string, std::map<int, MixRow>> by_region;

    /// Throws MissingDataError naming the region and year.
    const MixRow& row(const std::string& region, int year) const;

    /// Every row must sum to 1 within 1e-6.
    void validate() const;
};

enum class OffGridSource { Diesel, Renewable };

struct GridSplit
{
    double on_grid_share = 1.0;
    OffGridSource off_grid_source = OffGridSource::Diesel;
};

struct Emissions
{
    double co2_kg = 0.0;
    double nox_g = 0.0;
    double sox_g = 0.0;
    double pm10_g = 0.0;

    Emissions& operator+=(const Emissions& o) noexcept;
};

/// (existing + new) * (site + backhaul kWh/h) * hours/year
double annual_energy(std::int64_t existing, std::int64_t new_cumulative, const EnergyParams& params, Backhaul backhaul);

/// (on-grid kWh, off-grid kWh); off-grid is the remainder of the total.
std::pair<double, double> split_energy(double energy_kwh, const GridSplit& grid);

/// On-grid energy through the mix; off-grid through the diesel row, or zero when renewable.
Emissions emissions(double on_grid_kwh, double off_grid_kwh, const MixRow& mix, const EmissionFactors& factors,
                    const GridSplit& grid);

GridSplit apply_renewables_strategy(GridSplit grid, EnergyStrategy strategy);

/// Fraction of a site's energy attributed to the modeled operator: 1/n where
/// radio equipment is shared (active, or SRN in rural areas), 1 otherwise.
double operator_energy_share(Sharing sharing, Settlement settlement, int n_sharers);

/// New sites added per year: spread evenly, the remainder going to the earliest years.
std::vector<std::int64_t> build_schedule(std::int64_t new_sites, int years);

struct YearEnergy
{
    int year = 0;
    std::int64_t sites_in_operation = 0;
    double energy_kwh = 0.0;
    double on_grid_kwh = 0.0;
    double off_grid_kwh = 0.0;
    Emissions emissions;
};

struct HorizonEnergy
{
    std::int64_t site_years = 0;
    double energy_kwh = 0.0;
    double on_grid_kwh = 0.0;
    double off_grid_kwh = 0.0;
    Emissions emissions;
};

/// Sums year rows; expects consecutive years with none missing.
HorizonEnergy cumulate_horizon(std::span<const YearEnergy> years);

struct HorizonInputs
{
    std::int64_t existing_sites = 0;
    std::int64_t new_sites = 0;
    Backhaul backhaul = Backhaul::Wireless;
    GridSplit grid;
    std::string mix_region;
    int start_year = 2023;
    int end_year = 2030;
    double operator_share = 1.0;
    /// Sites added in each horizon year; empty means build_schedule(new_sites, years).
    std::vector<std::int64_t> schedule;
};

/// Year-by-year energy and emissions with new sites phased in by build_schedule.
std::vector<YearEnergy> simulate_horizon(const HorizonInputs& in, const EnergyParams& params,
                                         const EnergyMixForecast& mix, const EmissionFactors& factors);

}  // namespace bband
