#include "bband/energy.hpp"

#include "bband/error.hpp"

#include <cmath>

namespace bband {

double EnergyParams::backhaul_kwh_per_hour(Backhaul b) const noexcept
{
    return b == Backhaul::Fiber ? backhaul_fiber_kwh_per_hour : backhaul_wireless_kwh_per_hour;
}

void EnergyParams::validate() const
{
    if (!(site_kwh_per_hour > 0.0 && backhaul_wireless_kwh_per_hour > 0.0 && backhaul_fiber_kwh_per_hour > 0.0 &&
          hours_per_year > 0.0)) {
        throw ValidationError("energy parameters must be positive");
    }
}

const SpeciesFactors& EmissionFactors::at(const std::string& source) const
{
    const auto it = by_source.find(source);
    if (it == by_source.end()) {
        throw MissingDataError("no emission factors for source '" + source + "'");
    }
    return it->second;
}

void EmissionFactors::validate() const
{
    if (!by_source.contains(std::string(kDieselSource))) {
        throw MissingDataError("emission factors lack a diesel row");
    }
    for (const auto& [source, f] : by_source) {
        if (!(f.co2_kg_kwh >= 0.0 && f.nox_g_kwh >= 0.0 && f.sox_g_kwh >= 0.0 && f.pm10_g_kwh >= 0.0)) {
            throw ValidationError("emission factors for '" + source + "' must be non-negative");
        }
        const bool zero_emission = source == "nuclear" || source == "hydro" || source.rfind("renewables", 0) == 0;
        if (zero_emission && (f.co2_kg_kwh != 0.0 || f.nox_g_kwh != 0.0 || f.sox_g_kwh != 0.0 || f.pm10_g_kwh != 0.0)) {
            throw ValidationError("operational emission factors for '" + source + "' must be zero");
        }
    }
}

const MixRow& EnergyMixForecast::row(const std::string& region, int year) const
{
    const auto r = by_region.find(region);
    if (r == by_region.end()) {
        throw MissingDataError("no energy mix for region " + region);
    }
    const auto y = r->second.find(year);
    if (y == r->second.end()) {
        throw MissingDataError("no energy mix for region " + region + " in year " + std::to_string(year));
    }
    return y->second;
}

void EnergyMixForecast::validate() const
{
    for (const auto& [region, years] : by_region) {
        for (const auto& [year, shares] : years) {
            double total = 0.0;
            for (const auto& [source, share] : shares) {
                if (!(share >= 0.0)) {
                    throw ValidationError("negative mix share for " + region + " " + std::to_string(year) + " " +
                                          source);
                }
                total += share;
            }
            if (std::abs(total - 1.0) > 1e-6) {
                throw ValidationError("energy mix shares for " + region + " in year " + std::to_string(year) +
                                      " sum to " + std::to_string(total) + ", expected 1");
            }
        }
    }
}

Emissions& Emissions::operator+=(const Emissions& o) noexcept
{
    co2_kg += o.co2_kg;
    nox_g += o.nox_g;
    sox_g += o.sox_g;
    pm10_g += o.pm10_g;
    return *this;
}

double annual_energy(std::int64_t existing, std::int64_t new_cumulative, const EnergyParams& params, Backhaul backhaul)
{
    if (existing < 0 || new_cumulative < 0) {
        throw ValidationError("site counts must be non-negative");
    }
    const double sites = static_cast<double>(existing + new_cumulative);
    return sites * (params.site_kwh_per_hour + params.backhaul_kwh_per_hour(backhaul)) * params.hours_per_year;
}

std::pair<double, double> split_energy(double energy_kwh, const GridSplit& grid)
{
    if (!(energy_kwh >= 0.0)) {
        throw ValidationError("energy must be non-negative");
    }
    if (!(grid.on_grid_share >= 0.0 && grid.on_grid_share <= 1.0)) {
        throw ValidationError("on-grid share must lie in [0, 1]");
    }
    const double on = energy_kwh * grid.on_grid_share;
    return {on, energy_kwh - on};
}

Emissions emissions(double on_grid_kwh, double off_grid_kwh, const MixRow& mix, const EmissionFactors& factors,
                    const GridSplit& grid)
{
    Emissions out;
    for (const auto& [source, share] : mix) {
        const auto& f = factors.at(source);
        const double kwh = on_grid_kwh * share;
        out.co2_kg += kwh * f.co2_kg_kwh;
        out.nox_g += kwh * f.nox_g_kwh;
        out.sox_g += kwh * f.sox_g_kwh;
        out.pm10_g += kwh * f.pm10_g_kwh;
    }
    if (grid.off_grid_source == OffGridSource::Diesel) {
        const auto& d = factors.at(std::string(kDieselSource));
        out.co2_kg += off_grid_kwh * d.co2_kg_kwh;
        out.nox_g += off_grid_kwh * d.nox_g_kwh;
        out.sox_g += off_grid_kwh * d.sox_g_kwh;
        out.pm10_g += off_grid_kwh * d.pm10_g_kwh;
    }
    return out;
}

GridSplit apply_renewables_strategy(GridSplit grid, EnergyStrategy strategy)
{
    if (strategy == EnergyStrategy::Renewables) {
        grid.off_grid_source = OffGridSource::Renewable;
    }
    return grid;
}

double operator_energy_share(Sharing sharing, Settlement settlement, int n_sharers)
{
    if (n_sharers < 1) {
        throw ValidationError("number of sharing operators must be at least 1");
    }
    const bool shared_radio = sharing == Sharing::Active || (sharing == Sharing::Srn && settlement == Settlement::Rural);
    return shared_radio ? 1.0 / n_sharers : 1.0;
}

std::vector<std::int64_t> build_schedule(std::int64_t new_sites, int years)
{
    if (years < 1) {
        throw ValidationError("build schedule needs at least one year");
    }
    if (new_sites < 0) {
        throw ValidationError("new site count must be non-negative");
    }
    std::vector<std::int64_t> out(static_cast<std::size_t>(years), new_sites / years);
    const auto remainder = new_sites % years;
    for (std::int64_t i = 0; i < remainder; ++i) {
        ++out[static_cast<std::size_t>(i)];
    }
    return out;
}

HorizonEnergy cumulate_horizon(std::span<const YearEnergy> years)
{
    if (years.empty()) {
        throw MissingDataError("no years to cumulate");
    }
    HorizonEnergy total;
    for (std::size_t i = 0; i < years.size(); ++i) {
        if (i > 0 && years[i].year != years[i - 1].year + 1) {
            throw MissingDataError("horizon is missing year " + std::to_string(years[i - 1].year + 1));
        }
        total.site_years += years[i].sites_in_operation;
        total.energy_kwh += years[i].energy_kwh;
        total.on_grid_kwh += years[i].on_grid_kwh;
        total.off_grid_kwh += years[i].off_grid_kwh;
        total.emissions += years[i].emissions;
    }
    return total;
}

std::vector<YearEnergy> simulate_horizon(const HorizonInputs& in, const EnergyParams& params,
                                         const EnergyMixForecast& mix, const EmissionFactors& factors)
{
    const int n_years = in.end_year - in.start_year + 1;
    const auto schedule = in.schedule.empty() ? build_schedule(in.new_sites, n_years) : in.schedule;
    if (static_cast<int>(schedule.size()) != n_years) {
        throw ValidationError("build schedule length does not match the horizon");
    }
    std::vector<YearEnergy> out;
    out.reserve(schedule.size());
    std::int64_t built = 0;
    for (int i = 0; i < n_years; ++i) {
        built += schedule[static_cast<std::size_t>(i)];
        YearEnergy y;
        y.year = in.start_year + i;
        y.sites_in_operation = in.existing_sites + built;
        y.energy_kwh = annual_energy(in.existing_sites, built, params, in.backhaul) * in.operator_share;
        std::tie(y.on_grid_kwh, y.off_grid_kwh) = split_energy(y.energy_kwh, in.grid);
        y.emissions = emissions(y.on_grid_kwh, y.off_grid_kwh, mix.row(in.mix_region, y.year), factors, in.grid);
        out.push_back(y);
    }
    return out;
}

}  // namespace bband
