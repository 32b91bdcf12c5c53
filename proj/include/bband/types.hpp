#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bband {

enum class Generation { G4, G5 };
enum class Backhaul { Wireless, Fiber };
enum class Sharing { Baseline, Passive, Active, Srn };
enum class Policy { Baseline, LowTax, HighTax, LowSpectrum, HighSpectrum };
enum class EnergyStrategy { Baseline, Renewables };
enum class Adoption { Low, Baseline, High };
enum class Settlement { Urban, Suburban, Rural };
enum class IncomeGroup { LIC, LMC, UMC, HIC };

// Canonical value lists, in definition order. Enumeration order of the run
// matrix follows these.
inline constexpr std::array kGenerations{Generation::G4, Generation::G5};
inline constexpr std::array kBackhauls{Backhaul::Wireless, Backhaul::Fiber};
inline constexpr std::array kSharings{Sharing::Baseline, Sharing::Passive, Sharing::Active, Sharing::Srn};
inline constexpr std::array kPolicies{Policy::Baseline, Policy::LowTax, Policy::HighTax, Policy::LowSpectrum,
                                      Policy::HighSpectrum};
inline constexpr std::array kEnergyStrategies{EnergyStrategy::Baseline, EnergyStrategy::Renewables};
inline constexpr std::array kAdoptions{Adoption::Low, Adoption::Baseline, Adoption::High};
inline constexpr std::array kSettlements{Settlement::Urban, Settlement::Suburban, Settlement::Rural};
inline constexpr std::array kIncomeGroups{IncomeGroup::LIC, IncomeGroup::LMC, IncomeGroup::UMC, IncomeGroup::HIC};

std::string_view to_string(Generation v);
std::string_view to_string(Backhaul v);
std::string_view to_string(Sharing v);
std::string_view to_string(Policy v);
std::string_view to_string(EnergyStrategy v);
std::string_view to_string(Adoption v);
std::string_view to_string(Settlement v);
std::string_view to_string(IncomeGroup v);

// Parsers throw ValidationError naming the accepted values.
Generation parse_generation(std::string_view s);
Backhaul parse_backhaul(std::string_view s);
Sharing parse_sharing(std::string_view s);
Policy parse_policy(std::string_view s);
EnergyStrategy parse_energy_strategy(std::string_view s);
Adoption parse_adoption(std::string_view s);
Settlement parse_settlement(std::string_view s);
IncomeGroup parse_income_group(std::string_view s);

struct RegionRecord
{
    std::string region_id;
    std::string country_iso3;
    std::int64_t population = 0;
    double area_km2 = 0.0;
    std::int64_t existing_sites = 0;
};

struct DecileRecord
{
    std::string country_iso3;
    int decile_index = 0;  // 1 = densest
    std::int64_t population = 0;
    double area_km2 = 0.0;
    std::int64_t existing_sites = 0;
    int region_count = 0;
    Settlement settlement = Settlement::Rural;

    double pop_density() const noexcept { return area_km2 > 0.0 ? static_cast<double>(population) / area_km2 : 0.0; }

    /// Empty bin (fewer regions than deciles) or zero population; contributes nothing downstream.
    bool degenerate() const noexcept { return region_count == 0 || population == 0; }
};

struct SpectrumBand
{
    Generation generation = Generation::G4;
    double frequency_mhz = 0.0;
    double bandwidth_mhz = 0.0;

    auto operator<=>(const SpectrumBand&) const = default;
};

struct CountryParams
{
    std::string country_iso3;
    IncomeGroup income_group = IncomeGroup::LMC;
    int n_major_operators = 1;
    std::vector<SpectrumBand> spectrum;
    double arpu_low = 0.0;
    double arpu_base = 0.0;
    double arpu_high = 0.0;
    double on_grid_share = 1.0;
    double grid_carbon_intensity_kg_kwh = 0.0;

    double market_share() const noexcept { return 1.0 / static_cast<double>(n_major_operators); }

    /// Bands held for one generation, ordered by frequency.
    std::vector<SpectrumBand> bands(Generation g) const;

    /// ARPU tier for a settlement class: urban→high, suburban→base, rural→low.
    double arpu_for(Settlement s) const noexcept;
};

struct StrategyBundle
{
    Generation generation = Generation::G4;
    Backhaul backhaul = Backhaul::Wireless;
    Sharing sharing = Sharing::Baseline;
    Policy policy = Policy::Baseline;
    EnergyStrategy energy_strategy = EnergyStrategy::Baseline;

    auto operator<=>(const StrategyBundle&) const = default;
};

struct ScenarioSpec
{
    double capacity_gb_month = 30.0;
    Adoption adoption = Adoption::Baseline;
    int start_year = 2023;
    int end_year = 2030;
    double discount_rate = 0.05;

    int horizon_years() const noexcept { return end_year - start_year + 1; }

    auto operator<=>(const ScenarioSpec&) const = default;
};

struct RunSpec
{
    StrategyBundle strategy;
    ScenarioSpec scenario;

    auto operator<=>(const RunSpec&) const = default;
};

/// "4G-wireless" style label used in reports.
std::string technology_label(Generation g, Backhaul b);

/// Stable textual key, e.g. "4G|wireless|baseline|baseline|baseline|30|baseline".
std::string run_key(const RunSpec& run);

}  // namespace bband
