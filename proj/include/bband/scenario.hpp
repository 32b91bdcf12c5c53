#pragma once

#include "bband/types.hpp"

#include <span>
#include <vector>

namespace bband {

inline constexpr int kDecileCount = 10;

/// Density cut points in persons/km². Urban is inclusive of urban_min, suburban of suburban_min.
struct SettlementThresholds
{
    double urban_min = 1500.0;
    double suburban_min = 300.0;
};

Settlement classify_settlement(double pop_density, const SettlementThresholds& thresholds = {});

/// Partition one country's regions into ten density deciles.
///
/// Regions are ranked by density (descending, ties by ascending region_id)
/// and split into ten contiguous bins of equal region count; the first
/// `count % 10` bins take one extra region. Bins left empty (fewer than ten
/// regions) come back with zero population and area and are flagged
/// degenerate. Regions belonging to other countries are ignored.
std::vector<DecileRecord> build_deciles(std::span<const RegionRecord> regions, const CountryParams& country,
                                        const SettlementThresholds& thresholds = {});

struct StrategySpace
{
    std::vector<Generation> generations{kGenerations.begin(), kGenerations.end()};
    std::vector<Backhaul> backhauls{kBackhauls.begin(), kBackhauls.end()};
    std::vector<Sharing> sharings{kSharings.begin(), kSharings.end()};
    std::vector<Policy> policies{kPolicies.begin(), kPolicies.end()};
    std::vector<EnergyStrategy> energy_strategies{kEnergyStrategies.begin(), kEnergyStrategies.end()};
};

struct ScenarioSpace
{
    std::vector<double> capacities_gb_month{20.0, 30.0, 40.0};
    std::vector<Adoption> adoptions{kAdoptions.begin(), kAdoptions.end()};
    int start_year = 2023;
    int end_year = 2030;
    double discount_rate = 0.05;
};

/// Cartesian product of both spaces. Order: generation, backhaul, sharing,
/// policy, energy strategy, capacity, adoption (outermost first), each axis
/// in the order given.
std::vector<RunSpec> enumerate_runs(const StrategySpace& strategies, const ScenarioSpace& scenarios);

}  // namespace bband
