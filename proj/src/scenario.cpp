#include "bband/scenario.hpp"

#include "bband/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace bband {

Settlement classify_settlement(double pop_density, const SettlementThresholds& thresholds)
{
    if (!std::isfinite(pop_density)) {
        throw ValidationError("population density must be finite");
    }
    if (pop_density < 0.0) {
        throw ValidationError("population density must be non-negative");
    }
    if (!(thresholds.urban_min > thresholds.suburban_min && thresholds.suburban_min > 0.0)) {
        throw ValidationError("settlement thresholds require urban_min > suburban_min > 0");
    }
    if (pop_density >= thresholds.urban_min) {
        return Settlement::Urban;
    }
    if (pop_density >= thresholds.suburban_min) {
        return Settlement::Suburban;
    }
    return Settlement::Rural;
}

std::vector<DecileRecord> build_deciles(std::span<const RegionRecord> regions, const CountryParams& country,
                                        const SettlementThresholds& thresholds)
{
    std::vector<const RegionRecord*> members;
    std::set<std::string_view> seen;
    for (const auto& r : regions) {
        if (r.country_iso3 != country.country_iso3) {
            continue;
        }
        if (!(r.area_km2 > 0.0) || !std::isfinite(r.area_km2)) {
            throw ValidationError("region " + r.region_id + " has non-positive area");
        }
        if (r.population < 0 || r.existing_sites < 0) {
            throw ValidationError("region " + r.region_id + " has negative population or sites");
        }
        if (!seen.insert(r.region_id).second) {
            throw ValidationError("duplicate region_id " + r.region_id + " in " + country.country_iso3);
        }
        members.push_back(&r);
    }
    if (members.empty()) {
        throw MissingDataError("no regions for country " + country.country_iso3);
    }

    std::sort(members.begin(), members.end(), [](const RegionRecord* a, const RegionRecord* b) {
        // Cross-multiplied to compare pop/area without rounding the quotient.
        const double lhs = static_cast<double>(a->population) * b->area_km2;
        const double rhs = static_cast<double>(b->population) * a->area_km2;
        if (lhs != rhs) {
            return lhs > rhs;
        }
        return a->region_id < b->region_id;
    });

    const auto n = members.size();
    const auto base = n / kDecileCount;
    const auto extra = n % kDecileCount;

    std::vector<DecileRecord> deciles;
    deciles.reserve(kDecileCount);
    std::size_t next = 0;
    for (int d = 0; d < kDecileCount; ++d) {
        const auto size = base + (static_cast<std::size_t>(d) < extra ? 1 : 0);
        DecileRecord rec;
        rec.country_iso3 = country.country_iso3;
        rec.decile_index = d + 1;
        rec.region_count = static_cast<int>(size);
        for (std::size_t i = 0; i < size; ++i, ++next) {
            rec.population += members[next]->population;
            rec.area_km2 += members[next]->area_km2;
            rec.existing_sites += members[next]->existing_sites;
        }
        rec.settlement = classify_settlement(rec.pop_density(), thresholds);
        deciles.push_back(std::move(rec));
    }
    return deciles;
}

std::vector<RunSpec> enumerate_runs(const StrategySpace& strategies, const ScenarioSpace& scenarios)
{
    std::vector<RunSpec> runs;
    runs.reserve(strategies.generations.size() * strategies.backhauls.size() * strategies.sharings.size() *
                 strategies.policies.size() * strategies.energy_strategies.size() *
                 scenarios.capacities_gb_month.size() * scenarios.adoptions.size());
    for (auto g : strategies.generations) {
        for (auto b : strategies.backhauls) {
            for (auto s : strategies.sharings) {
                for (auto p : strategies.policies) {
                    for (auto e : strategies.energy_strategies) {
                        for (auto cap : scenarios.capacities_gb_month) {
                            for (auto a : scenarios.adoptions) {
                                RunSpec run;
                                run.strategy = {g, b, s, p, e};
                                run.scenario.capacity_gb_month = cap;
                                run.scenario.adoption = a;
                                run.scenario.start_year = scenarios.start_year;
                                run.scenario.end_year = scenarios.end_year;
                                run.scenario.discount_rate = scenarios.discount_rate;
                                runs.push_back(run);
                            }
                        }
                    }
                }
            }
        }
    }
    return runs;
}

}  // namespace bband
