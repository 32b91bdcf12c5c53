#include "bband/pipeline.hpp"

#include "bband/cost.hpp"
#include "bband/demand.hpp"
#include "bband/dimensioning.hpp"
#include "bband/error.hpp"
#include "bband/parallel.hpp"
#include "bband/scenario.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace bband {

namespace {

using TableKey = std::pair<Generation, std::vector<SpectrumBand>>;

struct PreparedCountry
{
    const CountryParams* params = nullptr;
    std::vector<DecileRecord> deciles;
};

std::vector<PreparedCountry> prepare_countries(const InputBundle& bundle)
{
    std::vector<PreparedCountry> out;
    for (const auto& [iso, country] : bundle.countries) {
        out.push_back({&country, build_deciles(bundle.regions, country, bundle.config.settlement)});
    }
    return out;
}

SpectralEfficiencyTable effective_se_table(const InputBundle& bundle)
{
    auto table = bundle.se_table.rows.empty() ? SpectralEfficiencyTable::default_table() : bundle.se_table;
    table.mimo_layers = bundle.config.mimo_layers;
    table.mimo_efficiency = bundle.config.mimo_efficiency;
    return table;
}

const CapacityTable& find_table(const std::vector<CapacityTable>& tables, Generation g,
                                const std::vector<SpectrumBand>& bands)
{
    for (const auto& t : tables) {
        if (t.generation == g && t.freq_set == bands) {
            return t;
        }
    }
    throw MissingDataError("no capacity table for " + std::string(to_string(g)) + " " + freq_set_label(bands));
}

std::vector<RunResult> evaluate_run(const InputBundle& bundle, const std::vector<PreparedCountry>& countries,
                                    const std::vector<CapacityTable>& tables, const RunSpec& run)
{
    const auto& cfg = bundle.config;
    const auto& strategy = run.strategy;
    std::vector<RunResult> rows;

    for (const auto& pc : countries) {
        const auto& country = *pc.params;
        const auto bands = country.bands(strategy.generation);
        const auto& table = find_table(tables, strategy.generation, bands);
        double mhz_held = 0.0;
        for (const auto& b : bands) {
            mhz_held += b.bandwidth_mhz;
        }
        const GridSplit grid =
            apply_renewables_strategy({country.on_grid_share, OffGridSource::Diesel}, strategy.energy_strategy);
        const auto base_components = site_components(strategy.backhaul, cfg.cost);

        std::vector<DecileCost> costs;
        const auto first = rows.size();
        for (const auto& decile : pc.deciles) {
            RunResult r;
            r.run = run;
            r.country_iso3 = country.country_iso3;
            r.decile_index = decile.decile_index;
            r.settlement = decile.settlement;
            r.population = decile.population;
            r.area_km2 = decile.area_km2;
            r.existing_sites = decile.existing_sites;

            if (decile.degenerate()) {
                costs.push_back({});
                rows.push_back(std::move(r));
                continue;
            }

            const auto demand = compute_decile_demand(decile, country, cfg.adoption, run.scenario);
            r.area_demand_mbps_km2 = demand.area_demand_mbps_km2;
            r.revenue_pv_usd = demand.revenue_pv_usd;

            const auto sites = required_sites(decile, demand.area_demand_mbps_km2, table,
                                              strategy.generation == Generation::G5);
            r.total_sites = sites.total_sites;
            r.new_sites = sites.new_sites;
            r.upgraded_sites = sites.upgraded_sites;
            r.unserviceable = sites.unserviceable;

            const auto components =
                apply_sharing(base_components, strategy.sharing, country.n_major_operators, decile.settlement);
            const double network = decile_network_cost(sites, components);
            costs.push_back(private_cost(network, cfg.cost, strategy.policy, demand.revenue_pv_usd,
                                         mhz_held * static_cast<double>(decile.population)));

            HorizonInputs h;
            h.existing_sites = decile.existing_sites;
            h.new_sites = sites.new_sites;
            h.backhaul = strategy.backhaul;
            h.grid = grid;
            h.mix_region = country.country_iso3;
            h.start_year = run.scenario.start_year;
            h.end_year = run.scenario.end_year;
            h.operator_share = operator_energy_share(strategy.sharing, decile.settlement, country.n_major_operators);
            r.operator_energy_share = h.operator_share;
            const auto years = simulate_horizon(h, cfg.energy, bundle.energy_mix, bundle.emission_factors);
            const auto total = cumulate_horizon(years);
            r.energy_kwh = total.energy_kwh;
            r.on_grid_kwh = total.on_grid_kwh;
            r.off_grid_kwh = total.off_grid_kwh;
            r.co2_kg = total.emissions.co2_kg;
            r.nox_g = total.emissions.nox_g;
            r.sox_g = total.emissions.sox_g;
            r.pm10_g = total.emissions.pm10_g;
            rows.push_back(std::move(r));
        }

        cross_subsidize(costs);
        for (std::size_t i = 0; i < costs.size(); ++i) {
            auto& r = rows[first + i];
            const auto& c = costs[i];
            r.network_usd = c.network;
            r.administration_usd = c.administration;
            r.spectrum_usd = c.spectrum;
            r.tax_usd = c.tax;
            r.profit_usd = c.profit;
            r.private_cost_usd = c.private_cost;
            r.subsidy_usd = c.subsidy;
            r.government_cost_usd = c.government_cost;
            r.financial_cost_usd = c.financial_cost;
        }
    }
    return rows;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        out.push_back(item);
    }
    return out;
}

}  // namespace

std::vector<CapacityTable> build_tables_for_bundle(const InputBundle& bundle, std::span<const RunSpec> runs,
                                                   const PipelineOptions& options)
{
    std::set<Generation> generations;
    for (const auto& r : runs) {
        generations.insert(r.strategy.generation);
    }
    std::set<TableKey> keys;
    for (auto g : generations) {
        for (const auto& [iso, country] : bundle.countries) {
            auto bands = country.bands(g);
            if (bands.empty()) {
                throw MissingDataError("country " + iso + " has no " + std::string(to_string(g)) + " spectrum");
            }
            keys.emplace(g, std::move(bands));
        }
    }

    const auto se_table = effective_se_table(bundle);
    const auto& cfg = bundle.config;
    std::optional<CapacityTableCache> cache;
    if (options.cache_dir) {
        cache.emplace(*options.cache_dir);
    }

    std::vector<CapacityTable> tables;
    for (const auto& [g, bands] : keys) {
        const auto key = capacity_table_key(cfg.simulation, se_table, g, bands, cfg.density_grid);
        if (cache) {
            if (auto hit = cache->load(key); hit && hit->rows.size() == cfg.density_grid.size()) {
                hit->generation = g;
                hit->freq_set = bands;
                tables.push_back(std::move(*hit));
                continue;
            }
        }
        auto table = build_capacity_table(cfg.simulation, se_table, bands, cfg.density_grid, options.jobs);
        if (cache) {
            cache->store(key, table);
        }
        tables.push_back(std::move(table));
    }
    return tables;
}

PipelineOutput run_pipeline(const InputBundle& bundle, std::span<const RunSpec> runs, const PipelineOptions& options)
{
    PipelineOutput out;
    out.tables = build_tables_for_bundle(bundle, runs, options);
    const auto countries = prepare_countries(bundle);

    std::vector<std::vector<RunResult>> per_run(runs.size());
    std::vector<std::optional<std::string>> errors(runs.size());
    parallel_for(runs.size(), options.jobs, [&](std::size_t i) {
        try {
            per_run[i] = evaluate_run(bundle, countries, out.tables, runs[i]);
        } catch (const std::exception& e) {
            errors[i] = run_key(runs[i]) + ": " + e.what();
        }
    });

    for (std::size_t i = 0; i < runs.size(); ++i) {
        if (errors[i]) {
            out.failures.push_back({runs[i], *errors[i]});
            continue;
        }
        std::move(per_run[i].begin(), per_run[i].end(), std::back_inserter(out.results));
    }
    return out;
}

HorizonEnergy decile_horizon(const InputBundle& bundle, const RunResult& result, std::span<const std::int64_t> schedule,
                             std::int64_t existing_sites)
{
    const auto& country = bundle.countries.at(result.country_iso3);
    HorizonInputs h;
    h.existing_sites = existing_sites;
    h.schedule.assign(schedule.begin(), schedule.end());
    h.backhaul = result.run.strategy.backhaul;
    h.grid = apply_renewables_strategy({country.on_grid_share, OffGridSource::Diesel},
                                       result.run.strategy.energy_strategy);
    h.mix_region = result.country_iso3;
    h.start_year = result.run.scenario.start_year;
    h.end_year = result.run.scenario.end_year;
    h.operator_share = result.operator_energy_share;
    const auto years = simulate_horizon(h, bundle.config.energy, bundle.energy_mix, bundle.emission_factors);
    return cumulate_horizon(years);
}

std::vector<RunSpec> filter_runs(std::span<const RunSpec> runs, const std::string& expr)
{
    std::map<std::string, std::set<std::string>> clauses;
    static const std::set<std::string> keys{"generation", "backhaul", "sharing", "policy",
                                            "energy_strategy", "capacity", "adoption"};
    for (const auto& clause : split(expr, ',')) {
        if (clause.empty()) {
            continue;
        }
        const auto eq = clause.find('=');
        if (eq == std::string::npos) {
            throw ValidationError("run filter clause '" + clause + "' lacks '='");
        }
        const auto key = clause.substr(0, eq);
        if (!keys.contains(key)) {
            throw ValidationError("run filter key '" + key +
                                  "' is not one of {generation, backhaul, sharing, policy, energy_strategy, capacity, "
                                  "adoption}");
        }
        for (const auto& v : split(clause.substr(eq + 1), '|')) {
            // Validate enum spellings up front.
            if (key == "generation") parse_generation(v);
            else if (key == "backhaul") parse_backhaul(v);
            else if (key == "sharing") parse_sharing(v);
            else if (key == "policy") parse_policy(v);
            else if (key == "energy_strategy") parse_energy_strategy(v);
            else if (key == "adoption") parse_adoption(v);
            clauses[key].insert(v);
        }
    }

    std::vector<RunSpec> out;
    for (const auto& run : runs) {
        char capacity[32];
        std::snprintf(capacity, sizeof capacity, "%g", run.scenario.capacity_gb_month);
        const std::map<std::string, std::string> fields{
            {"generation", std::string(to_string(run.strategy.generation))},
            {"backhaul", std::string(to_string(run.strategy.backhaul))},
            {"sharing", std::string(to_string(run.strategy.sharing))},
            {"policy", std::string(to_string(run.strategy.policy))},
            {"energy_strategy", std::string(to_string(run.strategy.energy_strategy))},
            {"capacity", capacity},
            {"adoption", std::string(to_string(run.scenario.adoption))},
        };
        const bool keep = std::all_of(clauses.begin(), clauses.end(),
                                      [&](const auto& c) { return c.second.contains(fields.at(c.first)); });
        if (keep) {
            out.push_back(run);
        }
    }
    return out;
}

}  // namespace bband
