#include "bband/report.hpp"

#include "bband/csv.hpp"
#include "bband/error.hpp"

#include <functional>
#include <system_error>
#include <utility>

namespace bband {

Totals& Totals::operator+=(const RunResult& r)
{
    population += r.population;
    area_km2 += r.area_km2;
    revenue_pv_usd += r.revenue_pv_usd;
    total_sites += r.total_sites;
    existing_sites += r.existing_sites;
    new_sites += r.new_sites;
    upgraded_sites += r.upgraded_sites;
    unserviceable_deciles += r.unserviceable ? 1 : 0;
    network_usd += r.network_usd;
    administration_usd += r.administration_usd;
    spectrum_usd += r.spectrum_usd;
    tax_usd += r.tax_usd;
    profit_usd += r.profit_usd;
    private_cost_usd += r.private_cost_usd;
    subsidy_usd += r.subsidy_usd;
    government_cost_usd += r.government_cost_usd;
    financial_cost_usd += r.financial_cost_usd;
    energy_kwh += r.energy_kwh;
    on_grid_kwh += r.on_grid_kwh;
    off_grid_kwh += r.off_grid_kwh;
    co2_kg += r.co2_kg;
    nox_g += r.nox_g;
    sox_g += r.sox_g;
    pm10_g += r.pm10_g;
    return *this;
}

Totals& Totals::operator+=(const Totals& o)
{
    population += o.population;
    area_km2 += o.area_km2;
    revenue_pv_usd += o.revenue_pv_usd;
    total_sites += o.total_sites;
    existing_sites += o.existing_sites;
    new_sites += o.new_sites;
    upgraded_sites += o.upgraded_sites;
    unserviceable_deciles += o.unserviceable_deciles;
    network_usd += o.network_usd;
    administration_usd += o.administration_usd;
    spectrum_usd += o.spectrum_usd;
    tax_usd += o.tax_usd;
    profit_usd += o.profit_usd;
    private_cost_usd += o.private_cost_usd;
    subsidy_usd += o.subsidy_usd;
    government_cost_usd += o.government_cost_usd;
    financial_cost_usd += o.financial_cost_usd;
    energy_kwh += o.energy_kwh;
    on_grid_kwh += o.on_grid_kwh;
    off_grid_kwh += o.off_grid_kwh;
    co2_kg += o.co2_kg;
    nox_g += o.nox_g;
    sox_g += o.sox_g;
    pm10_g += o.pm10_g;
    return *this;
}

std::vector<CountryResult> aggregate_by_country(std::span<const RunResult> results)
{
    std::vector<CountryResult> out;
    for (const auto& r : results) {
        if (out.empty() || out.back().run != r.run || out.back().country_iso3 != r.country_iso3) {
            out.push_back({r.run, r.country_iso3, {}});
        }
        out.back().totals += r;
    }
    return out;
}

std::vector<GlobalResult> aggregate_global(std::span<const CountryResult> countries)
{
    std::vector<GlobalResult> out;
    for (const auto& c : countries) {
        if (out.empty() || out.back().run != c.run) {
            out.push_back({c.run, {}});
        }
        out.back().totals += c.totals;
    }
    return out;
}

namespace {

template <typename Row>
using Column = std::pair<std::string, std::function<std::string(const Row&)>>;

std::string num(double v)
{
    return format_sig(v, 6);
}

std::string num(std::int64_t v)
{
    return std::to_string(v);
}

template <typename Row>
std::vector<Column<Row>> run_columns(bool full)
{
    std::vector<Column<Row>> cols{
        {"generation", [](const Row& r) { return std::string(to_string(r.run.strategy.generation)); }},
        {"backhaul", [](const Row& r) { return std::string(to_string(r.run.strategy.backhaul)); }},
    };
    if (full) {
        cols.push_back({"sharing", [](const Row& r) { return std::string(to_string(r.run.strategy.sharing)); }});
        cols.push_back({"policy", [](const Row& r) { return std::string(to_string(r.run.strategy.policy)); }});
        cols.push_back({"energy_strategy",
                        [](const Row& r) { return std::string(to_string(r.run.strategy.energy_strategy)); }});
    }
    cols.push_back({"capacity_gb_month", [](const Row& r) { return num(r.run.scenario.capacity_gb_month); }});
    cols.push_back({"adoption", [](const Row& r) { return std::string(to_string(r.run.scenario.adoption)); }});
    return cols;
}

template <typename Row, typename Get>
void add(std::vector<Column<Row>>& cols, std::string name, Get get)
{
    cols.push_back({std::move(name), [get](const Row& r) { return num(get(r)); }});
}

template <typename Row, typename Get>
std::vector<Column<Row>> totals_columns(Get t)
{
    std::vector<Column<Row>> cols;
    add<Row>(cols, "population", [t](const Row& r) { return t(r).population; });
    add<Row>(cols, "area_km2", [t](const Row& r) { return t(r).area_km2; });
    add<Row>(cols, "revenue_pv_usd", [t](const Row& r) { return t(r).revenue_pv_usd; });
    add<Row>(cols, "total_sites", [t](const Row& r) { return t(r).total_sites; });
    add<Row>(cols, "existing_sites", [t](const Row& r) { return t(r).existing_sites; });
    add<Row>(cols, "new_sites", [t](const Row& r) { return t(r).new_sites; });
    add<Row>(cols, "upgraded_sites", [t](const Row& r) { return t(r).upgraded_sites; });
    add<Row>(cols, "unserviceable_deciles",
             [t](const Row& r) { return static_cast<std::int64_t>(t(r).unserviceable_deciles); });
    add<Row>(cols, "network_usd", [t](const Row& r) { return t(r).network_usd; });
    add<Row>(cols, "administration_usd", [t](const Row& r) { return t(r).administration_usd; });
    add<Row>(cols, "spectrum_usd", [t](const Row& r) { return t(r).spectrum_usd; });
    add<Row>(cols, "tax_usd", [t](const Row& r) { return t(r).tax_usd; });
    add<Row>(cols, "profit_usd", [t](const Row& r) { return t(r).profit_usd; });
    add<Row>(cols, "private_cost_usd", [t](const Row& r) { return t(r).private_cost_usd; });
    add<Row>(cols, "subsidy_usd", [t](const Row& r) { return t(r).subsidy_usd; });
    add<Row>(cols, "government_cost_usd", [t](const Row& r) { return t(r).government_cost_usd; });
    add<Row>(cols, "financial_cost_usd", [t](const Row& r) { return t(r).financial_cost_usd; });
    add<Row>(cols, "energy_kwh", [t](const Row& r) { return t(r).energy_kwh; });
    add<Row>(cols, "on_grid_kwh", [t](const Row& r) { return t(r).on_grid_kwh; });
    add<Row>(cols, "off_grid_kwh", [t](const Row& r) { return t(r).off_grid_kwh; });
    add<Row>(cols, "co2_kg", [t](const Row& r) { return t(r).co2_kg; });
    add<Row>(cols, "nox_g", [t](const Row& r) { return t(r).nox_g; });
    add<Row>(cols, "sox_g", [t](const Row& r) { return t(r).sox_g; });
    add<Row>(cols, "pm10_g", [t](const Row& r) { return t(r).pm10_g; });
    return cols;
}

template <typename Row>
std::vector<Column<Row>> select(const std::vector<Column<Row>>& cols, const std::vector<std::string>& names)
{
    std::vector<Column<Row>> out;
    for (const auto& n : names) {
        for (const auto& c : cols) {
            if (c.first == n) {
                out.push_back(c);
            }
        }
    }
    return out;
}

template <typename Row, typename Keep>
void write_table(const std::filesystem::path& path, const std::vector<Column<Row>>& cols, std::span<const Row> rows,
                 Keep keep)
{
    CsvWriter out(path);
    std::vector<std::string> fields;
    for (const auto& c : cols) {
        fields.push_back(c.first);
    }
    out.row(fields);
    for (const auto& r : rows) {
        if (!keep(r)) {
            continue;
        }
        fields.clear();
        for (const auto& c : cols) {
            fields.push_back(c.second(r));
        }
        out.row(fields);
    }
    out.close();
}

std::vector<Column<RunResult>> decile_columns()
{
    auto cols = run_columns<RunResult>(true);
    cols.push_back({"country_iso3", [](const RunResult& r) { return r.country_iso3; }});
    cols.push_back({"decile", [](const RunResult& r) { return std::to_string(r.decile_index); }});
    cols.push_back({"settlement", [](const RunResult& r) { return std::string(to_string(r.settlement)); }});
    add<RunResult>(cols, "population", [](const RunResult& r) { return r.population; });
    add<RunResult>(cols, "area_km2", [](const RunResult& r) { return r.area_km2; });
    add<RunResult>(cols, "area_demand_mbps_km2", [](const RunResult& r) { return r.area_demand_mbps_km2; });
    add<RunResult>(cols, "revenue_pv_usd", [](const RunResult& r) { return r.revenue_pv_usd; });
    add<RunResult>(cols, "total_sites", [](const RunResult& r) { return r.total_sites; });
    add<RunResult>(cols, "existing_sites", [](const RunResult& r) { return r.existing_sites; });
    add<RunResult>(cols, "new_sites", [](const RunResult& r) { return r.new_sites; });
    add<RunResult>(cols, "upgraded_sites", [](const RunResult& r) { return r.upgraded_sites; });
    cols.push_back({"unserviceable", [](const RunResult& r) { return std::string(r.unserviceable ? "1" : "0"); }});
    add<RunResult>(cols, "network_usd", [](const RunResult& r) { return r.network_usd; });
    add<RunResult>(cols, "administration_usd", [](const RunResult& r) { return r.administration_usd; });
    add<RunResult>(cols, "spectrum_usd", [](const RunResult& r) { return r.spectrum_usd; });
    add<RunResult>(cols, "tax_usd", [](const RunResult& r) { return r.tax_usd; });
    add<RunResult>(cols, "profit_usd", [](const RunResult& r) { return r.profit_usd; });
    add<RunResult>(cols, "private_cost_usd", [](const RunResult& r) { return r.private_cost_usd; });
    add<RunResult>(cols, "subsidy_usd", [](const RunResult& r) { return r.subsidy_usd; });
    add<RunResult>(cols, "government_cost_usd", [](const RunResult& r) { return r.government_cost_usd; });
    add<RunResult>(cols, "financial_cost_usd", [](const RunResult& r) { return r.financial_cost_usd; });
    add<RunResult>(cols, "operator_energy_share", [](const RunResult& r) { return r.operator_energy_share; });
    add<RunResult>(cols, "energy_kwh", [](const RunResult& r) { return r.energy_kwh; });
    add<RunResult>(cols, "on_grid_kwh", [](const RunResult& r) { return r.on_grid_kwh; });
    add<RunResult>(cols, "off_grid_kwh", [](const RunResult& r) { return r.off_grid_kwh; });
    add<RunResult>(cols, "co2_kg", [](const RunResult& r) { return r.co2_kg; });
    add<RunResult>(cols, "nox_g", [](const RunResult& r) { return r.nox_g; });
    add<RunResult>(cols, "sox_g", [](const RunResult& r) { return r.sox_g; });
    add<RunResult>(cols, "pm10_g", [](const RunResult& r) { return r.pm10_g; });
    return cols;
}

std::vector<Column<GlobalResult>> summary_columns(bool with_sharing, bool with_policy, bool with_energy,
                                                  const std::vector<std::string>& metrics)
{
    std::vector<Column<GlobalResult>> cols{
        {"technology",
         [](const GlobalResult& r) {
             return technology_label(r.run.strategy.generation, r.run.strategy.backhaul);
         }},
    };
    if (with_sharing) {
        cols.push_back(
            {"sharing", [](const GlobalResult& r) { return std::string(to_string(r.run.strategy.sharing)); }});
    }
    if (with_policy) {
        cols.push_back({"policy", [](const GlobalResult& r) { return std::string(to_string(r.run.strategy.policy)); }});
    }
    if (with_energy) {
        cols.push_back({"energy_strategy",
                        [](const GlobalResult& r) { return std::string(to_string(r.run.strategy.energy_strategy)); }});
    }
    cols.push_back({"capacity_gb_month", [](const GlobalResult& r) { return num(r.run.scenario.capacity_gb_month); }});
    cols.push_back(
        {"adoption", [](const GlobalResult& r) { return std::string(to_string(r.run.scenario.adoption)); }});
    const auto all = totals_columns<GlobalResult>([](const GlobalResult& r) -> const Totals& { return r.totals; });
    for (auto& c : select(all, metrics)) {
        cols.push_back(std::move(c));
    }
    return cols;
}

}  // namespace

void emit_results(std::span<const RunResult> results, const std::filesystem::path& out_dir)
{
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());
    }

    const auto all = [](const auto&) { return true; };
    write_table<RunResult>(out_dir / "results_decile.csv", decile_columns(), results, all);

    const auto countries = aggregate_by_country(results);
    auto country_cols = run_columns<CountryResult>(true);
    country_cols.push_back({"country_iso3", [](const CountryResult& r) { return r.country_iso3; }});
    for (auto& c : totals_columns<CountryResult>([](const CountryResult& r) -> const Totals& { return r.totals; })) {
        country_cols.push_back(std::move(c));
    }
    write_table<CountryResult>(out_dir / "results_country.csv", country_cols, countries, all);

    const auto global = aggregate_global(countries);
    const auto is_base = [](const StrategyBundle& s, bool sharing, bool policy, bool energy) {
        return (!sharing || s.sharing == Sharing::Baseline) && (!policy || s.policy == Policy::Baseline) &&
               (!energy || s.energy_strategy == EnergyStrategy::Baseline);
    };

    write_table<GlobalResult>(
        out_dir / "summary_by_technology.csv",
        summary_columns(false, false, false,
                        {"population", "total_sites", "new_sites", "upgraded_sites", "unserviceable_deciles",
                         "revenue_pv_usd", "network_usd", "private_cost_usd", "government_cost_usd",
                         "financial_cost_usd"}),
        global, [&](const GlobalResult& r) { return is_base(r.run.strategy, true, true, true); });

    write_table<GlobalResult>(out_dir / "summary_by_sharing.csv",
                              summary_columns(true, false, false,
                                              {"network_usd", "private_cost_usd", "government_cost_usd",
                                               "financial_cost_usd", "energy_kwh", "co2_kg"}),
                              global, [&](const GlobalResult& r) { return is_base(r.run.strategy, false, true, true); });

    write_table<GlobalResult>(out_dir / "summary_by_policy.csv",
                              summary_columns(false, true, false,
                                              {"spectrum_usd", "tax_usd", "private_cost_usd", "subsidy_usd",
                                               "government_cost_usd", "financial_cost_usd"}),
                              global, [&](const GlobalResult& r) { return is_base(r.run.strategy, true, false, true); });

    write_table<GlobalResult>(out_dir / "summary_emissions.csv",
                              summary_columns(false, false, true,
                                              {"energy_kwh", "on_grid_kwh", "off_grid_kwh", "co2_kg", "nox_g",
                                               "sox_g", "pm10_g"}),
                              global, [&](const GlobalResult& r) { return is_base(r.run.strategy, true, true, false); });
}

}  // namespace bband
