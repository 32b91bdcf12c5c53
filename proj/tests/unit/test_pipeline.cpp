#include "bband/data_io.hpp"
#include "bband/error.hpp"
#include "bband/pipeline.hpp"
#include "bband/report.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace bband;
namespace fs = std::filesystem;

namespace {

const fs::path kMiniland = fs::path(BBAND_SOURCE_DIR) / "data" / "miniland";

const InputBundle& miniland()
{
    static const InputBundle b = [] {
        auto x = load_bundle(kMiniland, kMiniland / "config.json");
        x.config.simulation.trials = 1000;
        return x;
    }();
    return b;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunSpec base_run()
{
    return {};
}

bool close(double a, double b, double rel)
{
    return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

TEST_CASE("one run gives twenty decile rows")
{
    const std::vector<RunSpec> runs{base_run()};
    const auto out = run_pipeline(miniland(), runs);
    CHECK(out.failures.empty());
    REQUIRE(out.results.size() == 20);
    CHECK(out.results[0].country_iso3 == "MLA");
    CHECK(out.results[0].decile_index == 1);
    CHECK(out.results[19].country_iso3 == "MLB");
    CHECK(out.results[19].decile_index == 10);
    for (const auto& r : out.results) {
        CHECK_FALSE(r.unserviceable);
        CHECK(r.new_sites >= 0);
        CHECK(r.financial_cost_usd == doctest::Approx(r.private_cost_usd + r.government_cost_usd));
        CHECK(r.on_grid_kwh + r.off_grid_kwh == doctest::Approx(r.energy_kwh));
    }
}

TEST_CASE("results do not depend on worker count and are reproducible")
{
    const auto all = enumerate_runs(miniland().config.axes.strategies, miniland().config.axes.scenarios);
    const auto runs = filter_runs(all, "capacity=30,adoption=baseline,energy_strategy=baseline");
    REQUIRE(runs.size() == 80);
    PipelineOptions one;
    one.jobs = 1;
    PipelineOptions many;
    many.jobs = 6;
    const auto a = run_pipeline(miniland(), runs, one);
    const auto b = run_pipeline(miniland(), runs, many);

    const auto da = fs::temp_directory_path() / "bband_pipe_a";
    const auto db = fs::temp_directory_path() / "bband_pipe_b";
    fs::remove_all(da);
    fs::remove_all(db);
    emit_results(a.results, da);
    emit_results(b.results, db);
    for (const auto& name : kOutputFiles) {
        CHECK(slurp(da / name) == slurp(db / name));
    }
    // re-emitting overwrites with identical bytes
    emit_results(a.results, da);
    for (const auto& name : kOutputFiles) {
        CHECK(slurp(da / name) == slurp(db / name));
    }
    fs::remove_all(da);
    fs::remove_all(db);
}

TEST_CASE("disk cache returns the same tables")
{
    const auto dir = fs::temp_directory_path() / "bband_pipe_cache";
    fs::remove_all(dir);
    const std::vector<RunSpec> runs{base_run()};
    PipelineOptions cached;
    cached.cache_dir = dir;
    const auto first = run_pipeline(miniland(), runs, cached);
    CHECK(fs::exists(dir));
    const auto second = run_pipeline(miniland(), runs, cached);
    const auto fresh = run_pipeline(miniland(), runs);
    REQUIRE(first.tables.size() == fresh.tables.size());
    for (std::size_t i = 0; i < fresh.tables.size(); ++i) {
        for (std::size_t k = 0; k < fresh.tables[i].rows.size(); ++k) {
            CHECK(second.tables[i].rows[k].capacity_mbps_km2 == fresh.tables[i].rows[k].capacity_mbps_km2);
        }
    }
    fs::remove_all(dir);
}

TEST_CASE("a failing run does not stop the others")
{
    auto bad = base_run();
    bad.scenario.end_year = 2031;  // no mix forecast for 2031
    const std::vector<RunSpec> runs{base_run(), bad, base_run()};
    const auto out = run_pipeline(miniland(), runs);
    REQUIRE(out.failures.size() == 1);
    CHECK(out.failures[0].run == bad);
    CHECK(out.failures[0].message.find("2031") != std::string::npos);
    CHECK(out.failures[0].message.find("4G|wireless") != std::string::npos);
    CHECK(out.results.size() == 40);
}

TEST_CASE("empty results give header-only files")
{
    const auto dir = fs::temp_directory_path() / "bband_pipe_empty";
    fs::remove_all(dir);
    emit_results({}, dir);
    for (const auto& name : kOutputFiles) {
        const auto text = slurp(dir / name);
        CHECK_FALSE(text.empty());
        CHECK(std::count(text.begin(), text.end(), '\n') == 1);
    }
    fs::remove_all(dir);
}

TEST_CASE("aggregates are consistent from decile to country to global")
{
    const auto all = enumerate_runs(miniland().config.axes.strategies, miniland().config.axes.scenarios);
    const auto runs = filter_runs(all, "capacity=40,adoption=high,policy=baseline|high_tax");
    const auto out = run_pipeline(miniland(), runs);
    const auto countries = aggregate_by_country(out.results);
    const auto global = aggregate_global(countries);
    CHECK(countries.size() == runs.size() * 2);
    CHECK(global.size() == runs.size());

    std::size_t row = 0;
    for (const auto& c : countries) {
        double cost = 0.0;
        double energy = 0.0;
        double co2 = 0.0;
        std::int64_t sites = 0;
        for (int k = 0; k < 10; ++k, ++row) {
            const auto& r = out.results[row];
            CHECK(r.country_iso3 == c.country_iso3);
            cost += r.financial_cost_usd;
            energy += r.energy_kwh;
            co2 += r.co2_kg;
            sites += r.new_sites;
        }
        CHECK(close(c.totals.financial_cost_usd, cost, 1e-9));
        CHECK(close(c.totals.energy_kwh, energy, 1e-9));
        CHECK(close(c.totals.co2_kg, co2, 1e-9));
        CHECK(c.totals.new_sites == sites);
    }
    for (std::size_t i = 0; i < global.size(); ++i) {
        const auto& a = countries[2 * i].totals;
        const auto& b = countries[2 * i + 1].totals;
        CHECK(close(global[i].totals.financial_cost_usd, a.financial_cost_usd + b.financial_cost_usd, 1e-9));
        CHECK(close(global[i].totals.pm10_g, a.pm10_g + b.pm10_g, 1e-9));
    }
}

TEST_CASE("run filter grammar")
{
    const auto all = enumerate_runs(StrategySpace{}, ScenarioSpace{});
    CHECK(filter_runs(all, "").size() == 1440);
    CHECK(filter_runs(all, "generation=4G").size() == 720);
    CHECK(filter_runs(all, "generation=4G,sharing=active|srn").size() == 360);
    CHECK(filter_runs(all, "capacity=30").size() == 480);
    CHECK(filter_runs(all, "capacity=25").empty());
    CHECK_THROWS_AS(filter_runs(all, "generation=6G"), ValidationError);
    CHECK_THROWS_AS(filter_runs(all, "colour=red"), ValidationError);
    CHECK_THROWS_AS(filter_runs(all, "generation"), ValidationError);
}

TEST_CASE("sharing summary shows active <= srn <= baseline")
{
    const auto all = enumerate_runs(miniland().config.axes.strategies, miniland().config.axes.scenarios);
    const auto runs = filter_runs(all, "capacity=30,adoption=baseline,policy=baseline,energy_strategy=baseline");
    const auto global = aggregate_global(aggregate_by_country(run_pipeline(miniland(), runs).results));
    for (auto g : kGenerations) {
        for (auto b : kBackhauls) {
            auto total = [&](Sharing s) {
                for (const auto& x : global) {
                    if (x.run.strategy.generation == g && x.run.strategy.backhaul == b && x.run.strategy.sharing == s) {
                        return x.totals.financial_cost_usd;
                    }
                }
                FAIL("missing run");
                return 0.0;
            };
            CHECK(total(Sharing::Active) <= total(Sharing::Srn));
            CHECK(total(Sharing::Srn) <= total(Sharing::Baseline));
            CHECK(total(Sharing::Passive) <= total(Sharing::Baseline));
        }
    }
}
