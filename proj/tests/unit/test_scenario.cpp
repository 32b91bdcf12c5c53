#include "bband/error.hpp"
#include "bband/scenario.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using namespace bband;

namespace {

CountryParams country(const std::string& iso = "AAA")
{
    CountryParams c;
    c.country_iso3 = iso;
    c.n_major_operators = 4;
    return c;
}

std::vector<RegionRecord> regions_with_densities(std::size_t n, const std::string& iso = "AAA")
{
    std::vector<RegionRecord> out;
    for (std::size_t i = 0; i < n; ++i) {
        RegionRecord r;
        char id[16];
        std::snprintf(id, sizeof id, "R%03zu", i);
        r.region_id = id;
        r.country_iso3 = iso;
        r.area_km2 = 10.0;
        r.population = static_cast<std::int64_t>(100 * (i + 1));  // density rises with i
        r.existing_sites = static_cast<std::int64_t>(i % 3);
        out.push_back(r);
    }
    return out;
}

std::vector<int> bin_sizes(const std::vector<DecileRecord>& d)
{
    std::vector<int> out;
    for (const auto& x : d) {
        out.push_back(x.region_count);
    }
    return out;
}

}  // namespace

TEST_CASE("settlement classification uses inclusive lower bounds")
{
    CHECK(classify_settlement(2000) == Settlement::Urban);
    CHECK(classify_settlement(1500) == Settlement::Urban);
    CHECK(classify_settlement(1499.999) == Settlement::Suburban);
    CHECK(classify_settlement(300) == Settlement::Suburban);
    CHECK(classify_settlement(299.9) == Settlement::Rural);
    CHECK(classify_settlement(0) == Settlement::Rural);
    CHECK_THROWS_AS(classify_settlement(std::nan("")), ValidationError);
    CHECK_THROWS_AS(classify_settlement(INFINITY), ValidationError);
    CHECK_THROWS_AS(classify_settlement(-1), ValidationError);
    CHECK_THROWS_AS(classify_settlement(10, {100, 200}), ValidationError);
}

TEST_CASE("settlement classification is monotone in density")
{
    int prev = static_cast<int>(Settlement::Rural);
    for (double d = 0; d < 5000; d += 7.5) {
        // enum order: Urban < Suburban < Rural
        const int now = static_cast<int>(classify_settlement(d));
        CHECK(now <= prev);
        prev = now;
    }
}

TEST_CASE("20 regions give ten bins of two, densest first")
{
    const auto regions = regions_with_densities(20);
    const auto d = build_deciles(regions, country());
    REQUIRE(d.size() == 10);
    CHECK(bin_sizes(d) == std::vector<int>(10, 2));
    CHECK(d[0].decile_index == 1);
    CHECK(d[0].population == 2000 + 1900);
    CHECK(d[9].population == 100 + 200);
}

TEST_CASE("23 regions split 3,3,3 then 2s")
{
    const auto d = build_deciles(regions_with_densities(23), country());
    CHECK(bin_sizes(d) == std::vector<int>{3, 3, 3, 2, 2, 2, 2, 2, 2, 2});
}

TEST_CASE("a single region leaves nine degenerate deciles")
{
    const auto d = build_deciles(regions_with_densities(1), country());
    REQUIRE(d.size() == 10);
    CHECK(d[0].population == 100);
    CHECK_FALSE(d[0].degenerate());
    for (int k = 1; k < 10; ++k) {
        CHECK(d[k].population == 0);
        CHECK(d[k].area_km2 == 0.0);
        CHECK(d[k].degenerate());
        CHECK(d[k].decile_index == k + 1);
    }
}

TEST_CASE("decile errors")
{
    CHECK_THROWS_AS(build_deciles({}, country()), MissingDataError);
    CHECK_THROWS_AS(build_deciles(regions_with_densities(3, "BBB"), country()), MissingDataError);
    auto dup = regions_with_densities(3);
    dup[2].region_id = dup[0].region_id;
    CHECK_THROWS_AS(build_deciles(dup, country()), ValidationError);
    auto zero_area = regions_with_densities(3);
    zero_area[1].area_km2 = 0.0;
    CHECK_THROWS_AS(build_deciles(zero_area, country()), ValidationError);
    auto negative = regions_with_densities(3);
    negative[1].population = -1;
    CHECK_THROWS_AS(build_deciles(negative, country()), ValidationError);
}

TEST_CASE("density ties break by ascending region id")
{
    std::vector<RegionRecord> regions;
    for (const char* id : {"c", "a", "b"}) {
        regions.push_back({id, "AAA", 500, 5.0, 0});
    }
    regions.push_back({"z", "AAA", 1000, 5.0, 0});
    // 4 regions: bins of 1; decile 1 = z, then a, b, c in id order
    const auto d = build_deciles(regions, country());
    CHECK(d[0].population == 1000);
    CHECK(d[1].region_count == 1);
    CHECK(d[3].region_count == 1);
    CHECK(d[4].degenerate());
}

TEST_CASE("decile conservation and ordering over random inputs")
{
    std::mt19937_64 gen(7);
    for (int round = 0; round < 200; ++round) {
        const std::size_t n = 1 + gen() % 60;
        std::vector<RegionRecord> regions;
        std::int64_t pop = 0;
        std::int64_t sites = 0;
        double area = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            RegionRecord r;
            r.region_id = "r" + std::to_string(i);
            r.country_iso3 = "AAA";
            r.population = static_cast<std::int64_t>(gen() % 500000);
            r.area_km2 = static_cast<double>(1 + gen() % 5000);  // integral: sums are exact
            r.existing_sites = static_cast<std::int64_t>(gen() % 50);
            pop += r.population;
            area += r.area_km2;
            sites += r.existing_sites;
            regions.push_back(r);
        }
        // Unrelated country is ignored.
        regions.push_back({"other", "BBB", 99, 1.0, 1});
        std::shuffle(regions.begin(), regions.end(), gen);

        const auto d = build_deciles(regions, country());
        REQUIRE(d.size() == 10);
        std::int64_t dp = 0;
        std::int64_t ds = 0;
        double da = 0.0;
        int count = 0;
        for (const auto& x : d) {
            dp += x.population;
            da += x.area_km2;
            ds += x.existing_sites;
            count += x.region_count;
        }
        CHECK(dp == pop);
        CHECK(da == area);
        CHECK(ds == sites);
        CHECK(count == static_cast<int>(n));
        for (std::size_t k = 0; k + 1 < d.size(); ++k) {
            if (!d[k + 1].degenerate() && d[k + 1].area_km2 > 0) {
                CHECK(d[k].pop_density() >= d[k + 1].pop_density());
            }
        }
    }
}

TEST_CASE("settlement of each decile follows its density")
{
    std::vector<RegionRecord> regions{
        {"u", "AAA", 20000, 10.0, 0},
        {"s", "AAA", 5000, 10.0, 0},
        {"r", "AAA", 100, 10.0, 0},
    };
    const auto d = build_deciles(regions, country());
    CHECK(d[0].settlement == Settlement::Urban);
    CHECK(d[1].settlement == Settlement::Suburban);
    CHECK(d[2].settlement == Settlement::Rural);
}

TEST_CASE("run enumeration")
{
    const auto all = enumerate_runs(StrategySpace{}, ScenarioSpace{});
    CHECK(all.size() == 1440);
    CHECK(std::set<RunSpec>(all.begin(), all.end()).size() == 1440);
    CHECK(enumerate_runs(StrategySpace{}, ScenarioSpace{}) == all);

    // generation is the outermost axis, adoption the innermost
    CHECK(all.front().strategy.generation == Generation::G4);
    CHECK(all.back().strategy.generation == Generation::G5);
    CHECK(all[0].scenario.adoption == Adoption::Low);
    CHECK(all[1].scenario.adoption == Adoption::Baseline);
    CHECK(all[3].scenario.capacity_gb_month == 30.0);

    StrategySpace one{{Generation::G5}, {Backhaul::Fiber}, {Sharing::Srn}, {Policy::HighTax}, {EnergyStrategy::Baseline}};
    ScenarioSpace sone;
    sone.capacities_gb_month = {30.0};
    sone.adoptions = {Adoption::High};
    const auto single = enumerate_runs(one, sone);
    REQUIRE(single.size() == 1);
    CHECK(single[0].strategy.sharing == Sharing::Srn);
    CHECK(single[0].scenario.adoption == Adoption::High);

    StrategySpace two = one;
    two.generations = {Generation::G4, Generation::G5};
    sone.capacities_gb_month = {20.0, 40.0};
    const auto four = enumerate_runs(two, sone);
    REQUIRE(four.size() == 4);
    CHECK(four[0].strategy.generation == Generation::G4);
    CHECK(four[0].scenario.capacity_gb_month == 20.0);
    CHECK(four[1].scenario.capacity_gb_month == 40.0);
    CHECK(four[2].strategy.generation == Generation::G5);
    CHECK(enumerate_runs(two, sone) == four);
}

TEST_CASE("enum strings round trip")
{
    for (auto v : kGenerations) CHECK(parse_generation(to_string(v)) == v);
    for (auto v : kBackhauls) CHECK(parse_backhaul(to_string(v)) == v);
    for (auto v : kSharings) CHECK(parse_sharing(to_string(v)) == v);
    for (auto v : kPolicies) CHECK(parse_policy(to_string(v)) == v);
    for (auto v : kEnergyStrategies) CHECK(parse_energy_strategy(to_string(v)) == v);
    for (auto v : kAdoptions) CHECK(parse_adoption(to_string(v)) == v);
    for (auto v : kIncomeGroups) CHECK(parse_income_group(to_string(v)) == v);
    CHECK_THROWS_AS(parse_adoption("medium"), ValidationError);
    CHECK(technology_label(Generation::G4, Backhaul::Wireless) == "4G-wireless");
}
