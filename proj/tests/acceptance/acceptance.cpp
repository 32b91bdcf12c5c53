// Acceptance checks. Prints one [PASS]/[FAIL] line per criterion and exits
// non-zero if any criterion fails. Tolerances are pinned below.

#include "bband/cost.hpp"
#include "bband/data_io.hpp"
#include "bband/demand.hpp"
#include "bband/energy.hpp"
#include "bband/pipeline.hpp"
#include "bband/radio.hpp"
#include "bband/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace bband;
namespace fs = std::filesystem;

namespace {

constexpr double kRateRelTol = 1e-9;
constexpr double kNoiseAbsTolDb = 0.05;
constexpr double kFsplAbsTolDb = 0.01;
constexpr double kPvAbsTol = 0.01;
constexpr double kConservationRelTol = 1e-12;
constexpr double kAggregationRelTol = 1e-9;
constexpr double kCancellationRelTol = 1e-9;
constexpr double kSubsidyRelTol = 1e-9;
constexpr double kOracleSeconds = 1.0;
constexpr double kRadioSeconds = 60.0;
constexpr double kGoldenSeconds = 300.0;

const fs::path kSource = BBAND_SOURCE_DIR;
const fs::path kMiniland = kSource / "data" / "miniland";
const fs::path kGolden = kSource / "tests" / "golden";
const fs::path kFrozen = kSource / "tests" / "oracles" / "frozen_values.json";

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool rel_close(double a, double b, double tol)
{
    return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

int hw_jobs()
{
    const auto n = std::thread::hardware_concurrency();
    return static_cast<int>(std::max(4u, n));
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Collects failure reasons for one criterion.
struct Check
{
    std::vector<std::string> problems;

    void expect(bool ok, const std::string& what)
    {
        if (!ok && problems.size() < 20) {
            problems.push_back(what);
        }
    }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

std::string label(const RunSpec& r)
{
    return run_key(r);
}

const InputBundle& miniland()
{
    static const InputBundle b = load_bundle(kMiniland, kMiniland / "config.json");
    return b;
}

std::vector<RunSpec> miniland_runs(const std::string& filter)
{
    const auto all = enumerate_runs(miniland().config.axes.strategies, miniland().config.axes.scenarios);
    return filter_runs(all, filter);
}

std::map<RunSpec, Totals> global_totals(const std::vector<RunResult>& results)
{
    std::map<RunSpec, Totals> out;
    for (const auto& g : aggregate_global(aggregate_by_country(results))) {
        out[g.run] = g.totals;
    }
    return out;
}

// ---------------------------------------------------------------------------

Check criterion_oracles(std::string& detail)
{
    Check c;
    const auto t0 = Clock::now();
    std::ifstream in(kFrozen);
    if (!in) {
        c.expect(false, "cannot read " + kFrozen.string());
        return c;
    }
    const auto frozen = nlohmann::json::parse(in);

    const double rate = per_user_busy_hour_rate(30.0);
    c.expect(rel_close(rate, frozen.at("busy_hour_rate_mbps_30gb").get<double>(), kRateRelTol),
             fmt("busy-hour rate %.12g", rate));
    c.expect(rel_close(rate, 0.33333, 1e-5), fmt("busy-hour rate %.12g vs 0.33333", rate));

    const double noise = noise_floor(SimulationParams{}, 10e6);
    c.expect(std::abs(noise - frozen.at("noise_floor_dbm_10mhz").get<double>()) <= kNoiseAbsTolDb,
             fmt("noise floor %.6f", noise));
    c.expect(std::abs(noise - -102.48) <= kNoiseAbsTolDb, fmt("noise floor %.6f vs -102.48", noise));

    const double fspl = free_space_path_loss(0.5, 3500.0);
    c.expect(std::abs(fspl - frozen.at("fspl_db_0p5km_3500mhz").get<double>()) <= kFsplAbsTolDb,
             fmt("path loss %.6f", fspl));
    c.expect(std::abs(fspl - 97.30) <= kFsplAbsTolDb, fmt("path loss %.6f vs 97.30", fspl));

    const double site_only = 10 * EnergyParams{}.site_kwh_per_hour * EnergyParams{}.hours_per_year;
    c.expect(site_only == frozen.at("energy_kwh_10_sites_year").get<double>(), fmt("site energy %.10g", site_only));
    c.expect(site_only == 21812.4, fmt("site energy %.10g vs 21812.4", site_only));
    EnergyParams radio_only;
    radio_only.backhaul_wireless_kwh_per_hour = 0.0;
    const double eq = annual_energy(10, 0, radio_only, Backhaul::Wireless);
    c.expect(eq == 21812.4, fmt("annual_energy %.10g vs 21812.4", eq));

    DecileRecord one_person;
    one_person.population = 1;
    one_person.area_km2 = 1.0;
    const std::vector<double> flat(8, 1.0);
    const double pv = decile_revenue_pv(one_person, flat, flat, 100.0 / 12.0, 1.0, 0.05);
    c.expect(std::abs(pv - frozen.at("annuity_pv_100_8y_5pct").get<double>()) <= kPvAbsTol, fmt("PV %.6f", pv));
    c.expect(std::abs(pv - 646.32) <= kPvAbsTol, fmt("PV %.6f vs 646.32", pv));

    const double secs = seconds_since(t0);
    c.expect(secs < kOracleSeconds, fmt("took %.3f s", secs));
    detail = fmt("rate %.5f Mbps, noise %.2f dBm, FSPL %.2f dB", rate, noise, fspl) +
             fmt(", 10 sites %.1f kWh/yr, PV %.2f", site_only, pv) + fmt(", %.3f s", secs);
    return c;
}

Check criterion_radio(std::string& detail)
{
    Check c;
    const auto t0 = Clock::now();
    const auto& cfg = miniland().config;
    const auto params = cfg.simulation;
    const auto se = SpectralEfficiencyTable::default_table();
    c.expect(params.trials == 10000, "fixture should simulate 10,000 trials");
    // 8 densities spread over the configured grid
    std::vector<double> grid;
    const std::size_t n = cfg.density_grid.size();
    for (std::size_t i = 0; i < 8; ++i) {
        grid.push_back(cfg.density_grid[(i * (n - 1) + 3) / 7]);
    }
    c.expect(std::adjacent_find(grid.begin(), grid.end(), std::greater_equal<>()) == grid.end(),
             "density subset is not strictly increasing");

    // SE lookup is monotone, including at every threshold.
    for (auto g : kGenerations) {
        const auto& rows = se.rows.at(g);
        double prev = -1.0;
        for (double s = -20.0; s <= 40.0; s += 0.01) {
            const double v = se_lookup(se, s, g);
            c.expect(v >= prev, fmt("SE drops at %.2f dB", s));
            prev = v;
        }
        for (const auto& row : rows) {
            const double below = se_lookup(se, std::nextafter(row.min_sinr_db, -1e9), g);
            const double at = se_lookup(se, row.min_sinr_db, g);
            const double above = se_lookup(se, std::nextafter(row.min_sinr_db, 1e9), g);
            c.expect(below <= at && at <= above, fmt("SE not monotone at threshold %.3f dB", row.min_sinr_db));
        }
    }

    // Adding an interferer never raises SINR.
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> power(-140.0, -40.0);
    std::uniform_int_distribution<int> count(0, 12);
    for (int i = 0; i < 10000; ++i) {
        std::vector<double> interferers(static_cast<std::size_t>(count(rng)));
        for (auto& x : interferers) {
            x = power(rng);
        }
        const double signal = power(rng);
        const double noise = power(rng);
        const double before = sinr(signal, interferers, noise);
        interferers.push_back(power(rng));
        c.expect(sinr(signal, interferers, noise) <= before, "extra interferer raised SINR");
    }

    // Capacity tables: 1 vs N threads bit-identical, monotone in density and bandwidth.
    const int jobs = hw_jobs();
    const auto& country = miniland().countries.at("MLA");
    std::size_t tables = 0;
    for (auto g : kGenerations) {
        auto bands = country.bands(g);
        const auto serial = build_capacity_table(params, se, bands, grid, 1);
        const auto parallel = build_capacity_table(params, se, bands, grid, jobs);
        for (std::size_t i = 0; i < serial.rows.size(); ++i) {
            c.expect(serial.rows[i].capacity_mbps_km2 == parallel.rows[i].capacity_mbps_km2,
                     fmt("1 vs N threads differ at density %g", serial.rows[i].site_density));
            if (i > 0) {
                c.expect(serial.rows[i].capacity_mbps_km2 >= serial.rows[i - 1].capacity_mbps_km2,
                         fmt("capacity drops at density %g", serial.rows[i].site_density));
            }
        }
        auto wide = bands;
        for (auto& b : wide) {
            b.bandwidth_mhz *= 2.0;
        }
        const auto wider = build_capacity_table(params, se, wide, grid, jobs);
        const auto fewer = build_capacity_table(params, se, std::span(bands).first(bands.size() - 1),
                                                grid, jobs);
        for (std::size_t i = 0; i < serial.rows.size(); ++i) {
            c.expect(wider.rows[i].capacity_mbps_km2 >= serial.rows[i].capacity_mbps_km2,
                     fmt("wider carriers lower capacity at density %g", serial.rows[i].site_density));
            c.expect(fewer.rows[i].capacity_mbps_km2 <= serial.rows[i].capacity_mbps_km2,
                     fmt("extra carrier lowers capacity at density %g", serial.rows[i].site_density));
        }
        tables += 4;
    }
    const double secs = seconds_since(t0);
    c.expect(secs < kRadioSeconds, fmt("took %.1f s", secs));
    detail = std::to_string(tables) + " tables at " + std::to_string(params.trials) + " trials x " +
             std::to_string(grid.size()) + " densities, 1 vs " + std::to_string(jobs) +
             " threads" + fmt(", %.1f s", secs);
    return c;
}

Check criterion_directional(std::string& detail)
{
    Check c;
    const auto runs = miniland_runs("capacity=30,adoption=baseline,policy=baseline,energy_strategy=baseline");
    PipelineOptions opt;
    opt.jobs = hw_jobs();
    const auto out = run_pipeline(miniland(), runs, opt);
    c.expect(out.failures.empty(), "pipeline failures");
    const auto totals = global_totals(out.results);

    auto at = [&](Generation g, Backhaul b, Sharing s) -> const Totals& {
        RunSpec r;
        r.strategy.generation = g;
        r.strategy.backhaul = b;
        r.strategy.sharing = s;
        return totals.at(r);
    };
    int comparisons = 0;
    for (auto b : kBackhauls) {
        for (auto s : kSharings) {
            const auto& g4 = at(Generation::G4, b, s);
            const auto& g5 = at(Generation::G5, b, s);
            c.expect(g5.financial_cost_usd < g4.financial_cost_usd,
                     fmt("5G cost %.6g not below 4G cost %.6g", g5.financial_cost_usd, g4.financial_cost_usd));
            ++comparisons;
        }
    }
    for (auto g : kGenerations) {
        for (auto s : kSharings) {
            const auto& w = at(g, Backhaul::Wireless, s);
            const auto& f = at(g, Backhaul::Fiber, s);
            c.expect(f.financial_cost_usd > w.financial_cost_usd,
                     fmt("fiber cost %.6g not above wireless %.6g", f.financial_cost_usd, w.financial_cost_usd));
            c.expect(w.energy_kwh > f.energy_kwh,
                     fmt("wireless energy %.6g not above fiber %.6g", w.energy_kwh, f.energy_kwh));
            comparisons += 2;
        }
        for (auto b : kBackhauls) {
            const auto& base = at(g, b, Sharing::Baseline);
            const auto& passive = at(g, b, Sharing::Passive);
            const auto& active = at(g, b, Sharing::Active);
            const auto& srn = at(g, b, Sharing::Srn);
            const auto tech = technology_label(g, b);
            c.expect(active.financial_cost_usd <= srn.financial_cost_usd, tech + ": cost active > srn");
            c.expect(srn.financial_cost_usd <= base.financial_cost_usd, tech + ": cost srn > baseline");
            c.expect(passive.financial_cost_usd <= base.financial_cost_usd, tech + ": cost passive > baseline");
            c.expect(active.energy_kwh <= srn.energy_kwh, tech + ": energy active > srn");
            c.expect(srn.energy_kwh <= base.energy_kwh, tech + ": energy srn > baseline");
            c.expect(passive.energy_kwh == base.energy_kwh, tech + ": energy passive != baseline");
            comparisons += 6;
        }
    }
    detail = std::to_string(comparisons) + " comparisons over " + std::to_string(runs.size()) + " runs at 30 GB/month";
    return c;
}

Check criterion_linearity(std::string& detail)
{
    Check c;
    const auto runs = miniland_runs("capacity=30|50,adoption=baseline|high,policy=baseline");
    PipelineOptions opt;
    opt.jobs = hw_jobs();
    const auto out = run_pipeline(miniland(), runs, opt);
    c.expect(out.failures.empty(), "pipeline failures");

    std::size_t deciles = 0;
    for (const auto& r : out.results) {
        const int years = r.run.scenario.horizon_years();
        const auto schedule = build_schedule(r.new_sites, years);
        const auto base = decile_horizon(miniland(), r, schedule, r.existing_sites);
        c.expect(base.energy_kwh == r.energy_kwh && base.emissions.co2_kg == r.co2_kg,
                 label(r.run) + ": recomputed decile energy differs from pipeline");

        std::vector<std::int64_t> doubled(schedule.size());
        std::transform(schedule.begin(), schedule.end(), doubled.begin(), [](std::int64_t n) { return 2 * n; });
        const auto twice = decile_horizon(miniland(), r, doubled, 2 * r.existing_sites);
        const bool exact = twice.energy_kwh == 2.0 * base.energy_kwh &&
                           twice.on_grid_kwh == 2.0 * base.on_grid_kwh &&
                           twice.off_grid_kwh == 2.0 * base.off_grid_kwh &&
                           twice.emissions.co2_kg == 2.0 * base.emissions.co2_kg &&
                           twice.emissions.nox_g == 2.0 * base.emissions.nox_g &&
                           twice.emissions.sox_g == 2.0 * base.emissions.sox_g &&
                           twice.emissions.pm10_g == 2.0 * base.emissions.pm10_g;
        c.expect(exact, label(r.run) + " " + r.country_iso3 + ": doubling sites is not exactly linear");

        const double sum = r.on_grid_kwh + r.off_grid_kwh;
        c.expect(r.energy_kwh == 0.0 ? sum == 0.0 : rel_close(sum, r.energy_kwh, kConservationRelTol),
                 fmt("on+off %.17g vs total %.17g", sum, r.energy_kwh));
        ++deciles;
    }

    const auto countries = aggregate_by_country(out.results);
    const auto global = aggregate_global(countries);
    std::map<std::pair<RunSpec, std::string>, Totals> by_country;
    std::map<RunSpec, Totals> by_run;
    for (const auto& r : out.results) {
        by_country[{r.run, r.country_iso3}] += r;
        by_run[r.run] += r;
    }
    auto same = [&](const Totals& a, const Totals& b) {
        for (auto f : {&Totals::financial_cost_usd, &Totals::private_cost_usd, &Totals::government_cost_usd,
                       &Totals::energy_kwh, &Totals::co2_kg, &Totals::nox_g, &Totals::sox_g, &Totals::pm10_g}) {
            if (!rel_close(a.*f, b.*f, kAggregationRelTol) && !(a.*f == 0.0 && b.*f == 0.0)) {
                return false;
            }
        }
        return a.population == b.population && a.new_sites == b.new_sites;
    };
    for (const auto& cr : countries) {
        c.expect(same(cr.totals, by_country.at({cr.run, cr.country_iso3})), "country totals differ from deciles");
    }
    for (const auto& g : global) {
        Totals from_countries;
        for (const auto& cr : countries) {
            if (cr.run == g.run) {
                from_countries += cr.totals;
            }
        }
        c.expect(same(g.totals, from_countries), "global totals differ from countries");
        c.expect(same(g.totals, by_run.at(g.run)), "global totals differ from deciles");
    }
    detail = std::to_string(deciles) + " decile results over " + std::to_string(runs.size()) + " runs";
    return c;
}

Check criterion_renewables(std::string& detail)
{
    Check c;
    const auto runs = miniland_runs("capacity=30,adoption=baseline,policy=baseline");
    PipelineOptions opt;
    opt.jobs = hw_jobs();
    const auto out = run_pipeline(miniland(), runs, opt);
    c.expect(out.failures.empty(), "pipeline failures");
    const auto totals = global_totals(out.results);
    int pairs = 0;
    for (const auto& [run, t] : totals) {
        if (run.strategy.energy_strategy != EnergyStrategy::Renewables) {
            continue;
        }
        auto base_run = run;
        base_run.strategy.energy_strategy = EnergyStrategy::Baseline;
        const auto& b = totals.at(base_run);
        c.expect(t.co2_kg < b.co2_kg && t.nox_g < b.nox_g && t.sox_g < b.sox_g && t.pm10_g < b.pm10_g,
                 label(run) + ": renewables does not lower every species");
        ++pairs;
    }

    // Fully grid-connected: the strategy changes nothing.
    auto grid = miniland();
    for (auto& [iso, country] : grid.countries) {
        country.on_grid_share = 1.0;
    }
    const auto all_grid = run_pipeline(grid, runs, opt);
    std::vector<RunResult> base;
    std::vector<RunResult> renew;
    for (auto r : all_grid.results) {
        if (r.run.strategy.energy_strategy == EnergyStrategy::Renewables) {
            r.run.strategy.energy_strategy = EnergyStrategy::Baseline;
            renew.push_back(r);
        } else {
            base.push_back(r);
        }
    }
    const auto da = fs::temp_directory_path() / "bband_accept_grid_base";
    const auto db = fs::temp_directory_path() / "bband_accept_grid_renew";
    fs::remove_all(da);
    fs::remove_all(db);
    emit_results(base, da);
    emit_results(renew, db);
    for (const auto& name : kOutputFiles) {
        c.expect(slurp(da / name) == slurp(db / name), "on_grid_share = 1: " + name + " differs");
    }
    fs::remove_all(da);
    fs::remove_all(db);
    detail = std::to_string(pairs) + " run pairs lower on all 4 species; grid-only outputs byte-identical";
    return c;
}

Check criterion_policy(std::string& detail)
{
    Check c;
    const auto runs = miniland_runs("energy_strategy=baseline");
    PipelineOptions opt;
    opt.jobs = hw_jobs();
    const auto out = run_pipeline(miniland(), runs, opt);
    c.expect(out.failures.empty(), "pipeline failures");
    const auto totals = global_totals(out.results);
    int chains = 0;
    for (const auto& [run, t] : totals) {
        if (run.strategy.policy != Policy::Baseline) {
            continue;
        }
        auto with = [&](Policy p) {
            auto r = run;
            r.strategy.policy = p;
            return totals.at(r).financial_cost_usd;
        };
        c.expect(with(Policy::LowTax) <= t.financial_cost_usd && t.financial_cost_usd <= with(Policy::HighTax),
                 label(run) + ": financial cost not monotone in tax");
        c.expect(with(Policy::LowSpectrum) <= t.financial_cost_usd &&
                     t.financial_cost_usd <= with(Policy::HighSpectrum),
                 label(run) + ": financial cost not monotone in spectrum price");
        chains += 2;
    }
    int identities = 0;
    for (const auto& cr : aggregate_by_country(out.results)) {
        const auto& t = cr.totals;
        const double without_transfers = t.network_usd + t.administration_usd + t.profit_usd + t.subsidy_usd;
        c.expect(rel_close(t.financial_cost_usd, without_transfers, kCancellationRelTol),
                 label(cr.run) + " " + cr.country_iso3 + ": spectrum and tax do not cancel");
        c.expect(rel_close(t.government_cost_usd, t.subsidy_usd - t.spectrum_usd - t.tax_usd, kCancellationRelTol) ||
                     (t.government_cost_usd == 0.0 && t.subsidy_usd - t.spectrum_usd - t.tax_usd == 0.0),
                 label(cr.run) + " " + cr.country_iso3 + ": government cost identity");
        ++identities;
    }
    detail = std::to_string(chains) + " monotone chains, " + std::to_string(identities) + " national identities";
    return c;
}

Check criterion_golden(std::string& detail)
{
    Check c;
    const auto t0 = Clock::now();
    auto bundle = miniland();
    bundle.config.simulation.seed = 42;
    const auto runs = enumerate_runs(bundle.config.axes.strategies, bundle.config.axes.scenarios);
    c.expect(runs.size() == 1440, "full matrix should have 1440 runs");
    PipelineOptions opt;
    opt.jobs = hw_jobs();
    const auto out = run_pipeline(bundle, runs, opt);
    c.expect(out.failures.empty(), "pipeline failures");
    const auto dir = fs::temp_directory_path() / "bband_accept_golden";
    fs::remove_all(dir);
    emit_results(out.results, dir);
    write_capacity_tables_csv(dir / "capacity_tables.csv", out.tables);
    auto files = kOutputFiles;
    files.push_back("capacity_tables.csv");
    std::size_t bytes = 0;
    for (const auto& name : files) {
        const auto golden = slurp(kGolden / name);
        const auto fresh = slurp(dir / name);
        c.expect(!golden.empty(), "missing golden file " + name);
        c.expect(golden == fresh, name + " differs from golden");
        bytes += fresh.size();
    }
    fs::remove_all(dir);
    const double secs = seconds_since(t0);
    c.expect(secs < kGoldenSeconds, fmt("took %.1f s", secs));
    detail = std::to_string(runs.size()) + " runs, " + std::to_string(files.size()) + " files, " +
             std::to_string(bytes) + " bytes" + fmt(", %.1f s", secs);
    return c;
}

// Reference allocator: repeatedly scans for the unfunded decile with the
// smallest remaining deficit and funds it from the pool.
std::vector<double> brute_force_subsidy(const std::vector<double>& revenue, const std::vector<double>& cost)
{
    const std::size_t n = revenue.size();
    double pool = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (revenue[i] > cost[i]) {
            pool += revenue[i] - cost[i];
        }
    }
    std::vector<double> subsidy(n, 0.0);
    std::vector<bool> done(n, false);
    for (;;) {
        std::size_t best = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (!done[i] && cost[i] > revenue[i] &&
                (best == n || cost[i] - revenue[i] < cost[best] - revenue[best])) {
                best = i;
            }
        }
        if (best == n) {
            break;
        }
        done[best] = true;
        const double need = cost[best] - revenue[best];
        const double covered = std::min(pool, need);
        pool -= covered;
        subsidy[best] = need - covered;
    }
    return subsidy;
}

Check criterion_cross_subsidy(std::string& detail)
{
    Check c;
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> money(0.0, 1e6);
    std::uniform_real_distribution<double> tilt(0.2, 2.0);
    int cases = 0;
    int funded = 0;
    for (; cases < 1000; ++cases) {
        const double bias = tilt(rng);
        std::vector<double> revenue(10);
        std::vector<double> cost(10);
        std::vector<DecileCost> deciles(10);
        for (std::size_t i = 0; i < 10; ++i) {
            revenue[i] = money(rng);
            cost[i] = money(rng) * bias;
            deciles[i].revenue_pv = revenue[i];
            deciles[i].private_cost = cost[i];
        }
        cross_subsidize(deciles);
        const auto reference = brute_force_subsidy(revenue, cost);

        double deficit = 0.0;
        double surplus = 0.0;
        double total = 0.0;
        for (std::size_t i = 0; i < 10; ++i) {
            const double gap = cost[i] - revenue[i];
            deficit += std::max(0.0, gap);
            surplus += std::max(0.0, -gap);
            total += deciles[i].subsidy;
            c.expect(deciles[i].subsidy >= 0.0, "negative subsidy");
            c.expect(deciles[i].subsidy <= std::max(0.0, gap), "subsidy exceeds the decile's deficit");
            c.expect(std::abs(deciles[i].subsidy - reference[i]) <= kSubsidyRelTol * std::max(1.0, deficit),
                     fmt("decile subsidy %.6f vs reference %.6f", deciles[i].subsidy, reference[i]));
        }
        const double expected = std::max(0.0, deficit - surplus);
        c.expect(std::abs(total - expected) <= kSubsidyRelTol * std::max(1.0, deficit),
                 fmt("total subsidy %.6f vs %.6f", total, expected));
        funded += total > 0.0 ? 1 : 0;
    }
    detail = std::to_string(cases) + " random cases (" + std::to_string(funded) + " needing subsidy)";
    return c;
}

}  // namespace

int main()
{
    struct Criterion
    {
        int id;
        const char* name;
        std::function<Check(std::string&)> fn;
    };
    const std::vector<Criterion> criteria{
        {1, "equation oracles", criterion_oracles},
        {2, "radio properties", criterion_radio},
        {3, "directional claims on miniland", criterion_directional},
        {4, "linearity and conservation", criterion_linearity},
        {5, "renewables strategy", criterion_renewables},
        {6, "policy monotonicity and cancellation", criterion_policy},
        {7, "end-to-end golden run", criterion_golden},
        {8, "cross-subsidy oracle", criterion_cross_subsidy},
    };
    int failed = 0;
    for (const auto& cr : criteria) {
        std::string detail;
        Check check;
        try {
            check = cr.fn(detail);
        } catch (const std::exception& e) {
            check.problems.push_back(std::string("exception: ") + e.what());
        }
        const bool ok = check.problems.empty();
        failed += ok ? 0 : 1;
        std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", cr.id, cr.name, detail.empty() ? "" : " - ",
                    detail.c_str());
        for (const auto& p : check.problems) {
            std::printf("         %s\n", p.c_str());
        }
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
