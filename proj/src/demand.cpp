#include "bband/demand.hpp"

#include "bband/error.hpp"

#include <algorithm>
#include <cmath>

namespace bband {

double AdoptionRates::for_scenario(Adoption a) const noexcept
{
    switch (a) {
    case Adoption::Low: return low;
    case Adoption::Baseline: return baseline;
    case Adoption::High: return high;
    }
    return baseline;
}

std::map<IncomeGroup, AdoptionRates> AdoptionParams::default_cagr()
{
    return {
        {IncomeGroup::HIC, {0.005, 0.01, 0.015}},
        {IncomeGroup::UMC, {0.01, 0.02, 0.04}},
        {IncomeGroup::LMC, {0.015, 0.03, 0.06}},
        {IncomeGroup::LIC, {0.02, 0.04, 0.06}},
    };
}

double AdoptionParams::smartphone_penetration(Settlement s) const noexcept
{
    return s == Settlement::Rural ? smartphone_penetration_rural : smartphone_penetration_urban;
}

double per_user_busy_hour_rate(double capacity_gb_month, int days, double busy_hour_share)
{
    if (!(capacity_gb_month >= 0.0) || !std::isfinite(capacity_gb_month)) {
        throw ValidationError("capacity target must be a non-negative number of GB/month");
    }
    if (days < 1) {
        throw ValidationError("days per month must be at least 1");
    }
    if (!(busy_hour_share > 0.0 && busy_hour_share <= 1.0)) {
        throw ValidationError("busy-hour share must lie in (0, 1]");
    }
    const double megabits_per_month = capacity_gb_month * 1000.0 * 8.0;
    const double megabits_per_day = megabits_per_month / days;
    const double megabits_busy_hour = megabits_per_day * busy_hour_share;
    return megabits_busy_hour / 3600.0;
}

double adoption_projection(double base, double cagr, int years_ahead, double cap)
{
    if (base < 0.0) {
        throw ValidationError("base penetration must be non-negative");
    }
    if (!(cap > 0.0)) {
        throw ValidationError("penetration cap must be positive");
    }
    return std::min(base * std::pow(1.0 + cagr, years_ahead), cap);
}

std::vector<double> penetration_path(const AdoptionParams& params, IncomeGroup income, const ScenarioSpec& scenario)
{
    if (scenario.end_year < scenario.start_year) {
        throw ValidationError("scenario end_year precedes start_year");
    }
    const auto it = params.cagr_by_income.find(income);
    if (it == params.cagr_by_income.end()) {
        throw MissingDataError("no adoption growth rates for income group " + std::string(to_string(income)));
    }
    const double cagr = it->second.for_scenario(scenario.adoption);
    std::vector<double> path;
    path.reserve(static_cast<std::size_t>(scenario.horizon_years()));
    for (int y = 0; y < scenario.horizon_years(); ++y) {
        path.push_back(adoption_projection(params.base_cell_penetration, cagr, y, params.penetration_cap));
    }
    return path;
}

double area_demand(const DecileRecord& decile, std::span<const double> pen_t, std::span<const double> sp_pen_t,
                   double rate_mbps, double market_share)
{
    if (!(market_share > 0.0 && market_share <= 1.0)) {
        throw ValidationError("market share must lie in (0, 1]");
    }
    if (pen_t.size() != sp_pen_t.size()) {
        throw ValidationError("penetration series lengths differ");
    }
    if (decile.population == 0) {
        return 0.0;
    }
    if (!(decile.area_km2 > 0.0)) {
        throw ValidationError("decile " + std::to_string(decile.decile_index) + " of " + decile.country_iso3 +
                              " has population but zero area");
    }
    double peak = 0.0;
    for (std::size_t t = 0; t < pen_t.size(); ++t) {
        const double users = static_cast<double>(decile.population) * pen_t[t] * sp_pen_t[t];
        peak = std::max(peak, users * rate_mbps * market_share);
    }
    return peak / decile.area_km2;
}

double decile_revenue_pv(const DecileRecord& decile, std::span<const double> pen_t, std::span<const double> sp_pen_t,
                         double arpu_usd_month, double market_share, double discount_rate)
{
    if (arpu_usd_month < 0.0) {
        throw ValidationError("ARPU must be non-negative");
    }
    if (pen_t.size() != sp_pen_t.size()) {
        throw ValidationError("penetration series lengths differ");
    }
    double pv = 0.0;
    double discount = 1.0;
    for (std::size_t t = 0; t < pen_t.size(); ++t) {
        discount *= 1.0 + discount_rate;
        const double annual =
            static_cast<double>(decile.population) * pen_t[t] * sp_pen_t[t] * market_share * arpu_usd_month * 12.0;
        pv += annual / discount;
    }
    return pv;
}

DecileDemand compute_decile_demand(const DecileRecord& decile, const CountryParams& country,
                                   const AdoptionParams& adoption, const ScenarioSpec& scenario)
{
    DecileDemand out;
    out.busy_hour_rate_mbps = per_user_busy_hour_rate(scenario.capacity_gb_month);
    if (decile.degenerate()) {
        return out;
    }
    const auto pen = penetration_path(adoption, country.income_group, scenario);
    const std::vector<double> sp(pen.size(), adoption.smartphone_penetration(decile.settlement));
    const double share = country.market_share();

    for (std::size_t t = 0; t < pen.size(); ++t) {
        out.smartphone_users = std::max(out.smartphone_users, static_cast<double>(decile.population) * pen[t] * sp[t] * share);
    }
    out.area_demand_mbps_km2 = area_demand(decile, pen, sp, out.busy_hour_rate_mbps, share);
    out.revenue_pv_usd = decile_revenue_pv(decile, pen, sp, country.arpu_for(decile.settlement), share,
                                           scenario.discount_rate);
    return out;
}

}  // namespace bband
