#include "bband/cost.hpp"

#include "bband/error.hpp"

#include <algorithm>
#include <numeric>

namespace bband {

std::string_view to_string(TaxBase v)
{
    return v == TaxBase::Revenue ? "revenue" : "profit";
}

TaxBase parse_tax_base(std::string_view s)
{
    if (s == "revenue") {
        return TaxBase::Revenue;
    }
    if (s == "profit") {
        return TaxBase::Profit;
    }
    throw ValidationError("unknown tax base '" + std::string(s) + "' (expected one of {revenue, profit})");
}

void CostInputs::validate() const
{
    for (double v : {equipment, backhaul_wireless, backhaul_fiber, civils, core, admin_share, profit_margin}) {
        if (!(v >= 0.0)) {
            throw ValidationError("cost inputs must be non-negative");
        }
    }
    for (const auto* lv : {&tax_rate, &spectrum_fee}) {
        if (!(lv->low >= 0.0 && lv->low <= lv->baseline && lv->baseline <= lv->high)) {
            throw ValidationError("policy levels must satisfy 0 <= low <= baseline <= high");
        }
    }
}

double CostInputs::tax_rate_for(Policy p) const noexcept
{
    switch (p) {
    case Policy::LowTax: return tax_rate.low;
    case Policy::HighTax: return tax_rate.high;
    default: return tax_rate.baseline;
    }
}

double CostInputs::spectrum_fee_for(Policy p) const noexcept
{
    switch (p) {
    case Policy::LowSpectrum: return spectrum_fee.low;
    case Policy::HighSpectrum: return spectrum_fee.high;
    default: return spectrum_fee.baseline;
    }
}

double SiteCostComponents::network_cost(SiteKind kind) const noexcept
{
    const double shared = equipment + backhaul + core;
    return kind == SiteKind::New ? shared + civils : shared;
}

SiteCostComponents site_components(Backhaul backhaul, const CostInputs& costs)
{
    return {costs.equipment, backhaul == Backhaul::Fiber ? costs.backhaul_fiber : costs.backhaul_wireless,
            costs.civils, costs.core};
}

double site_network_cost(SiteKind kind, Backhaul backhaul, const CostInputs& costs)
{
    return site_components(backhaul, costs).network_cost(kind);
}

SiteCostComponents apply_sharing(const SiteCostComponents& c, Sharing sharing, int n_sharers, Settlement settlement)
{
    if (n_sharers < 1) {
        throw ValidationError("number of sharing operators must be at least 1");
    }
    const double n = n_sharers;
    if (sharing == Sharing::Srn) {
        sharing = settlement == Settlement::Rural ? Sharing::Active : Sharing::Baseline;
    }
    auto out = c;
    switch (sharing) {
    case Sharing::Passive:
        out.civils = c.civils / n;
        break;
    case Sharing::Active:
        out.civils = c.civils / n;
        out.equipment = c.equipment / n;
        out.backhaul = c.backhaul / n;
        break;
    default:
        break;
    }
    return out;
}

double decile_network_cost(const SiteRequirement& sites, const SiteCostComponents& components)
{
    return static_cast<double>(sites.new_sites) * components.network_cost(SiteKind::New) +
           static_cast<double>(sites.upgraded_sites) * components.network_cost(SiteKind::Upgrade);
}

namespace {

// private + government with spectrum and tax cancelled analytically, so the
// total does not pick up rounding noise from transfers that net to zero.
double cancelled_financial_cost(const DecileCost& c)
{
    return c.network + c.administration + c.profit + c.subsidy;
}

}  // namespace

DecileCost private_cost(double network, const CostInputs& costs, Policy policy, double revenue_pv,
                        double spectrum_mhz_pop)
{
    if (!(network >= 0.0)) {
        throw ValidationError("network cost must be non-negative");
    }
    DecileCost c;
    c.network = network;
    c.administration = costs.admin_share * network;
    c.profit = costs.profit_margin * network;
    c.spectrum = costs.spectrum_fee_for(policy) * spectrum_mhz_pop;
    const double tax_base = costs.tax_base == TaxBase::Revenue ? revenue_pv : c.profit;
    c.tax = costs.tax_rate_for(policy) * tax_base;
    c.private_cost = c.network + c.administration + c.spectrum + c.tax + c.profit;
    c.revenue_pv = revenue_pv;
    c.government_cost = c.subsidy - (c.spectrum + c.tax);
    c.financial_cost = cancelled_financial_cost(c);
    return c;
}

void cross_subsidize(std::span<DecileCost> decile_costs)
{
    double pool = 0.0;
    std::vector<std::size_t> in_deficit;
    for (std::size_t i = 0; i < decile_costs.size(); ++i) {
        const auto& c = decile_costs[i];
        if (c.revenue_pv > c.private_cost) {
            pool += c.revenue_pv - c.private_cost;
        } else if (c.private_cost > c.revenue_pv) {
            in_deficit.push_back(i);
        }
    }
    auto deficit = [&](std::size_t i) { return decile_costs[i].private_cost - decile_costs[i].revenue_pv; };
    // Most viable first: smallest deficit, ties by position.
    std::stable_sort(in_deficit.begin(), in_deficit.end(),
                     [&](std::size_t a, std::size_t b) { return deficit(a) < deficit(b); });

    for (auto& c : decile_costs) {
        c.subsidy = 0.0;
    }
    for (auto i : in_deficit) {
        const double need = deficit(i);
        const double covered = std::min(pool, need);
        pool -= covered;
        decile_costs[i].subsidy = need - covered;
    }
    for (auto& c : decile_costs) {
        c.government_cost = c.subsidy - (c.spectrum + c.tax);
        c.financial_cost = cancelled_financial_cost(c);
    }
}

double financial_cost_total(std::span<const DecileCost> decile_costs)
{
    return std::accumulate(decile_costs.begin(), decile_costs.end(), 0.0,
                           [](double acc, const DecileCost& c) { return acc + c.private_cost + c.government_cost; });
}

}  // namespace bband
