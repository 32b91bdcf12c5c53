#pragma once

#include "bband/dimensioning.hpp"
#include "bband/types.hpp"

#include <span>
#include <vector>

namespace bband {

/// Low / baseline / high values of one fiscal lever.
struct PolicyLevels
{
    double low = 0.0;
    double baseline = 0.0;
    double high = 0.0;
};

enum class TaxBase { Revenue, Profit };

std::string_view to_string(TaxBase v);
TaxBase parse_tax_base(std::string_view s);

struct CostInputs
{
    // USD per site
    double equipment = 40000.0;
    double backhaul_wireless = 20000.0;
    double backhaul_fiber = 40000.0;
    double civils = 30000.0;
    double core = 10000.0;

    double admin_share = 0.10;    // of network cost
    double profit_margin = 0.20;  // of network cost
    PolicyLevels tax_rate{0.10, 0.25, 0.40};
    PolicyLevels spectrum_fee{0.01, 0.02, 0.04};  // USD per MHz per capita
    TaxBase tax_base = TaxBase::Revenue;

    void validate() const;

    double tax_rate_for(Policy p) const noexcept;
    double spectrum_fee_for(Policy p) const noexcept;
};

enum class SiteKind { New, Upgrade };

struct SiteCostComponents
{
    double equipment = 0.0;
    double backhaul = 0.0;
    double civils = 0.0;
    double core = 0.0;

    /// Greenfield sites pay all four; upgrades reuse the tower and skip civils.
    double network_cost(SiteKind kind) const noexcept;
};

SiteCostComponents site_components(Backhaul backhaul, const CostInputs& costs);

double site_network_cost(SiteKind kind, Backhaul backhaul, const CostInputs& costs);

/// Operator's share of per-site components under a sharing model. Passive
/// splits civils, active splits civils, equipment and backhaul; SRN is
/// active in rural deciles and baseline elsewhere. Core is never split.
SiteCostComponents apply_sharing(const SiteCostComponents& components, Sharing sharing, int n_sharers,
                                 Settlement settlement);

/// new_sites * new cost + upgraded_sites * upgrade cost.
double decile_network_cost(const SiteRequirement& sites, const SiteCostComponents& components);

struct DecileCost
{
    double network = 0.0;
    double administration = 0.0;
    double spectrum = 0.0;
    double tax = 0.0;
    double profit = 0.0;
    double private_cost = 0.0;
    double subsidy = 0.0;
    double government_cost = 0.0;
    double financial_cost = 0.0;
    double revenue_pv = 0.0;
};

/// Private-side cost of a decile. `spectrum_mhz_pop` is MHz held times decile
/// population, the base of the per-capita spectrum fee. Subsidy is left at
/// zero; government and financial cost are filled as if unsubsidised.
DecileCost private_cost(double network, const CostInputs& costs, Policy policy, double revenue_pv,
                        double spectrum_mhz_pop = 0.0);

/// Pools surpluses (revenue above private cost) and covers deficits starting
/// from the smallest. Whatever deficit remains becomes that decile's subsidy;
/// government and financial cost are recomputed.
void cross_subsidize(std::span<DecileCost> decile_costs);

/// Sum of private plus government cost.
double financial_cost_total(std::span<const DecileCost> decile_costs);

}  // namespace bband
