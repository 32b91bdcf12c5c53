#pragma once

#include "bband/types.hpp"

#include <array>
#include <map>
#include <span>
#include <vector>

namespace bband {

/// Annual growth rates for the low/baseline/high adoption scenarios.
struct AdoptionRates
{
    double low = 0.0;
    double baseline = 0.0;
    double high = 0.0;

    double for_scenario(Adoption a) const noexcept;
};

struct AdoptionParams
{
    double base_cell_penetration = 0.7;
    double smartphone_penetration_urban = 0.65;
    double smartphone_penetration_rural = 0.45;
    /// Upper bound on cell penetration; may exceed 1 to allow multi-SIM.
    double penetration_cap = 1.0;
    std::map<IncomeGroup, AdoptionRates> cagr_by_income = default_cagr();

    static std::map<IncomeGroup, AdoptionRates> default_cagr();

    /// Urban and suburban deciles take the urban rate.
    double smartphone_penetration(Settlement s) const noexcept;
};

struct DecileDemand
{
    double smartphone_users = 0.0;  // operator's users in the peak year
    double busy_hour_rate_mbps = 0.0;
    double area_demand_mbps_km2 = 0.0;
    double revenue_pv_usd = 0.0;
};

/// Monthly per-user traffic (GB) to the busy-hour data rate (Mbps).
double per_user_busy_hour_rate(double capacity_gb_month, int days = 30, double busy_hour_share = 0.15);

/// min(base * (1 + cagr)^years_ahead, cap)
double adoption_projection(double base, double cagr, int years_ahead, double cap = 1.0);

/// Cell penetration for each horizon year, first entry at start_year.
std::vector<double> penetration_path(const AdoptionParams& params, IncomeGroup income, const ScenarioSpec& scenario);

/// Peak operator traffic over the horizon divided by decile area (Mbps/km²).
/// `pen_t` and `sp_pen_t` are per-year and must have equal length.
double area_demand(const DecileRecord& decile, std::span<const double> pen_t, std::span<const double> sp_pen_t,
                   double rate_mbps, double market_share);

/// Present value of the operator's ARPU revenue, end-of-year discounting
/// with the first horizon year discounted once.
double decile_revenue_pv(const DecileRecord& decile, std::span<const double> pen_t, std::span<const double> sp_pen_t,
                         double arpu_usd_month, double market_share, double discount_rate);

DecileDemand compute_decile_demand(const DecileRecord& decile, const CountryParams& country,
                                   const AdoptionParams& adoption, const ScenarioSpec& scenario);

}  // namespace bband
