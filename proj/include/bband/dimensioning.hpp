#pragma once

#include "bband/radio.hpp"
#include "bband/types.hpp"

#include <cstdint>
#include <span>
#include <string>

namespace bband {

struct SiteRequirement
{
    std::string country_iso3;
    int decile_index = 0;
    std::int64_t total_sites = 0;
    std::int64_t existing_sites = 0;
    std::int64_t new_sites = 0;
    std::int64_t upgraded_sites = 0;
    bool unserviceable = false;
};

struct SiteTotals
{
    std::int64_t total_sites = 0;
    std::int64_t existing_sites = 0;
    std::int64_t new_sites = 0;
    std::int64_t upgraded_sites = 0;
    int unserviceable_deciles = 0;
};

/// ceil(x) that ignores float noise within 1e-9 relative of an integer.
std::int64_t ceil_sites(double x);

/// Total, greenfield and upgraded sites for one decile. When
/// `upgrade_all_existing` is set every existing site is upgraded regardless
/// of need (technology swap); otherwise upgrades are min(existing, total).
SiteRequirement required_sites(const DecileRecord& decile, double demand_mbps_km2, const CapacityTable& table,
                               bool upgrade_all_existing = false);

/// Element-wise sums; throws ValidationError when countries are mixed.
SiteTotals aggregate_country(std::span<const SiteRequirement> reqs);

}  // namespace bband
