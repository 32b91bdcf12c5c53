#include "bband/dimensioning.hpp"

#include "bband/error.hpp"

#include <algorithm>
#include <cmath>

namespace bband {

std::int64_t ceil_sites(double x)
{
    const double nearest = std::round(x);
    if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, std::abs(x))) {
        return static_cast<std::int64_t>(nearest);
    }
    return static_cast<std::int64_t>(std::ceil(x));
}

SiteRequirement required_sites(const DecileRecord& decile, double demand, const CapacityTable& table,
                               bool upgrade_all_existing)
{
    SiteRequirement req;
    req.country_iso3 = decile.country_iso3;
    req.decile_index = decile.decile_index;
    req.existing_sites = decile.existing_sites;
    if (decile.population == 0) {
        return req;
    }
    if (!(decile.area_km2 > 0.0)) {
        throw ValidationError("decile " + std::to_string(decile.decile_index) + " of " + decile.country_iso3 +
                              " has population but zero area");
    }
    const auto density = required_density(table, demand);
    req.unserviceable = density.unserviceable;
    req.total_sites = ceil_sites(density.site_density * decile.area_km2);
    req.new_sites = std::max<std::int64_t>(0, req.total_sites - req.existing_sites);
    req.upgraded_sites = upgrade_all_existing ? req.existing_sites : std::min(req.existing_sites, req.total_sites);
    return req;
}

SiteTotals aggregate_country(std::span<const SiteRequirement> reqs)
{
    SiteTotals totals;
    for (const auto& r : reqs) {
        if (r.country_iso3 != reqs.front().country_iso3) {
            throw ValidationError("aggregate_country given deciles from " + reqs.front().country_iso3 + " and " +
                                  r.country_iso3);
        }
        totals.total_sites += r.total_sites;
        totals.existing_sites += r.existing_sites;
        totals.new_sites += r.new_sites;
        totals.upgraded_sites += r.upgraded_sites;
        totals.unserviceable_deciles += r.unserviceable ? 1 : 0;
    }
    return totals;
}

}  // namespace bband
