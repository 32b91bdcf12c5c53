#include "bband/types.hpp"

#include "bband/error.hpp"

#include <algorithm>
#include <cstdio>

namespace bband {

namespace {

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view s, const std::array<Enum, N>& values, std::string_view what)
{
    for (auto v : values) {
        if (to_string(v) == s) {
            return v;
        }
    }
    std::string allowed;
    for (auto v : values) {
        if (!allowed.empty()) {
            allowed += ", ";
        }
        allowed += to_string(v);
    }
    throw ValidationError("unknown " + std::string(what) + " '" + std::string(s) + "' (expected one of {" + allowed +
                          "})");
}

}  // namespace

ValidationReport::ValidationReport(std::vector<std::string> problems)
    : ValidationError([&] {
        std::string msg = std::to_string(problems.size()) + " validation problem(s)";
        for (const auto& p : problems) {
            msg += "\n  " + p;
        }
        return msg;
    }())
    , m_problems(std::move(problems))
{
}

std::string_view to_string(Generation v)
{
    return v == Generation::G4 ? "4G" : "5G";
}

std::string_view to_string(Backhaul v)
{
    return v == Backhaul::Wireless ? "wireless" : "fiber";
}

std::string_view to_string(Sharing v)
{
    switch (v) {
    case Sharing::Baseline: return "baseline";
    case Sharing::Passive: return "passive";
    case Sharing::Active: return "active";
    case Sharing::Srn: return "srn";
    }
    return "?";
}

std::string_view to_string(Policy v)
{
    switch (v) {
    case Policy::Baseline: return "baseline";
    case Policy::LowTax: return "low_tax";
    case Policy::HighTax: return "high_tax";
    case Policy::LowSpectrum: return "low_spectrum";
    case Policy::HighSpectrum: return "high_spectrum";
    }
    return "?";
}

std::string_view to_string(EnergyStrategy v)
{
    return v == EnergyStrategy::Baseline ? "baseline" : "renewables";
}

std::string_view to_string(Adoption v)
{
    switch (v) {
    case Adoption::Low: return "low";
    case Adoption::Baseline: return "baseline";
    case Adoption::High: return "high";
    }
    return "?";
}

std::string_view to_string(Settlement v)
{
    switch (v) {
    case Settlement::Urban: return "urban";
    case Settlement::Suburban: return "suburban";
    case Settlement::Rural: return "rural";
    }
    return "?";
}

std::string_view to_string(IncomeGroup v)
{
    switch (v) {
    case IncomeGroup::LIC: return "LIC";
    case IncomeGroup::LMC: return "LMC";
    case IncomeGroup::UMC: return "UMC";
    case IncomeGroup::HIC: return "HIC";
    }
    return "?";
}

Generation parse_generation(std::string_view s) { return parse_enum(s, kGenerations, "generation"); }
Backhaul parse_backhaul(std::string_view s) { return parse_enum(s, kBackhauls, "backhaul"); }
Sharing parse_sharing(std::string_view s) { return parse_enum(s, kSharings, "sharing"); }
Policy parse_policy(std::string_view s) { return parse_enum(s, kPolicies, "policy"); }
EnergyStrategy parse_energy_strategy(std::string_view s) { return parse_enum(s, kEnergyStrategies, "energy strategy"); }
Adoption parse_adoption(std::string_view s) { return parse_enum(s, kAdoptions, "adoption"); }
Settlement parse_settlement(std::string_view s) { return parse_enum(s, kSettlements, "settlement"); }
IncomeGroup parse_income_group(std::string_view s) { return parse_enum(s, kIncomeGroups, "income group"); }

std::vector<SpectrumBand> CountryParams::bands(Generation g) const
{
    std::vector<SpectrumBand> out;
    std::copy_if(spectrum.begin(), spectrum.end(), std::back_inserter(out),
                 [g](const SpectrumBand& b) { return b.generation == g; });
    std::sort(out.begin(), out.end());
    return out;
}

double CountryParams::arpu_for(Settlement s) const noexcept
{
    switch (s) {
    case Settlement::Urban: return arpu_high;
    case Settlement::Suburban: return arpu_base;
    case Settlement::Rural: return arpu_low;
    }
    return arpu_low;
}

std::string technology_label(Generation g, Backhaul b)
{
    return std::string(to_string(g)) + "-" + std::string(to_string(b));
}

std::string run_key(const RunSpec& run)
{
    char capacity[32];
    std::snprintf(capacity, sizeof capacity, "%g", run.scenario.capacity_gb_month);
    const auto& s = run.strategy;
    std::string key;
    for (auto part : {to_string(s.generation), to_string(s.backhaul), to_string(s.sharing), to_string(s.policy),
                      to_string(s.energy_strategy), std::string_view(capacity), to_string(run.scenario.adoption)}) {
        if (!key.empty()) {
            key += '|';
        }
        key += part;
    }
    return key;
}

}  // namespace bband
