#pragma once

#include "bband/cost.hpp"
#include "bband/demand.hpp"
#include "bband/energy.hpp"
#include "bband/radio.hpp"
#include "bband/scenario.hpp"
#include "bband/types.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace bband {

/// Bit-exact CSV headers of the input files.
namespace schema {
inline const std::vector<std::string> kRegions{"region_id", "country_iso3", "population", "area_km2", "existing_sites"};
inline const std::vector<std::string> kCountries{"country_iso3",  "income_group", "n_major_operators",
                                                 "arpu_low",      "arpu_base",    "arpu_high",
                                                 "on_grid_share", "grid_carbon_intensity_kg_kwh"};
inline const std::vector<std::string> kSpectrum{"country_iso3", "generation", "frequency_mhz", "bandwidth_mhz"};
inline const std::vector<std::string> kEnergyMix{"region", "year", "source", "share"};
inline const std::vector<std::string> kEmissionFactors{"source", "co2_kg_kwh", "nox_g_kwh", "sox_g_kwh", "pm10_g_kwh"};
inline const std::vector<std::string> kSeTable{"generation", "min_sinr_db", "se_bps_hz"};
}  // namespace schema

struct RunAxes
{
    StrategySpace strategies;
    ScenarioSpace scenarios;
};

/// Everything parsed from the config document.
struct ModelConfig
{
    CostInputs cost;
    SimulationParams simulation;
    std::vector<double> density_grid = default_density_grid();
    /// Frequency sets for the standalone `tables` command.
    std::map<Generation, std::vector<SpectrumBand>> frequency_sets = default_frequency_sets();
    std::map<Generation, int> mimo_layers{{Generation::G4, 2}, {Generation::G5, 4}};
    double mimo_efficiency = 0.85;
    /// Optional SE table for `tables`, relative to the config file.
    std::string se_table_path;
    EnergyParams energy;
    AdoptionParams adoption;
    SettlementThresholds settlement;
    RunAxes axes;

    static std::vector<double> default_density_grid();
    static std::map<Generation, std::vector<SpectrumBand>> default_frequency_sets();
};

/// Validated inputs for one pipeline run. Immutable once loaded.
struct InputBundle
{
    std::vector<RegionRecord> regions;
    std::map<std::string, CountryParams> countries;
    EnergyMixForecast energy_mix;
    EmissionFactors emission_factors;
    SpectralEfficiencyTable se_table;
    ModelConfig config;
};

/// Normalises the "axes" and "scenario" sections: defaults for omitted axes,
/// ValidationError for unknown values or explicitly empty axes.
RunAxes validate_axes(const nlohmann::json& config);

/// Parses a config document. Unknown keys and missing mandatory cost keys are errors.
ModelConfig parse_config(const nlohmann::json& doc);
ModelConfig load_config(const std::filesystem::path& config_path);
nlohmann::json config_to_json(const ModelConfig& config);

SpectralEfficiencyTable load_se_table(const std::filesystem::path& path);

/// Reads and cross-checks every input file. All problems are gathered and
/// thrown together as a ValidationReport (file:line context on each).
InputBundle load_bundle(const std::filesystem::path& data_dir, const std::filesystem::path& config_path);

/// Writes the bundle back out in the input formats (exact number formatting).
void write_bundle(const InputBundle& bundle, const std::filesystem::path& data_dir,
                  const std::filesystem::path& config_path);

}  // namespace bband
