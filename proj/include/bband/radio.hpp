#pragma once

#include "bband/types.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bband {

/// How per-path shadow fading is drawn.
enum class ShadowModel {
    /// Lognormal variate whose arithmetic mean and std-dev (in dB) are shadow_mu/shadow_sigma.
    Lognormal,
    /// Gaussian in dB: shadow_mu + shadow_sigma * z.
    NormalDb,
};

/// Where each Monte Carlo trial places the receiver.
enum class ReceiverPlacement {
    Uniform,   // uniformly inside the serving hexagon
    CellEdge,  // fixed at a hexagon vertex; test fixture for closed-form checks
};

/// Link-budget and Monte Carlo settings. Defaults follow the macrocell
/// parameter set (40 dBm, 16 dBi, 3 sectors, 500 m LoS breakpoint, ...).
struct SimulationParams
{
    double tx_power_dbm = 40.0;
    double tx_gain_db = 16.0;
    double tx_losses_db = 1.0;
    double rx_gain_db = 0.0;
    double rx_losses_db = 4.0;
    double rx_misc_losses_db = 4.0;
    double tx_height_m = 30.0;
    double rx_height_m = 1.5;
    int sectors_per_site = 3;
    double network_load = 1.0;
    double los_breakpoint_m = 500.0;
    double nlos_excess_loss_db = 12.0;
    double min_distance_m = 10.0;
    double shadow_mu_db = 2.0;
    double shadow_sigma_db = 10.0;
    ShadowModel shadow_model = ShadowModel::Lognormal;
    double temperature_k = 290.0;
    double noise_figure_db = 1.5;
    double boltzmann = 1.380649e-23;
    double reliability = 0.90;
    int trials = 10000;
    int interferer_rings = 1;
    ReceiverPlacement placement = ReceiverPlacement::Uniform;
    std::uint64_t seed = 42;

    /// Throws ValidationError on out-of-range settings.
    void validate() const;
};

struct SeRow
{
    double min_sinr_db = 0.0;
    double se_bps_hz = 0.0;
};

/// Step-function SINR→spectral-efficiency map per generation, plus the
/// MIMO layer count and efficiency applied on lookup.
struct SpectralEfficiencyTable
{
    std::map<Generation, std::vector<SeRow>> rows;
    std::map<Generation, int> mimo_layers{{Generation::G4, 2}, {Generation::G5, 4}};
    double mimo_efficiency = 0.85;

    void validate() const;
    double mimo_multiplier(Generation g) const;

    /// CQI-derived defaults (4-bit CQI, 64QAM for 4G and 256QAM for 5G).
    static SpectralEfficiencyTable default_table();
};

struct CapacityRow
{
    double site_density = 0.0;       // sites/km²
    double capacity_mbps_km2 = 0.0;
};

struct CapacityTable
{
    Generation generation = Generation::G4;
    std::vector<SpectrumBand> freq_set;
    std::vector<CapacityRow> rows;

    double max_density() const;
    double max_capacity() const;
};

struct DensityRequirement
{
    double site_density = 0.0;
    bool unserviceable = false;
};

/// Free-space loss in dB, no LoS handling: 20log10(d_km) + 20log10(f_MHz) + 32.44.
double fspl_db(double distance_km, double freq_mhz);

/// FSPL with distance clamped to params.min_distance_m and the NLoS excess
/// added strictly beyond the LoS breakpoint.
double free_space_path_loss(double distance_km, double freq_mhz, const SimulationParams& params = {});

double received_signal(const SimulationParams& params, double path_loss_db, double shadow_db);

double noise_floor(const SimulationParams& params, double bw_hz);

/// SINR (dB) from dBm powers; each interferer is scaled by network_load in the linear domain.
double sinr(double signal_dbm, std::span<const double> interferers_dbm, double noise_dbm, double network_load = 1.0);

/// Step lookup times the generation's MIMO multiplier; 0 below the lowest row.
double se_lookup(const SpectralEfficiencyTable& table, double sinr_db, Generation generation);

/// Hexagonal inter-site distance (km) for a site density (sites/km²).
double inter_site_distance_km(double site_density);

/// Spectral efficiency met with probability params.reliability for one band.
double reliability_se(const SimulationParams& params, const SpectralEfficiencyTable& table, const SpectrumBand& band,
                      double site_density);

/// sum_f SE_f * BW_f(MHz) * sectors * density
double area_capacity(std::span<const double> se_per_band, std::span<const SpectrumBand> bands, int sectors,
                     double site_density);

double simulate_density(const SimulationParams& params, const SpectralEfficiencyTable& table,
                        std::span<const SpectrumBand> freq_set, double site_density);

/// Simulates every grid point and applies a running-max clip so capacity is
/// non-decreasing in density. `jobs` only affects wall time.
CapacityTable build_capacity_table(const SimulationParams& params, const SpectralEfficiencyTable& table,
                                   std::span<const SpectrumBand> freq_set, std::span<const double> density_grid,
                                   int jobs = 1);

/// In-place running max over rows.
void isotonic_clip(std::vector<CapacityRow>& rows);

/// Smallest density meeting the demand, interpolating linearly between
/// bracketing rows (the origin is the implicit row below the first).
DensityRequirement required_density(const CapacityTable& table, double demand_mbps_km2);

/// Band list rendered as "800:10|1800:10".
std::string freq_set_label(std::span<const SpectrumBand> bands);

/// 64-bit content hash over everything that determines a table's values.
std::uint64_t capacity_table_key(const SimulationParams& params, const SpectralEfficiencyTable& table,
                                 Generation generation, std::span<const SpectrumBand> freq_set,
                                 std::span<const double> density_grid);

void write_capacity_tables_csv(const std::filesystem::path& path, std::span<const CapacityTable> tables);
std::vector<CapacityTable> read_capacity_tables_csv(const std::filesystem::path& path);

/// On-disk table cache, one CSV per content hash.
class CapacityTableCache
{
public:
    explicit CapacityTableCache(std::filesystem::path dir);

    /// Directory from BBAND_SIM_CACHE, else `fallback`.
    static std::filesystem::path resolve_dir(const std::filesystem::path& fallback);

    const std::filesystem::path& dir() const noexcept { return m_dir; }

    std::optional<CapacityTable> load(std::uint64_t key) const;
    void store(std::uint64_t key, const CapacityTable& table) const;

private:
    std::filesystem::path path_for(std::uint64_t key) const;

    std::filesystem::path m_dir;
};

}  // namespace bband
