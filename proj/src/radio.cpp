#include "bband/radio.hpp"

#include "bband/csv.hpp"
#include "bband/error.hpp"
#include "bband/parallel.hpp"
#include "bband/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <thread>

namespace bband {

namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;

struct Point
{
    double x = 0.0;
    double y = 0.0;
};

/// Interfering sites of a hexagonal layout (serving site at the origin), in
/// ring order. Lattice basis: u at 30°, v at 90°, both of length isd.
std::vector<Point> interferer_sites(double isd_m, int rings)
{
    const Point u{isd_m * kSqrt3 / 2.0, isd_m / 2.0};
    const Point v{0.0, isd_m};
    std::vector<Point> sites;
    for (int ring = 1; ring <= rings; ++ring) {
        for (int q = -ring; q <= ring; ++q) {
            for (int r = -ring; r <= ring; ++r) {
                const int hex_dist = (std::abs(q) + std::abs(r) + std::abs(q + r)) / 2;
                if (hex_dist == ring) {
                    sites.push_back({q * u.x + r * v.x, q * u.y + r * v.y});
                }
            }
        }
    }
    return sites;
}

/// Receiver position inside the serving hexagon (vertices at 0°, 60°, ...).
Point place_receiver(RandomStream& rng, double isd_m, ReceiverPlacement placement)
{
    const double circumradius = isd_m / kSqrt3;
    if (placement == ReceiverPlacement::CellEdge) {
        return {circumradius, 0.0};
    }
    const double apothem = isd_m / 2.0;
    for (;;) {
        const double x = (2.0 * rng.uniform() - 1.0) * circumradius;
        const double y = (2.0 * rng.uniform() - 1.0) * apothem;
        if (kSqrt3 * std::abs(x) + std::abs(y) <= kSqrt3 * circumradius) {
            return {x, y};
        }
    }
}

class ShadowSampler
{
public:
    explicit ShadowSampler(const SimulationParams& p)
        : m_model(p.shadow_model)
        , m_mu(p.shadow_mu_db)
        , m_sigma(p.shadow_sigma_db)
    {
        if (m_model == ShadowModel::Lognormal && m_sigma > 0.0) {
            const double s2 = std::log1p((m_sigma / m_mu) * (m_sigma / m_mu));
            m_log_sigma = std::sqrt(s2);
            m_log_mean = std::log(m_mu) - s2 / 2.0;
        }
    }

    double draw(RandomStream& rng) const
    {
        if (m_sigma == 0.0) {
            return m_mu;
        }
        const double z = rng.normal();
        if (m_model == ShadowModel::NormalDb) {
            return m_mu + m_sigma * z;
        }
        return std::exp(m_log_mean + m_log_sigma * z);
    }

private:
    ShadowModel m_model;
    double m_mu;
    double m_sigma;
    double m_log_mean = 0.0;
    double m_log_sigma = 0.0;
};

std::uint64_t fnv1a(std::string_view data)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::vector<SpectrumBand> parse_freq_set(const std::string& label, Generation g)
{
    std::vector<SpectrumBand> bands;
    std::stringstream ss(label);
    std::string item;
    while (std::getline(ss, item, '|')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
            throw ValidationError("malformed frequency set '" + label + "'");
        }
        bands.push_back({g, std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1))});
    }
    return bands;
}

}  // namespace

void SimulationParams::validate() const
{
    auto require = [](bool ok, const char* what) {
        if (!ok) {
            throw ValidationError(std::string("simulation parameter out of range: ") + what);
        }
    };
    require(trials >= 100, "trials must be >= 100");
    require(reliability > 0.0 && reliability < 1.0, "reliability must lie in (0, 1)");
    require(sectors_per_site >= 1, "sectors_per_site must be >= 1");
    require(network_load >= 0.0 && network_load <= 1.0, "network_load must lie in [0, 1]");
    require(temperature_k > 0.0, "temperature must be positive");
    require(boltzmann > 0.0, "boltzmann constant must be positive");
    require(min_distance_m > 0.0, "min_distance_m must be positive");
    require(los_breakpoint_m > 0.0, "los_breakpoint_m must be positive");
    require(shadow_sigma_db >= 0.0, "shadow_sigma must be non-negative");
    require(shadow_model != ShadowModel::Lognormal || shadow_sigma_db == 0.0 || shadow_mu_db > 0.0,
            "lognormal shadowing needs shadow_mu > 0");
    require(interferer_rings >= 0, "interferer_rings must be non-negative");
    require(tx_height_m >= 0.0 && rx_height_m >= 0.0, "antenna heights must be non-negative");
}

void SpectralEfficiencyTable::validate() const
{
    if (rows.empty()) {
        throw ValidationError("spectral efficiency table is empty");
    }
    for (const auto& [g, r] : rows) {
        if (r.empty()) {
            throw ValidationError("spectral efficiency table has no rows for " + std::string(to_string(g)));
        }
        for (std::size_t i = 1; i < r.size(); ++i) {
            if (!(r[i].min_sinr_db > r[i - 1].min_sinr_db) || !(r[i].se_bps_hz > r[i - 1].se_bps_hz)) {
                throw ValidationError("spectral efficiency rows for " + std::string(to_string(g)) +
                                      " must be strictly increasing in SINR and SE");
            }
        }
    }
    if (!(mimo_efficiency > 0.0 && mimo_efficiency <= 1.0)) {
        throw ValidationError("mimo_efficiency must lie in (0, 1]");
    }
}

double SpectralEfficiencyTable::mimo_multiplier(Generation g) const
{
    const auto it = mimo_layers.find(g);
    const int layers = it == mimo_layers.end() ? 1 : it->second;
    return layers * mimo_efficiency;
}

SpectralEfficiencyTable SpectralEfficiencyTable::default_table()
{
    SpectralEfficiencyTable t;
    t.rows[Generation::G4] = {
        {-6.7, 0.1523}, {-4.7, 0.2344}, {-2.3, 0.3770}, {0.2, 0.6016},  {2.4, 0.8770},
        {4.3, 1.1758},  {5.9, 1.4766},  {8.1, 1.9141},  {10.3, 2.4063}, {11.7, 2.7305},
        {14.1, 3.3223}, {16.3, 3.9023}, {18.7, 4.5234}, {21.0, 5.1152}, {22.7, 5.5547},
    };
    t.rows[Generation::G5] = {
        {-6.7, 0.1523}, {-2.3, 0.3770}, {2.4, 0.8770},  {5.9, 1.4766},  {8.1, 1.9141},
        {10.3, 2.4063}, {11.7, 2.7305}, {14.1, 3.3223}, {16.3, 3.9023}, {18.7, 4.5234},
        {21.0, 5.1152}, {22.7, 5.5547}, {24.6, 6.2266}, {26.6, 6.9141}, {28.3, 7.4063},
    };
    return t;
}

double CapacityTable::max_density() const
{
    return rows.empty() ? 0.0 : rows.back().site_density;
}

double CapacityTable::max_capacity() const
{
    return rows.empty() ? 0.0 : rows.back().capacity_mbps_km2;
}

double fspl_db(double distance_km, double freq_mhz)
{
    return 20.0 * std::log10(distance_km) + 20.0 * std::log10(freq_mhz) + 32.44;
}

double free_space_path_loss(double distance_km, double freq_mhz, const SimulationParams& params)
{
    if (!(freq_mhz > 0.0)) {
        throw ValidationError("frequency must be positive");
    }
    if (!(distance_km >= 0.0)) {
        throw ValidationError("distance must be non-negative");
    }
    const double d_km = std::max(distance_km, params.min_distance_m / 1000.0);
    double loss = fspl_db(d_km, freq_mhz);
    if (d_km * 1000.0 > params.los_breakpoint_m) {
        loss += params.nlos_excess_loss_db;
    }
    return loss;
}

double received_signal(const SimulationParams& p, double path_loss_db, double shadow_db)
{
    return p.tx_power_dbm + p.tx_gain_db - p.tx_losses_db - path_loss_db - shadow_db + p.rx_gain_db - p.rx_losses_db -
           p.rx_misc_losses_db;
}

double noise_floor(const SimulationParams& p, double bw_hz)
{
    if (!(bw_hz > 0.0)) {
        throw ValidationError("bandwidth must be positive");
    }
    return 10.0 * std::log10(p.boltzmann * p.temperature_k * 1000.0) + p.noise_figure_db + 10.0 * std::log10(bw_hz);
}

double sinr(double signal_dbm, std::span<const double> interferers_dbm, double noise_dbm, double network_load)
{
    auto to_mw = [](double dbm) { return std::pow(10.0, dbm / 10.0); };
    double denominator = to_mw(noise_dbm);
    for (double i : interferers_dbm) {
        denominator += network_load * to_mw(i);
    }
    return 10.0 * std::log10(to_mw(signal_dbm) / denominator);
}

double se_lookup(const SpectralEfficiencyTable& table, double sinr_db, Generation generation)
{
    const auto it = table.rows.find(generation);
    if (it == table.rows.end() || it->second.empty()) {
        throw ValidationError("no spectral efficiency rows for " + std::string(to_string(generation)));
    }
    const auto& rows = it->second;
    // First row whose threshold exceeds the SINR; the one before it applies.
    const auto above = std::upper_bound(rows.begin(), rows.end(), sinr_db,
                                        [](double s, const SeRow& row) { return s < row.min_sinr_db; });
    if (above == rows.begin()) {
        return 0.0;
    }
    return std::prev(above)->se_bps_hz * table.mimo_multiplier(generation);
}

double inter_site_distance_km(double site_density)
{
    if (!(site_density > 0.0)) {
        throw ValidationError("site density must be positive");
    }
    return std::sqrt(2.0 / (kSqrt3 * site_density));
}

double reliability_se(const SimulationParams& params, const SpectralEfficiencyTable& table, const SpectrumBand& band,
                      double site_density)
{
    params.validate();
    if (!(band.bandwidth_mhz > 0.0) || !(band.frequency_mhz > 0.0)) {
        throw ValidationError("band frequency and bandwidth must be positive");
    }
    const double isd_m = inter_site_distance_km(site_density) * 1000.0;
    const auto sites = interferer_sites(isd_m, params.interferer_rings);
    const double height_diff = params.tx_height_m - params.rx_height_m;
    const double noise = noise_floor(params, band.bandwidth_mhz * 1e6);
    const ShadowSampler shadow(params);

    RandomStream rng(derive_stream_seed(params.seed, {static_cast<std::uint64_t>(band.generation),
                                                      bits_of(band.frequency_mhz), bits_of(site_density)}));

    auto path_loss = [&](double dx, double dy) {
        const double slant_m = std::sqrt(dx * dx + dy * dy + height_diff * height_diff);
        return free_space_path_loss(slant_m / 1000.0, band.frequency_mhz, params);
    };

    std::vector<double> se(static_cast<std::size_t>(params.trials));
    std::vector<double> interference(sites.size());
    for (auto& value : se) {
        const Point rx = place_receiver(rng, isd_m, params.placement);
        const double signal = received_signal(params, path_loss(rx.x, rx.y), shadow.draw(rng));
        for (std::size_t j = 0; j < sites.size(); ++j) {
            interference[j] = received_signal(params, path_loss(rx.x - sites[j].x, rx.y - sites[j].y), shadow.draw(rng));
        }
        value = se_lookup(table, sinr(signal, interference, noise, params.network_load), band.generation);
    }

    // Value met or exceeded in `reliability` of trials.
    const auto k = static_cast<std::size_t>(std::floor((1.0 - params.reliability) * params.trials + 1e-9));
    std::nth_element(se.begin(), se.begin() + static_cast<std::ptrdiff_t>(k), se.end());
    return se[k];
}

double area_capacity(std::span<const double> se_per_band, std::span<const SpectrumBand> bands, int sectors,
                     double site_density)
{
    if (se_per_band.size() != bands.size()) {
        throw ValidationError("spectral efficiency and band lists differ in length");
    }
    double total = 0.0;
    for (std::size_t f = 0; f < bands.size(); ++f) {
        total += se_per_band[f] * bands[f].bandwidth_mhz;
    }
    return total * sectors * site_density;
}

double simulate_density(const SimulationParams& params, const SpectralEfficiencyTable& table,
                        std::span<const SpectrumBand> freq_set, double site_density)
{
    if (!(site_density > 0.0)) {
        throw ValidationError("site density must be positive");
    }
    std::vector<double> se;
    se.reserve(freq_set.size());
    for (const auto& band : freq_set) {
        se.push_back(reliability_se(params, table, band, site_density));
    }
    return area_capacity(se, freq_set, params.sectors_per_site, site_density);
}

void isotonic_clip(std::vector<CapacityRow>& rows)
{
    for (std::size_t k = 1; k < rows.size(); ++k) {
        rows[k].capacity_mbps_km2 = std::max(rows[k].capacity_mbps_km2, rows[k - 1].capacity_mbps_km2);
    }
}

CapacityTable build_capacity_table(const SimulationParams& params, const SpectralEfficiencyTable& table,
                                   std::span<const SpectrumBand> freq_set, std::span<const double> density_grid,
                                   int jobs)
{
    params.validate();
    table.validate();
    if (freq_set.empty()) {
        throw ValidationError("frequency set is empty");
    }
    const auto generation = freq_set.front().generation;
    for (const auto& b : freq_set) {
        if (b.generation != generation) {
            throw ValidationError("frequency set mixes generations");
        }
    }
    if (density_grid.size() < 8) {
        throw ValidationError("density grid needs at least 8 points");
    }
    for (std::size_t i = 0; i < density_grid.size(); ++i) {
        if (!(density_grid[i] > 0.0) || (i > 0 && !(density_grid[i] > density_grid[i - 1]))) {
            throw ValidationError("density grid must be positive and strictly increasing");
        }
    }

    const auto n_bands = freq_set.size();
    std::vector<double> se(density_grid.size() * n_bands);
    parallel_for(se.size(), jobs, [&](std::size_t task) {
        const auto point = task / n_bands;
        const auto band = task % n_bands;
        se[task] = reliability_se(params, table, freq_set[band], density_grid[point]);
    });

    CapacityTable out;
    out.generation = generation;
    out.freq_set.assign(freq_set.begin(), freq_set.end());
    for (std::size_t p = 0; p < density_grid.size(); ++p) {
        const std::span<const double> row_se(se.data() + p * n_bands, n_bands);
        out.rows.push_back({density_grid[p], area_capacity(row_se, freq_set, params.sectors_per_site, density_grid[p])});
    }
    isotonic_clip(out.rows);
    return out;
}

DensityRequirement required_density(const CapacityTable& table, double demand)
{
    if (table.rows.empty()) {
        throw ValidationError("capacity table is empty");
    }
    if (!(demand >= 0.0)) {
        throw ValidationError("demand must be non-negative");
    }
    if (demand == 0.0) {
        return {};
    }
    const auto& rows = table.rows;
    const auto hit = std::find_if(rows.begin(), rows.end(),
                                  [demand](const CapacityRow& r) { return r.capacity_mbps_km2 >= demand; });
    if (hit == rows.end()) {
        return {table.max_density(), true};
    }
    const double d_lo = hit == rows.begin() ? 0.0 : std::prev(hit)->site_density;
    const double c_lo = hit == rows.begin() ? 0.0 : std::prev(hit)->capacity_mbps_km2;
    // c_lo < demand <= hit->capacity, so the bracket has positive width.
    const double frac = (demand - c_lo) / (hit->capacity_mbps_km2 - c_lo);
    return {d_lo + frac * (hit->site_density - d_lo), false};
}

std::string freq_set_label(std::span<const SpectrumBand> bands)
{
    std::string out;
    char buf[64];
    for (const auto& b : bands) {
        if (!out.empty()) {
            out += '|';
        }
        std::snprintf(buf, sizeof buf, "%g:%g", b.frequency_mhz, b.bandwidth_mhz);
        out += buf;
    }
    return out;
}

std::uint64_t capacity_table_key(const SimulationParams& p, const SpectralEfficiencyTable& table,
                                 Generation generation, std::span<const SpectrumBand> freq_set,
                                 std::span<const double> density_grid)
{
    std::string s = "capacity-table-v1;";
    for (double v : {p.tx_power_dbm, p.tx_gain_db, p.tx_losses_db, p.rx_gain_db, p.rx_losses_db, p.rx_misc_losses_db,
                     p.tx_height_m, p.rx_height_m, p.network_load, p.los_breakpoint_m, p.nlos_excess_loss_db,
                     p.min_distance_m, p.shadow_mu_db, p.shadow_sigma_db, p.temperature_k, p.noise_figure_db,
                     p.boltzmann, p.reliability}) {
        s += format_exact(v) + ",";
    }
    s += std::to_string(p.sectors_per_site) + "," + std::to_string(p.trials) + "," +
         std::to_string(p.interferer_rings) + "," + std::to_string(static_cast<int>(p.shadow_model)) + "," +
         std::to_string(static_cast<int>(p.placement)) + "," + std::to_string(p.seed) + ";";
    s += std::string(to_string(generation)) + ";";
    const auto rows = table.rows.find(generation);
    if (rows != table.rows.end()) {
        for (const auto& r : rows->second) {
            s += format_exact(r.min_sinr_db) + ":" + format_exact(r.se_bps_hz) + ",";
        }
    }
    s += format_exact(table.mimo_multiplier(generation)) + ";";
    for (const auto& b : freq_set) {
        s += format_exact(b.frequency_mhz) + ":" + format_exact(b.bandwidth_mhz) + ",";
    }
    s += ";";
    for (double d : density_grid) {
        s += format_exact(d) + ",";
    }
    return fnv1a(s);
}

void write_capacity_tables_csv(const std::filesystem::path& path, std::span<const CapacityTable> tables)
{
    CsvWriter out(path);
    out.row({"generation", "freq_set", "site_density", "capacity_mbps_km2"});
    for (const auto& t : tables) {
        const auto label = freq_set_label(t.freq_set);
        for (const auto& r : t.rows) {
            out.row({std::string(to_string(t.generation)), label, format_exact(r.site_density),
                     format_exact(r.capacity_mbps_km2)});
        }
    }
    out.close();
}

std::vector<CapacityTable> read_capacity_tables_csv(const std::filesystem::path& path)
{
    const auto csv = read_csv(path);
    const std::vector<std::string> expected{"generation", "freq_set", "site_density", "capacity_mbps_km2"};
    if (csv.header != expected) {
        throw ValidationError(path.string() + ": unexpected capacity table header");
    }
    std::vector<CapacityTable> tables;
    for (const auto& row : csv.rows) {
        const auto g = parse_generation(row[0]);
        const auto bands = parse_freq_set(row[1], g);
        if (tables.empty() || tables.back().generation != g || tables.back().freq_set != bands) {
            tables.push_back({g, bands, {}});
        }
        tables.back().rows.push_back({std::stod(row[2]), std::stod(row[3])});
    }
    return tables;
}

CapacityTableCache::CapacityTableCache(std::filesystem::path dir)
    : m_dir(std::move(dir))
{
}

std::filesystem::path CapacityTableCache::resolve_dir(const std::filesystem::path& fallback)
{
    if (const char* env = std::getenv("BBAND_SIM_CACHE"); env != nullptr && *env != '\0') {
        return env;
    }
    return fallback;
}

std::filesystem::path CapacityTableCache::path_for(std::uint64_t key) const
{
    char name[48];
    std::snprintf(name, sizeof name, "capacity_%016llx.csv", static_cast<unsigned long long>(key));
    return m_dir / name;
}

std::optional<CapacityTable> CapacityTableCache::load(std::uint64_t key) const
{
    const auto path = path_for(key);
    if (!std::filesystem::exists(path)) {
        return std::nullopt;
    }
    try {
        auto tables = read_capacity_tables_csv(path);
        if (tables.size() == 1) {
            return std::move(tables.front());
        }
    } catch (const std::exception&) {
        // Unreadable cache entries are recomputed.
    }
    return std::nullopt;
}

void CapacityTableCache::store(std::uint64_t key, const CapacityTable& table) const
{
    std::error_code ec;
    std::filesystem::create_directories(m_dir, ec);
    if (ec) {
        throw IoError("cannot create cache directory " + m_dir.string() + ": " + ec.message());
    }
    const auto final_path = path_for(key);
    auto tmp = final_path;
    tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
    write_capacity_tables_csv(tmp, std::span(&table, 1));
    std::filesystem::rename(tmp, final_path, ec);
    if (ec) {
        throw IoError("cannot move cache entry into place at " + final_path.string() + ": " + ec.message());
    }
}

}  // namespace bband
