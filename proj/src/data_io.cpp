#include "bband/data_io.hpp"

#include "bband/csv.hpp"
#include "bband/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>

namespace bband {

using nlohmann::json;

namespace {

using Problems = std::vector<std::string>;

/// Reads keys out of one JSON object section, recording problems instead of throwing.
class Section
{
public:
    Section(const json* obj, std::string name, Problems& problems)
        : m_obj(obj)
        , m_name(std::move(name))
        , m_problems(problems)
    {
        if (m_obj != nullptr && !m_obj->is_object()) {
            fail("", "must be an object");
            m_obj = nullptr;
        }
    }

    bool present() const noexcept { return m_obj != nullptr; }

    const json* get(const std::string& key, bool required)
    {
        m_known.insert(key);
        if (m_obj == nullptr || !m_obj->contains(key)) {
            if (required) {
                fail(key, "is required");
            }
            return nullptr;
        }
        return &m_obj->at(key);
    }

    void number(const std::string& key, double& out, bool required = false)
    {
        if (const auto* v = get(key, required)) {
            if (!v->is_number()) {
                fail(key, "must be a number");
            } else {
                out = v->get<double>();
            }
        }
    }

    template <typename Int>
    void integer(const std::string& key, Int& out, bool required = false)
    {
        if (const auto* v = get(key, required)) {
            if (!v->is_number_integer()) {
                fail(key, "must be an integer");
            } else {
                out = v->get<Int>();
            }
        }
    }

    void string(const std::string& key, std::string& out, bool required = false)
    {
        if (const auto* v = get(key, required)) {
            if (!v->is_string()) {
                fail(key, "must be a string");
            } else {
                out = v->get<std::string>();
            }
        }
    }

    /// Reports keys that were never asked for.
    void finish()
    {
        if (m_obj == nullptr) {
            return;
        }
        for (const auto& [key, _] : m_obj->items()) {
            if (!m_known.contains(key)) {
                fail(key, "is not a recognised key");
            }
        }
    }

    void fail(const std::string& key, const std::string& what)
    {
        m_problems.push_back("config: " + m_name + (key.empty() ? "" : "." + key) + " " + what);
    }

private:
    const json* m_obj;
    std::string m_name;
    Problems& m_problems;
    std::set<std::string> m_known;
};

const json* section_ptr(const json& doc, const char* name)
{
    return doc.is_object() && doc.contains(name) ? &doc.at(name) : nullptr;
}

template <typename Enum, typename Parse>
void read_enum_axis(Section& s, const std::string& key, std::vector<Enum>& out, Parse parse)
{
    const auto* v = s.get(key, false);
    if (v == nullptr) {
        return;
    }
    if (!v->is_array()) {
        s.fail(key, "must be an array");
        return;
    }
    if (v->empty()) {
        s.fail(key, "must not be empty");
        return;
    }
    std::vector<Enum> values;
    for (const auto& item : *v) {
        if (!item.is_string()) {
            s.fail(key, "entries must be strings");
            return;
        }
        try {
            values.push_back(parse(item.get<std::string>()));
        } catch (const ValidationError& e) {
            s.fail(key, e.what());
            return;
        }
    }
    out = std::move(values);
}

RunAxes read_axes(const json& doc, Problems& problems)
{
    RunAxes axes;
    Section a(section_ptr(doc, "axes"), "axes", problems);
    read_enum_axis(a, "generation", axes.strategies.generations, parse_generation);
    read_enum_axis(a, "backhaul", axes.strategies.backhauls, parse_backhaul);
    read_enum_axis(a, "sharing", axes.strategies.sharings, parse_sharing);
    read_enum_axis(a, "policy", axes.strategies.policies, parse_policy);
    read_enum_axis(a, "energy_strategy", axes.strategies.energy_strategies, parse_energy_strategy);
    read_enum_axis(a, "adoption", axes.scenarios.adoptions, parse_adoption);
    if (const auto* v = a.get("capacity_gb_month", false)) {
        if (!v->is_array() || v->empty()) {
            a.fail("capacity_gb_month", "must be a non-empty array");
        } else {
            std::vector<double> caps;
            for (const auto& item : *v) {
                if (!item.is_number() || !(item.get<double>() > 0.0)) {
                    a.fail("capacity_gb_month", "entries must be positive numbers");
                    caps.clear();
                    break;
                }
                caps.push_back(item.get<double>());
            }
            if (!caps.empty()) {
                axes.scenarios.capacities_gb_month = std::move(caps);
            }
        }
    }
    a.finish();

    Section sc(section_ptr(doc, "scenario"), "scenario", problems);
    sc.integer("start_year", axes.scenarios.start_year);
    sc.integer("end_year", axes.scenarios.end_year);
    sc.number("discount_rate", axes.scenarios.discount_rate);
    sc.finish();
    if (axes.scenarios.end_year < axes.scenarios.start_year) {
        problems.push_back("config: scenario.end_year precedes scenario.start_year");
    }
    if (!(axes.scenarios.discount_rate >= 0.0)) {
        problems.push_back("config: scenario.discount_rate must be non-negative");
    }
    return axes;
}

std::vector<SpectrumBand> read_band_list(Section& s, const std::string& key, const json& v, Generation g)
{
    std::vector<SpectrumBand> bands;
    if (!v.is_array() || v.empty()) {
        s.fail(key, "must be a non-empty array of [frequency_mhz, bandwidth_mhz]");
        return bands;
    }
    for (const auto& pair : v) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number() ||
            !(pair[0].get<double>() > 0.0) || !(pair[1].get<double>() > 0.0)) {
            s.fail(key, "entries must be [frequency_mhz, bandwidth_mhz] with positive values");
            return {};
        }
        bands.push_back({g, pair[0].get<double>(), pair[1].get<double>()});
    }
    return bands;
}

ModelConfig parse_config_collect(const json& doc, Problems& problems)
{
    ModelConfig cfg;
    if (!doc.is_object()) {
        problems.push_back("config: document must be a JSON object");
        return cfg;
    }
    for (const auto& [key, _] : doc.items()) {
        static const std::set<std::string> sections{"cost",       "simulation", "energy", "adoption",
                                                    "settlement", "axes",       "scenario"};
        if (!sections.contains(key)) {
            problems.push_back("config: unknown section '" + key + "'");
        }
    }

    {
        Section c(section_ptr(doc, "cost"), "cost", problems);
        if (!c.present()) {
            problems.push_back("config: cost section is required");
        }
        auto& k = cfg.cost;
        c.number("equipment_usd", k.equipment, true);
        c.number("backhaul_wireless_usd", k.backhaul_wireless, true);
        c.number("backhaul_fiber_usd", k.backhaul_fiber, true);
        c.number("civils_usd", k.civils, true);
        c.number("core_usd", k.core, true);
        c.number("admin_share", k.admin_share, true);
        c.number("profit_margin", k.profit_margin, true);
        c.number("tax_rate_low", k.tax_rate.low, true);
        c.number("tax_rate_baseline", k.tax_rate.baseline, true);
        c.number("tax_rate_high", k.tax_rate.high, true);
        c.number("spectrum_fee_low_usd_mhz_pop", k.spectrum_fee.low, true);
        c.number("spectrum_fee_baseline_usd_mhz_pop", k.spectrum_fee.baseline, true);
        c.number("spectrum_fee_high_usd_mhz_pop", k.spectrum_fee.high, true);
        std::string tax_base = std::string(to_string(k.tax_base));
        c.string("tax_base", tax_base, true);
        try {
            k.tax_base = parse_tax_base(tax_base);
        } catch (const ValidationError& e) {
            c.fail("tax_base", e.what());
        }
        c.finish();
        if (c.present()) {
            try {
                k.validate();
            } catch (const ValidationError& e) {
                problems.push_back(std::string("config: cost: ") + e.what());
            }
        }
    }

    {
        Section s(section_ptr(doc, "simulation"), "simulation", problems);
        auto& p = cfg.simulation;
        s.number("tx_power_dbm", p.tx_power_dbm);
        s.number("tx_gain_db", p.tx_gain_db);
        s.number("tx_losses_db", p.tx_losses_db);
        s.number("rx_gain_db", p.rx_gain_db);
        s.number("rx_losses_db", p.rx_losses_db);
        s.number("rx_misc_losses_db", p.rx_misc_losses_db);
        s.number("tx_height_m", p.tx_height_m);
        s.number("rx_height_m", p.rx_height_m);
        s.integer("sectors_per_site", p.sectors_per_site);
        s.number("network_load", p.network_load);
        s.number("los_breakpoint_m", p.los_breakpoint_m);
        s.number("nlos_excess_loss_db", p.nlos_excess_loss_db);
        s.number("min_distance_m", p.min_distance_m);
        s.number("shadow_mu_db", p.shadow_mu_db);
        s.number("shadow_sigma_db", p.shadow_sigma_db);
        std::string shadow = p.shadow_model == ShadowModel::Lognormal ? "lognormal" : "normal_db";
        s.string("shadow_model", shadow);
        if (shadow == "lognormal") {
            p.shadow_model = ShadowModel::Lognormal;
        } else if (shadow == "normal_db") {
            p.shadow_model = ShadowModel::NormalDb;
        } else {
            s.fail("shadow_model", "must be one of {lognormal, normal_db}");
        }
        s.number("temperature_k", p.temperature_k);
        s.number("noise_figure_db", p.noise_figure_db);
        s.number("reliability", p.reliability);
        s.integer("trials", p.trials);
        s.integer("interferer_rings", p.interferer_rings);
        s.integer("seed", p.seed);
        s.number("mimo_efficiency", cfg.mimo_efficiency);
        s.string("se_table", cfg.se_table_path);
        if (const auto* v = s.get("density_grid", false)) {
            std::vector<double> grid;
            if (v->is_array()) {
                for (const auto& item : *v) {
                    if (item.is_number()) {
                        grid.push_back(item.get<double>());
                    }
                }
            }
            if (!v->is_array() || grid.size() != v->size() || grid.size() < 8) {
                s.fail("density_grid", "must be an array of at least 8 numbers");
            } else {
                cfg.density_grid = std::move(grid);
            }
        }
        if (const auto* v = s.get("frequency_sets", false)) {
            if (!v->is_object()) {
                s.fail("frequency_sets", "must be an object keyed by generation");
            } else {
                cfg.frequency_sets.clear();
                for (const auto& [gen, bands] : v->items()) {
                    try {
                        const auto g = parse_generation(gen);
                        cfg.frequency_sets[g] = read_band_list(s, "frequency_sets." + gen, bands, g);
                    } catch (const ValidationError& e) {
                        s.fail("frequency_sets", e.what());
                    }
                }
            }
        }
        if (const auto* v = s.get("mimo_layers", false)) {
            if (!v->is_object()) {
                s.fail("mimo_layers", "must be an object keyed by generation");
            } else {
                for (const auto& [gen, layers] : v->items()) {
                    try {
                        const auto g = parse_generation(gen);
                        if (!layers.is_number_integer() || layers.get<int>() < 1) {
                            s.fail("mimo_layers." + gen, "must be a positive integer");
                        } else {
                            cfg.mimo_layers[g] = layers.get<int>();
                        }
                    } catch (const ValidationError& e) {
                        s.fail("mimo_layers", e.what());
                    }
                }
            }
        }
        s.finish();
        try {
            p.validate();
        } catch (const ValidationError& e) {
            problems.push_back(std::string("config: ") + e.what());
        }
        if (!(cfg.mimo_efficiency > 0.0 && cfg.mimo_efficiency <= 1.0)) {
            problems.push_back("config: simulation.mimo_efficiency must lie in (0, 1]");
        }
        for (std::size_t i = 0; i < cfg.density_grid.size(); ++i) {
            if (!(cfg.density_grid[i] > 0.0) || (i > 0 && !(cfg.density_grid[i] > cfg.density_grid[i - 1]))) {
                problems.push_back("config: simulation.density_grid must be positive and strictly increasing");
                break;
            }
        }
    }

    {
        Section e(section_ptr(doc, "energy"), "energy", problems);
        auto& p = cfg.energy;
        e.number("site_kwh_per_hour", p.site_kwh_per_hour);
        e.number("backhaul_wireless_kwh_per_hour", p.backhaul_wireless_kwh_per_hour);
        e.number("backhaul_fiber_kwh_per_hour", p.backhaul_fiber_kwh_per_hour);
        e.number("hours_per_year", p.hours_per_year);
        e.finish();
        try {
            p.validate();
        } catch (const ValidationError& err) {
            problems.push_back(std::string("config: ") + err.what());
        }
    }

    {
        Section a(section_ptr(doc, "adoption"), "adoption", problems);
        auto& p = cfg.adoption;
        a.number("base_cell_penetration", p.base_cell_penetration);
        a.number("smartphone_penetration_urban", p.smartphone_penetration_urban);
        a.number("smartphone_penetration_rural", p.smartphone_penetration_rural);
        a.number("penetration_cap", p.penetration_cap);
        if (const auto* v = a.get("cagr", false)) {
            if (!v->is_object()) {
                a.fail("cagr", "must be an object keyed by income group");
            } else {
                for (const auto& [group, rates] : v->items()) {
                    try {
                        const auto ig = parse_income_group(group);
                        Section r(&rates, "adoption.cagr." + group, problems);
                        auto& out = p.cagr_by_income[ig];
                        r.number("low", out.low, true);
                        r.number("baseline", out.baseline, true);
                        r.number("high", out.high, true);
                        r.finish();
                    } catch (const ValidationError& e) {
                        a.fail("cagr", e.what());
                    }
                }
            }
        }
        a.finish();
        if (!(p.penetration_cap > 0.0)) {
            problems.push_back("config: adoption.penetration_cap must be positive");
        }
        for (double v : {p.base_cell_penetration, p.smartphone_penetration_urban, p.smartphone_penetration_rural}) {
            if (!(v >= 0.0 && v <= p.penetration_cap)) {
                problems.push_back("config: adoption penetrations must lie in [0, penetration_cap]");
                break;
            }
        }
    }

    {
        Section s(section_ptr(doc, "settlement"), "settlement", problems);
        s.number("urban_min", cfg.settlement.urban_min);
        s.number("suburban_min", cfg.settlement.suburban_min);
        s.finish();
        if (!(cfg.settlement.urban_min > cfg.settlement.suburban_min && cfg.settlement.suburban_min > 0.0)) {
            problems.push_back("config: settlement thresholds require urban_min > suburban_min > 0");
        }
    }

    cfg.axes = read_axes(doc, problems);
    return cfg;
}

json parse_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config " + path.string());
    }
    try {
        return json::parse(in, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ValidationError("config " + path.string() + ": " + e.what());
    }
}

/// Row-level field access with file:line diagnostics.
class RowReader
{
public:
    RowReader(const CsvTable& table, std::size_t row, Problems& problems)
        : m_table(table)
        , m_row(row)
        , m_problems(problems)
    {
    }

    const std::string& text(int col) const { return m_table.rows[m_row][static_cast<std::size_t>(col)]; }

    std::optional<double> number(int col)
    {
        const auto& s = text(col);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
            fail(m_table.header[static_cast<std::size_t>(col)] + " '" + s + "' is not a finite number");
            return std::nullopt;
        }
        return v;
    }

    std::optional<std::int64_t> integer(int col)
    {
        const auto& s = text(col);
        std::int64_t v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) {
            fail(m_table.header[static_cast<std::size_t>(col)] + " '" + s + "' is not an integer");
            return std::nullopt;
        }
        return v;
    }

    std::optional<double> non_negative(int col)
    {
        auto v = number(col);
        if (v && *v < 0.0) {
            fail(m_table.header[static_cast<std::size_t>(col)] + " must be non-negative");
            return std::nullopt;
        }
        return v;
    }

    std::optional<double> fraction(int col)
    {
        auto v = number(col);
        if (v && !(*v >= 0.0 && *v <= 1.0)) {
            fail(m_table.header[static_cast<std::size_t>(col)] + " must lie in [0, 1]");
            return std::nullopt;
        }
        return v;
    }

    template <typename Parse>
    auto parsed(int col, Parse parse) -> std::optional<decltype(parse(std::string_view{}))>
    {
        try {
            return parse(text(col));
        } catch (const ValidationError& e) {
            fail(e.what());
            return std::nullopt;
        }
    }

    void fail(const std::string& what)
    {
        m_problems.push_back(m_table.source.filename().string() + ":" + std::to_string(m_table.line_numbers[m_row]) +
                             ": " + what);
    }

private:
    const CsvTable& m_table;
    std::size_t m_row;
    Problems& m_problems;
};

std::optional<CsvTable> open_table(const std::filesystem::path& path, const std::vector<std::string>& header,
                                   Problems& problems)
{
    if (!std::filesystem::exists(path)) {
        problems.push_back(path.filename().string() + ": missing file (" + path.string() + ")");
        return std::nullopt;
    }
    try {
        auto table = read_csv(path);
        if (table.header != header) {
            std::string expected;
            for (const auto& h : header) {
                expected += (expected.empty() ? "" : ",") + h;
            }
            std::string found;
            for (const auto& h : table.header) {
                found += (found.empty() ? "" : ",") + h;
                if (std::find(header.begin(), header.end(), h) == header.end()) {
                    problems.push_back(path.filename().string() + ":1: unknown column '" + h + "'");
                }
            }
            problems.push_back(path.filename().string() + ":1: header '" + found + "' does not match '" + expected + "'");
            return std::nullopt;
        }
        return table;
    } catch (const std::exception& e) {
        problems.push_back(e.what());
        return std::nullopt;
    }
}

SpectralEfficiencyTable se_table_from_csv(const CsvTable& t, Problems& problems)
{
    SpectralEfficiencyTable table;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        RowReader r(t, i, problems);
        const auto g = r.parsed(0, parse_generation);
        const auto sinr = r.number(1);
        const auto se = r.non_negative(2);
        if (g && sinr && se) {
            auto& rows = table.rows[*g];
            if (!rows.empty() && (!(*sinr > rows.back().min_sinr_db) || !(*se > rows.back().se_bps_hz))) {
                r.fail("rows for " + std::string(to_string(*g)) + " must be strictly increasing in SINR and SE");
            }
            rows.push_back({*sinr, *se});
        }
    }
    if (table.rows.empty()) {
        problems.push_back(t.source.filename().string() + ": no rows");
    }
    return table;
}

}  // namespace

std::vector<double> ModelConfig::default_density_grid()
{
    return {0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0};
}

std::map<Generation, std::vector<SpectrumBand>> ModelConfig::default_frequency_sets()
{
    return {
        {Generation::G4,
         {{Generation::G4, 800.0, 10.0}, {Generation::G4, 1800.0, 10.0}, {Generation::G4, 2500.0, 10.0}}},
        {Generation::G5, {{Generation::G5, 700.0, 10.0}, {Generation::G5, 3500.0, 40.0}}},
    };
}

RunAxes validate_axes(const json& config)
{
    Problems problems;
    auto axes = read_axes(config, problems);
    if (!problems.empty()) {
        throw ValidationReport(std::move(problems));
    }
    return axes;
}

ModelConfig parse_config(const json& doc)
{
    Problems problems;
    auto cfg = parse_config_collect(doc, problems);
    if (!problems.empty()) {
        throw ValidationReport(std::move(problems));
    }
    return cfg;
}

ModelConfig load_config(const std::filesystem::path& config_path)
{
    return parse_config(parse_json_file(config_path));
}

SpectralEfficiencyTable load_se_table(const std::filesystem::path& path)
{
    Problems problems;
    auto t = open_table(path, schema::kSeTable, problems);
    SpectralEfficiencyTable table;
    if (t) {
        table = se_table_from_csv(*t, problems);
    }
    if (!problems.empty()) {
        throw ValidationReport(std::move(problems));
    }
    return table;
}

json config_to_json(const ModelConfig& cfg)
{
    const auto& k = cfg.cost;
    const auto& p = cfg.simulation;
    json doc;
    doc["cost"] = {
        {"equipment_usd", k.equipment},
        {"backhaul_wireless_usd", k.backhaul_wireless},
        {"backhaul_fiber_usd", k.backhaul_fiber},
        {"civils_usd", k.civils},
        {"core_usd", k.core},
        {"admin_share", k.admin_share},
        {"profit_margin", k.profit_margin},
        {"tax_rate_low", k.tax_rate.low},
        {"tax_rate_baseline", k.tax_rate.baseline},
        {"tax_rate_high", k.tax_rate.high},
        {"spectrum_fee_low_usd_mhz_pop", k.spectrum_fee.low},
        {"spectrum_fee_baseline_usd_mhz_pop", k.spectrum_fee.baseline},
        {"spectrum_fee_high_usd_mhz_pop", k.spectrum_fee.high},
        {"tax_base", to_string(k.tax_base)},
    };
    json freq = json::object();
    for (const auto& [g, bands] : cfg.frequency_sets) {
        json list = json::array();
        for (const auto& b : bands) {
            list.push_back({b.frequency_mhz, b.bandwidth_mhz});
        }
        freq[std::string(to_string(g))] = list;
    }
    json mimo = json::object();
    for (const auto& [g, layers] : cfg.mimo_layers) {
        mimo[std::string(to_string(g))] = layers;
    }
    doc["simulation"] = {
        {"tx_power_dbm", p.tx_power_dbm},
        {"tx_gain_db", p.tx_gain_db},
        {"tx_losses_db", p.tx_losses_db},
        {"rx_gain_db", p.rx_gain_db},
        {"rx_losses_db", p.rx_losses_db},
        {"rx_misc_losses_db", p.rx_misc_losses_db},
        {"tx_height_m", p.tx_height_m},
        {"rx_height_m", p.rx_height_m},
        {"sectors_per_site", p.sectors_per_site},
        {"network_load", p.network_load},
        {"los_breakpoint_m", p.los_breakpoint_m},
        {"nlos_excess_loss_db", p.nlos_excess_loss_db},
        {"min_distance_m", p.min_distance_m},
        {"shadow_mu_db", p.shadow_mu_db},
        {"shadow_sigma_db", p.shadow_sigma_db},
        {"shadow_model", p.shadow_model == ShadowModel::Lognormal ? "lognormal" : "normal_db"},
        {"temperature_k", p.temperature_k},
        {"noise_figure_db", p.noise_figure_db},
        {"reliability", p.reliability},
        {"trials", p.trials},
        {"interferer_rings", p.interferer_rings},
        {"seed", p.seed},
        {"mimo_efficiency", cfg.mimo_efficiency},
        {"mimo_layers", mimo},
        {"density_grid", cfg.density_grid},
        {"frequency_sets", freq},
    };
    if (!cfg.se_table_path.empty()) {
        doc["simulation"]["se_table"] = cfg.se_table_path;
    }
    doc["energy"] = {
        {"site_kwh_per_hour", cfg.energy.site_kwh_per_hour},
        {"backhaul_wireless_kwh_per_hour", cfg.energy.backhaul_wireless_kwh_per_hour},
        {"backhaul_fiber_kwh_per_hour", cfg.energy.backhaul_fiber_kwh_per_hour},
        {"hours_per_year", cfg.energy.hours_per_year},
    };
    json cagr = json::object();
    for (const auto& [ig, r] : cfg.adoption.cagr_by_income) {
        cagr[std::string(to_string(ig))] = {{"low", r.low}, {"baseline", r.baseline}, {"high", r.high}};
    }
    doc["adoption"] = {
        {"base_cell_penetration", cfg.adoption.base_cell_penetration},
        {"smartphone_penetration_urban", cfg.adoption.smartphone_penetration_urban},
        {"smartphone_penetration_rural", cfg.adoption.smartphone_penetration_rural},
        {"penetration_cap", cfg.adoption.penetration_cap},
        {"cagr", cagr},
    };
    doc["settlement"] = {{"urban_min", cfg.settlement.urban_min}, {"suburban_min", cfg.settlement.suburban_min}};

    auto names = [](const auto& values) {
        json out = json::array();
        for (auto v : values) {
            out.push_back(to_string(v));
        }
        return out;
    };
    const auto& st = cfg.axes.strategies;
    const auto& sc = cfg.axes.scenarios;
    doc["axes"] = {
        {"generation", names(st.generations)},
        {"backhaul", names(st.backhauls)},
        {"sharing", names(st.sharings)},
        {"policy", names(st.policies)},
        {"energy_strategy", names(st.energy_strategies)},
        {"capacity_gb_month", sc.capacities_gb_month},
        {"adoption", names(sc.adoptions)},
    };
    doc["scenario"] = {{"start_year", sc.start_year}, {"end_year", sc.end_year}, {"discount_rate", sc.discount_rate}};
    return doc;
}

InputBundle load_bundle(const std::filesystem::path& data_dir, const std::filesystem::path& config_path)
{
    // An unreadable config or absent data directory is an IO failure; problems
    // inside the inputs are collected into one validation report.
    if (!std::filesystem::is_directory(data_dir)) {
        throw IoError("data directory " + data_dir.string() + " does not exist");
    }
    Problems problems;
    InputBundle bundle;

    try {
        bundle.config = parse_config_collect(parse_json_file(config_path), problems);
    } catch (const IoError&) {
        throw;
    } catch (const ValidationError& e) {
        problems.push_back(e.what());
    }

    if (auto t = open_table(data_dir / "countries.csv", schema::kCountries, problems)) {
        for (std::size_t i = 0; i < t->rows.size(); ++i) {
            RowReader r(*t, i, problems);
            CountryParams c;
            c.country_iso3 = r.text(0);
            const auto ig = r.parsed(1, parse_income_group);
            const auto ops = r.integer(2);
            const auto lo = r.non_negative(3);
            const auto base = r.non_negative(4);
            const auto hi = r.non_negative(5);
            const auto grid = r.fraction(6);
            const auto intensity = r.non_negative(7);
            if (c.country_iso3.empty()) {
                r.fail("country_iso3 is empty");
                continue;
            }
            if (ops && *ops < 1) {
                r.fail("n_major_operators must be at least 1");
                continue;
            }
            if (!(ig && ops && lo && base && hi && grid && intensity)) {
                continue;
            }
            if (!(*lo <= *base && *base <= *hi)) {
                r.fail("ARPU tiers must satisfy arpu_low <= arpu_base <= arpu_high");
                continue;
            }
            c.income_group = *ig;
            c.n_major_operators = static_cast<int>(*ops);
            c.arpu_low = *lo;
            c.arpu_base = *base;
            c.arpu_high = *hi;
            c.on_grid_share = *grid;
            c.grid_carbon_intensity_kg_kwh = *intensity;
            if (!bundle.countries.emplace(c.country_iso3, c).second) {
                r.fail("duplicate country " + c.country_iso3);
            }
        }
    }

    if (auto t = open_table(data_dir / "spectrum.csv", schema::kSpectrum, problems)) {
        for (std::size_t i = 0; i < t->rows.size(); ++i) {
            RowReader r(*t, i, problems);
            const auto& iso = r.text(0);
            const auto g = r.parsed(1, parse_generation);
            const auto f = r.number(2);
            const auto bw = r.number(3);
            if (f && !(*f > 0.0)) {
                r.fail("frequency_mhz must be positive");
                continue;
            }
            if (bw && !(*bw > 0.0)) {
                r.fail("bandwidth_mhz must be positive");
                continue;
            }
            const auto it = bundle.countries.find(iso);
            if (it == bundle.countries.end()) {
                r.fail("spectrum row references unknown country " + iso);
                continue;
            }
            if (g && f && bw) {
                it->second.spectrum.push_back({*g, *f, *bw});
            }
        }
    }

    if (auto t = open_table(data_dir / "regions.csv", schema::kRegions, problems)) {
        std::set<std::pair<std::string, std::string>> ids;
        for (std::size_t i = 0; i < t->rows.size(); ++i) {
            RowReader r(*t, i, problems);
            RegionRecord rec;
            rec.region_id = r.text(0);
            rec.country_iso3 = r.text(1);
            const auto pop = r.integer(2);
            const auto area = r.number(3);
            const auto sites = r.integer(4);
            bool ok = pop && area && sites;
            if (pop && *pop < 0) {
                r.fail("population must be non-negative");
                ok = false;
            }
            if (area && !(*area > 0.0)) {
                r.fail("area_km2 must be positive");
                ok = false;
            }
            if (sites && *sites < 0) {
                r.fail("existing_sites must be non-negative");
                ok = false;
            }
            if (rec.region_id.empty()) {
                r.fail("region_id is empty");
                ok = false;
            }
            if (!bundle.countries.contains(rec.country_iso3)) {
                r.fail("region " + rec.region_id + " references unknown country " + rec.country_iso3);
                ok = false;
            }
            if (!ids.emplace(rec.country_iso3, rec.region_id).second) {
                r.fail("duplicate region_id " + rec.region_id + " in " + rec.country_iso3);
                ok = false;
            }
            if (ok) {
                rec.population = *pop;
                rec.area_km2 = *area;
                rec.existing_sites = *sites;
                bundle.regions.push_back(std::move(rec));
            }
        }
    }

    if (auto t = open_table(data_dir / "energy_mix.csv", schema::kEnergyMix, problems)) {
        std::map<std::pair<std::string, int>, int> first_line;
        for (std::size_t i = 0; i < t->rows.size(); ++i) {
            RowReader r(*t, i, problems);
            const auto& region = r.text(0);
            const auto year = r.integer(1);
            const auto& source = r.text(2);
            const auto share = r.fraction(3);
            if (!(year && share)) {
                continue;
            }
            auto& row = bundle.energy_mix.by_region[region][static_cast<int>(*year)];
            if (row.contains(source)) {
                r.fail("duplicate source " + source + " for " + region + " " + std::to_string(*year));
                continue;
            }
            row[source] = *share;
            first_line.try_emplace({region, static_cast<int>(*year)}, t->line_numbers[i]);
        }
        for (const auto& [region, years] : bundle.energy_mix.by_region) {
            for (const auto& [year, shares] : years) {
                double total = 0.0;
                for (const auto& [_, s] : shares) {
                    total += s;
                }
                if (std::abs(total - 1.0) > 1e-6) {
                    problems.push_back("energy_mix.csv:" + std::to_string(first_line[{region, year}]) + ": shares for " +
                                       region + " year " + std::to_string(year) + " sum to " + format_sig(total) +
                                       ", expected 1");
                }
            }
        }
    }

    if (auto t = open_table(data_dir / "emission_factors.csv", schema::kEmissionFactors, problems)) {
        for (std::size_t i = 0; i < t->rows.size(); ++i) {
            RowReader r(*t, i, problems);
            const auto& source = r.text(0);
            const auto co2 = r.non_negative(1);
            const auto nox = r.non_negative(2);
            const auto sox = r.non_negative(3);
            const auto pm = r.non_negative(4);
            if (co2 && nox && sox && pm) {
                if (!bundle.emission_factors.by_source.emplace(source, SpeciesFactors{*co2, *nox, *sox, *pm}).second) {
                    r.fail("duplicate source " + source);
                }
            }
        }
        try {
            bundle.emission_factors.validate();
        } catch (const ValidationError& e) {
            problems.push_back(std::string("emission_factors.csv: ") + e.what());
        }
    }

    if (auto t = open_table(data_dir / "se_table.csv", schema::kSeTable, problems)) {
        bundle.se_table = se_table_from_csv(*t, problems);
        bundle.se_table.mimo_layers = bundle.config.mimo_layers;
        bundle.se_table.mimo_efficiency = bundle.config.mimo_efficiency;
    }

    // Referential integrity across files.
    const auto& sc = bundle.config.axes.scenarios;
    for (const auto& [iso, country] : bundle.countries) {
        const bool has_region = std::any_of(bundle.regions.begin(), bundle.regions.end(),
                                            [&](const RegionRecord& r) { return r.country_iso3 == iso; });
        if (!has_region) {
            problems.push_back("regions.csv: country " + iso + " has no regions");
        }
        for (auto g : bundle.config.axes.strategies.generations) {
            if (country.bands(g).empty()) {
                problems.push_back("spectrum.csv: country " + iso + " has no " + std::string(to_string(g)) + " spectrum");
            }
        }
        const auto mix = bundle.energy_mix.by_region.find(iso);
        if (mix == bundle.energy_mix.by_region.end()) {
            problems.push_back("energy_mix.csv: country " + iso + " has no mix region");
            continue;
        }
        for (int y = sc.start_year; y <= sc.end_year; ++y) {
            if (!mix->second.contains(y)) {
                problems.push_back("energy_mix.csv: region " + iso + " lacks year " + std::to_string(y));
            }
        }
    }
    for (const auto& [region, years] : bundle.energy_mix.by_region) {
        for (const auto& [year, shares] : years) {
            for (const auto& [source, _] : shares) {
                if (!bundle.emission_factors.by_source.empty() && !bundle.emission_factors.by_source.contains(source)) {
                    problems.push_back("energy_mix.csv: source '" + source + "' (" + region + " " + std::to_string(year) +
                                       ") has no emission factors");
                }
            }
        }
    }
    for (auto g : bundle.config.axes.strategies.generations) {
        if (!bundle.se_table.rows.empty() && !bundle.se_table.rows.contains(g)) {
            problems.push_back("se_table.csv: no rows for " + std::string(to_string(g)));
        }
    }

    if (!problems.empty()) {
        // Duplicate messages add nothing.
        Problems unique;
        std::set<std::string> seen;
        for (auto& p : problems) {
            if (seen.insert(p).second) {
                unique.push_back(std::move(p));
            }
        }
        throw ValidationReport(std::move(unique));
    }
    return bundle;
}

void write_bundle(const InputBundle& bundle, const std::filesystem::path& data_dir,
                  const std::filesystem::path& config_path)
{
    std::error_code ec;
    std::filesystem::create_directories(data_dir, ec);
    if (ec) {
        throw IoError("cannot create " + data_dir.string() + ": " + ec.message());
    }
    {
        CsvWriter out(data_dir / "regions.csv");
        out.row(schema::kRegions);
        for (const auto& r : bundle.regions) {
            out.row({r.region_id, r.country_iso3, std::to_string(r.population), format_exact(r.area_km2),
                     std::to_string(r.existing_sites)});
        }
        out.close();
    }
    {
        CsvWriter countries(data_dir / "countries.csv");
        CsvWriter spectrum(data_dir / "spectrum.csv");
        countries.row(schema::kCountries);
        spectrum.row(schema::kSpectrum);
        for (const auto& [iso, c] : bundle.countries) {
            countries.row({iso, std::string(to_string(c.income_group)), std::to_string(c.n_major_operators),
                           format_exact(c.arpu_low), format_exact(c.arpu_base), format_exact(c.arpu_high),
                           format_exact(c.on_grid_share), format_exact(c.grid_carbon_intensity_kg_kwh)});
            for (const auto& b : c.spectrum) {
                spectrum.row({iso, std::string(to_string(b.generation)), format_exact(b.frequency_mhz),
                              format_exact(b.bandwidth_mhz)});
            }
        }
        countries.close();
        spectrum.close();
    }
    {
        CsvWriter out(data_dir / "energy_mix.csv");
        out.row(schema::kEnergyMix);
        for (const auto& [region, years] : bundle.energy_mix.by_region) {
            for (const auto& [year, shares] : years) {
                for (const auto& [source, share] : shares) {
                    out.row({region, std::to_string(year), source, format_exact(share)});
                }
            }
        }
        out.close();
    }
    {
        CsvWriter out(data_dir / "emission_factors.csv");
        out.row(schema::kEmissionFactors);
        for (const auto& [source, f] : bundle.emission_factors.by_source) {
            out.row({source, format_exact(f.co2_kg_kwh), format_exact(f.nox_g_kwh), format_exact(f.sox_g_kwh),
                     format_exact(f.pm10_g_kwh)});
        }
        out.close();
    }
    {
        CsvWriter out(data_dir / "se_table.csv");
        out.row(schema::kSeTable);
        for (const auto& [g, rows] : bundle.se_table.rows) {
            for (const auto& r : rows) {
                out.row({std::string(to_string(g)), format_exact(r.min_sinr_db), format_exact(r.se_bps_hz)});
            }
        }
        out.close();
    }
    std::ofstream cfg(config_path, std::ios::trunc);
    if (!cfg) {
        throw IoError("cannot write " + config_path.string());
    }
    cfg << config_to_json(bundle.config).dump(2) << '\n';
    if (!cfg) {
        throw IoError("failed writing " + config_path.string());
    }
}

}  // namespace bband
