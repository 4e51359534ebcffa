#include "lvdes/catalog.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lvdes/errors.hpp"

namespace lvdes {

double evaluate_cop(const AshpOption& ashp, double t_air_c) {
    const CopCurve& c = ashp.cop;
    return c.L / (1.0 + std::exp(-c.k * (t_air_c - c.x0))) + c.b;
}

double evaluate_capacity(const AshpOption& ashp, double t_air_c) {
    const CapacityCurve& c = ashp.capacity;
    const double t = t_air_c;
    return c.a * t * t * t + c.b * t * t + c.c * t + c.d;
}

double crf(double rate, double lifetime_years) {
    if (rate == 0.0) return 1.0 / lifetime_years;
    const double g = std::pow(1.0 + rate, lifetime_years);
    return rate * g / (g - 1.0);
}

bool TechnologyCatalog::compatible(int ashp, int tank) const {
    return tank_costs[static_cast<size_t>(ashp) * tanks.size() + tank].has_value();
}

double TechnologyCatalog::tank_cost(int ashp, int tank) const {
    return *tank_costs[static_cast<size_t>(ashp) * tanks.size() + tank];
}

std::vector<std::pair<int, int>> TechnologyCatalog::feasible_combos() const {
    std::vector<std::pair<int, int>> combos;
    for (int p = 0; p < static_cast<int>(ashps.size()); ++p)
        for (int k = 0; k < static_cast<int>(tanks.size()); ++k)
            if (compatible(p, k)) combos.emplace_back(p, k);
    return combos;
}

namespace {

template <typename T>
int index_of(const std::vector<T>& items, const std::string& label,
             const char* kind) {
    for (int i = 0; i < static_cast<int>(items.size()); ++i)
        if (items[i].label == label) return i;
    throw InputError(std::string("unknown ") + kind + " label '" + label + "'");
}

} // namespace

int TechnologyCatalog::ashp_index(const std::string& label) const {
    return index_of(ashps, label, "ashp");
}
int TechnologyCatalog::tank_index(const std::string& label) const {
    return index_of(tanks, label, "tank");
}
int TechnologyCatalog::boiler_index(const std::string& label) const {
    return index_of(boilers, label, "boiler");
}
int TechnologyCatalog::battery_index(const std::string& label) const {
    return index_of(batteries, label, "battery");
}

void TechnologyCatalog::validate(const std::string& source) const {
    auto fail = [&](const std::string& what) {
        throw InputError(source + ": " + what);
    };
    if (tank_costs.size() != ashps.size() * tanks.size())
        fail("compatibility matrix size mismatch");

    for (const auto& a : ashps) {
        if (a.unit_cost <= 0) fail("ashp " + a.label + ": unit_cost must be > 0");
        if (a.install_cost < 0) fail("ashp " + a.label + ": install_cost must be >= 0");
        // COP must stay positive over the full ambient range; capacity over
        // the operating range [t_min, 40] (below the cutoff the unit is off).
        for (int s = 0; s <= 120; ++s) {
            const double t = -20.0 + 0.5 * s;
            if (evaluate_cop(a, t) <= 0.0)
                fail("ashp " + a.label + ": COP not positive at " + std::to_string(t) + " C");
            if (t >= a.t_min_c && evaluate_capacity(a, t) <= 0.0)
                fail("ashp " + a.label + ": capacity not positive at " + std::to_string(t) + " C");
        }
    }
    for (const auto& k : tanks) {
        if (k.volume_m3 <= 0) fail("tank " + k.label + ": volume must be > 0");
        if (k.eta_ch <= 0 || k.eta_ch > 1 || k.eta_disch <= 0 || k.eta_disch > 1)
            fail("tank " + k.label + ": efficiencies must lie in (0,1]");
        if (k.t_min_c >= constants.supply_temp_c)
            fail("tank " + k.label + ": tmin_C must be below the supply temperature");
        if (k.heat_loss_kw < 0) fail("tank " + k.label + ": heat loss must be >= 0");
    }
    for (const auto& b : boilers) {
        if (b.h_max_kw <= 0) fail("boiler " + b.label + ": hmax_kW must be > 0");
        if (b.efficiency <= 0 || b.efficiency > 1)
            fail("boiler " + b.label + ": efficiency must lie in (0,1]");
    }
    for (const auto& c : batteries) {
        if (c.capacity_kwh <= 0) fail("battery " + c.label + ": capacity must be > 0");
        if (c.max_dod <= 0 || c.max_dod > 1 || c.max_soc <= 0 || c.max_soc > 1)
            fail("battery " + c.label + ": DOD/SOC fractions must lie in (0,1]");
        if (c.max_dod > c.max_soc)
            fail("battery " + c.label + ": max_dod must not exceed max_soc");
        if (c.max_power_kw <= 0) fail("battery " + c.label + ": max_power must be > 0");
        if (c.eta_ch <= 0 || c.eta_ch > 1 || c.eta_disch <= 0 || c.eta_disch > 1)
            fail("battery " + c.label + ": efficiencies must lie in (0,1]");
    }
    for (size_t i = 0; i < tank_costs.size(); ++i) {
        if (tank_costs[i] && *tank_costs[i] <= 0)
            fail("compatibility entry with non-positive cost");
    }
    const EconomicScalars& e = economics;
    if (e.lifetime_years < 1) fail("economics: lifetime must be >= 1 year");
    if (e.interest_rate < 0) fail("economics: interest rate must be >= 0");
    for (double v : {e.gas_price, e.day_tariff, e.night_tariff, e.export_tariff,
                     e.generation_tariff, e.pv_panel_cost, e.pv_fixed_om})
        if (v < 0) fail("economics: prices must be >= 0");
    if (e.pv_efficiency <= 0 || e.pv_efficiency >= 1)
        fail("economics: pv_efficiency must lie in (0,1)");
    if (e.panel_area_m2 <= 0 || e.panel_capacity_kw <= 0)
        fail("economics: panel area and capacity must be > 0");
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct LineReader {
    std::istream& in;
    std::string file;
    int lineno = 0;

    // Returns the next non-empty, non-comment line; false at EOF.
    bool next(std::string& out) {
        std::string raw;
        while (std::getline(in, raw)) {
            ++lineno;
            const auto hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            // trim
            const auto b = raw.find_first_not_of(" \t\r");
            if (b == std::string::npos) continue;
            const auto e = raw.find_last_not_of(" \t\r");
            out = raw.substr(b, e - b + 1);
            return true;
        }
        return false;
    }
};

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream iss(s);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

double parse_number(const std::string& tok, const std::string& file, int line,
                    const std::string& field) {
    try {
        size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        if (!std::isfinite(v)) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw InputError(file, line, field, "expected a number, got '" + tok + "'");
    }
}

} // namespace

TechnologyCatalog parse_catalog(std::istream& in, const std::string& name) {
    TechnologyCatalog cat;
    LineReader reader{in, name};
    std::string line;
    std::string section;
    // compatibility rows seen before both option lists are complete
    std::vector<std::array<std::string, 3>> compat_rows;

    auto expect_cols = [&](const std::vector<std::string>& toks, size_t n,
                           const char* what) {
        if (toks.size() != n)
            throw InputError(name, reader.lineno, what,
                             "expected " + std::to_string(n) + " columns, got " +
                                 std::to_string(toks.size()));
    };

    while (reader.next(line)) {
        if (line.front() == '[') {
            if (line.back() != ']')
                throw InputError(name, reader.lineno, "section", "unterminated section header");
            section = line.substr(1, line.size() - 2);
            continue;
        }
        const auto toks = split_ws(line);
        auto num = [&](size_t i, const char* field) {
            return parse_number(toks[i], name, reader.lineno, field);
        };
        if (section == "ashp") {
            expect_cols(toks, 12, "ashp row");
            AshpOption a;
            a.label = toks[0];
            a.t_min_c = num(1, "tmin_C");
            a.unit_cost = num(2, "unit_cost");
            a.install_cost = num(3, "install_cost");
            a.cop = {num(4, "cop_L"), num(5, "cop_x0"), num(6, "cop_k"), num(7, "cop_b")};
            a.capacity = {num(8, "cap_a"), num(9, "cap_b"), num(10, "cap_c"), num(11, "cap_d")};
            cat.ashps.push_back(a);
        } else if (section == "tank") {
            expect_cols(toks, 6, "tank row");
            TankOption t;
            t.label = toks[0];
            t.volume_m3 = num(1, "volume_m3");
            t.eta_ch = num(2, "eta_ch");
            t.eta_disch = num(3, "eta_disch");
            t.t_min_c = num(4, "tmin_C");
            t.heat_loss_kw = num(5, "heat_loss_kW");
            cat.tanks.push_back(t);
        } else if (section == "compatibility") {
            expect_cols(toks, 3, "compatibility row");
            compat_rows.push_back({toks[0], toks[1], toks[2]});
        } else if (section == "boiler") {
            expect_cols(toks, 5, "boiler row");
            BoilerOption b;
            b.label = toks[0];
            b.h_max_kw = num(1, "hmax_kW");
            b.efficiency = num(2, "efficiency");
            b.unit_cost = num(3, "unit_cost");
            b.install_cost = num(4, "install_cost");
            cat.boilers.push_back(b);
        } else if (section == "battery") {
            expect_cols(toks, 10, "battery row");
            BatteryOption c;
            c.label = toks[0];
            c.capacity_kwh = num(1, "capacity_kWh");
            c.max_dod = num(2, "max_dod");
            c.max_soc = num(3, "max_soc");
            c.unit_cost = num(4, "unit_cost");
            c.install_cost = num(5, "install_cost");
            c.annual_op_cost = num(6, "annual_op_cost");
            c.eta_ch = num(7, "eta_ch");
            c.eta_disch = num(8, "eta_disch");
            c.max_power_kw = num(9, "max_power_kW");
            cat.batteries.push_back(c);
        } else if (section == "economics" || section == "constants") {
            expect_cols(toks, 2, "key-value row");
            const double v = num(1, toks[0].c_str());
            const std::string& key = toks[0];
            EconomicScalars& e = cat.economics;
            ThermalConstants& tc = cat.constants;
            if (key == "lifetime_years") e.lifetime_years = v;
            else if (key == "interest_rate") e.interest_rate = v;
            else if (key == "gas_price") e.gas_price = v;
            else if (key == "day_tariff") e.day_tariff = v;
            else if (key == "night_tariff") e.night_tariff = v;
            else if (key == "export_tariff") e.export_tariff = v;
            else if (key == "generation_tariff") e.generation_tariff = v;
            else if (key == "pv_panel_cost") e.pv_panel_cost = v;
            else if (key == "pv_efficiency") e.pv_efficiency = v;
            else if (key == "pv_fixed_om") e.pv_fixed_om = v;
            else if (key == "panel_area_m2") e.panel_area_m2 = v;
            else if (key == "panel_capacity_kw") e.panel_capacity_kw = v;
            else if (key == "supply_temp_c") tc.supply_temp_c = v;
            else if (key == "water_cp_kj_per_kg_k") tc.water_cp_kj_per_kg_k = v;
            else if (key == "water_density_kg_per_m3") tc.water_density_kg_per_m3 = v;
            else
                throw InputError(name, reader.lineno, key, "unknown scalar key");
        } else if (section.empty()) {
            throw InputError(name, reader.lineno, "section", "data before any [section] header");
        } else {
            throw InputError(name, reader.lineno, "section", "unknown section '" + section + "'");
        }
    }

    cat.tank_costs.assign(cat.ashps.size() * cat.tanks.size(), std::nullopt);
    for (const auto& row : compat_rows) {
        int p = -1, k = -1;
        try {
            p = cat.ashp_index(row[0]);
            k = cat.tank_index(row[1]);
        } catch (const InputError& e) {
            throw InputError(name + ": [compatibility] " + e.what());
        }
        const double cost = parse_number(row[2], name, 0, "tank_cost");
        cat.tank_costs[static_cast<size_t>(p) * cat.tanks.size() + k] = cost;
    }

    cat.validate(name);
    return cat;
}

TechnologyCatalog parse_catalog_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open catalog file '" + path + "'");
    return parse_catalog(in, path);
}

TechnologyCatalog load_builtin_catalog() {
    std::istringstream in(builtin_catalog_text());
    return parse_catalog(in, "<builtin catalog>");
}

} // namespace lvdes
