#include "lvdes/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "lvdes/errors.hpp"

namespace fs = std::filesystem;

namespace lvdes {

char phase_letter(Phase p) { return "abc"[static_cast<int>(p)]; }

Phase phase_from_letter(char c) {
    switch (c) {
        case 'a': case 'A': return Phase::A;
        case 'b': case 'B': return Phase::B;
        case 'c': case 'C': return Phase::C;
    }
    throw InputError(std::string("invalid phase letter '") + c + "'");
}

int Scenario::bus_index(const std::string& id) const {
    for (int i = 0; i < static_cast<int>(buses.size()); ++i)
        if (buses[i].id == id) return i;
    return -1;
}

int Scenario::dwelling_index(const std::string& id) const {
    for (int i = 0; i < static_cast<int>(dwellings.size()); ++i)
        if (dwellings[i].id == id) return i;
    return -1;
}

bool Scenario::bus_has_phase(int bus, Phase ph) const {
    const auto& ps = buses[bus].phases;
    return std::find(ps.begin(), ps.end(), ph) != ps.end();
}

double Scenario::elec_demand(int dwelling, int season, int t) const {
    const auto& s = seasons[season];
    return dwellings[dwelling].peak_elec_kw * s.elec_shape[t] * s.elec_scale;
}

double Scenario::heat_demand(int dwelling, int season, int t) const {
    const auto& s = seasons[season];
    return dwellings[dwelling].peak_heat_kw * s.heat_shape[t] * s.heat_scale;
}

double Scenario::purchase_tariff(int season, int t) const {
    const double dt = seasons[season].dt_hours;
    const double t0 = t * dt;
    const double t1 = t0 + dt;
    constexpr double night_end = 7.0;
    const double night_overlap = std::clamp(night_end - t0, 0.0, dt);
    const double w = night_overlap / dt;
    return w * tariffs.night_tariff + (1.0 - w) * tariffs.day_tariff;
}

void Scenario::validate(const std::string& source) const {
    auto fail = [&](const std::string& what) { throw InputError(source + ": " + what); };

    int slack_count = 0;
    std::set<std::string> bus_ids;
    for (const auto& b : buses) {
        if (!bus_ids.insert(b.id).second) fail("duplicate bus id '" + b.id + "'");
        if (b.phases.empty()) fail("bus '" + b.id + "' has no phases");
        if (!(b.v_min > 0 && b.v_min < b.v_max))
            fail("bus '" + b.id + "' needs 0 < v_min < v_max");
        if (b.is_slack) ++slack_count;
    }
    if (slack_count != 1) fail("exactly one slack bus required, found " + std::to_string(slack_count));

    for (const auto& l : lines) {
        const int f = bus_index(l.from), t = bus_index(l.to);
        if (f < 0) fail("line references missing bus '" + l.from + "'");
        if (t < 0) fail("line references missing bus '" + l.to + "'");
        if (l.length_m <= 0) fail("line " + l.from + "-" + l.to + ": length must be > 0");
        if (l.z_self_per_km.real() <= 0)
            fail("line " + l.from + "-" + l.to + ": series resistance must be > 0");
        if (l.phases.empty()) fail("line " + l.from + "-" + l.to + ": no phases");
        for (Phase ph : l.phases)
            if (!bus_has_phase(f, ph) || !bus_has_phase(t, ph))
                fail("line " + l.from + "-" + l.to + ": phase " + phase_letter(ph) +
                     " absent at an endpoint");
    }
    for (const auto& x : transformers) {
        const int f = bus_index(x.from), t = bus_index(x.to);
        if (f < 0) fail("transformer references missing bus '" + x.from + "'");
        if (t < 0) fail("transformer references missing bus '" + x.to + "'");
        if (x.connection != "delta-wye")
            fail("transformer " + x.from + "-" + x.to + ": unsupported connection '" +
                 x.connection + "'");
        if (buses[f].phases.size() != 3 || buses[t].phases.size() != 3)
            fail("transformer " + x.from + "-" + x.to + ": both endpoints must carry 3 phases");
        if (x.rating_kva <= 0) fail("transformer " + x.from + "-" + x.to + ": rating must be > 0");
        if (std::abs(x.z_series) <= 0)
            fail("transformer " + x.from + "-" + x.to + ": series impedance must be non-zero");
    }
    std::set<std::string> dwelling_ids;
    for (const auto& d : dwellings) {
        if (!dwelling_ids.insert(d.id).second) fail("duplicate dwelling id '" + d.id + "'");
        const int b = bus_index(d.bus);
        if (b < 0) fail("dwelling '" + d.id + "' references missing bus '" + d.bus + "'");
        if (!bus_has_phase(b, d.phase))
            fail("dwelling '" + d.id + "' on phase " + phase_letter(d.phase) +
                 " absent at bus '" + d.bus + "'");
        if (d.peak_elec_kw <= 0 || d.peak_heat_kw < 0)
            fail("dwelling '" + d.id + "' needs peak_elec > 0 and peak_heat >= 0");
        if (d.max_pv_area_m2 < 0) fail("dwelling '" + d.id + "': max_pv_area must be >= 0");
        if (d.power_factor <= 0 || d.power_factor > 1)
            fail("dwelling '" + d.id + "': power_factor must lie in (0,1]");
    }
    if (seasons.empty()) fail("at least one season required");
    int total_days = 0;
    for (const auto& s : seasons) {
        total_days += s.n_days;
        if (s.n_days <= 0) fail("season '" + s.id + "': n_days must be > 0");
        if (s.dt_hours <= 0) fail("season '" + s.id + "': timestep must be > 0");
        const size_t n = s.t_air_c.size();
        if (n == 0) fail("season '" + s.id + "': empty profile");
        if (s.irradiance_kw_m2.size() != n || s.elec_shape.size() != n || s.heat_shape.size() != n)
            fail("season '" + s.id + "': profile series lengths differ");
        if (std::abs(s.dt_hours * static_cast<double>(n) - 24.0) > 1e-9)
            fail("season '" + s.id + "': steps x timestep must cover 24 h");
        auto peak_is_one = [](const std::vector<double>& v) {
            return std::abs(*std::max_element(v.begin(), v.end()) - 1.0) < 1e-9;
        };
        if (!peak_is_one(s.elec_shape)) fail("season '" + s.id + "': elec_shape must peak at 1");
        if (!peak_is_one(s.heat_shape)) fail("season '" + s.id + "': heat_shape must peak at 1");
        for (double v : s.elec_shape)
            if (v < 0 || v > 1) fail("season '" + s.id + "': elec_shape outside [0,1]");
        for (double v : s.heat_shape)
            if (v < 0 || v > 1) fail("season '" + s.id + "': heat_shape outside [0,1]");
        for (double irr : s.irradiance_kw_m2)
            if (irr < 0) fail("season '" + s.id + "': negative irradiance");
        for (double ta : s.t_air_c)
            for (const auto& a : catalog.ashps)
                if (evaluate_cop(a, ta) <= 0)
                    fail("season '" + s.id + "': COP of ashp " + a.label +
                         " not positive at " + std::to_string(ta) + " C");
    }
    if (total_days != 365) fail("season day counts must sum to 365, got " + std::to_string(total_days));

    // bus-phase connectivity from the slack through lines and transformers
    std::map<std::pair<int, int>, int> node_of;
    int n_nodes = 0;
    for (int b = 0; b < static_cast<int>(buses.size()); ++b)
        for (Phase ph : buses[b].phases) node_of[{b, static_cast<int>(ph)}] = n_nodes++;
    std::vector<std::vector<int>> adj(n_nodes);
    auto connect = [&](int fb, int tb, Phase ph) {
        const int a = node_of.at({fb, static_cast<int>(ph)});
        const int b = node_of.at({tb, static_cast<int>(ph)});
        adj[a].push_back(b);
        adj[b].push_back(a);
    };
    for (const auto& l : lines)
        for (Phase ph : l.phases) connect(bus_index(l.from), bus_index(l.to), ph);
    for (const auto& x : transformers)
        for (Phase ph : {Phase::A, Phase::B, Phase::C})
            connect(bus_index(x.from), bus_index(x.to), ph);
    int slack = 0;
    for (int b = 0; b < static_cast<int>(buses.size()); ++b)
        if (buses[b].is_slack) slack = b;
    std::vector<bool> seen(n_nodes, false);
    std::queue<int> q;
    for (Phase ph : buses[slack].phases) {
        const int n = node_of.at({slack, static_cast<int>(ph)});
        seen[n] = true;
        q.push(n);
    }
    while (!q.empty()) {
        const int n = q.front();
        q.pop();
        for (int m : adj[n])
            if (!seen[m]) {
                seen[m] = true;
                q.push(m);
            }
    }
    for (const auto& [key, n] : node_of)
        if (!seen[n])
            fail("bus '" + buses[key.first].id + "' phase " +
                 phase_letter(static_cast<Phase>(key.second)) +
                 " is not connected to the slack");
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_number(const std::string& tok, const std::string& file, int line,
                 const std::string& field) {
    try {
        size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size() || !std::isfinite(v)) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw InputError(file, line, field, "expected a number, got '" + tok + "'");
    }
}

bool to_bool(const std::string& tok, const std::string& file, int line,
             const std::string& field) {
    if (tok == "1" || tok == "true" || tok == "yes") return true;
    if (tok == "0" || tok == "false" || tok == "no") return false;
    throw InputError(file, line, field, "expected a boolean, got '" + tok + "'");
}

/// Comma-separated table with a mandatory header row. Column lookups are by
/// header name so files may carry extra columns.
struct CsvTable {
    std::string file;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<int> row_lines;

    static CsvTable read(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw InputError("cannot open '" + path + "'");
        CsvTable t;
        t.file = path;
        std::string raw;
        int lineno = 0;
        while (std::getline(in, raw)) {
            ++lineno;
            const std::string line = trim(raw);
            if (line.empty() || line[0] == '#') continue;
            std::vector<std::string> cells;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
            if (!line.empty() && line.back() == ',') cells.push_back("");
            if (t.header.empty()) {
                t.header = cells;
            } else {
                t.rows.push_back(cells);
                t.row_lines.push_back(lineno);
            }
        }
        if (t.header.empty()) throw InputError(path + ": missing header row");
        return t;
    }

    int col(const std::string& name, bool required = true) const {
        for (int i = 0; i < static_cast<int>(header.size()); ++i)
            if (header[i] == name) return i;
        if (required) throw InputError(file + ": missing column '" + name + "'");
        return -1;
    }

    const std::string& cell(int row, int c, const std::string& field) const {
        if (c >= static_cast<int>(rows[row].size()))
            throw InputError(file, row_lines[row], field, "missing value");
        return rows[row][c];
    }

    double num(int row, const std::string& name) const {
        return to_number(cell(row, col(name), name), file, row_lines[row], name);
    }
    std::string str(int row, const std::string& name) const {
        return cell(row, col(name), name);
    }
};

std::vector<Phase> parse_phases(const std::string& s, const std::string& file, int line) {
    std::vector<Phase> out;
    for (char c : s) {
        const Phase p = [&] {
            try {
                return phase_from_letter(c);
            } catch (const InputError&) {
                throw InputError(file, line, "phases", std::string("invalid phase '") + c + "'");
            }
        }();
        if (std::find(out.begin(), out.end(), p) != out.end())
            throw InputError(file, line, "phases", "duplicate phase");
        out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::map<std::string, std::string> read_keyvalue(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string key, value;
        ss >> key >> value;
        if (key.empty() || value.empty())
            throw InputError(path, lineno, key.empty() ? "?" : key, "expected 'key value'");
        kv[key] = value;
    }
    return kv;
}

void apply_settings(AlgorithmSettings& st, const std::map<std::string, std::string>& kv,
                    const std::string& file) {
    for (const auto& [key, value] : kv) {
        auto num = [&] { return to_number(value, file, 0, key); };
        if (key == "variant") {
            if (value == "pa") st.variant = AlgorithmSettings::Variant::Pa;
            else if (value == "pa-h") st.variant = AlgorithmSettings::Variant::PaH;
            else if (value == "milp-only") st.variant = AlgorithmSettings::Variant::MilpOnly;
            else throw InputError(file, 0, key, "expected pa, pa-h or milp-only");
        } else if (key == "time_limit_s") st.time_limit_s = num();
        else if (key == "max_iterations") st.max_iterations = static_cast<int>(num());
        else if (key == "milp_gap") st.milp_gap = num();
        else if (key == "eps_initial") st.eps_initial = num();
        else if (key == "eps_reduction") st.eps_reduction = num();
        else if (key == "eps_min") st.eps_min = num();
        else if (key == "eps_increase") st.eps_increase = num();
        else if (key == "cr_max_iterations") st.cr_max_iterations = static_cast<int>(num());
        else if (key == "exhaustive") st.exhaustive = to_bool(value, file, 0, key);
        else if (key == "allow_grid_charging") st.allow_grid_charging = to_bool(value, file, 0, key);
        else if (key == "battery_complementarity") st.battery_complementarity = to_bool(value, file, 0, key);
        else if (key == "brute_force_cap") st.brute_force_cap = static_cast<int>(num());
        else if (key == "ub_lb_tol_rel") st.ub_lb_tol_rel = num();
        else if (key == "audit_tol_pu") st.audit_tol_pu = num();
        else throw InputError(file, 0, key, "unknown settings key");
    }
    if (st.time_limit_s <= 0) throw InputError(file + ": time_limit_s must be > 0");
    if (st.eps_min >= st.eps_initial) throw InputError(file + ": eps_min must be below eps_initial");
    if (st.eps_reduction <= 0 || st.eps_reduction >= 1)
        throw InputError(file + ": eps_reduction must lie in (0,1)");
    if (st.eps_increase <= 1) throw InputError(file + ": eps_increase must be > 1");
}

void apply_tariff_overrides(EconomicScalars& e, const std::map<std::string, std::string>& kv,
                            const std::string& file) {
    for (const auto& [key, value] : kv) {
        const double v = to_number(value, file, 0, key);
        if (key == "gas_price") e.gas_price = v;
        else if (key == "day_tariff") e.day_tariff = v;
        else if (key == "night_tariff") e.night_tariff = v;
        else if (key == "export_tariff") e.export_tariff = v;
        else if (key == "generation_tariff") e.generation_tariff = v;
        else if (key == "lifetime_years") e.lifetime_years = v;
        else if (key == "interest_rate") e.interest_rate = v;
        else if (key == "pv_panel_cost") e.pv_panel_cost = v;
        else if (key == "pv_efficiency") e.pv_efficiency = v;
        else if (key == "pv_fixed_om") e.pv_fixed_om = v;
        else if (key == "panel_area_m2") e.panel_area_m2 = v;
        else if (key == "panel_capacity_kw") e.panel_capacity_kw = v;
        else throw InputError(file, 0, key, "unknown tariff key");
    }
}

} // namespace

Scenario parse_scenario(const std::string& manifest_path) {
    const auto manifest = read_keyvalue(manifest_path);
    const fs::path dir = fs::path(manifest_path).parent_path();
    auto path_of = [&](const std::string& key) -> std::string {
        auto it = manifest.find(key);
        if (it == manifest.end())
            throw InputError(manifest_path + ": missing manifest entry '" + key + "'");
        return (dir / it->second).string();
    };
    auto optional_path = [&](const std::string& key) -> std::string {
        auto it = manifest.find(key);
        return it == manifest.end() ? std::string{} : (dir / it->second).string();
    };

    Scenario sc;
    if (auto it = manifest.find("name"); it != manifest.end()) sc.name = it->second;
    if (auto it = manifest.find("base_kva"); it != manifest.end())
        sc.base_kva = to_number(it->second, manifest_path, 0, "base_kva");
    if (auto it = manifest.find("base_voltage_v"); it != manifest.end())
        sc.base_voltage_v = to_number(it->second, manifest_path, 0, "base_voltage_v");

    sc.catalog = parse_catalog_file(path_of("catalog"));
    sc.tariffs = sc.catalog.economics;

    {
        const CsvTable t = CsvTable::read(path_of("buses"));
        for (int r = 0; r < static_cast<int>(t.rows.size()); ++r) {
            Bus b;
            b.id = t.str(r, "id");
            b.phases = parse_phases(t.str(r, "phases"), t.file, t.row_lines[r]);
            b.v_min = t.num(r, "v_min_pu");
            b.v_max = t.num(r, "v_max_pu");
            b.is_slack = to_bool(t.str(r, "is_slack"), t.file, t.row_lines[r], "is_slack");
            sc.buses.push_back(b);
        }
    }
    {
        const CsvTable t = CsvTable::read(path_of("lines"));
        for (int r = 0; r < static_cast<int>(t.rows.size()); ++r) {
            Line l;
            l.from = t.str(r, "from");
            l.to = t.str(r, "to");
            l.phases = parse_phases(t.str(r, "phases"), t.file, t.row_lines[r]);
            l.length_m = t.num(r, "length_m");
            l.z_self_per_km = {t.num(r, "r_self_ohm_per_km"), t.num(r, "x_self_ohm_per_km")};
            l.z_mutual_per_km = {t.num(r, "r_mutual_ohm_per_km"), t.num(r, "x_mutual_ohm_per_km")};
            sc.lines.push_back(l);
        }
    }
    if (const std::string p = optional_path("transformers"); !p.empty()) {
        const CsvTable t = CsvTable::read(p);
        for (int r = 0; r < static_cast<int>(t.rows.size()); ++r) {
            Transformer x;
            x.from = t.str(r, "from");
            x.to = t.str(r, "to");
            x.connection = t.str(r, "connection");
            x.phase_shift_deg = t.num(r, "phase_shift_deg");
            x.z_series = {t.num(r, "r_ohm"), t.num(r, "x_ohm")};
            x.rating_kva = t.num(r, "rating_kva");
            sc.transformers.push_back(x);
        }
    }
    {
        const CsvTable t = CsvTable::read(path_of("dwellings"));
        for (int r = 0; r < static_cast<int>(t.rows.size()); ++r) {
            Dwelling d;
            d.id = t.str(r, "id");
            d.bus = t.str(r, "bus");
            const std::string ph = t.str(r, "phase");
            if (ph.size() != 1)
                throw InputError(t.file, t.row_lines[r], "phase", "expected one phase letter");
            d.phase = phase_from_letter(ph[0]);
            d.peak_elec_kw = t.num(r, "peak_elec_kw");
            d.peak_heat_kw = t.num(r, "peak_heat_kw");
            d.max_pv_area_m2 = t.num(r, "max_pv_area_m2");
            if (t.col("power_factor", false) >= 0) d.power_factor = t.num(r, "power_factor");
            sc.dwellings.push_back(d);
        }
    }
    {
        const CsvTable t = CsvTable::read(path_of("seasons"));
        for (int r = 0; r < static_cast<int>(t.rows.size()); ++r) {
            SeasonProfile s;
            s.id = t.str(r, "season");
            s.n_days = static_cast<int>(t.num(r, "n_days"));
            s.dt_hours = t.num(r, "timestep_h");
            s.elec_scale = t.num(r, "elec_scale");
            s.heat_scale = t.num(r, "heat_scale");
            sc.seasons.push_back(s);
        }
        const CsvTable w = CsvTable::read(path_of("weather"));
        for (int r = 0; r < static_cast<int>(w.rows.size()); ++r) {
            const std::string sid = w.str(r, "season");
            SeasonProfile* season = nullptr;
            for (auto& s : sc.seasons)
                if (s.id == sid) season = &s;
            if (!season)
                throw InputError(w.file, w.row_lines[r], "season", "unknown season '" + sid + "'");
            const int t_index = static_cast<int>(w.num(r, "t"));
            if (t_index != season->steps() + 1)
                throw InputError(w.file, w.row_lines[r], "t", "time steps must run 1..T in order");
            season->t_air_c.push_back(w.num(r, "air_temp_c"));
            season->irradiance_kw_m2.push_back(w.num(r, "irradiance_kw_m2"));
            season->elec_shape.push_back(w.num(r, "elec_shape"));
            season->heat_shape.push_back(w.num(r, "heat_shape"));
        }
    }
    if (const std::string p = optional_path("tariffs"); !p.empty())
        apply_tariff_overrides(sc.tariffs, read_keyvalue(p), p);
    if (const std::string p = optional_path("settings"); !p.empty())
        apply_settings(sc.settings, read_keyvalue(p), p);

    sc.validate(manifest_path);
    return sc;
}

// ---------------------------------------------------------------------------
// Serialization (round-trip support)

namespace {

std::string fmt(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string phases_string(const std::vector<Phase>& ps) {
    std::string s;
    for (Phase p : ps) s += phase_letter(p);
    return s;
}

void write_catalog(const TechnologyCatalog& cat, std::ostream& out) {
    out << "[ashp]\n";
    for (const auto& a : cat.ashps)
        out << a.label << ' ' << fmt(a.t_min_c) << ' ' << fmt(a.unit_cost) << ' '
            << fmt(a.install_cost) << ' ' << fmt(a.cop.L) << ' ' << fmt(a.cop.x0) << ' '
            << fmt(a.cop.k) << ' ' << fmt(a.cop.b) << ' ' << fmt(a.capacity.a) << ' '
            << fmt(a.capacity.b) << ' ' << fmt(a.capacity.c) << ' ' << fmt(a.capacity.d) << '\n';
    out << "[tank]\n";
    for (const auto& t : cat.tanks)
        out << t.label << ' ' << fmt(t.volume_m3) << ' ' << fmt(t.eta_ch) << ' '
            << fmt(t.eta_disch) << ' ' << fmt(t.t_min_c) << ' ' << fmt(t.heat_loss_kw) << '\n';
    out << "[compatibility]\n";
    for (size_t p = 0; p < cat.ashps.size(); ++p)
        for (size_t k = 0; k < cat.tanks.size(); ++k)
            if (cat.compatible(static_cast<int>(p), static_cast<int>(k)))
                out << cat.ashps[p].label << ' ' << cat.tanks[k].label << ' '
                    << fmt(cat.tank_cost(static_cast<int>(p), static_cast<int>(k))) << '\n';
    out << "[boiler]\n";
    for (const auto& b : cat.boilers)
        out << b.label << ' ' << fmt(b.h_max_kw) << ' ' << fmt(b.efficiency) << ' '
            << fmt(b.unit_cost) << ' ' << fmt(b.install_cost) << '\n';
    out << "[battery]\n";
    for (const auto& c : cat.batteries)
        out << c.label << ' ' << fmt(c.capacity_kwh) << ' ' << fmt(c.max_dod) << ' '
            << fmt(c.max_soc) << ' ' << fmt(c.unit_cost) << ' ' << fmt(c.install_cost) << ' '
            << fmt(c.annual_op_cost) << ' ' << fmt(c.eta_ch) << ' ' << fmt(c.eta_disch) << ' '
            << fmt(c.max_power_kw) << '\n';
    const EconomicScalars& e = cat.economics;
    out << "[economics]\n"
        << "lifetime_years " << fmt(e.lifetime_years) << '\n'
        << "interest_rate " << fmt(e.interest_rate) << '\n'
        << "gas_price " << fmt(e.gas_price) << '\n'
        << "day_tariff " << fmt(e.day_tariff) << '\n'
        << "night_tariff " << fmt(e.night_tariff) << '\n'
        << "export_tariff " << fmt(e.export_tariff) << '\n'
        << "generation_tariff " << fmt(e.generation_tariff) << '\n'
        << "pv_panel_cost " << fmt(e.pv_panel_cost) << '\n'
        << "pv_efficiency " << fmt(e.pv_efficiency) << '\n'
        << "pv_fixed_om " << fmt(e.pv_fixed_om) << '\n'
        << "panel_area_m2 " << fmt(e.panel_area_m2) << '\n'
        << "panel_capacity_kw " << fmt(e.panel_capacity_kw) << '\n';
    const ThermalConstants& tc = cat.constants;
    out << "[constants]\n"
        << "supply_temp_c " << fmt(tc.supply_temp_c) << '\n'
        << "water_cp_kj_per_kg_k " << fmt(tc.water_cp_kj_per_kg_k) << '\n'
        << "water_density_kg_per_m3 " << fmt(tc.water_density_kg_per_m3) << '\n';
}

} // namespace

void write_scenario(const Scenario& sc, const std::string& dir) {
    fs::create_directories(dir);
    const fs::path base(dir);
    {
        std::ofstream out(base / "catalog.txt");
        write_catalog(sc.catalog, out);
    }
    {
        std::ofstream out(base / "buses.csv");
        out << "id,phases,v_min_pu,v_max_pu,is_slack\n";
        for (const auto& b : sc.buses)
            out << b.id << ',' << phases_string(b.phases) << ',' << fmt(b.v_min) << ','
                << fmt(b.v_max) << ',' << (b.is_slack ? 1 : 0) << '\n';
    }
    {
        std::ofstream out(base / "lines.csv");
        out << "from,to,phases,length_m,r_self_ohm_per_km,x_self_ohm_per_km,"
               "r_mutual_ohm_per_km,x_mutual_ohm_per_km\n";
        for (const auto& l : sc.lines)
            out << l.from << ',' << l.to << ',' << phases_string(l.phases) << ','
                << fmt(l.length_m) << ',' << fmt(l.z_self_per_km.real()) << ','
                << fmt(l.z_self_per_km.imag()) << ',' << fmt(l.z_mutual_per_km.real()) << ','
                << fmt(l.z_mutual_per_km.imag()) << '\n';
    }
    {
        std::ofstream out(base / "transformers.csv");
        out << "from,to,connection,phase_shift_deg,r_ohm,x_ohm,rating_kva\n";
        for (const auto& x : sc.transformers)
            out << x.from << ',' << x.to << ',' << x.connection << ',' << fmt(x.phase_shift_deg)
                << ',' << fmt(x.z_series.real()) << ',' << fmt(x.z_series.imag()) << ','
                << fmt(x.rating_kva) << '\n';
    }
    {
        std::ofstream out(base / "dwellings.csv");
        out << "id,bus,phase,peak_elec_kw,peak_heat_kw,max_pv_area_m2,power_factor\n";
        for (const auto& d : sc.dwellings)
            out << d.id << ',' << d.bus << ',' << phase_letter(d.phase) << ','
                << fmt(d.peak_elec_kw) << ',' << fmt(d.peak_heat_kw) << ','
                << fmt(d.max_pv_area_m2) << ',' << fmt(d.power_factor) << '\n';
    }
    {
        std::ofstream out(base / "seasons.csv");
        out << "season,n_days,timestep_h,elec_scale,heat_scale\n";
        for (const auto& s : sc.seasons)
            out << s.id << ',' << s.n_days << ',' << fmt(s.dt_hours) << ',' << fmt(s.elec_scale)
                << ',' << fmt(s.heat_scale) << '\n';
        std::ofstream w(base / "weather.csv");
        w << "season,t,air_temp_c,irradiance_kw_m2,elec_shape,heat_shape\n";
        for (const auto& s : sc.seasons)
            for (int t = 0; t < s.steps(); ++t)
                w << s.id << ',' << (t + 1) << ',' << fmt(s.t_air_c[t]) << ','
                  << fmt(s.irradiance_kw_m2[t]) << ',' << fmt(s.elec_shape[t]) << ','
                  << fmt(s.heat_shape[t]) << '\n';
    }
    {
        std::ofstream out(base / "tariffs.csv");
        const EconomicScalars& e = sc.tariffs;
        out << "gas_price " << fmt(e.gas_price) << '\n'
            << "day_tariff " << fmt(e.day_tariff) << '\n'
            << "night_tariff " << fmt(e.night_tariff) << '\n'
            << "export_tariff " << fmt(e.export_tariff) << '\n'
            << "generation_tariff " << fmt(e.generation_tariff) << '\n'
            << "lifetime_years " << fmt(e.lifetime_years) << '\n'
            << "interest_rate " << fmt(e.interest_rate) << '\n'
            << "pv_panel_cost " << fmt(e.pv_panel_cost) << '\n'
            << "pv_efficiency " << fmt(e.pv_efficiency) << '\n'
            << "pv_fixed_om " << fmt(e.pv_fixed_om) << '\n'
            << "panel_area_m2 " << fmt(e.panel_area_m2) << '\n'
            << "panel_capacity_kw " << fmt(e.panel_capacity_kw) << '\n';
    }
    {
        std::ofstream out(base / "settings.csv");
        const AlgorithmSettings& st = sc.settings;
        const char* variant = st.variant == AlgorithmSettings::Variant::Pa ? "pa"
                              : st.variant == AlgorithmSettings::Variant::PaH ? "pa-h"
                                                                              : "milp-only";
        out << "variant " << variant << '\n'
            << "time_limit_s " << fmt(st.time_limit_s) << '\n'
            << "max_iterations " << st.max_iterations << '\n'
            << "milp_gap " << fmt(st.milp_gap) << '\n'
            << "eps_initial " << fmt(st.eps_initial) << '\n'
            << "eps_reduction " << fmt(st.eps_reduction) << '\n'
            << "eps_min " << fmt(st.eps_min) << '\n'
            << "eps_increase " << fmt(st.eps_increase) << '\n'
            << "cr_max_iterations " << st.cr_max_iterations << '\n'
            << "exhaustive " << (st.exhaustive ? 1 : 0) << '\n'
            << "allow_grid_charging " << (st.allow_grid_charging ? 1 : 0) << '\n'
            << "battery_complementarity " << (st.battery_complementarity ? 1 : 0) << '\n'
            << "brute_force_cap " << st.brute_force_cap << '\n'
            << "ub_lb_tol_rel " << fmt(st.ub_lb_tol_rel) << '\n'
            << "audit_tol_pu " << fmt(st.audit_tol_pu) << '\n';
    }
    {
        std::ofstream out(base / "manifest.txt");
        out << "name " << (sc.name.empty() ? "scenario" : sc.name) << '\n'
            << "base_kva " << fmt(sc.base_kva) << '\n'
            << "base_voltage_v " << fmt(sc.base_voltage_v) << '\n'
            << "catalog catalog.txt\n"
            << "buses buses.csv\n"
            << "lines lines.csv\n"
            << "transformers transformers.csv\n"
            << "dwellings dwellings.csv\n"
            << "seasons seasons.csv\n"
            << "weather weather.csv\n"
            << "tariffs tariffs.csv\n"
            << "settings settings.csv\n";
    }
}

} // namespace lvdes
