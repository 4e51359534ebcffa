#pragma once

#include <complex>
#include <string>
#include <vector>

#include "lvdes/catalog.hpp"

namespace lvdes {

enum class Phase : int { A = 0, B = 1, C = 2 };

char phase_letter(Phase p);
Phase phase_from_letter(char c);

struct Bus {
    std::string id;
    std::vector<Phase> phases;
    double v_min = 0.94; // per-unit magnitude bounds
    double v_max = 1.10;
    bool is_slack = false;
};

struct Line {
    std::string from, to;
    std::vector<Phase> phases;
    double length_m = 0.0;
    // per-km primitive impedances; the per-phase matrix has z_self on the
    // diagonal and z_mutual off it, scaled by length
    std::complex<double> z_self_per_km;
    std::complex<double> z_mutual_per_km;

    std::complex<double> z_self() const { return z_self_per_km * (length_m / 1000.0); }
    std::complex<double> z_mutual() const { return z_mutual_per_km * (length_m / 1000.0); }
};

struct Transformer {
    std::string from, to;      // primary, secondary
    std::string connection;    // "delta-wye"
    double phase_shift_deg = -30.0; // secondary angle minus primary angle
    std::complex<double> z_series;  // ohm, per phase, referred to secondary
    double rating_kva = 0.0;
};

struct Dwelling {
    std::string id;
    std::string bus;
    Phase phase = Phase::A;
    double peak_elec_kw = 0.0; // winter peak
    double peak_heat_kw = 0.0; // winter peak
    double max_pv_area_m2 = 0.0;
    double power_factor = 1.0; // applied to the net injection
};

struct SeasonProfile {
    std::string id;
    int n_days = 0;
    double dt_hours = 1.0;
    std::vector<double> t_air_c;
    std::vector<double> irradiance_kw_m2;
    std::vector<double> elec_shape; // normalized, max exactly 1
    std::vector<double> heat_shape; // normalized, max exactly 1
    double elec_scale = 1.0;
    double heat_scale = 1.0;

    int steps() const { return static_cast<int>(t_air_c.size()); }
};

struct AlgorithmSettings {
    enum class Variant { Pa, PaH, MilpOnly };
    Variant variant = Variant::Pa;
    double time_limit_s = 600.0;
    int max_iterations = 50;
    double milp_gap = 1e-9; // relative optimality gap for each MILP solve
    // complementarity regularization schedule (pu^2)
    double eps_initial = 1e-2;
    double eps_reduction = 0.1;
    double eps_min = 1e-8;
    double eps_increase = 10.0;
    int cr_max_iterations = 12;
    bool exhaustive = false;          // keep cutting past the bound crossing
    bool allow_grid_charging = false; // relax the purchase cap to cover charging
    bool battery_complementarity = false; // also relax charge x discharge
    int brute_force_cap = 256;
    double ub_lb_tol_rel = 1e-6;
    double audit_tol_pu = 1e-5;
};

/// The single validated input bundle. Immutable after parsing.
struct Scenario {
    std::string name;
    std::vector<Bus> buses;
    std::vector<Line> lines;
    std::vector<Transformer> transformers;
    std::vector<Dwelling> dwellings;
    std::vector<SeasonProfile> seasons;
    TechnologyCatalog catalog;
    EconomicScalars tariffs; // catalog economics with scenario overrides
    AlgorithmSettings settings;
    double base_kva = 100.0;
    double base_voltage_v = 400.0; // line-to-line, secondary side

    int bus_index(const std::string& id) const;
    int dwelling_index(const std::string& id) const;
    bool bus_has_phase(int bus, Phase ph) const;

    /// Materialized demand: peak x shape x seasonal scale, kW.
    double elec_demand(int dwelling, int season, int t) const;
    double heat_demand(int dwelling, int season, int t) const;

    /// Purchase tariff for season step t: night rate inside 00:00-07:00,
    /// day rate outside, weighted by overlap for steps straddling 07:00.
    double purchase_tariff(int season, int t) const;

    /// Throws InputError on any violated invariant.
    void validate(const std::string& source) const;
};

/// Reads a scenario bundle. `manifest_path` names a key-value manifest whose
/// entries point at the bundle's csv/catalog files (relative to it).
Scenario parse_scenario(const std::string& manifest_path);

/// Writes the full bundle (manifest + csv files + catalog) into `dir`.
/// parse_scenario(dir + "/manifest.txt") reproduces an equivalent Scenario.
void write_scenario(const Scenario& sc, const std::string& dir);

} // namespace lvdes
