#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lvdes {

/// COP curve: L / (1 + exp(-k * (t_air - x0))) + b.
struct CopCurve {
    double L = 0.0;
    double x0 = 0.0; // degC
    double k = 0.0;
    double b = 0.0;
};

/// Heating-capacity curve: a*t^3 + b*t^2 + c*t + d, in kW.
struct CapacityCurve {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
};

struct AshpOption {
    std::string label;
    double t_min_c = 0.0;      // ambient cutoff; no heat output at or below
    double unit_cost = 0.0;    // GBP
    double install_cost = 0.0; // GBP
    CopCurve cop;
    CapacityCurve capacity;
};

struct TankOption {
    std::string label;
    double volume_m3 = 0.0;
    double eta_ch = 1.0;
    double eta_disch = 1.0;
    double t_min_c = 0.0;      // lowest useful water temperature
    double heat_loss_kw = 0.0; // standing loss while installed
};

struct BoilerOption {
    std::string label;
    double h_max_kw = 0.0;
    double efficiency = 1.0;
    double unit_cost = 0.0;
    double install_cost = 0.0;
};

struct BatteryOption {
    std::string label;
    double capacity_kwh = 0.0;
    double max_dod = 1.0; // usable fraction below full
    double max_soc = 1.0; // usable fraction of capacity
    double unit_cost = 0.0;
    double install_cost = 0.0;
    double annual_op_cost = 0.0; // GBP per year
    double eta_ch = 1.0;
    double eta_disch = 1.0;
    double max_power_kw = 0.0; // charging and discharging limit
};

/// Prices, tariffs and PV scalars shared by every dwelling.
struct EconomicScalars {
    double lifetime_years = 20.0;
    double interest_rate = 0.075;   // fraction per year
    double gas_price = 0.0;         // GBP/kWh
    double day_tariff = 0.0;        // GBP/kWh, outside the night window
    double night_tariff = 0.0;      // GBP/kWh, 00:00-07:00
    double export_tariff = 0.0;     // GBP/kWh paid on exported energy
    double generation_tariff = 0.0; // GBP/kWh paid on all PV output
    double pv_panel_cost = 0.0;     // GBP per panel
    double pv_efficiency = 0.0;     // fraction of irradiance converted
    double pv_fixed_om = 0.0;       // GBP per installed kW per year
    double panel_area_m2 = 0.0;
    double panel_capacity_kw = 0.0;
};

/// Physical constants for the hot-water tank heat balance.
struct ThermalConstants {
    double supply_temp_c = 55.0;           // ASHP water supply temperature
    double water_cp_kj_per_kg_k = 4.186;
    double water_density_kg_per_m3 = 1000.0;
};

/// All discrete device options plus the ASHP-tank compatibility matrix.
/// Immutable after load; safe to share across threads.
class TechnologyCatalog {
public:
    std::vector<AshpOption> ashps;
    std::vector<TankOption> tanks;
    std::vector<BoilerOption> boilers;
    std::vector<BatteryOption> batteries;
    EconomicScalars economics;
    ThermalConstants constants;

    /// Tank cost for each feasible (ashp, tank) pairing; infeasible pairs
    /// carry no value. Row-major over [ashp][tank].
    std::vector<std::optional<double>> tank_costs;

    bool compatible(int ashp, int tank) const;
    /// Tank unit cost for a feasible pairing.
    double tank_cost(int ashp, int tank) const;
    /// All feasible (ashp, tank) index pairs, in (ashp, tank) order.
    std::vector<std::pair<int, int>> feasible_combos() const;

    int ashp_index(const std::string& label) const;
    int tank_index(const std::string& label) const;
    int boiler_index(const std::string& label) const;
    int battery_index(const std::string& label) const;

    /// Checks every invariant (positive costs, efficiency ranges, curve
    /// positivity over the operating range, compatibility references).
    /// Throws InputError naming the offending entry.
    void validate(const std::string& source_name) const;
};

/// COP at the given ambient temperature. Total function.
double evaluate_cop(const AshpOption& ashp, double t_air_c);

/// Maximum heat output (kW) at the given ambient temperature. Total function.
double evaluate_capacity(const AshpOption& ashp, double t_air_c);

/// Capital recovery factor: rate*(1+rate)^n / ((1+rate)^n - 1),
/// with the zero-rate limit 1/n.
double crf(double rate, double lifetime_years);

/// Parses the sectioned key-value/tabular catalog format. The stream name is
/// used in error messages.
TechnologyCatalog parse_catalog(std::istream& in, const std::string& name);
TechnologyCatalog parse_catalog_file(const std::string& path);

/// The built-in UK dataset (four ASHPs, four tanks, four boilers, three
/// batteries and the 2022 price set). Identical to the file shipped in data/.
TechnologyCatalog load_builtin_catalog();

/// Text of the built-in catalog, in the parse_catalog format.
const std::string& builtin_catalog_text();

} // namespace lvdes
