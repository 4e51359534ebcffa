#include "lvdes/catalog.hpp"

namespace lvdes {

// The L1 unit is two M2 units in parallel, so its capacity coefficients are
// stored as exact doubles of the M2 row.
const std::string& builtin_catalog_text() {
    static const std::string text = R"(# lvdes technology catalog: UK dataset, 2022 prices.
# Units are stated per column; costs in GBP.

[ashp]
# label  tmin_C  unit_cost  install_cost  cop_L   cop_x0  cop_k    cop_b    cap_a     cap_b    cap_c    cap_d
S1       -10     2575       1931          1.438   5.358   0.8645   1.915    0.000409  0        0.06176  5.5
M1       -10     3053       2137          445.4   -1025   0.00047  -272.9   0.000966  -0.0156  0.02112  7.49
M2       -15     4861       3403          2142    300.8   0.02195  -0.6586  0.000598  -0.0014  -0.014   14.37
L1       -15     9722       6805          2142    300.8   0.02195  -0.6586  0.001196  -0.0028  -0.028   28.74

[tank]
# label  volume_m3  eta_ch  eta_disch  tmin_C  heat_loss_kW
V        0.15       0.9     0.9        45      0.048
S        0.17       0.9     0.9        45      0.051
M        0.21       0.9     0.9        45      0.064
L        0.3        0.9     0.9        45      0.087

[compatibility]
# ashp  tank  tank_cost; pairs not listed are infeasible
S1      V     3924
S1      S     3979
S1      M     4033
M1      V     4402
M1      S     4457
M1      M     4511
M2      M     6319
M2      L     6595
L1      M     6319
L1      L     6595

[boiler]
# label  hmax_kW  efficiency  unit_cost  install_cost
B24      24       0.94        792        1500
B25      25       0.93        797        1563
B29      29       0.976       742        1813
B32      32       0.98        1702       2000

[battery]
# label   capacity_kWh  max_dod  max_soc  unit_cost  install_cost  annual_op_cost  eta_ch  eta_disch  max_power_kW
RESU6.5   6.5           0.9      1        3200       480           160             0.97    0.97       4.2
RESU3.3   3.3           0.87     1        2200       330           110             0.97    0.97       3
TP2       14            0.95     1        6000       2000          300             0.95    0.95       5

[economics]
lifetime_years     20
interest_rate      0.075
gas_price          0.02514
day_tariff         0.18
night_tariff       0.08
export_tariff      0.0503
generation_tariff  0.1
pv_panel_cost      450
pv_efficiency      0.18
pv_fixed_om        12.5
panel_area_m2      1.75
panel_capacity_kw  0.25

[constants]
supply_temp_c            55
water_cp_kj_per_kg_k     4.186
water_density_kg_per_m3  1000
)";
    return text;
}

} // namespace lvdes
