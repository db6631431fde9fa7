#pragma once

#include <vector>

#include "mliq/pool.hpp"

namespace mliq {

// A bounded quote range [p_low, p_high]. Both efficiency measures depend only
// on the ratio p_high/p_low.
struct PriceRange {
    Price p_low = 0.0;
    Price p_high = 0.0;

    void validate() const;
};

// Capital advantage of a concentrated (tick-range) deposit over a full-range
// CPMM deposit: 1 / (1 - (p_low/p_high)^(1/4)).
double concentrated_efficiency(const PriceRange& range);

// Largest leverage whose liquidation band exactly covers the range when
// entered at the geometric mid price: (sqrt(R) + 1) / (R^(1/4) - 1)^2.
double max_leverage(const PriceRange& range);

// max_leverage / concentrated_efficiency.
double margin_vs_concentrated(const PriceRange& range);

struct EfficiencyPoint {
    double ratio = 0.0;  // R = p_high / p_low
    double concentrated = 0.0;
    double margin = 0.0;
};

// Log-spaced grid over [r_min, r_max] with exact endpoints. The parallel
// version fills points across OpenMP threads and matches the serial reference
// exactly.
std::vector<EfficiencyPoint> efficiency_curve_serial(double r_min, double r_max, int points);
std::vector<EfficiencyPoint> efficiency_curve(double r_min, double r_max, int points);

}  // namespace mliq
