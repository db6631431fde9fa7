#pragma once

// Synthetic market builders shared by the unit, CLI and acceptance suites.

#include <cmath>
#include <cstdint>
#include <vector>

#include "mliq/market_data.hpp"

namespace mliq::testing {

constexpr std::int64_t kStep5m = 5 * 60 * 1000;
constexpr std::int64_t kMsPerDayI = 86'400'000;

inline CandleSeries constant_series(std::size_t n, double price,
                                    std::int64_t t0 = 0, std::int64_t step = kStep5m) {
    CandleSeries series;
    series.step_ms = n >= 2 ? step : 0;
    for (std::size_t i = 0; i < n; ++i)
        series.candles.push_back(
            {t0 + static_cast<std::int64_t>(i) * step, price, price, price, price, 1.0});
    return series;
}

// o = c = base, h = base * (1 + swing), l = base * (1 - swing): the sideways
// fixture. The open == close tie lands in the bearish flow branch.
inline CandleSeries oscillating_series(std::size_t n, double base, double swing,
                                       std::int64_t t0 = 0, std::int64_t step = kStep5m) {
    CandleSeries series;
    series.step_ms = n >= 2 ? step : 0;
    for (std::size_t i = 0; i < n; ++i)
        series.candles.push_back({t0 + static_cast<std::int64_t>(i) * step, base,
                                  base * (1.0 + swing), base * (1.0 - swing), base, 1.0});
    return series;
}

// Flat candles whose level compounds at `daily_growth` per day (o=h=l=c).
inline CandleSeries drifting_series(std::size_t n, double start, double daily_growth,
                                    std::int64_t t0 = 0, std::int64_t step = kStep5m) {
    CandleSeries series;
    series.step_ms = n >= 2 ? step : 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double days = static_cast<double>(static_cast<std::int64_t>(i) * step) /
                            static_cast<double>(kMsPerDayI);
        const double price = start * std::pow(1.0 + daily_growth, days);
        series.candles.push_back(
            {t0 + static_cast<std::int64_t>(i) * step, price, price, price, price, 1.0});
    }
    return series;
}

// Aligned market with a sideways pair and flat USD legs at 1.0.
inline AlignedMarket sideways_market(std::size_t n, double swing = 0.1) {
    return align(oscillating_series(n, 1.0, swing), constant_series(n, 1.0),
                 constant_series(n, 1.0));
}

// Aligned market where the pair drifts and the Y leg follows it (p_x = 1).
inline AlignedMarket trending_market(std::size_t n, double daily_growth) {
    const CandleSeries pair = drifting_series(n, 1.0, daily_growth);
    return align(pair, constant_series(n, 1.0), pair);
}

}  // namespace mliq::testing
