#pragma once

#include <span>
#include <utility>
#include <vector>

#include "mliq/market_data.hpp"

namespace mliq {

// Per-candle lower bounds on swap volume through a given liquidity:
// v_x is X sold into the pool (price up-moves), v_y is Y sold (down-moves).
struct FlowBounds {
    double v_x = 0.0;
    double v_y = 0.0;
};

// Bounds for one unit of liquidity. A candle with open < close is matched to
// the open->low->high->close ordering, anything else (including open == close)
// to open->high->low->close; of the two orderings indistinguishable from
// OHLCV data these give the smaller volumes.
FlowBounds unit_flow_bounds(const Candle& candle);

// unit_flow_bounds scaled by the position's liquidity.
FlowBounds candle_flow_bounds(const Candle& candle, double liquidity);

inline FlowBounds scale_flow(const FlowBounds& unit, double liquidity) {
    return {liquidity * unit.v_x, liquidity * unit.v_y};
}

// LP fee earned on the bounded volumes: fee_fraction * (v_x, v_y).
std::pair<double, double> fee_income(const FlowBounds& flow, double fee_fraction);

// Whole-series kernels. The parallel version partitions candles across OpenMP
// threads; results are element-wise identical to the serial reference.
std::vector<FlowBounds> flow_bounds_series_serial(std::span<const Candle> candles,
                                                  double liquidity);
std::vector<FlowBounds> flow_bounds_series(std::span<const Candle> candles, double liquidity);

}  // namespace mliq
