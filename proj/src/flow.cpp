#include "mliq/flow.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace mliq {

namespace {

// Validation-free core shared by the scalar call and the series kernels.
FlowBounds compute_unit(const Candle& candle) {
    const double sqrt_o = std::sqrt(candle.open);
    const double sqrt_h = std::sqrt(candle.high);
    const double sqrt_l = std::sqrt(candle.low);
    const double sqrt_c = std::sqrt(candle.close);
    if (candle.open < candle.close) {
        return {sqrt_h - sqrt_l,
                (1.0 / sqrt_l - 1.0 / sqrt_o) + (1.0 / sqrt_c - 1.0 / sqrt_h)};
    }
    return {(sqrt_h - sqrt_o) + (sqrt_c - sqrt_l), 1.0 / sqrt_l - 1.0 / sqrt_h};
}

void require_liquidity(double liquidity) {
    if (!(liquidity >= 0.0)) throw std::domain_error("liquidity must be nonnegative");
}

}  // namespace

FlowBounds unit_flow_bounds(const Candle& candle) {
    validate_candle(candle);
    return compute_unit(candle);
}

FlowBounds candle_flow_bounds(const Candle& candle, double liquidity) {
    require_liquidity(liquidity);
    return scale_flow(unit_flow_bounds(candle), liquidity);
}

std::pair<double, double> fee_income(const FlowBounds& flow, double fee_fraction) {
    if (!(fee_fraction >= 0.0 && fee_fraction < 1.0))
        throw std::domain_error("fee fraction must lie in [0, 1)");
    return {fee_fraction * flow.v_x, fee_fraction * flow.v_y};
}

std::vector<FlowBounds> flow_bounds_series_serial(std::span<const Candle> candles,
                                                  double liquidity) {
    require_liquidity(liquidity);
    std::vector<FlowBounds> bounds(candles.size());
    for (std::size_t i = 0; i < candles.size(); ++i) {
        validate_candle(candles[i]);
        bounds[i] = scale_flow(compute_unit(candles[i]), liquidity);
    }
    return bounds;
}

std::vector<FlowBounds> flow_bounds_series(std::span<const Candle> candles, double liquidity) {
    require_liquidity(liquidity);
    // Exceptions may not escape an OpenMP region, so validate up front.
    for (const Candle& c : candles) validate_candle(c);
    std::vector<FlowBounds> bounds(candles.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(candles.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        bounds[static_cast<std::size_t>(i)] =
            scale_flow(compute_unit(candles[static_cast<std::size_t>(i)]), liquidity);
    return bounds;
}

}  // namespace mliq
