#include "mliq/strategy.hpp"

#include <cmath>
#include <stdexcept>

#include "mliq/errors.hpp"

namespace mliq {

namespace {

constexpr double kMsPerDay = 86'400'000.0;

}  // namespace

void StrategyConfig::validate() const {
    if (!(alpha > 0.0)) throw validation_error("alpha must be positive");
    if (!(alpha < beta)) throw validation_error("alpha < beta required");
    if (!(gamma > 0.0 && gamma < 1.0)) throw validation_error("gamma must lie in (0, 1)");
    if (!(leverage > 1.0)) throw validation_error("leverage must exceed 1");
    if (!(window_ms > 0)) throw validation_error("window must be positive");
    if (!(fee_fraction >= 0.0 && fee_fraction < 1.0))
        throw validation_error("fee_fraction must lie in [0, 1)");
}

TrendFit price_trend_slope(std::span<const TrendSample> samples) {
    if (samples.size() < 2) throw std::domain_error("trend fit needs at least 2 samples");
    const std::int64_t t_last = samples.back().time;

    double mean_price = 0.0;
    for (const TrendSample& s : samples) mean_price += s.price;
    mean_price /= static_cast<double>(samples.size());
    if (!(mean_price > 0.0)) throw std::domain_error("window mean price must be positive");

    double mean_tau = 0.0;
    for (const TrendSample& s : samples)
        mean_tau += static_cast<double>(s.time - t_last) / kMsPerDay;
    mean_tau /= static_cast<double>(samples.size());

    double cov = 0.0;
    double var = 0.0;
    double tau_min = static_cast<double>(samples.front().time - t_last) / kMsPerDay;
    double tau_max = tau_min;
    for (const TrendSample& s : samples) {
        const double tau = static_cast<double>(s.time - t_last) / kMsPerDay;
        const double dt = tau - mean_tau;
        cov += dt * (s.price / mean_price - 1.0);
        var += dt * dt;
        tau_min = std::min(tau_min, tau);
        tau_max = std::max(tau_max, tau);
    }
    if (var == 0.0) throw std::domain_error("trend fit needs a nonzero time span");

    TrendFit fit;
    fit.slope = cov / var;
    fit.intercept = 1.0 - fit.slope * mean_tau;  // normalized price at the last sample
    fit.window_days = tau_max - tau_min;
    fit.sample_count = static_cast<int>(samples.size());
    return fit;
}

bool should_open(const TrendFit& fit, const StrategyConfig& config) {
    return std::abs(fit.slope) <= config.alpha;
}

PositionState open_with_full_equity(double equity_usd, std::int64_t time,
                                    const PriceTriple& prices, const StrategyConfig& config,
                                    Pool& pool) {
    const auto [dx, dy] = split_collateral(equity_usd, prices.p, prices.p_x, prices.p_y);
    const OpenedPosition opened =
        open_margin_position(pool, dx, dy, config.leverage, time);
    return {opened.position, equity_usd, 0.0, 0.0, opened.lent_liquidity};
}

void accrue_candle(PositionState& state, const Candle& candle) {
    accrue_flow(state, candle_flow_bounds(candle, state.lent_liquidity));
}

void accrue_flow(PositionState& state, const FlowBounds& bounds) {
    state.cumulative_vx += bounds.v_x;
    state.cumulative_vy += bounds.v_y;
}

double mark_to_market(const PositionState& state, const PriceTriple& prices,
                      double fee_fraction) {
    const double r = loss_ratio(state.position.leverage, state.position.entry_price, prices.p);
    const double collateral_value =
        prices.p_x * state.position.collateral_x + prices.p_y * state.position.collateral_y;
    const double fee_value =
        fee_fraction * (state.cumulative_vx * prices.p_x + state.cumulative_vy * prices.p_y);
    return (1.0 - r) * collateral_value + fee_value;
}

double pnl(const PositionState& state, const PriceTriple& prices, double fee_fraction) {
    return mark_to_market(state, prices, fee_fraction) - state.entry_equity;
}

CloseDecision should_close(const std::optional<TrendFit>& fit, double pnl_value,
                           const PositionState& state, Price current_price,
                           const StrategyConfig& config) {
    if (raw_loss_ratio(state.position.leverage, state.position.entry_price, current_price) >= 1.0)
        return CloseDecision::Liquidation;
    if (pnl_value < -config.gamma * state.entry_equity) return CloseDecision::StopLoss;
    if (fit && std::abs(fit->slope) > config.beta) return CloseDecision::TrendExit;
    return CloseDecision::None;
}

}  // namespace mliq
