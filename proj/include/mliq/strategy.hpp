#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "mliq/flow.hpp"
#include "mliq/margin.hpp"
#include "mliq/market_data.hpp"
#include "mliq/pool.hpp"

namespace mliq {

// Least-squares trend line fitted to window prices normalized by their mean,
// against time in days. slope is therefore "fraction of mean price per day";
// intercept is the fitted normalized price at the window's last sample.
struct TrendFit {
    double slope = 0.0;
    double intercept = 0.0;
    double window_days = 0.0;
    int sample_count = 0;
};

struct StrategyConfig {
    double alpha = 0.1;                         // open when |slope| <= alpha
    double beta = 0.2;                          // close when |slope| > beta
    double gamma = 0.05;                        // stop loss: PNL < -gamma * entry equity
    double leverage = 3.0;
    std::int64_t window_ms = 2 * 60 * 60 * 1000;
    double fee_fraction = 0.0015;               // 1 - phi

    // Throws validation_error naming the violated constraint.
    void validate() const;
};

struct TrendSample {
    std::int64_t time = 0;
    double price = 0.0;
};

TrendFit price_trend_slope(std::span<const TrendSample> samples);

bool should_open(const TrendFit& fit, const StrategyConfig& config);

// An open MLP position plus the bookkeeping the strategy needs: entry equity
// in USD and the cumulative bounded trade volumes w_x, w_y on the lent
// liquidity.
struct PositionState {
    MarginPosition position;
    double entry_equity = 0.0;
    double cumulative_vx = 0.0;
    double cumulative_vy = 0.0;
    double lent_liquidity = 0.0;
};

// Convert the whole equity into collateral at the current prices and open a
// leveraged position into the pool.
PositionState open_with_full_equity(double equity_usd, std::int64_t time,
                                    const PriceTriple& prices, const StrategyConfig& config,
                                    Pool& pool);

// Add one candle's flow bounds (at the position's liquidity) to w_x, w_y.
void accrue_candle(PositionState& state, const Candle& candle);

// Same accrual from precomputed bounds; used with the batch flow kernel.
void accrue_flow(PositionState& state, const FlowBounds& bounds);

// c(t) = (1-r) * collateral value + fee_fraction * (w_x p_x + w_y p_y).
double mark_to_market(const PositionState& state, const PriceTriple& prices,
                      double fee_fraction);

double pnl(const PositionState& state, const PriceTriple& prices, double fee_fraction);

enum class CloseDecision { None, TrendExit, StopLoss, Liquidation };

// Closing rules in priority order: liquidation (raw loss ratio >= 1), stop
// loss (PNL < -gamma * entry equity), trend exit (|slope| > beta).
CloseDecision should_close(const std::optional<TrendFit>& fit, double pnl_value,
                           const PositionState& state, Price current_price,
                           const StrategyConfig& config);

}  // namespace mliq
