#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mliq/market_data.hpp"
#include "mliq/strategy.hpp"

namespace mliq {

struct EquityPoint {
    std::int64_t time = 0;
    double equity = 0.0;
    double loss_ratio = 0.0;  // r(t) while a position is open, 0 when flat
    bool position_open = false;
};

enum class CloseReason { TrendExit, StopLoss, Liquidation, EndOfData };

std::string to_string(CloseReason reason);

struct TradeRecord {
    std::int64_t open_time = 0;
    std::int64_t close_time = 0;
    CloseReason reason = CloseReason::EndOfData;
    double pnl = 0.0;
};

struct BacktestReport {
    double sharpe = 0.0;  // non-finite means "undefined" (zero return variance)
    double mdd = 0.0;
    double ror = 0.0;
    std::vector<TradeRecord> trades;
    std::vector<EquityPoint> equity_curve;
};

// Annualized Sharpe of per-candle equity returns against a compounding annual
// risk-free rate. Zero return variance yields a signed-infinity sentinel.
double sharpe_ratio(std::span<const EquityPoint> curve, double risk_free_annual,
                    std::int64_t step_ms);

// Largest peak-to-trough fractional decline, in [0, 1].
double max_drawdown(std::span<const EquityPoint> curve);

// Final equity over initial equity.
double rate_of_return(std::span<const EquityPoint> curve);

// Drive the MLP strategy over the aligned market, one decision per candle at
// its open, with intra-candle liquidation checked against the candle extremes.
// Deterministic: identical inputs give identical reports.
BacktestReport run_backtest(const AlignedMarket& market, const StrategyConfig& config,
                            double initial_equity_usd, double risk_free_annual = 0.08);

// Buy-and-hold benchmark: split the initial equity at the first candle per the
// pair price and hold both legs to the end.
BacktestReport run_baseline_hold(const AlignedMarket& market, double initial_equity_usd,
                                 double risk_free_annual = 0.08);

// One backtest per leverage. The parallel version distributes runs across
// OpenMP threads; reports match the serial reference exactly.
std::vector<BacktestReport> run_sweep_serial(const AlignedMarket& market,
                                             const StrategyConfig& base_config,
                                             std::span<const double> leverages,
                                             double initial_equity_usd,
                                             double risk_free_annual = 0.08);
std::vector<BacktestReport> run_sweep(const AlignedMarket& market,
                                      const StrategyConfig& base_config,
                                      std::span<const double> leverages,
                                      double initial_equity_usd,
                                      double risk_free_annual = 0.08);

}  // namespace mliq
