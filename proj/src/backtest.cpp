#include "mliq/backtest.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "mliq/errors.hpp"
#include "mliq/flow.hpp"

namespace mliq {

namespace {

constexpr double kMsPerYear = 365.0 * 86'400'000.0;

CloseReason reason_from(CloseDecision decision) {
    switch (decision) {
        case CloseDecision::TrendExit: return CloseReason::TrendExit;
        case CloseDecision::StopLoss: return CloseReason::StopLoss;
        case CloseDecision::Liquidation: return CloseReason::Liquidation;
        case CloseDecision::None: break;
    }
    throw std::logic_error("no close reason for CloseDecision::None");
}

}  // namespace

std::string to_string(CloseReason reason) {
    switch (reason) {
        case CloseReason::TrendExit: return "TrendExit";
        case CloseReason::StopLoss: return "StopLoss";
        case CloseReason::Liquidation: return "Liquidation";
        case CloseReason::EndOfData: return "EndOfData";
    }
    return "Unknown";
}

double sharpe_ratio(std::span<const EquityPoint> curve, double risk_free_annual,
                    std::int64_t step_ms) {
    if (curve.size() < 2) throw std::domain_error("Sharpe ratio needs at least 2 equity points");
    if (step_ms <= 0) throw std::domain_error("candle step must be positive");
    const double years_per_candle = static_cast<double>(step_ms) / kMsPerYear;
    const double rf_per_candle = std::pow(1.0 + risk_free_annual, years_per_candle) - 1.0;

    const std::size_t count = curve.size() - 1;
    double mean = 0.0;
    for (std::size_t i = 1; i < curve.size(); ++i)
        mean += curve[i].equity / curve[i - 1].equity - 1.0;
    mean /= static_cast<double>(count);

    double variance = 0.0;
    for (std::size_t i = 1; i < curve.size(); ++i) {
        const double d = curve[i].equity / curve[i - 1].equity - 1.0 - mean;
        variance += d * d;
    }
    const double stddev =
        count >= 2 ? std::sqrt(variance / static_cast<double>(count - 1)) : 0.0;

    const double mean_excess = mean - rf_per_candle;
    if (stddev == 0.0)  // zero variance: reported as "undefined"
        return std::copysign(std::numeric_limits<double>::infinity(), mean_excess);
    return mean_excess / stddev * std::sqrt(1.0 / years_per_candle);
}

double max_drawdown(std::span<const EquityPoint> curve) {
    if (curve.empty()) throw std::domain_error("drawdown of an empty curve");
    double peak = 0.0;
    double worst = 0.0;
    for (const EquityPoint& point : curve) {
        peak = std::max(peak, point.equity);
        if (peak > 0.0) worst = std::max(worst, (peak - point.equity) / peak);
    }
    return worst;
}

double rate_of_return(std::span<const EquityPoint> curve) {
    if (curve.empty()) throw std::domain_error("rate of return of an empty curve");
    if (!(curve.front().equity > 0.0)) throw std::domain_error("initial equity must be positive");
    return curve.back().equity / curve.front().equity;
}

BacktestReport run_backtest(const AlignedMarket& market, const StrategyConfig& config,
                            double initial_equity_usd, double risk_free_annual) {
    config.validate();
    if (market.pair.empty()) throw validation_error("market is empty");
    if (!(initial_equity_usd > 0.0)) throw validation_error("initial equity must be positive");
    const std::int64_t t_first = market.pair.front().open_time;
    const std::int64_t span = market.pair.back().open_time - t_first;
    if (config.window_ms >= span)
        throw validation_error("trend window must be shorter than the market span");

    // Flow bounds are linear in liquidity: compute them once for L = 1 and
    // scale per position. This is the data-parallel part of a run.
    const std::vector<FlowBounds> unit_bounds = flow_bounds_series(market.pair, 1.0);
    const auto bounds = liquidation_bounds(config.leverage);

    BacktestReport report;
    report.equity_curve.reserve(market.pair.size());

    double equity = initial_equity_usd;
    bool open = false;
    PositionState state;
    std::size_t window_start = 0;
    std::vector<TrendSample> samples;

    for (std::size_t i = 0; i < market.pair.size(); ++i) {
        const Candle& candle = market.pair[i];
        const std::int64_t t = candle.open_time;
        const PriceTriple prices{candle.open, market.x_usd[i].open, market.y_usd[i].open};

        while (market.pair[window_start].open_time < t - config.window_ms) ++window_start;
        std::optional<TrendFit> fit;
        if (t - t_first >= config.window_ms && i + 1 - window_start >= 2) {
            samples.clear();
            for (std::size_t j = window_start; j <= i; ++j)
                samples.push_back({market.pair[j].open_time, market.pair[j].open});
            fit = price_trend_slope(samples);
        }

        if (!open && fit && should_open(*fit, config) && equity > 0.0) {
            Pool pool = Pool::from_liquidity(1.0, prices.p);
            state = open_with_full_equity(equity, t, prices, config, pool);
            open = true;
        }

        double point_loss_ratio = 0.0;
        if (open) {
            const double ratio_high = candle.high / state.position.entry_price;
            const double ratio_low = candle.low / state.position.entry_price;
            if (ratio_high > bounds.second || ratio_low < bounds.first) {
                // The bound was crossed inside the candle: the collateral is
                // gone, only fees accrued on earlier candles remain.
                equity = config.fee_fraction * (state.cumulative_vx * prices.p_x +
                                                state.cumulative_vy * prices.p_y);
                report.trades.push_back({state.position.open_time, t, CloseReason::Liquidation,
                                         equity - state.entry_equity});
                state.position.status = PositionStatus::Liquidated;
                open = false;
            } else {
                accrue_flow(state, scale_flow(unit_bounds[i], state.lent_liquidity));
                equity = mark_to_market(state, prices, config.fee_fraction);
                point_loss_ratio =
                    loss_ratio(config.leverage, state.position.entry_price, prices.p);
                const CloseDecision decision =
                    should_close(fit, equity - state.entry_equity, state, prices.p, config);
                if (decision != CloseDecision::None) {
                    report.trades.push_back({state.position.open_time, t, reason_from(decision),
                                             equity - state.entry_equity});
                    state.position.status = decision == CloseDecision::Liquidation
                                                ? PositionStatus::Liquidated
                                                : PositionStatus::ClosedVoluntary;
                    open = false;
                } else if (i + 1 == market.pair.size()) {
                    report.trades.push_back({state.position.open_time, t, CloseReason::EndOfData,
                                             equity - state.entry_equity});
                    state.position.status = PositionStatus::ClosedVoluntary;
                    open = false;
                }
            }
        }
        report.equity_curve.push_back({t, equity, open ? point_loss_ratio : 0.0, open});
    }

    report.sharpe = sharpe_ratio(report.equity_curve, risk_free_annual, market.step_ms);
    report.mdd = max_drawdown(report.equity_curve);
    report.ror = rate_of_return(report.equity_curve);
    return report;
}

BacktestReport run_baseline_hold(const AlignedMarket& market, double initial_equity_usd,
                                 double risk_free_annual) {
    if (market.pair.empty()) throw validation_error("market is empty");
    if (!(initial_equity_usd > 0.0)) throw validation_error("initial equity must be positive");

    const PriceTriple first{market.pair.front().open, market.x_usd.front().open,
                            market.y_usd.front().open};
    const auto [dx, dy] = split_collateral(initial_equity_usd, first.p, first.p_x, first.p_y);

    BacktestReport report;
    report.equity_curve.reserve(market.pair.size());
    for (std::size_t i = 0; i < market.pair.size(); ++i) {
        const double equity = market.x_usd[i].open * dx + market.y_usd[i].open * dy;
        report.equity_curve.push_back({market.pair[i].open_time, equity, 0.0, false});
    }
    report.sharpe = sharpe_ratio(report.equity_curve, risk_free_annual, market.step_ms);
    report.mdd = max_drawdown(report.equity_curve);
    report.ror = rate_of_return(report.equity_curve);
    return report;
}

std::vector<BacktestReport> run_sweep_serial(const AlignedMarket& market,
                                             const StrategyConfig& base_config,
                                             std::span<const double> leverages,
                                             double initial_equity_usd,
                                             double risk_free_annual) {
    if (leverages.empty()) throw validation_error("leverage list is empty");
    std::vector<BacktestReport> reports(leverages.size());
    for (std::size_t i = 0; i < leverages.size(); ++i) {
        StrategyConfig config = base_config;
        config.leverage = leverages[i];
        reports[i] = run_backtest(market, config, initial_equity_usd, risk_free_annual);
    }
    return reports;
}

std::vector<BacktestReport> run_sweep(const AlignedMarket& market,
                                      const StrategyConfig& base_config,
                                      std::span<const double> leverages,
                                      double initial_equity_usd, double risk_free_annual) {
    if (leverages.empty()) throw validation_error("leverage list is empty");
    // Validate everything serially; the parallel region must not throw.
    for (double l : leverages) {
        StrategyConfig config = base_config;
        config.leverage = l;
        config.validate();
    }
    if (market.pair.empty()) throw validation_error("market is empty");
    if (!(initial_equity_usd > 0.0)) throw validation_error("initial equity must be positive");
    if (base_config.window_ms >= market.pair.back().open_time - market.pair.front().open_time)
        throw validation_error("trend window must be shorter than the market span");

    std::vector<BacktestReport> reports(leverages.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(leverages.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        StrategyConfig config = base_config;
        config.leverage = leverages[static_cast<std::size_t>(i)];
        reports[static_cast<std::size_t>(i)] =
            run_backtest(market, config, initial_equity_usd, risk_free_annual);
    }
    return reports;
}

}  // namespace mliq
