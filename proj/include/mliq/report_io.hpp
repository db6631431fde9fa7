#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "mliq/backtest.hpp"
#include "mliq/efficiency.hpp"

namespace mliq {

// Shortest decimal string that round-trips the double exactly.
std::string format_double(double value);

// format_double, except non-finite values become "undefined".
std::string format_metric(double value);

// report.json body: {"sharpe": ..., "mdd": ..., "ror": ..., "trades": [...],
// "equity_curve": [...]}; a non-finite Sharpe serializes as "undefined".
std::string report_json(const BacktestReport& report);

// equity.csv: time,equity,loss_ratio,position_open (position_open as 0/1).
std::string equity_csv(const BacktestReport& report);

// trades.csv: open_time,close_time,reason,pnl.
std::string trades_csv(const BacktestReport& report);

// summary.csv row set for a leverage sweep: leverage,sharpe,mdd,ror.
std::string summary_csv(std::span<const double> leverages,
                        std::span<const BacktestReport> reports);

// efficiency.csv: ratio,concentrated,margin.
std::string efficiency_csv(std::span<const EfficiencyPoint> curve);

void write_file(const std::filesystem::path& path, const std::string& contents);

// report<suffix>.json, equity<suffix>.csv, trades<suffix>.csv under dir.
void write_report_files(const BacktestReport& report, const std::filesystem::path& dir,
                        const std::string& suffix = "");

}  // namespace mliq
