#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mliq/pool.hpp"

namespace mliq {

// One OHLCV record. open_time is the candle start, epoch milliseconds UTC.
struct Candle {
    std::int64_t open_time = 0;
    double open = 0.0;
    double high = 0.0;
    double low = 0.0;
    double close = 0.0;
    double volume = 0.0;
};

// Throws std::domain_error unless all prices are positive and finite,
// low <= min(open, close) and high >= max(open, close).
void validate_candle(const Candle& candle);

struct CandleSeries {
    std::vector<Candle> candles;
    std::int64_t step_ms = 0;  // 0 when fewer than two rows
};

// CSV with the exact header `open_time,open,high,low,close,volume`,
// LF line endings, open_time as integer epoch ms. Parse and invariant
// failures report the offending line/row.
CandleSeries parse_ohlcv(std::string_view text, const std::string& origin);
CandleSeries load_ohlcv(const std::filesystem::path& path);
std::string serialize_ohlcv(const CandleSeries& series);
void save_ohlcv(const CandleSeries& series, const std::filesystem::path& path);

// The three series required by a backtest, restricted to their common
// timestamps: the pair price p (Y in units of X) and the two USD legs.
struct AlignedMarket {
    std::int64_t step_ms = 0;
    std::vector<Candle> pair;
    std::vector<Candle> x_usd;
    std::vector<Candle> y_usd;
    std::size_t dropped_pair = 0;
    std::size_t dropped_x = 0;
    std::size_t dropped_y = 0;
};

AlignedMarket align(const CandleSeries& pair, const CandleSeries& x_usd,
                    const CandleSeries& y_usd);

struct PriceTriple {
    Price p = 0.0;
    double p_x = 0.0;
    double p_y = 0.0;
};

// Open prices of all three series at timestamp t (must be in the aligned index).
PriceTriple price_at(const AlignedMarket& market, std::int64_t t);

// No-arbitrage sanity: per-row |p - p_y/p_x| / p on open prices. Flagged
// (warning, not error) when the median exceeds 1%.
struct CoherenceReport {
    std::vector<double> rel_deviation;
    double median = 0.0;
    bool flagged = false;
};

CoherenceReport coherence_diagnostic(const AlignedMarket& market);

}  // namespace mliq
