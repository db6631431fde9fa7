#include "mliq/market_data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mliq/errors.hpp"

namespace mliq {

namespace {

constexpr std::string_view kHeader = "open_time,open,high,low,close,volume";

[[noreturn]] void fail(const std::string& origin, std::size_t line, const std::string& what) {
    throw validation_error(origin + " line " + std::to_string(line) + ": " + what);
}

std::int64_t parse_int(std::string_view field, const std::string& origin, std::size_t line) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(field.begin(), field.end(), value);
    if (ec != std::errc{} || ptr != field.end())
        fail(origin, line, "cannot parse integer '" + std::string(field) + "'");
    return value;
}

double parse_real(std::string_view field, const std::string& origin, std::size_t line) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(field.begin(), field.end(), value);
    if (ec != std::errc{} || ptr != field.end() || !std::isfinite(value))
        fail(origin, line, "cannot parse number '" + std::string(field) + "'");
    return value;
}

std::string format_real(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

}  // namespace

void validate_candle(const Candle& c) {
    const bool positive = c.open > 0.0 && c.high > 0.0 && c.low > 0.0 && c.close > 0.0;
    const bool finite = std::isfinite(c.open) && std::isfinite(c.high) && std::isfinite(c.low) &&
                        std::isfinite(c.close);
    if (!positive || !finite) throw std::domain_error("candle prices must be positive");
    if (c.low > std::min(c.open, c.close))
        throw std::domain_error("low <= min(open, close) violated");
    if (c.high < std::max(c.open, c.close))
        throw std::domain_error("high >= max(open, close) violated");
}

CandleSeries parse_ohlcv(std::string_view text, const std::string& origin) {
    CandleSeries series;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool saw_header = false;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, eol - pos);
        const bool last = eol == text.size();
        pos = eol + 1;
        ++line_no;
        if (line.empty() && last) break;  // trailing newline
        if (line.find('\r') != std::string_view::npos)
            fail(origin, line_no, "carriage return found; LF line endings required");
        if (!saw_header) {
            if (line != kHeader)
                fail(origin, line_no, "header must be exactly '" + std::string(kHeader) + "'");
            saw_header = true;
            if (last) break;
            continue;
        }
        std::string_view fields[6];
        std::size_t field_count = 0;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == ',') {
                if (field_count == 6) fail(origin, line_no, "expected 6 comma-separated fields");
                fields[field_count++] = line.substr(start, i - start);
                start = i + 1;
            }
        }
        if (field_count != 6) fail(origin, line_no, "expected 6 comma-separated fields");

        Candle c;
        c.open_time = parse_int(fields[0], origin, line_no);
        c.open = parse_real(fields[1], origin, line_no);
        c.high = parse_real(fields[2], origin, line_no);
        c.low = parse_real(fields[3], origin, line_no);
        c.close = parse_real(fields[4], origin, line_no);
        c.volume = parse_real(fields[5], origin, line_no);

        const std::size_t row = series.candles.size();
        try {
            validate_candle(c);
        } catch (const std::domain_error& e) {
            fail(origin, line_no, "row " + std::to_string(row) + ": " + e.what());
        }
        if (c.volume < 0.0) fail(origin, line_no, "row " + std::to_string(row) + ": negative volume");

        if (row >= 1) {
            const std::int64_t prev = series.candles.back().open_time;
            if (c.open_time <= prev)
                fail(origin, line_no,
                     "row " + std::to_string(row) + ": open_time must be strictly increasing");
            const std::int64_t step = c.open_time - prev;
            if (row == 1) {
                series.step_ms = step;
            } else if (step != series.step_ms) {
                fail(origin, line_no,
                     "step gap at index " + std::to_string(row) + ": expected step " +
                         std::to_string(series.step_ms) + " ms, got " + std::to_string(step));
            }
        }
        series.candles.push_back(c);
        if (last) break;
    }
    if (!saw_header) fail(origin, 1, "empty file");
    if (series.candles.empty()) fail(origin, line_no, "no data rows");
    return series;
}

CandleSeries load_ohlcv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_ohlcv(buffer.str(), path.string());
}

std::string serialize_ohlcv(const CandleSeries& series) {
    std::string out{kHeader};
    out.push_back('\n');
    for (const Candle& c : series.candles) {
        out += std::to_string(c.open_time);
        out.push_back(',');
        out += format_real(c.open);
        out.push_back(',');
        out += format_real(c.high);
        out.push_back(',');
        out += format_real(c.low);
        out.push_back(',');
        out += format_real(c.close);
        out.push_back(',');
        out += format_real(c.volume);
        out.push_back('\n');
    }
    return out;
}

void save_ohlcv(const CandleSeries& series, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot write '" + path.string() + "'");
    out << serialize_ohlcv(series);
}

AlignedMarket align(const CandleSeries& pair, const CandleSeries& x_usd,
                    const CandleSeries& y_usd) {
    if (pair.candles.empty() || x_usd.candles.empty() || y_usd.candles.empty())
        throw validation_error("all three series must be non-empty");
    std::int64_t step = 0;
    for (const auto* s : {&pair, &x_usd, &y_usd}) {
        if (s->step_ms == 0) continue;
        if (step == 0)
            step = s->step_ms;
        else if (s->step_ms != step)
            throw validation_error("mismatched candle steps: " + std::to_string(step) + " ms vs " +
                                   std::to_string(s->step_ms) + " ms");
    }

    AlignedMarket market;
    market.step_ms = step;
    auto it_p = pair.candles.begin();
    auto it_x = x_usd.candles.begin();
    auto it_y = y_usd.candles.begin();
    while (it_p != pair.candles.end() && it_x != x_usd.candles.end() &&
           it_y != y_usd.candles.end()) {
        const std::int64_t t = std::max({it_p->open_time, it_x->open_time, it_y->open_time});
        if (it_p->open_time < t) {
            ++it_p;
        } else if (it_x->open_time < t) {
            ++it_x;
        } else if (it_y->open_time < t) {
            ++it_y;
        } else {
            market.pair.push_back(*it_p++);
            market.x_usd.push_back(*it_x++);
            market.y_usd.push_back(*it_y++);
        }
    }
    if (market.pair.empty())
        throw validation_error("timestamp intersection of the three series is empty");
    market.dropped_pair = pair.candles.size() - market.pair.size();
    market.dropped_x = x_usd.candles.size() - market.x_usd.size();
    market.dropped_y = y_usd.candles.size() - market.y_usd.size();
    return market;
}

PriceTriple price_at(const AlignedMarket& market, std::int64_t t) {
    const auto it = std::lower_bound(
        market.pair.begin(), market.pair.end(), t,
        [](const Candle& c, std::int64_t value) { return c.open_time < value; });
    if (it == market.pair.end() || it->open_time != t)
        throw std::out_of_range("timestamp " + std::to_string(t) + " not in the aligned index");
    const std::size_t i = static_cast<std::size_t>(it - market.pair.begin());
    return {market.pair[i].open, market.x_usd[i].open, market.y_usd[i].open};
}

CoherenceReport coherence_diagnostic(const AlignedMarket& market) {
    CoherenceReport report;
    report.rel_deviation.reserve(market.pair.size());
    for (std::size_t i = 0; i < market.pair.size(); ++i) {
        const double implied = market.y_usd[i].open / market.x_usd[i].open;
        const double p = market.pair[i].open;
        report.rel_deviation.push_back(std::abs(p - implied) / p);
    }
    std::vector<double> sorted = report.rel_deviation;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    report.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    report.flagged = report.median > 0.01;
    return report;
}

}  // namespace mliq
