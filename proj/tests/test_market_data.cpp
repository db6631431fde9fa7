#include <doctest.h>

#include <filesystem>
#include <string>

#include "mliq/errors.hpp"
#include "mliq/market_data.hpp"
#include "fixtures.hpp"

using namespace mliq;

namespace {

std::string with_header(const std::string& rows) {
    return "open_time,open,high,low,close,volume\n" + rows;
}

}  // namespace

TEST_SUITE_BEGIN("market_data");

TEST_CASE("parsing a clean file") {
    const auto series = parse_ohlcv(
        with_header("0,1,1.2,0.9,1.1,5\n300000,1.1,1.3,1.0,1.2,6\n"), "test");
    CHECK(series.candles.size() == 2);
    CHECK(series.step_ms == 300000);
    CHECK(series.candles[0].open == 1.0);
    CHECK(series.candles[1].volume == 6.0);
}

TEST_CASE("price-ordering violations are named") {
    CHECK_THROWS_WITH_AS(parse_ohlcv(with_header("0,1.0,0.9,0.8,0.85,1\n"), "t"),
                         doctest::Contains("high >= max(open, close)"), validation_error);
    CHECK_THROWS_WITH_AS(parse_ohlcv(with_header("0,1.0,1.2,1.05,1.1,1\n"), "t"),
                         doctest::Contains("low <= min(open, close)"), validation_error);
    CHECK_THROWS_WITH_AS(parse_ohlcv(with_header("0,-1,1,0.5,0.9,1\n"), "t"),
                         doctest::Contains("positive"), validation_error);
}

TEST_CASE("step gaps are located") {
    const std::string text =
        with_header("0,1,1,1,1,1\n300000,1,1,1,1,1\n900000,1,1,1,1,1\n");
    CHECK_THROWS_WITH_AS(parse_ohlcv(text, "t"), doctest::Contains("step gap at index 2"),
                         validation_error);
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_WITH_AS(parse_ohlcv(with_header("0,abc,1,1,1,1\n"), "t"),
                         doctest::Contains("line 2"), validation_error);
    CHECK_THROWS_WITH_AS(parse_ohlcv(with_header("0,1,1,1,1\n"), "t"),
                         doctest::Contains("6 comma-separated fields"), validation_error);
    CHECK_THROWS_WITH_AS(parse_ohlcv("time,open\n", "t"), doctest::Contains("header"),
                         validation_error);
    CHECK_THROWS_WITH_AS(parse_ohlcv("", "t"), doctest::Contains("empty"), validation_error);
    CHECK_THROWS_WITH_AS(parse_ohlcv(with_header(""), "t"), doctest::Contains("no data rows"),
                         validation_error);
    CHECK_THROWS_WITH_AS(parse_ohlcv(with_header("0,1,1,1,1,1\r\n"), "t"),
                         doctest::Contains("LF"), validation_error);
    CHECK_THROWS_WITH_AS(
        parse_ohlcv(with_header("300,1,1,1,1,1\n0,1,1,1,1,1\n"), "t"),
        doctest::Contains("strictly increasing"), validation_error);
}

TEST_CASE("missing file is an io error") {
    CHECK_THROWS_AS(load_ohlcv("/nonexistent/really_not_there.csv"), io_error);
}

TEST_CASE("serialize and reload is a fixed point") {
    const auto series = parse_ohlcv(
        with_header("0,1.0,1.25,0.875,1.125,5\n300000,0.1,0.30000000000000004,0.05,0.2,6\n"),
        "test");
    const std::string first = serialize_ohlcv(series);
    const auto reloaded = parse_ohlcv(first, "roundtrip");
    CHECK(serialize_ohlcv(reloaded) == first);
    REQUIRE(reloaded.candles.size() == series.candles.size());
    for (std::size_t i = 0; i < series.candles.size(); ++i) {
        CHECK(reloaded.candles[i].open_time == series.candles[i].open_time);
        CHECK(reloaded.candles[i].open == series.candles[i].open);
        CHECK(reloaded.candles[i].high == series.candles[i].high);
        CHECK(reloaded.candles[i].low == series.candles[i].low);
        CHECK(reloaded.candles[i].close == series.candles[i].close);
        CHECK(reloaded.candles[i].volume == series.candles[i].volume);
    }
}

TEST_CASE("save and load round trip through a file") {
    const auto dir = std::filesystem::temp_directory_path() / "mliq_md_test";
    std::filesystem::create_directories(dir);
    const auto series = testing::oscillating_series(10, 1.0, 0.1);
    save_ohlcv(series, dir / "series.csv");
    const auto loaded = load_ohlcv(dir / "series.csv");
    CHECK(serialize_ohlcv(loaded) == serialize_ohlcv(series));
}

TEST_CASE("alignment keeps the timestamp intersection") {
    const auto full = testing::constant_series(5, 2.0);
    SUBCASE("identical timestamps keep every row") {
        const auto market = align(full, full, full);
        CHECK(market.pair.size() == 5);
        CHECK(market.dropped_pair == 0);
    }
    SUBCASE("a missing middle timestamp is dropped everywhere") {
        CandleSeries pair = full;
        pair.candles.erase(pair.candles.begin() + 2);
        pair.step_ms = 0;  // step unknown; alignment goes by timestamps
        const auto market = align(pair, full, full);
        CHECK(market.pair.size() == 4);
        CHECK(market.dropped_pair == 0);
        CHECK(market.dropped_x == 1);
        CHECK(market.dropped_y == 1);
        for (const auto& c : market.pair) CHECK(c.open_time != full.candles[2].open_time);
    }
    SUBCASE("disjoint timestamps cannot align") {
        const auto shifted = testing::constant_series(5, 2.0, /*t0=*/7);
        CHECK_THROWS_WITH_AS(align(full, shifted, full), doctest::Contains("empty"),
                             validation_error);
    }
    SUBCASE("mismatched steps are rejected") {
        const auto slow = testing::constant_series(5, 2.0, 0, 2 * testing::kStep5m);
        CHECK_THROWS_WITH_AS(align(full, slow, full), doctest::Contains("step"),
                             validation_error);
    }
}

TEST_CASE("price projection at a timestamp") {
    const auto market =
        align(testing::constant_series(3, 0.05), testing::constant_series(3, 40000.0),
              testing::constant_series(3, 2000.0));
    const auto [p, p_x, p_y] = price_at(market, testing::kStep5m);
    CHECK(p == 0.05);
    CHECK(p_x == 40000.0);
    CHECK(p_y == 2000.0);
    const auto first = price_at(market, 0);
    CHECK(first.p == 0.05);
    CHECK_THROWS_AS(price_at(market, 123), std::out_of_range);
}

TEST_CASE("coherence diagnostic flags inconsistent legs") {
    const auto coherent =
        align(testing::constant_series(5, 0.05), testing::constant_series(5, 40000.0),
              testing::constant_series(5, 2000.0));
    const auto clean = coherence_diagnostic(coherent);
    CHECK(clean.median == 0.0);
    CHECK_FALSE(clean.flagged);

    const auto skewed =
        align(testing::constant_series(5, 0.055), testing::constant_series(5, 40000.0),
              testing::constant_series(5, 2000.0));
    const auto warned = coherence_diagnostic(skewed);
    CHECK(warned.median > 0.01);
    CHECK(warned.flagged);
}

TEST_SUITE_END();
