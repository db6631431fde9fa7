#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mliq/backtest.hpp"
#include "mliq/config.hpp"
#include "mliq/efficiency.hpp"
#include "mliq/errors.hpp"
#include "mliq/market_data.hpp"
#include "mliq/report_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

mliq::AlignedMarket load_market(const mliq::RunConfig& config) {
    const auto pair = mliq::load_ohlcv(config.pair);
    const auto x_usd = mliq::load_ohlcv(config.x_usd);
    const auto y_usd = mliq::load_ohlcv(config.y_usd);
    return mliq::align(pair, x_usd, y_usd);
}

std::filesystem::path prepare_output_dir(const std::string& dir) {
    std::filesystem::path path(dir);
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    if (ec) throw mliq::io_error("cannot create output directory '" + dir + "': " + ec.message());
    return path;
}

void print_summary(const char* label, const mliq::BacktestReport& report) {
    std::printf("%s: sharpe=%s mdd=%s ror=%s trades=%zu\n", label,
                mliq::format_metric(report.sharpe).c_str(), mliq::format_double(report.mdd).c_str(),
                mliq::format_double(report.ror).c_str(), report.trades.size());
}

int cmd_backtest(const std::string& config_path, const std::string& out_override) {
    auto config = mliq::RunConfig::from_json_file(config_path);
    if (!out_override.empty()) config.output_dir = out_override;
    config.validate(/*require_paths=*/true);
    const auto market = load_market(config);
    const auto report = mliq::run_backtest(market, config.strategy, config.initial_equity_usd,
                                           config.risk_free_annual);
    const auto dir = prepare_output_dir(config.output_dir);
    mliq::write_report_files(report, dir);
    print_summary("backtest", report);
    return kExitOk;
}

int cmd_baseline(const std::string& config_path, const std::string& out_override) {
    auto config = mliq::RunConfig::from_json_file(config_path);
    if (!out_override.empty()) config.output_dir = out_override;
    config.validate(/*require_paths=*/true);
    const auto market = load_market(config);
    const auto report =
        mliq::run_baseline_hold(market, config.initial_equity_usd, config.risk_free_annual);
    const auto dir = prepare_output_dir(config.output_dir);
    mliq::write_report_files(report, dir);
    print_summary("baseline", report);
    return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& out_override,
              const std::vector<double>& leverages) {
    if (leverages.empty()) throw mliq::validation_error("leverage list is empty");
    for (double l : leverages)
        if (!(l > 1.0))
            throw mliq::validation_error("every sweep leverage must exceed 1, got " +
                                         mliq::format_double(l));
    auto config = mliq::RunConfig::from_json_file(config_path);
    if (!out_override.empty()) config.output_dir = out_override;
    config.validate(/*require_paths=*/true);
    const auto market = load_market(config);
    const auto reports = mliq::run_sweep(market, config.strategy, leverages,
                                         config.initial_equity_usd, config.risk_free_annual);
    const auto dir = prepare_output_dir(config.output_dir);
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const std::string suffix = "_l" + mliq::format_double(leverages[i]);
        mliq::write_report_files(reports[i], dir, suffix);
        print_summary(("sweep l=" + mliq::format_double(leverages[i])).c_str(), reports[i]);
    }
    mliq::write_file(dir / "summary.csv", mliq::summary_csv(leverages, reports));
    return kExitOk;
}

int cmd_efficiency(double r_min, double r_max, int points, const std::string& out_dir) {
    const auto curve = mliq::efficiency_curve(r_min, r_max, points);
    const auto dir = prepare_output_dir(out_dir);
    mliq::write_file(dir / "efficiency.csv", mliq::efficiency_csv(curve));
    std::printf("efficiency: wrote %d rows over ratio [%s, %s]\n", points,
                mliq::format_double(r_min).c_str(), mliq::format_double(r_max).c_str());
    return kExitOk;
}

int cmd_validate(const std::string& config_path) {
    auto config = mliq::RunConfig::from_json_file(config_path);
    config.validate(/*require_paths=*/true);
    const auto pair = mliq::load_ohlcv(config.pair);
    const auto x_usd = mliq::load_ohlcv(config.x_usd);
    const auto y_usd = mliq::load_ohlcv(config.y_usd);
    std::printf("pair: %zu candles, step %lld ms\n", pair.candles.size(),
                static_cast<long long>(pair.step_ms));
    std::printf("x_usd: %zu candles, step %lld ms\n", x_usd.candles.size(),
                static_cast<long long>(x_usd.step_ms));
    std::printf("y_usd: %zu candles, step %lld ms\n", y_usd.candles.size(),
                static_cast<long long>(y_usd.step_ms));
    const auto market = mliq::align(pair, x_usd, y_usd);
    std::printf("aligned: %zu rows (dropped pair=%zu x_usd=%zu y_usd=%zu)\n",
                market.pair.size(), market.dropped_pair, market.dropped_x, market.dropped_y);
    const auto coherence = mliq::coherence_diagnostic(market);
    std::printf("pair vs USD legs: median relative deviation %s\n",
                mliq::format_double(coherence.median).c_str());
    if (coherence.flagged)
        std::printf("warning: pair and USD legs disagree by more than 1%% (median %s); "
                    "check the data sources\n",
                    mliq::format_double(coherence.median).c_str());
    std::printf("validation ok\n");
    return kExitOk;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const mliq::io_error& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return kExitIo;
    } catch (const mliq::capacity_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"margin-liquidity CPMM backtester and capital-efficiency analyzer"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_override;
    std::vector<double> leverages;
    double r_min = 1.001;
    double r_max = 1000.0;
    int points = 200;
    std::string efficiency_out = ".";

    const std::string config_help =
        "JSON run configuration; defaults: alpha=0.1 beta=0.2 gamma=0.05 leverage=3 "
        "window=120 (minutes) fee_fraction=0.0015 risk_free_annual=0.08 "
        "initial_equity_usd=100 output_dir=out";
    auto add_config_opts = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, config_help)->required();
        cmd->add_option("--out", out_override, "override the configured output directory");
    };

    auto* backtest =
        app.add_subcommand("backtest", "run the margin liquidity-providing strategy");
    add_config_opts(backtest);

    auto* sweep = app.add_subcommand("sweep", "backtest one leverage per list entry and "
                                              "write summary.csv (leverage,sharpe,mdd,ror)");
    add_config_opts(sweep);
    sweep->add_option("--leverages", leverages, "comma-separated leverage list, each > 1")
        ->required()
        ->delimiter(',');

    auto* baseline = app.add_subcommand("baseline", "buy-and-hold benchmark on the same data");
    add_config_opts(baseline);

    auto* efficiency = app.add_subcommand(
        "efficiency", "emit capital-efficiency curve CSV (ratio,concentrated,margin)");
    efficiency->add_option("--rmin", r_min, "lowest p_high/p_low ratio (> 1)")
        ->capture_default_str();
    efficiency->add_option("--rmax", r_max, "highest p_high/p_low ratio")->capture_default_str();
    efficiency->add_option("--points", points, "grid size (>= 2)")->capture_default_str();
    efficiency->add_option("--out", efficiency_out, "output directory")->capture_default_str();

    auto* validate = app.add_subcommand("validate", "check the CSV inputs and report "
                                                    "alignment and coherence diagnostics");
    validate->add_option("--config", config_path, config_help)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    if (backtest->parsed()) return guarded([&] { return cmd_backtest(config_path, out_override); });
    if (sweep->parsed())
        return guarded([&] { return cmd_sweep(config_path, out_override, leverages); });
    if (baseline->parsed()) return guarded([&] { return cmd_baseline(config_path, out_override); });
    if (efficiency->parsed())
        return guarded([&] { return cmd_efficiency(r_min, r_max, points, efficiency_out); });
    if (validate->parsed()) return guarded([&] { return cmd_validate(config_path); });
    return kExitValidation;
}
