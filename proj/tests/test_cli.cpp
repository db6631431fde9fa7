#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "mliq/efficiency.hpp"
#include "mliq/market_data.hpp"
#include "mliq/report_io.hpp"
#include "fixtures.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = MLIQ_CLI_PATH;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

RunResult run_cli(const fs::path& dir, const std::string& args) {
    const fs::path out = dir / "stdout.txt";
    const fs::path err = dir / "stderr.txt";
    const std::string command =
        "'" + kCli + "' " + args + " >'" + out.string() + "' 2>'" + err.string() + "'";
    const int status = std::system(command.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out);
    result.err = slurp(err);
    return result;
}

// A small sideways fixture: 12 candles, 15-minute trend window.
struct Workspace {
    fs::path dir;

    explicit Workspace(const std::string& name) {
        dir = fs::temp_directory_path() / "mliq_cli_tests" / name;
        fs::remove_all(dir);
        fs::create_directories(dir);
        const auto pair = mliq::testing::oscillating_series(12, 1.0, 0.1);
        const auto flat = mliq::testing::constant_series(12, 1.0);
        save_ohlcv(pair, dir / "pair.csv");
        save_ohlcv(flat, dir / "x_usd.csv");
        save_ohlcv(flat, dir / "y_usd.csv");
        write_config("config.json", "");
    }

    void write_config(const std::string& name, const std::string& extra_fields) {
        std::ofstream config(dir / name);
        config << "{\n"
               << "  \"pair\": \"" << (dir / "pair.csv").string() << "\",\n"
               << "  \"x_usd\": \"" << (dir / "x_usd.csv").string() << "\",\n"
               << "  \"y_usd\": \"" << (dir / "y_usd.csv").string() << "\",\n"
               << "  \"window\": 15,\n"
               << "  \"output_dir\": \"" << (dir / "out").string() << "\"";
        if (!extra_fields.empty()) config << ",\n  " << extra_fields;
        config << "\n}\n";
    }

    std::string config_arg(const std::string& name = "config.json") const {
        return "--config '" + (dir / name).string() + "'";
    }
};

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("backtest writes the three artifacts") {
    Workspace ws("backtest_ok");
    const auto result = run_cli(ws.dir, "backtest " + ws.config_arg());
    CAPTURE(result.err);
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("sharpe=") != std::string::npos);
    CHECK(fs::exists(ws.dir / "out" / "report.json"));
    CHECK(fs::exists(ws.dir / "out" / "equity.csv"));
    CHECK(fs::exists(ws.dir / "out" / "trades.csv"));

    const std::string equity = slurp(ws.dir / "out" / "equity.csv");
    CHECK(equity.rfind("time,equity,loss_ratio,position_open\n", 0) == 0);
    const std::string trades = slurp(ws.dir / "out" / "trades.csv");
    CHECK(trades.rfind("open_time,close_time,reason,pnl\n", 0) == 0);
}

TEST_CASE("reruns are byte-identical") {
    Workspace ws("backtest_idempotent");
    REQUIRE(run_cli(ws.dir, "backtest " + ws.config_arg()).exit_code == 0);
    const std::string first = slurp(ws.dir / "out" / "report.json");
    REQUIRE(run_cli(ws.dir, "backtest " + ws.config_arg()).exit_code == 0);
    CHECK(slurp(ws.dir / "out" / "report.json") == first);
}

TEST_CASE("missing data file exits 2 and names the path") {
    Workspace ws("backtest_missing");
    fs::remove(ws.dir / "y_usd.csv");
    const auto result = run_cli(ws.dir, "backtest " + ws.config_arg());
    CHECK(result.exit_code == 2);
    CHECK(result.err.find("y_usd.csv") != std::string::npos);
}

TEST_CASE("constraint violations exit 1 and name the constraint") {
    Workspace ws("backtest_badcfg");
    ws.write_config("bad.json", "\"alpha\": 0.3, \"beta\": 0.2");
    const auto result = run_cli(ws.dir, "backtest " + ws.config_arg("bad.json"));
    CHECK(result.exit_code == 1);
    CHECK(result.err.find("alpha < beta") != std::string::npos);

    ws.write_config("unknown.json", "\"alpa\": 0.1");
    const auto unknown = run_cli(ws.dir, "backtest " + ws.config_arg("unknown.json"));
    CHECK(unknown.exit_code == 1);
    CHECK(unknown.err.find("alpa") != std::string::npos);
}

TEST_CASE("baseline runs on the same fixture") {
    Workspace ws("baseline_ok");
    const auto result = run_cli(ws.dir, "baseline " + ws.config_arg());
    CHECK(result.exit_code == 0);
    CHECK(fs::exists(ws.dir / "out" / "report.json"));
    const std::string trades = slurp(ws.dir / "out" / "trades.csv");
    CHECK(trades == "open_time,close_time,reason,pnl\n");  // hold never trades
}

TEST_CASE("sweep emits a summary with the Table-style columns") {
    Workspace ws("sweep_ok");
    const auto result = run_cli(ws.dir, "sweep " + ws.config_arg() + " --leverages 3,10");
    CAPTURE(result.err);
    CHECK(result.exit_code == 0);
    CHECK(fs::exists(ws.dir / "out" / "report_l3.json"));
    CHECK(fs::exists(ws.dir / "out" / "report_l10.json"));
    const std::string summary = slurp(ws.dir / "out" / "summary.csv");
    CHECK(summary.rfind("leverage,sharpe,mdd,ror\n", 0) == 0);
    CHECK(summary.find("\n3,") != std::string::npos);
    CHECK(summary.find("\n10,") != std::string::npos);

    CHECK(run_cli(ws.dir, "sweep " + ws.config_arg() + " --leverages 3,1").exit_code == 1);
    CHECK(run_cli(ws.dir, "sweep " + ws.config_arg()).exit_code == 1);  // list required
}

TEST_CASE("efficiency curve command") {
    Workspace ws("efficiency_ok");
    const auto result = run_cli(
        ws.dir, "efficiency --rmin 16 --rmax 256 --points 2 --out '" + ws.dir.string() + "'");
    CHECK(result.exit_code == 0);
    const std::string curve = slurp(ws.dir / "efficiency.csv");
    CHECK(curve.rfind("ratio,concentrated,margin\n", 0) == 0);
    CHECK(curve == mliq::efficiency_csv(mliq::efficiency_curve(16.0, 256.0, 2)));

    // the R=16 row carries the worked example values
    double r = 0.0, conc = 0.0, margin = 0.0;
    REQUIRE(std::sscanf(curve.c_str() + curve.find('\n') + 1, "%lf,%lf,%lf", &r, &conc,
                        &margin) == 3);
    CHECK(r == 16.0);
    CHECK(conc == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(margin == doctest::Approx(5.0).epsilon(1e-12));

    CHECK(run_cli(ws.dir, "efficiency --rmin 0.5").exit_code == 1);
    CHECK(run_cli(ws.dir, "efficiency --points 1").exit_code == 1);
}

TEST_CASE("validate prints diagnostics") {
    Workspace ws("validate_ok");
    const auto result = run_cli(ws.dir, "validate " + ws.config_arg());
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("validation ok") != std::string::npos);
    CHECK(result.out.find("median relative deviation") != std::string::npos);

    SUBCASE("corrupt row is reported with its line") {
        std::ofstream bad(ws.dir / "pair.csv", std::ios::binary);
        bad << "open_time,open,high,low,close,volume\n0,1,0.9,0.8,0.85,1\n";
        bad.close();
        const auto corrupt = run_cli(ws.dir, "validate " + ws.config_arg());
        CHECK(corrupt.exit_code == 1);
        CHECK(corrupt.err.find("line 2") != std::string::npos);
        CHECK(corrupt.err.find("high >= max(open, close)") != std::string::npos);
    }
    SUBCASE("incoherent legs warn but pass") {
        const auto skew = mliq::testing::constant_series(12, 1.1);
        save_ohlcv(skew, ws.dir / "y_usd.csv");
        const auto warned = run_cli(ws.dir, "validate " + ws.config_arg());
        CHECK(warned.exit_code == 0);
        CHECK(warned.out.find("warning") != std::string::npos);
    }
}

TEST_CASE("help names the reference defaults") {
    Workspace ws("help");
    const auto result = run_cli(ws.dir, "backtest --help");
    CHECK(result.exit_code == 0);
    for (const char* needle : {"alpha=0.1", "beta=0.2", "gamma=0.05", "fee_fraction=0.0015",
                               "window=120", "risk_free_annual=0.08"})
        CHECK(result.out.find(needle) != std::string::npos);

    const auto eff = run_cli(ws.dir, "efficiency --help");
    CHECK(eff.exit_code == 0);
    CHECK(eff.out.find("1.001") != std::string::npos);
}

TEST_SUITE_END();
