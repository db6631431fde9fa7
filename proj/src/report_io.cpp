#include "mliq/report_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "mliq/errors.hpp"

namespace mliq {

std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

std::string format_metric(double value) {
    return std::isfinite(value) ? format_double(value) : std::string("undefined");
}

std::string report_json(const BacktestReport& report) {
    nlohmann::json j;
    if (std::isfinite(report.sharpe))
        j["sharpe"] = report.sharpe;
    else
        j["sharpe"] = "undefined";
    j["mdd"] = report.mdd;
    j["ror"] = report.ror;
    j["trades"] = nlohmann::json::array();
    for (const TradeRecord& trade : report.trades) {
        j["trades"].push_back({{"open_time", trade.open_time},
                               {"close_time", trade.close_time},
                               {"reason", to_string(trade.reason)},
                               {"pnl", trade.pnl}});
    }
    j["equity_curve"] = nlohmann::json::array();
    for (const EquityPoint& point : report.equity_curve) {
        j["equity_curve"].push_back({{"time", point.time},
                                     {"equity", point.equity},
                                     {"loss_ratio", point.loss_ratio},
                                     {"position_open", point.position_open}});
    }
    return j.dump(2) + "\n";
}

std::string equity_csv(const BacktestReport& report) {
    std::string out = "time,equity,loss_ratio,position_open\n";
    for (const EquityPoint& point : report.equity_curve) {
        out += std::to_string(point.time);
        out.push_back(',');
        out += format_double(point.equity);
        out.push_back(',');
        out += format_double(point.loss_ratio);
        out.push_back(',');
        out += point.position_open ? '1' : '0';
        out.push_back('\n');
    }
    return out;
}

std::string trades_csv(const BacktestReport& report) {
    std::string out = "open_time,close_time,reason,pnl\n";
    for (const TradeRecord& trade : report.trades) {
        out += std::to_string(trade.open_time);
        out.push_back(',');
        out += std::to_string(trade.close_time);
        out.push_back(',');
        out += to_string(trade.reason);
        out.push_back(',');
        out += format_double(trade.pnl);
        out.push_back('\n');
    }
    return out;
}

std::string summary_csv(std::span<const double> leverages,
                        std::span<const BacktestReport> reports) {
    if (leverages.size() != reports.size())
        throw std::logic_error("one report per leverage expected");
    std::string out = "leverage,sharpe,mdd,ror\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        out += format_double(leverages[i]);
        out.push_back(',');
        out += format_metric(reports[i].sharpe);
        out.push_back(',');
        out += format_double(reports[i].mdd);
        out.push_back(',');
        out += format_double(reports[i].ror);
        out.push_back('\n');
    }
    return out;
}

std::string efficiency_csv(std::span<const EfficiencyPoint> curve) {
    std::string out = "ratio,concentrated,margin\n";
    for (const EfficiencyPoint& point : curve) {
        out += format_double(point.ratio);
        out.push_back(',');
        out += format_double(point.concentrated);
        out.push_back(',');
        out += format_double(point.margin);
        out.push_back('\n');
    }
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot write '" + path.string() + "'");
    out << contents;
    if (!out) throw io_error("write failed for '" + path.string() + "'");
}

void write_report_files(const BacktestReport& report, const std::filesystem::path& dir,
                        const std::string& suffix) {
    write_file(dir / ("report" + suffix + ".json"), report_json(report));
    write_file(dir / ("equity" + suffix + ".csv"), equity_csv(report));
    write_file(dir / ("trades" + suffix + ".csv"), trades_csv(report));
}

}  // namespace mliq
