#include "mliq/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mliq/errors.hpp"

namespace mliq {

namespace {

double number_at(const nlohmann::json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number())
        throw validation_error("config key '" + key + "' must be a number");
    return j[key].get<double>();
}

std::string string_at(const nlohmann::json& j, const std::string& key, std::string fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_string())
        throw validation_error("config key '" + key + "' must be a string");
    return j[key].get<std::string>();
}

}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text, const std::string& origin) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(origin + ": " + e.what());
    }
    if (!j.is_object()) throw validation_error(origin + ": config must be a JSON object");

    static const char* known[] = {"pair",        "x_usd",  "y_usd",       "alpha",
                                  "beta",        "gamma",  "leverage",    "window",
                                  "fee_fraction", "initial_equity_usd",
                                  "risk_free_annual", "output_dir"};
    for (const auto& [key, value] : j.items()) {
        bool found = false;
        for (const char* k : known) found |= key == k;
        if (!found) throw validation_error(origin + ": unknown config key '" + key + "'");
    }

    RunConfig config;
    config.pair = string_at(j, "pair", "");
    config.x_usd = string_at(j, "x_usd", "");
    config.y_usd = string_at(j, "y_usd", "");
    config.strategy.alpha = number_at(j, "alpha", config.strategy.alpha);
    config.strategy.beta = number_at(j, "beta", config.strategy.beta);
    config.strategy.gamma = number_at(j, "gamma", config.strategy.gamma);
    config.strategy.leverage = number_at(j, "leverage", config.strategy.leverage);
    const double window_minutes =
        number_at(j, "window", static_cast<double>(config.strategy.window_ms) / 60'000.0);
    config.strategy.window_ms = std::llround(window_minutes * 60'000.0);
    config.strategy.fee_fraction = number_at(j, "fee_fraction", config.strategy.fee_fraction);
    config.initial_equity_usd = number_at(j, "initial_equity_usd", config.initial_equity_usd);
    config.risk_free_annual = number_at(j, "risk_free_annual", config.risk_free_annual);
    config.output_dir = string_at(j, "output_dir", config.output_dir);
    return config;
}

RunConfig RunConfig::from_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_json_text(buffer.str(), path.string());
}

void RunConfig::validate(bool require_paths) const {
    strategy.validate();
    if (!(initial_equity_usd > 0.0))
        throw validation_error("initial_equity_usd must be positive");
    if (!std::isfinite(risk_free_annual) || risk_free_annual <= -1.0)
        throw validation_error("risk_free_annual must exceed -1");
    if (require_paths && (pair.empty() || x_usd.empty() || y_usd.empty()))
        throw validation_error("config must name the pair, x_usd and y_usd CSV paths");
    if (output_dir.empty()) throw validation_error("output_dir must not be empty");
}

}  // namespace mliq
