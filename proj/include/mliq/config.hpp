#pragma once

#include <filesystem>
#include <string>

#include "mliq/strategy.hpp"

namespace mliq {

// Run configuration, read from a flat JSON object. Keys: pair, x_usd, y_usd
// (CSV paths), alpha, beta, gamma, leverage, window (minutes), fee_fraction,
// initial_equity_usd, risk_free_annual, output_dir. Unknown keys are
// rejected. Defaults follow the strategy's reference parameters.
struct RunConfig {
    std::string pair;
    std::string x_usd;
    std::string y_usd;
    StrategyConfig strategy;
    double initial_equity_usd = 100.0;
    double risk_free_annual = 0.08;
    std::string output_dir = "out";

    static RunConfig from_json_text(const std::string& text, const std::string& origin);
    static RunConfig from_json_file(const std::filesystem::path& path);

    // Checks the strategy constraints plus initial equity; with require_paths,
    // also that all three data paths are set.
    void validate(bool require_paths) const;
};

}  // namespace mliq
