#include "mliq/efficiency.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace mliq {

namespace {

double grid_point(double r_min, double r_max, int points, int k) {
    if (k == 0) return r_min;
    if (k == points - 1) return r_max;
    const double f = static_cast<double>(k) / static_cast<double>(points - 1);
    return std::exp(std::log(r_min) + f * (std::log(r_max) - std::log(r_min)));
}

EfficiencyPoint evaluate(double ratio) {
    const PriceRange range{1.0, ratio};
    return {ratio, concentrated_efficiency(range), max_leverage(range)};
}

void validate_grid(double r_min, double r_max, int points) {
    if (!(r_min > 1.0 && r_max > r_min)) throw std::domain_error("need 1 < r_min < r_max");
    if (points < 2) throw std::domain_error("need at least 2 grid points");
    PriceRange{1.0, r_min}.validate();
}

}  // namespace

void PriceRange::validate() const {
    if (!(p_low > 0.0 && std::isfinite(p_low)) || !(p_high > 0.0 && std::isfinite(p_high)))
        throw std::domain_error("price range bounds must be positive");
    if (!(p_low < p_high)) throw std::domain_error("price range requires p_low < p_high");
    // (R^(1/4) - 1)^2 cancels catastrophically as R -> 1.
    if (p_high / p_low - 1.0 < 1e-12)
        throw std::domain_error("price range is too narrow to evaluate");
}

double concentrated_efficiency(const PriceRange& range) {
    range.validate();
    return 1.0 / (1.0 - std::pow(range.p_low / range.p_high, 0.25));
}

double max_leverage(const PriceRange& range) {
    range.validate();
    const double ratio = range.p_high / range.p_low;
    const double quarter_root = std::pow(ratio, 0.25);
    const double dev = quarter_root - 1.0;
    return (std::sqrt(ratio) + 1.0) / (dev * dev);
}

double margin_vs_concentrated(const PriceRange& range) {
    return max_leverage(range) / concentrated_efficiency(range);
}

std::vector<EfficiencyPoint> efficiency_curve_serial(double r_min, double r_max, int points) {
    validate_grid(r_min, r_max, points);
    std::vector<EfficiencyPoint> curve(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k)
        curve[static_cast<std::size_t>(k)] = evaluate(grid_point(r_min, r_max, points, k));
    return curve;
}

std::vector<EfficiencyPoint> efficiency_curve(double r_min, double r_max, int points) {
    validate_grid(r_min, r_max, points);
    std::vector<EfficiencyPoint> curve(static_cast<std::size_t>(points));
#pragma omp parallel for schedule(static)
    for (int k = 0; k < points; ++k)
        curve[static_cast<std::size_t>(k)] = evaluate(grid_point(r_min, r_max, points, k));
    return curve;
}

}  // namespace mliq
