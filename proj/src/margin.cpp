#include "mliq/margin.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mliq/errors.hpp"

namespace mliq {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::domain_error(msg);
}

void require_open(const MarginPosition& position) {
    if (position.status != PositionStatus::Open)
        throw std::logic_error("position is already closed");
}

}  // namespace

std::pair<double, double> split_collateral(double budget_usd, Price pair_price,
                                           double price_x_usd, double price_y_usd) {
    require(budget_usd > 0.0, "budget must be positive");
    require(pair_price > 0.0, "pair price must be positive");
    require(price_x_usd > 0.0 && price_y_usd > 0.0, "USD legs must be positive");
    const double denom = price_y_usd + price_x_usd * pair_price;
    return {pair_price * budget_usd / denom, budget_usd / denom};
}

double raw_loss_ratio(double leverage, Price entry_price, Price current_price) {
    require(leverage > 1.0, "leverage must exceed 1");
    require(entry_price > 0.0 && current_price > 0.0, "prices must be positive");
    const double ratio = current_price / entry_price;
    const double dev = std::sqrt(ratio) - 1.0;
    return leverage * dev * dev / (1.0 + ratio);
}

double loss_ratio(double leverage, Price entry_price, Price current_price) {
    return std::min(raw_loss_ratio(leverage, entry_price, current_price), 1.0);
}

std::pair<double, double> liquidation_bounds(double leverage) {
    require(leverage > 1.0, "leverage must exceed 1");
    const double root = std::sqrt(2.0 * leverage - 1.0);
    const double low = (leverage - root) / (leverage - 1.0);
    const double high = (leverage + root) / (leverage - 1.0);
    return {low * low, high * high};
}

double lent_liquidity(const MarginPosition& position) {
    return position.leverage * std::sqrt(position.collateral_x * position.collateral_y);
}

OpenedPosition open_margin_position(Pool& pool, double collateral_x, double collateral_y,
                                    double leverage, std::int64_t time) {
    require(collateral_x > 0.0 && collateral_y > 0.0, "collateral must be positive");
    require(leverage > 1.0, "leverage must exceed 1");
    const Price entry = marginal_price(pool);
    const double ratio = collateral_x / collateral_y;
    if (std::abs(ratio - entry) > 1e-9 * entry)
        throw std::invalid_argument("collateral ratio must equal the pool marginal price");
    add_liquidity(pool, leverage * collateral_x, leverage * collateral_y);
    MarginPosition position{collateral_x, collateral_y, leverage,
                            entry,        time,         PositionKind::Margin};
    return {position, lent_liquidity(position)};
}

bool check_liquidation(const MarginPosition& position, Price current_price) {
    require(current_price > 0.0, "price must be positive");
    const auto [low, high] = liquidation_bounds(position.leverage);
    const double ratio = current_price / position.entry_price;
    return ratio < low || ratio > high;
}

Settlement close_margin_position(MarginPosition& position, Pool& pool, Price current_price) {
    require_open(position);
    const double r_raw = raw_loss_ratio(position.leverage, position.entry_price, current_price);
    const double r = std::min(r_raw, 1.0);
    const double share = std::min(lent_liquidity(position) / pool.liquidity, 1.0);
    const auto [withdrawn_x, withdrawn_y] = remove_liquidity(pool, share);
    position.status = r_raw >= 1.0 ? PositionStatus::Liquidated : PositionStatus::ClosedVoluntary;
    return Settlement{(1.0 - r) * position.collateral_x,
                      (1.0 - r) * position.collateral_y,
                      withdrawn_x + r * position.collateral_x,
                      withdrawn_y + r * position.collateral_y,
                      r};
}

MarginPosition open_virtual_position(double lp_liquidity_available, double collateral_x,
                                     double collateral_y, double leverage,
                                     double fee_rate_per_day, std::int64_t time) {
    require(collateral_x > 0.0 && collateral_y > 0.0, "collateral must be positive");
    require(leverage > 1.0, "leverage must exceed 1");
    require(fee_rate_per_day >= 0.0, "position fee rate must be nonnegative");
    const double requested = leverage * std::sqrt(collateral_x * collateral_y);
    if (requested > lp_liquidity_available)
        throw capacity_error("requested lent liquidity exceeds what LPs can provide");
    MarginPosition position{collateral_x,
                            collateral_y,
                            leverage,
                            collateral_x / collateral_y,
                            time,
                            PositionKind::VirtualMargin};
    position.fee_rate_per_day = fee_rate_per_day;
    return position;
}

Settlement settle_virtual_position(MarginPosition& position, Price current_price,
                                   double elapsed_days) {
    require_open(position);
    require(elapsed_days >= 0.0, "elapsed time must be nonnegative");
    const double r_raw = raw_loss_ratio(position.leverage, position.entry_price, current_price);
    const double r = std::min(r_raw, 1.0);
    const double position_fee = position.fee_rate_per_day * elapsed_days;
    const double lp_fraction = std::min(r + position_fee, 1.0);
    position.status = r_raw >= 1.0 ? PositionStatus::Liquidated : PositionStatus::ClosedVoluntary;
    return Settlement{(1.0 - lp_fraction) * position.collateral_x,
                      (1.0 - lp_fraction) * position.collateral_y,
                      lp_fraction * position.collateral_x,
                      lp_fraction * position.collateral_y,
                      r};
}

}  // namespace mliq
