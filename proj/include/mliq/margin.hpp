#pragma once

#include <cstdint>
#include <utility>

#include "mliq/pool.hpp"

namespace mliq {

enum class PositionKind { Margin, VirtualMargin };
enum class PositionStatus { Open, ClosedVoluntary, Liquidated };

// A margin (or virtual-margin) liquidity-providing position. The collateral
// ratio collateral_x/collateral_y is pinned to the entry marginal price; the
// lender holds leverage * collateral worth of liquidity on the position's
// behalf.
struct MarginPosition {
    double collateral_x = 0.0;
    double collateral_y = 0.0;
    double leverage = 0.0;
    Price entry_price = 0.0;
    std::int64_t open_time = 0;
    PositionKind kind = PositionKind::Margin;
    PositionStatus status = PositionStatus::Open;
    double fee_rate_per_day = 0.0;  // VMLP position-fee accrual rate, zero for MLPs
};

struct Settlement {
    double returned_to_owner_x = 0.0;
    double returned_to_owner_y = 0.0;
    double returned_to_lender_x = 0.0;
    double returned_to_lender_y = 0.0;
    double loss_ratio = 0.0;  // clamped r used for the split
};

// Split a USD budget c into (dx, dy) with dx/dy == pair_price and
// p_x*dx + p_y*dy == c.
std::pair<double, double> split_collateral(double budget_usd, Price pair_price,
                                           double price_x_usd, double price_y_usd);

// Divergence loss of the lent liquidity divided by the collateral value,
// l * (sqrt(p1/p0) - 1)^2 / (1 + p1/p0). May exceed 1.
double raw_loss_ratio(double leverage, Price entry_price, Price current_price);

// raw_loss_ratio clamped to [0, 1]: the lender can seize at most the
// collateral.
double loss_ratio(double leverage, Price entry_price, Price current_price);

// Price-ratio band (low, high) outside which the position is liquidated:
// ((l -+ sqrt(2l-1)) / (l-1))^2. The raw loss ratio equals 1 at both ends.
std::pair<double, double> liquidation_bounds(double leverage);

// Liquidity the position controls: leverage * sqrt(collateral_x * collateral_y).
double lent_liquidity(const MarginPosition& position);

struct OpenedPosition {
    MarginPosition position;
    double lent_liquidity = 0.0;
};

// Borrow leverage * collateral from the lender and deposit it into the pool.
// The collateral ratio must match the pool's marginal price within 1e-9.
OpenedPosition open_margin_position(Pool& pool, double collateral_x, double collateral_y,
                                    double leverage, std::int64_t time);

// True when current/entry lies outside the liquidation band.
bool check_liquidation(const MarginPosition& position, Price current_price);

// Withdraw the lent share from the pool and settle: the owner keeps
// (1-r) * collateral, the lender receives the withdrawn assets plus
// r * collateral, which restores the lent value at the close price.
Settlement close_margin_position(MarginPosition& position, Pool& pool, Price current_price);

// Take over ownership of liquidity already provided by LPs. Pool reserves do
// not move; only fee entitlement transfers.
MarginPosition open_virtual_position(double lp_liquidity_available, double collateral_x,
                                     double collateral_y, double leverage,
                                     double fee_rate_per_day, std::int64_t time);

// Return ownership to the LPs: they receive r * collateral as divergence-loss
// compensation plus the accrued position fee, both paid from the collateral
// and capped by it.
Settlement settle_virtual_position(MarginPosition& position, Price current_price,
                                   double elapsed_days);

}  // namespace mliq
