#include "mliq/pool.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mliq {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::domain_error(msg);
}

void require_swappable(const Pool& pool) {
    require(pool.x_amount > 0.0 && pool.y_amount > 0.0,
            "pool must hold both tokens to accept swaps");
}

}  // namespace

Pool Pool::from_amounts(double x, double y, double retained_fraction) {
    require(std::isfinite(x) && x >= 0.0, "x_amount must be a nonnegative real");
    require(std::isfinite(y) && y >= 0.0, "y_amount must be a nonnegative real");
    require(retained_fraction > 0.0 && retained_fraction <= 1.0,
            "retained_fraction must lie in (0, 1]");
    return Pool{x, y, std::sqrt(x * y), retained_fraction};
}

Pool Pool::from_liquidity(double liquidity, Price price, double retained_fraction) {
    auto [x, y] = amounts_at_price(liquidity, price);
    require(retained_fraction > 0.0 && retained_fraction <= 1.0,
            "retained_fraction must lie in (0, 1]");
    return Pool{x, y, liquidity, retained_fraction};
}

Price marginal_price(const Pool& pool) {
    require(pool.y_amount > 0.0, "marginal price undefined: pool holds no Y");
    return pool.x_amount / pool.y_amount;
}

std::pair<double, double> amounts_at_price(double liquidity, Price price) {
    require(price > 0.0, "price must be positive");
    require(std::isfinite(liquidity) && liquidity >= 0.0, "liquidity must be nonnegative");
    const double root = std::sqrt(price);
    return {liquidity * root, liquidity / root};
}

double price_ratio_from_x(double x_old, double x_new) {
    require(x_old > 0.0, "x_old must be positive");
    const double q = x_new / x_old;
    return q * q;
}

void add_liquidity(Pool& pool, double dx, double dy) {
    require(dx >= 0.0 && dy >= 0.0, "deposit amounts must be nonnegative");
    if (dx == 0.0 && dy == 0.0) return;
    require(pool.x_amount > 0.0 && pool.y_amount > 0.0,
            "cannot match the ratio of an empty pool");
    if (dx == 0.0 || dy == 0.0)
        throw std::invalid_argument("deposit ratio violates the pool ratio");
    const double pool_ratio = pool.x_amount / pool.y_amount;
    const double deposit_ratio = dx / dy;
    if (std::abs(deposit_ratio - pool_ratio) > 1e-9 * pool_ratio)
        throw std::invalid_argument("deposit ratio violates the pool ratio beyond 1e-9");
    pool.x_amount += dx;
    pool.y_amount += dy;
    pool.liquidity = std::sqrt(pool.x_amount * pool.y_amount);
}

std::pair<double, double> remove_liquidity(Pool& pool, double share) {
    require(share >= 0.0 && share <= 1.0, "share must lie in [0, 1]");
    const double dx = share * pool.x_amount;
    const double dy = share * pool.y_amount;
    pool.x_amount -= dx;
    pool.y_amount -= dy;
    pool.liquidity *= 1.0 - share;
    return {dx, dy};
}

SwapOutcome swap_x_for_y(Pool& pool, double dx_in) {
    require(dx_in >= 0.0, "swap input must be nonnegative");
    if (dx_in == 0.0) return {};
    require_swappable(pool);
    const double phi = pool.retained_fraction;
    const double retained = phi * dx_in;
    const double dy_out = pool.y_amount * retained / (pool.x_amount + retained);
    pool.x_amount += retained;
    pool.y_amount -= dy_out;
    return {dy_out, (1.0 - phi) * dx_in};
}

SwapOutcome swap_y_for_x(Pool& pool, double dy_in) {
    require(dy_in >= 0.0, "swap input must be nonnegative");
    if (dy_in == 0.0) return {};
    require_swappable(pool);
    const double phi = pool.retained_fraction;
    const double retained = phi * dy_in;
    const double dx_out = pool.x_amount * retained / (pool.y_amount + retained);
    pool.y_amount += retained;
    pool.x_amount -= dx_out;
    return {dx_out, (1.0 - phi) * dy_in};
}

double quoted_amount_y(double liquidity, Price p_a, Price p_b) {
    require(p_a > 0.0 && p_b > 0.0, "prices must be positive");
    require(p_a <= p_b, "price range must be ordered p_a <= p_b");
    require(std::isfinite(liquidity) && liquidity >= 0.0, "liquidity must be nonnegative");
    return liquidity * (1.0 / std::sqrt(p_a) - 1.0 / std::sqrt(p_b));
}

double divergence_loss(double dx0, double dx1) {
    require(dx0 > 0.0, "deposited amount dx0 must be positive");
    require(dx1 >= 0.0, "withdrawn amount dx1 must be nonnegative");
    const double diff = dx1 - dx0;
    return -(diff * diff) / dx0;
}

}  // namespace mliq
