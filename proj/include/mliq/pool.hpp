#pragma once

#include <utility>

namespace mliq {

// Marginal price of Y in units of X.
using Price = double;

// Constant-product pool. Outside of a mutating call the state satisfies
// x_amount * y_amount == liquidity^2 (to ~1e-12 relative).
//
// retained_fraction is phi: the share of every swap input that enters the
// pool. The remainder (1 - phi) is the LP fee, reported to the caller and
// never reinvested.
struct Pool {
    double x_amount = 0.0;
    double y_amount = 0.0;
    double liquidity = 0.0;
    double retained_fraction = 1.0;

    static Pool from_amounts(double x, double y, double retained_fraction = 1.0);
    static Pool from_liquidity(double liquidity, Price price, double retained_fraction = 1.0);
};

struct SwapOutcome {
    double amount_out = 0.0;
    double fee_in = 0.0;  // (1 - phi) * input, denominated in the input token
};

// x/y; equals x^2/L^2 and L^2/y^2 for a well-formed pool.
Price marginal_price(const Pool& pool);

// Pool composition (x, y) = (L*sqrt(p), L/sqrt(p)) at marginal price p.
std::pair<double, double> amounts_at_price(double liquidity, Price price);

// p_new / p_old expressed through X reserves: x_new^2 / x_old^2.
double price_ratio_from_x(double x_old, double x_new);

// Deposit (dx, dy). The deposit ratio dx/dy must match the pool ratio x/y
// within 1e-9 relative. Liquidity grows to sqrt((x+dx)(y+dy)) == L(1+d),
// d = dx/x.
void add_liquidity(Pool& pool, double dx, double dy);

// Withdraw a fraction share in [0, 1] of both reserves; liquidity scales by
// (1 - share). Returns the withdrawn (dx, dy).
std::pair<double, double> remove_liquidity(Pool& pool, double share);

// Sell dx_in of X for Y: output y*phi*dx/(x + phi*dx); pool moves to
// (x + phi*dx, y - out). Fee (1-phi)*dx is returned, not pooled.
SwapOutcome swap_x_for_y(Pool& pool, double dx_in);

// Mirror image of swap_x_for_y.
SwapOutcome swap_y_for_x(Pool& pool, double dy_in);

// Amount of Y quoted between prices p_a <= p_b: L(1/sqrt(p_a) - 1/sqrt(p_b)).
double quoted_amount_y(double liquidity, Price p_a, Price p_b);

// Divergence (impermanent) loss in units of X for a position that deposited
// dx0 of X and would withdraw dx1: -(dx1 - dx0)^2 / dx0. Never positive.
double divergence_loss(double dx0, double dx1);

}  // namespace mliq
