//! Behavioral schedules and technology of the model economy.
//!
//! Production is Cobb-Douglas `Y = A K^alpha L^(1-alpha)`. Consumption is
//! `c0 + c1 (Y - T) - e r`, investment `I0 - d r`, money demand
//! `P kY Y exp(-b i)`. Rates `r` and `i` entering these schedules are in
//! percent points; the user cost of capital takes `r` as a fraction like
//! `delta`.

use crate::error::{Error, Result};
use crate::params::Params;

fn check_nonnegative(op: &'static str, name: &str, v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(
            op,
            format!("{name} must be a nonnegative number, got {v}"),
        ))
    }
}

fn check_positive(op: &'static str, name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(
            op,
            format!("{name} must be strictly positive, got {v}"),
        ))
    }
}

pub fn production(tfp: f64, capital: f64, labor: f64, alpha: f64) -> Result<f64> {
    check_nonnegative("production", "K", capital)?;
    check_nonnegative("production", "L", labor)?;
    Ok(tfp * capital.powf(alpha) * labor.powf(1.0 - alpha))
}

/// Marginal product of labor, `(1 - alpha) A (K / L)^alpha`.
pub fn mpl(tfp: f64, capital: f64, labor: f64, alpha: f64) -> Result<f64> {
    check_positive("mpl", "L", labor)?;
    check_nonnegative("mpl", "K", capital)?;
    Ok((1.0 - alpha) * tfp * (capital / labor).powf(alpha))
}

/// Marginal product of capital, `alpha A (L / K)^(1 - alpha)`.
pub fn mpk(tfp: f64, capital: f64, labor: f64, alpha: f64) -> Result<f64> {
    check_positive("mpk", "K", capital)?;
    check_nonnegative("mpk", "L", labor)?;
    Ok(alpha * tfp * (labor / capital).powf(1.0 - alpha))
}

/// Derivative of the marginal product of labor with respect to `L` (negative).
pub fn mpl_slope(tfp: f64, capital: f64, labor: f64, alpha: f64) -> Result<f64> {
    Ok(-alpha * mpl(tfp, capital, labor, alpha)? / labor)
}

/// Derivative of the marginal product of capital with respect to `K` (negative).
pub fn mpk_slope(tfp: f64, capital: f64, labor: f64, alpha: f64) -> Result<f64> {
    Ok(-(1.0 - alpha) * mpk(tfp, capital, labor, alpha)? / capital)
}

pub fn consumption(output: f64, real_rate: f64, p: &Params) -> f64 {
    p.c0 + p.c1 * (output - p.taxes) - p.e * real_rate
}

/// Planned private investment. Goes negative above `I0 / d`; plots clip it, solvers do not.
pub fn investment_demand(real_rate: f64, p: &Params) -> f64 {
    p.i0 - p.d * real_rate
}

/// National saving `Y - C(Y, r) - G`.
pub fn national_saving(output: f64, real_rate: f64, p: &Params) -> f64 {
    output - consumption(output, real_rate, p) - p.gov
}

/// The liquidity function `L(Y, i) = kY Y exp(-b i)`.
pub fn liquidity(output: f64, nominal_rate: f64, p: &Params) -> f64 {
    p.k_y * output * (-p.b * nominal_rate).exp()
}

/// Nominal money demand `MD = P L(Y, i)`.
pub fn money_demand(price: f64, output: f64, nominal_rate: f64, p: &Params) -> Result<f64> {
    check_positive("money_demand", "P", price)?;
    check_nonnegative("money_demand", "Y", output)?;
    Ok(price * liquidity(output, nominal_rate, p))
}

/// Rental cost of one unit of capital, `(r + delta) pK`, with `r` as a fraction.
pub fn user_cost(real_rate: f64, p: &Params) -> Result<f64> {
    let rental = real_rate + p.delta;
    if rental < 0.0 {
        return Err(Error::domain(
            "user_cost",
            format!("r + delta must be nonnegative, got {rental}"),
        ));
    }
    Ok(rental * p.p_k)
}

/// Desired capital stock: the `K` at which `mpk = uc / pK`.
pub fn capital_demand(user_cost: f64, labor: f64, p: &Params) -> Result<f64> {
    check_positive("capital_demand", "uc", user_cost)?;
    check_positive("capital_demand", "L", labor)?;
    let ratio = p.alpha * p.tfp * p.p_k / user_cost;
    Ok(labor * ratio.powf(1.0 / (1.0 - p.alpha)))
}

/// Nominal wage `W = w P`.
pub fn nominal_wage(real_wage: f64, price: f64) -> f64 {
    real_wage * price
}

/// Converts a rate in percent points to a fraction.
pub fn percent_to_fraction(rate: f64) -> f64 {
    rate / 100.0
}

pub fn fraction_to_percent(rate: f64) -> f64 {
    rate * 100.0
}
