//! Demand side: money market and LM, the classical and Keynesian crosses,
//! IS, IS-LM and aggregate demand.
//!
//! Nominal and real rates are linked by `r = i - 100 piE` (rates in percent
//! points, expected inflation as a fraction).

use serde::{Deserialize, Serialize};

use crate::curve::Curve;
use crate::econ;
use crate::error::{Error, Result};
use crate::numerics::{solve_2d, Bracket, Newton2d, SolveReport};
use crate::params::Params;

pub fn real_rate(nominal: f64, p: &Params) -> f64 {
    nominal - econ::fraction_to_percent(p.pi_e)
}

pub fn nominal_rate(real: f64, p: &Params) -> f64 {
    real + econ::fraction_to_percent(p.pi_e)
}

/// Interest rate clearing the money market, `(1 / b) ln(P kY Y / Ms)`.
pub fn money_market_eq(money_supply: f64, price: f64, output: f64, p: &Params) -> Result<f64> {
    for (name, v) in [("Ms", money_supply), ("P", price), ("Y", output)] {
        if !(v > 0.0) {
            return Err(Error::domain(
                "money_market_eq",
                format!("{name} must be strictly positive, got {v}"),
            ));
        }
    }
    Ok((price * p.k_y * output / money_supply).ln() / p.b)
}

/// The LM schedule: nominal rate at which money demand equals `Ms` given `Y` and `P`.
pub fn lm_rate(output: f64, price: f64, p: &Params) -> Result<f64> {
    money_market_eq(p.money_supply, price, output, p)
}

pub fn lm_curve(price: f64, y_grid: &[f64], p: &Params) -> Result<Curve> {
    let points = y_grid
        .iter()
        .map(|&y| Ok((y, lm_rate(y, price, p)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Curve::new("LM", "Y", "i", points))
}

fn check_mpc(op: &'static str, p: &Params) -> Result<()> {
    if p.c1 >= 1.0 {
        return Err(Error::domain(
            op,
            format!("c1 must be below 1, got {}", p.c1),
        ));
    }
    Ok(())
}

/// Planned expenditure `E = C(Y, r) + I(r) + G`.
pub fn aggregate_expenditure(output: f64, real_rate: f64, p: &Params) -> f64 {
    econ::consumption(output, real_rate, p) + econ::investment_demand(real_rate, p) + p.gov
}

/// Output where the expenditure line crosses the 45-degree line at rate `r`.
pub fn keynesian_cross_solve(real_rate: f64, p: &Params) -> Result<f64> {
    check_mpc("keynesian_cross_solve", p)?;
    // E(Y) = E(0) + c1 Y, so the fixed point is E(0) / (1 - c1).
    Ok(aggregate_expenditure(0.0, real_rate, p) / (1.0 - p.c1))
}

/// Rate at which national saving equals investment for output `Y`.
pub fn classical_cross_solve(output: f64, p: &Params) -> Result<f64> {
    let slope = p.e + p.d;
    if !(slope > 0.0) {
        return Err(Error::NoCrossing(
            "saving and investment are both flat in r".into(),
        ));
    }
    // S(r) - I(r) is linear in r with slope e + d.
    let gap = econ::national_saving(output, 0.0, p) - econ::investment_demand(0.0, p);
    Ok(-gap / slope)
}

/// Autonomous spending `c0 - c1 T + I0 + G`.
fn autonomous_spending(p: &Params) -> f64 {
    p.c0 - p.c1 * p.taxes + p.i0 + p.gov
}

/// The IS curve `Y(r) = (c0 - c1 T + I0 + G - (e + d) r) / (1 - c1)`.
pub fn is_output(real_rate: f64, p: &Params) -> Result<f64> {
    check_mpc("is_output", p)?;
    Ok((autonomous_spending(p) - (p.e + p.d) * real_rate) / (1.0 - p.c1))
}

/// Inverse of [`is_output`]: the real rate on IS at output `Y`.
pub fn is_rate(output: f64, p: &Params) -> Result<f64> {
    check_mpc("is_rate", p)?;
    let slope = p.e + p.d;
    if !(slope > 0.0) {
        return Err(Error::domain("is_rate", "IS is vertical when e + d = 0"));
    }
    Ok((autonomous_spending(p) - (1.0 - p.c1) * output) / slope)
}

/// IS sampled over a grid of real rates.
pub fn is_curve(r_grid: &[f64], p: &Params) -> Result<Curve> {
    let points = r_grid
        .iter()
        .map(|&r| Ok((is_output(r, p)?, r)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Curve::new("IS", "Y", "r", points))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IslmSolution {
    pub output: f64,
    pub nominal_rate: f64,
    pub real_rate: f64,
    pub residual: f64,
    pub iterations: usize,
}

/// Joint goods and money market equilibrium at price level `P`.
pub fn islm_solve(price: f64, p: &Params) -> Result<IslmSolution> {
    if !(price > 0.0) {
        return Err(Error::domain(
            "islm_solve",
            format!("P must be positive, got {price}"),
        ));
    }
    check_mpc("islm_solve", p)?;
    let system = |y: f64, i: f64| {
        let goods = match is_output(real_rate(i, p), p) {
            Ok(is) => y - is,
            Err(_) => f64::NAN,
        };
        let money = match lm_rate(y, price, p) {
            Ok(lm) => i - lm,
            Err(_) => f64::NAN,
        };
        (goods, money)
    };

    // Start on LM at the IS intercept output; fall back to the IS value at i = 0.
    let y_intercept = is_output(real_rate(0.0, p), p)?;
    let y0 = if y_intercept > 0.0 { y_intercept } else { 1.0 };
    let i0 = lm_rate(y0, price, p)?;
    let y_hi = (autonomous_spending(p).abs() / (1.0 - p.c1)).max(y0) * 1e3 + 1.0;
    let opts = Newton2d {
        fallback: Some((
            Bracket::new(1e-12 * y_hi, y_hi).tol_x(1e-14 * y_hi),
            Bracket::new(-1e6, 1e6).tol_x(1e-9),
        )),
        ..Newton2d::default()
    };
    let SolveReport {
        root: (output, nominal),
        residual,
        iterations,
        ..
    } = solve_2d(system, (y0, i0), opts)?;
    Ok(IslmSolution {
        output,
        nominal_rate: nominal,
        real_rate: real_rate(nominal, p),
        residual,
        iterations,
    })
}

/// Aggregate demand: IS-LM output at price level `P`.
pub fn ad_output(price: f64, p: &Params) -> Result<f64> {
    Ok(islm_solve(price, p)?.output)
}

pub fn ad_curve(p_grid: &[f64], p: &Params) -> Result<Curve> {
    let points = p_grid
        .iter()
        .map(|&price| Ok((ad_output(price, p)?, price)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Curve::new("AD", "Y", "P", points))
}
