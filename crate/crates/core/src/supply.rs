//! Supply side: household labor choice, the labor market, full-employment
//! output, aggregate supply and the Solow model.
//!
//! Households maximize `ln(cons) + theta ln(leisure)` subject to
//! `cons = m + w (H - leisure)`. All `Nh` households are identical.

use serde::{Deserialize, Serialize};

use crate::econ;
use crate::error::{Error, Result};
use crate::numerics::{find_root, Bracket, SolveError};
use crate::params::Params;

/// Wage search interval for the labor-market crossing.
pub const WAGE_SEARCH_MIN: f64 = 1e-9;
pub const WAGE_SEARCH_MAX: f64 = 1e9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HouseholdChoice {
    pub leisure: f64,
    pub labor: f64,
    pub cons: f64,
    pub utility: f64,
}

impl HouseholdChoice {
    pub const FIELDS: &'static [&'static str] = &["leisure", "labor", "cons", "utility"];
}

/// Change in hours worked split into substitution and income effects.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlutskyDecomposition {
    pub total: f64,
    pub substitution: f64,
    pub income: f64,
}

impl SlutskyDecomposition {
    pub const FIELDS: &'static [&'static str] = &["total", "substitution", "income"];
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolowSolution {
    #[serde(rename = "kStar")]
    pub k_star: f64,
    #[serde(rename = "kGold")]
    pub k_gold: f64,
    #[serde(rename = "cStar")]
    pub c_star: f64,
}

impl SolowSolution {
    pub const FIELDS: &'static [&'static str] = &["kStar", "kGold", "cStar"];
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaborMarket {
    pub wage: f64,
    pub employment: f64,
}

fn check_wage(op: &'static str, w: f64) -> Result<()> {
    if w > 0.0 && w.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(
            op,
            format!("wage must be strictly positive, got {w}"),
        ))
    }
}

fn utility(cons: f64, leisure: f64, theta: f64) -> f64 {
    if theta == 0.0 {
        cons.ln()
    } else {
        cons.ln() + theta * leisure.ln()
    }
}

pub fn leisure_choice(w: f64, p: &Params) -> Result<HouseholdChoice> {
    check_wage("leisure_choice", w)?;
    let interior = p.theta * (p.m + w * p.hours) / ((1.0 + p.theta) * w);
    let leisure = interior.clamp(0.0, p.hours);
    let labor = p.hours - leisure;
    let cons = p.m + w * labor;
    Ok(HouseholdChoice {
        leisure,
        labor,
        cons,
        utility: utility(cons, leisure, p.theta),
    })
}

/// Hours worked at `w1` by a household compensated to keep the utility it had at `w0`.
fn compensated_labor(w0: f64, w1: f64, p: &Params) -> Result<f64> {
    if p.theta == 0.0 {
        return Ok(p.hours);
    }
    let u0 = leisure_choice(w0, p)?.utility;
    // Along the tangency theta cons = w leisure, so U = ln(w / theta) + (1 + theta) ln(leisure).
    let leisure = ((u0 - (w1 / p.theta).ln()) / (1.0 + p.theta)).exp();
    Ok(p.hours - leisure.clamp(0.0, p.hours))
}

pub fn slutsky(w0: f64, w1: f64, p: &Params) -> Result<SlutskyDecomposition> {
    check_wage("slutsky", w0)?;
    check_wage("slutsky", w1)?;
    let before = leisure_choice(w0, p)?.labor;
    let after = leisure_choice(w1, p)?.labor;
    let total = after - before;
    let substitution = if w1 == w0 {
        0.0
    } else {
        compensated_labor(w0, w1, p)? - before
    };
    Ok(SlutskyDecomposition {
        total,
        substitution,
        income: total - substitution,
    })
}

/// Aggregate hours supplied, `Nh` times one household's labor.
pub fn labor_supply(w: f64, p: &Params) -> Result<f64> {
    Ok(p.households * leisure_choice(w, p)?.labor)
}

/// Hours demanded by competitive firms, from `mpl = w`.
pub fn labor_demand(w: f64, p: &Params) -> Result<f64> {
    check_wage("labor_demand", w)?;
    Ok(((1.0 - p.alpha) * p.tfp * p.capital.powf(p.alpha) / w).powf(1.0 / p.alpha))
}

pub fn labor_market_eq(p: &Params) -> Result<LaborMarket> {
    // Bisection in log-wage: the crossing can sit anywhere across many orders of magnitude.
    let excess = |u: f64| {
        let w = u.exp();
        match (labor_demand(w, p), labor_supply(w, p)) {
            (Ok(d), Ok(s)) => d - s,
            _ => f64::NAN,
        }
    };
    let bracket = Bracket::new(WAGE_SEARCH_MIN.ln(), WAGE_SEARCH_MAX.ln()).tol_x(1e-15);
    let report = find_root(excess, bracket).map_err(|e| match e {
        SolveError::NonBracketing { .. } => Error::NoCrossing(format!(
            "labor supply and demand do not cross for wages in ({WAGE_SEARCH_MIN}, {WAGE_SEARCH_MAX}]"
        )),
        other => Error::Solve(other),
    })?;
    let wage = report.root.exp();
    Ok(LaborMarket {
        wage,
        employment: labor_demand(wage, p)?,
    })
}

/// Output at full employment, `F(K, L*)`.
pub fn full_employment_output(p: &Params) -> Result<f64> {
    let market = labor_market_eq(p)?;
    econ::production(p.tfp, p.capital, market.employment, p.alpha)
}

/// Short-run supply `Y = Ybar (P / PE)^(1 / gamma)`, the inverse of `P = PE (Y / Ybar)^gamma`.
pub fn sras_output(price: f64, ybar: f64, p: &Params) -> Result<f64> {
    if !(price > 0.0) {
        return Err(Error::domain(
            "sras_output",
            format!("P must be positive, got {price}"),
        ));
    }
    if !(p.price_expectation > 0.0) {
        return Err(Error::domain("sras_output", "PE must be positive"));
    }
    Ok(ybar * (price / p.price_expectation).powf(1.0 / p.gamma))
}

/// Price on the short-run supply curve at output `y`.
pub fn sras_price(y: f64, ybar: f64, p: &Params) -> f64 {
    p.price_expectation * (y / ybar).powf(p.gamma)
}

/// The vertical long-run supply curve sits at full-employment output.
pub fn lras_output(p: &Params) -> Result<f64> {
    full_employment_output(p)
}

/// Per-worker production `f(k) = A k^alpha`.
pub fn per_worker_output(k: f64, p: &Params) -> f64 {
    p.tfp * k.powf(p.alpha)
}

pub fn solow_solve(p: &Params) -> Result<SolowSolution> {
    let dilution = p.n + p.delta;
    if !(dilution > 0.0) {
        return Err(Error::domain("solow_solve", "n + delta must be positive"));
    }
    if !(p.s > 0.0 && p.s < 1.0) {
        return Err(Error::domain(
            "solow_solve",
            "saving rate must satisfy 0 < s < 1",
        ));
    }
    let exponent = 1.0 / (1.0 - p.alpha);
    let k_star = (p.s * p.tfp / dilution).powf(exponent);
    let k_gold = (p.alpha * p.tfp / dilution).powf(exponent);
    let c_star = per_worker_output(k_star, p) - dilution * k_star;
    Ok(SolowSolution {
        k_star,
        k_gold,
        c_star,
    })
}
