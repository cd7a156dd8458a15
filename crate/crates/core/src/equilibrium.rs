//! Short- and long-run general equilibrium (AD-AS) and the Phillips-curve link.

use crate::curve::Curve;
use crate::demand;
use crate::econ;
use crate::error::{Error, Result};
use crate::numerics::{find_root, Bracket, SolveError};
use crate::params::Params;
use crate::state::EconState;
use crate::supply::{self, LaborMarket};

/// Unemployment from the output gap, `Ubar - omega (Y - Ybar) / Ybar`.
///
/// The model has no labor-market mechanism for this link, so it is a plain
/// linear gap rule.
pub fn okun_u(output: f64, ybar: f64, p: &Params) -> Result<f64> {
    if !(ybar > 0.0) {
        return Err(Error::domain(
            "okun_u",
            format!("Ybar must be positive, got {ybar}"),
        ));
    }
    Ok(p.u_bar - p.omega * (output - ybar) / ybar)
}

/// Expectations-augmented Phillips curve `pi = piE - beta (U - Ubar)`.
pub fn phillips(unemployment: f64, p: &Params) -> f64 {
    p.pi_e - p.beta * (unemployment - p.u_bar)
}

/// Short-run Phillips curve sampled over unemployment rates.
pub fn srpc_curve(u_grid: &[f64], p: &Params) -> Curve {
    Curve::new(
        "SRPC",
        "U[unemployment]",
        "π",
        u_grid.iter().map(|&u| (u, phillips(u, p))).collect(),
    )
}

/// The long-run Phillips curve is vertical at the natural rate.
pub fn lrpc_curve(pi_range: (f64, f64), p: &Params) -> Curve {
    Curve::vertical("LRPC", "U[unemployment]", "π", p.u_bar, pi_range)
}

/// Fills every field of the state from the demand side at `(Y, i, P)`.
fn assemble(
    p: &Params,
    labor: LaborMarket,
    ybar: f64,
    output: f64,
    nominal: f64,
    price: f64,
) -> Result<EconState> {
    let real = demand::real_rate(nominal, p);
    let consumption = econ::consumption(output, real, p);
    let unemployment = okun_u(output, ybar, p)?;
    Ok(EconState {
        output,
        consumption,
        investment: econ::investment_demand(real, p),
        saving: output - consumption - p.gov,
        price,
        nominal_rate: nominal,
        real_rate: real,
        wage: labor.wage,
        employment: labor.employment,
        unemployment,
        inflation: phillips(unemployment, p),
        full_employment_output: ybar,
        leisure: supply::leisure_choice(labor.wage, p)?.leisure,
    })
}

/// AD meets SRAS at the current price expectation.
pub fn short_run_ge(p: &Params) -> Result<EconState> {
    p.validate()?;
    let labor = supply::labor_market_eq(p)?;
    let ybar = econ::production(p.tfp, p.capital, labor.employment, p.alpha)?;

    // Work in log-price: AD - SRAS is positive for low P and negative for high P.
    let gap = |u: f64| {
        let price = u.exp();
        match (
            demand::ad_output(price, p),
            supply::sras_output(price, ybar, p),
        ) {
            (Ok(ad), Ok(sras)) => ad - sras,
            _ => f64::NAN,
        }
    };
    let center = p.price_expectation.ln();
    let (mut lo, mut hi) = (center - 1.0, center + 1.0);
    let mut widened = 0;
    while !(gap(lo) > 0.0 && gap(hi) < 0.0) {
        widened += 1;
        if widened > 60 {
            return Err(Error::NoCrossing(
                "aggregate demand and short-run supply do not cross for P > 0".into(),
            ));
        }
        if !(gap(lo) > 0.0) {
            lo -= 1.0;
        }
        if !(gap(hi) < 0.0) {
            hi += 1.0;
        }
    }
    let report =
        find_root(gap, Bracket::new(lo, hi).tol_x(1e-15).tol_f(1e-9)).map_err(|e| match e {
            SolveError::NonBracketing { .. } => {
                Error::NoCrossing("aggregate demand and short-run supply do not cross".into())
            }
            other => Error::Solve(other),
        })?;
    let price = report.root.exp();
    let islm = demand::islm_solve(price, p)?;
    assemble(p, labor, ybar, islm.output, islm.nominal_rate, price)
}

/// Long-run equilibrium on the vertical supply curve: `Y = Ybar`, the real
/// rate from IS and the price level from LM. Expectations are fulfilled, so
/// the reported `P` is also the price expectation that would sustain it.
pub fn long_run_ge(p: &Params) -> Result<EconState> {
    p.validate()?;
    let labor = supply::labor_market_eq(p)?;
    let ybar = econ::production(p.tfp, p.capital, labor.employment, p.alpha)?;
    let real = demand::is_rate(ybar, p)?;
    let nominal = demand::nominal_rate(real, p);
    // Invert Ms = P kY Ybar exp(-b i) for P.
    let price = p.money_supply / econ::liquidity(ybar, nominal, p);
    if !(price > 0.0 && price.is_finite()) {
        return Err(Error::NoCrossing(format!(
            "LM admits no positive price level at Ybar = {ybar}"
        )));
    }
    assemble(p, labor, ybar, ybar, nominal, price)
}

/// Adaptive expectations `PE <- P` repeated until the price settles.
///
/// Returns the final short-run state and the number of updates.
pub fn expectations_sweep(p: &Params, tol: f64, max_iter: usize) -> Result<(EconState, usize)> {
    let mut params = *p;
    for iter in 1..=max_iter {
        let state = short_run_ge(&params)?;
        if (state.price - params.price_expectation).abs() < tol * params.price_expectation {
            return Ok((state, iter));
        }
        params.price_expectation = state.price;
    }
    Err(Error::Solve(SolveError::NoConvergence {
        iterations: max_iter,
        residual: f64::NAN,
    }))
}

/// Market-clearing residuals of a state: goods, money, aggregate supply and labor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residuals {
    pub goods: f64,
    pub money: f64,
    pub supply: f64,
    pub labor: f64,
}

impl Residuals {
    pub fn max_abs(&self) -> f64 {
        [self.goods, self.money, self.supply, self.labor]
            .into_iter()
            .map(f64::abs)
            .fold(0.0, f64::max)
    }
}

pub fn residuals(state: &EconState, p: &Params) -> Result<Residuals> {
    let md = econ::money_demand(state.price, state.output, state.nominal_rate, p)?;
    let sras = supply::sras_output(state.price, state.full_employment_output, p)?;
    Ok(Residuals {
        goods: state.goods_residual(p.gov),
        money: p.money_supply - md,
        supply: state.output - sras,
        labor: supply::labor_supply(state.wage, p)? - supply::labor_demand(state.wage, p)?,
    })
}
