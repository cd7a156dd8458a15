//! Panel data for each diagram: sampled curves, the equilibrium marker and
//! the residual of the equation that defines that marker.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::curve::{linspace, Curve, Marker};
use crate::demand;
use crate::econ;
use crate::equilibrium;
use crate::error::{Error, Result};
use crate::graph::{BigPicture, NodeId};
use crate::params::Params;
use crate::state::EconState;
use crate::supply;

/// Points per sampled curve.
pub const SAMPLES: usize = 101;

/// Appended to curve names drawn from the pre-shock layer.
pub const BASELINE_SUFFIX: &str = " (baseline)";

pub const LM_DEFINITION: &str = "The combinations of interest rates and levels of real income for which the money market is in equilibrium OR: The set of equilibrium points between the liquidity preferences (or MD) function and the MS function";

pub const IS_DEFINITION: &str = "The equilibria where total private investment equals total saving OR: The locus of all equilibria where total spending equals an economy's total output";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Overlay {
    Baseline,
    #[default]
    Current,
    Both,
}

impl FromStr for Overlay {
    type Err = Error;

    fn from_str(s: &str) -> Result<Overlay> {
        match s {
            "baseline" => Ok(Overlay::Baseline),
            "current" => Ok(Overlay::Current),
            "both" => Ok(Overlay::Both),
            other => Err(Error::validation(
                "overlay",
                format!("expected baseline, current or both, got {other:?}"),
            )),
        }
    }
}

/// Explicit axis bounds; missing bounds are auto-scaled to three times the
/// equilibrium coordinate.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Viewport {
    pub xmin: Option<f64>,
    pub xmax: Option<f64>,
    pub ymin: Option<f64>,
    pub ymax: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PanelPayload {
    pub node_id: NodeId,
    pub curves: Vec<Curve>,
    pub equilibrium_marker: Option<Marker>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub definition: Option<String>,
    pub dirty: bool,
}

/// Parameters together with the equilibrium solved from them.
#[derive(Debug, Clone, Copy)]
pub struct Layer<'a> {
    pub params: &'a Params,
    pub state: &'a EconState,
}

/// Resolved axis bounds of a panel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ranges {
    pub x: (f64, f64),
    pub y: (f64, f64),
}

fn auto(v: f64) -> (f64, f64) {
    if v > 0.0 {
        (0.0, 3.0 * v)
    } else if v < 0.0 {
        (3.0 * v, 0.0)
    } else {
        (-1.0, 1.0)
    }
}

impl Viewport {
    pub fn resolve(&self, marker: &Marker) -> Result<Ranges> {
        let (x0, x1) = auto(marker.x);
        let (y0, y1) = auto(marker.y);
        let x = (self.xmin.unwrap_or(x0), self.xmax.unwrap_or(x1));
        let y = (self.ymin.unwrap_or(y0), self.ymax.unwrap_or(y1));
        for (name, (lo, hi)) in [("x", x), ("y", y)] {
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(Error::validation(
                    "viewport",
                    format!("{name} range [{lo}, {hi}] is empty or not finite"),
                ));
            }
        }
        Ok(Ranges { x, y })
    }
}

/// Samples `y = f(x)` across the x range. Points where `f` fails are dropped.
fn along_x(
    name: &str,
    labels: (&str, &str),
    range: (f64, f64),
    f: impl Fn(f64) -> Result<f64>,
) -> Curve {
    let points = linspace(range.0, range.1, SAMPLES)
        .into_iter()
        .map(|x| (x, f(x).unwrap_or(f64::NAN)))
        .collect();
    Curve::new(name, labels.0, labels.1, points)
}

/// Samples `x = f(y)` across the y range, for schedules drawn with the price on the vertical axis.
fn along_y(
    name: &str,
    labels: (&str, &str),
    range: (f64, f64),
    f: impl Fn(f64) -> Result<f64>,
) -> Curve {
    let points = linspace(range.0, range.1, SAMPLES)
        .into_iter()
        .map(|y| (f(y).unwrap_or(f64::NAN), y))
        .collect();
    Curve::new(name, labels.0, labels.1, points)
}

fn per_household_labor(s: &EconState, p: &Params) -> f64 {
    p.hours - s.leisure
}

fn user_cost_at(r: f64, p: &Params) -> Result<f64> {
    econ::user_cost(econ::percent_to_fraction(r), p)
}

/// The equilibrium point shown on a node's panel.
fn marker(node: NodeId, layer: Layer) -> Result<Marker> {
    let (p, s) = (layer.params, layer.state);
    let m = |name: &str, x: f64, y: f64| Ok(Marker::new(name, x, y));
    match node {
        1 => {
            let choice = supply::leisure_choice(s.wage, p)?;
            m("optimum", choice.leisure, choice.cons)
        }
        2 => m("optimum", per_household_labor(s, p), s.wage),
        3 | 5 | 6 | 7 | 18 => m("E", s.employment, s.wage),
        4 => m("E", s.employment, s.full_employment_output),
        8 => m("E", s.employment, p.capital),
        9 => m("E", p.capital, s.full_employment_output),
        10 => m(
            "E",
            p.capital,
            econ::mpk(p.tfp, p.capital, s.employment, p.alpha)?,
        ),
        11 => {
            let uc = user_cost_at(s.real_rate, p)?;
            m("K*", econ::capital_demand(uc, s.employment, p)?, uc)
        }
        12 => {
            let solow = supply::solow_solve(p)?;
            m(
                "k*",
                solow.k_star,
                p.s * supply::per_worker_output(solow.k_star, p),
            )
        }
        13 | 14 | 19 => m("E", s.output, s.price),
        15 | 16 => m("E", p.money_supply, s.nominal_rate),
        17 | 24 => m("E", s.output, s.nominal_rate),
        20 => m("E", s.unemployment, s.inflation),
        21 | 22 => m("E", s.saving, s.real_rate),
        23 => m("E", s.output, s.real_rate),
        25 => m("E", s.real_rate, user_cost_at(s.real_rate, p)?),
        26 => m("E", s.investment, s.real_rate),
        27 => m("E", s.output, s.output),
        other => Err(Error::UnknownNode(other)),
    }
}

/// Curves for one layer. The curve the marker lies on comes first.
fn curves(node: NodeId, layer: Layer, labels: (&str, &str), r: Ranges) -> Result<Vec<Curve>> {
    let (p, s) = (layer.params, layer.state);
    let (l_star, w_star, ybar) = (s.employment, s.wage, s.full_employment_output);
    let ls = || along_y("LS", labels, r.y, |w| supply::labor_supply(w, p));
    let ld = || along_y("LD", labels, r.y, |w| supply::labor_demand(w, p));
    let sras = || {
        along_y("SRAS", labels, r.y, |price| {
            supply::sras_output(price, ybar, p)
        })
    };
    let lras = || Curve::vertical("LRAS", labels.0, labels.1, ybar, r.y);
    let ad = || along_y("AD", labels, r.y, |price| demand::ad_output(price, p));
    let md = || {
        along_y("MD", labels, r.y, |i| {
            econ::money_demand(s.price, s.output, i, p)
        })
    };
    let saving = || {
        along_y("S", labels, r.y, |rate| {
            Ok(econ::national_saving(s.output, rate, p))
        })
    };
    let invest = |name: &str| {
        along_y(name, labels, r.y, |rate| {
            Ok(econ::investment_demand(rate, p))
        })
    };
    let lm = || along_x("LM", labels, r.x, |y| demand::lm_rate(y, s.price, p));

    Ok(match node {
        1 => {
            let u = supply::leisure_choice(w_star, p)?.utility;
            vec![
                along_x("Budget", labels, r.x, |l| {
                    if (0.0..=p.hours).contains(&l) {
                        Ok(p.m + w_star * (p.hours - l))
                    } else {
                        Ok(f64::NAN)
                    }
                }),
                along_x("U", labels, r.x, |l| Ok((u - p.theta * l.ln()).exp())),
            ]
        }
        2 => vec![along_y("Labor supply", labels, r.y, |w| {
            Ok(supply::leisure_choice(w, p)?.labor)
        })],
        3 => vec![ls()],
        4 => vec![along_x("PF", labels, r.x, |l| {
            econ::production(p.tfp, p.capital, l, p.alpha)
        })],
        5 => vec![along_x("MPL", labels, r.x, |l| {
            econ::mpl(p.tfp, p.capital, l, p.alpha)
        })],
        6 => vec![ld()],
        7 | 18 => vec![ls(), ld()],
        8 => [1.0, 0.5, 1.5]
            .into_iter()
            .map(|scale| {
                let level = scale * ybar;
                let name = if scale == 1.0 {
                    "Y = Ȳ".to_string()
                } else {
                    format!("Y = {scale}Ȳ")
                };
                along_x(&name, labels, r.x, |l| {
                    if !(l > 0.0) {
                        return Ok(f64::NAN);
                    }
                    Ok((level / (p.tfp * l.powf(1.0 - p.alpha))).powf(1.0 / p.alpha))
                })
            })
            .collect(),
        9 => vec![along_x("PF", labels, r.x, |k| {
            econ::production(p.tfp, k, l_star, p.alpha)
        })],
        10 => vec![along_x("MPK", labels, r.x, |k| {
            econ::mpk(p.tfp, k, l_star, p.alpha)
        })],
        11 => {
            let uc = user_cost_at(s.real_rate, p)?;
            vec![
                along_y("Capital demand", labels, r.y, |c| {
                    econ::capital_demand(c, l_star, p)
                }),
                along_x("UC", labels, r.x, |_| Ok(uc)),
            ]
        }
        12 => vec![
            along_x("s·f(k)", labels, r.x, |k| {
                Ok(p.s * supply::per_worker_output(k, p))
            }),
            along_x("(n+δ)k", labels, r.x, |k| Ok((p.n + p.delta) * k)),
            along_x("f(k)", labels, r.x, |k| Ok(supply::per_worker_output(k, p))),
        ],
        13 => vec![sras(), lras()],
        14 => vec![ad(), sras(), lras()],
        15 => vec![md()],
        16 => vec![
            md(),
            Curve::vertical("MS̄", labels.0, labels.1, p.money_supply, r.y),
        ],
        17 => vec![lm()],
        19 => vec![ad()],
        20 => vec![
            equilibrium::srpc_curve(&linspace(r.x.0, r.x.1, SAMPLES), p),
            equilibrium::lrpc_curve(r.y, p),
        ],
        21 => vec![saving()],
        22 => vec![saving(), invest("I")],
        23 => vec![along_y("IS", labels, r.y, |rate| {
            demand::is_output(rate, p)
        })],
        24 => vec![
            along_y("IS", labels, r.y, |i| {
                demand::is_output(demand::real_rate(i, p), p)
            }),
            lm(),
        ],
        25 => vec![along_x("UC", labels, r.x, |rate| user_cost_at(rate, p))],
        26 => vec![invest("I(r)")],
        27 => vec![
            along_x("E", labels, r.x, |y| {
                Ok(demand::aggregate_expenditure(y, s.real_rate, p))
            }),
            along_x("Y = E", labels, r.x, Ok),
        ],
        other => return Err(Error::UnknownNode(other)),
    })
}

/// Residual of the equation that defines the node's equilibrium marker.
pub fn defining_residual(node: NodeId, layer: Layer) -> Result<f64> {
    let (p, s) = (layer.params, layer.state);
    let mk = marker(node, layer)?;
    let max = |vals: &[f64]| vals.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let r = match node {
        1 => {
            // Budget constraint and tangency theta C = w L.
            let budget = mk.y - (p.m + s.wage * (p.hours - mk.x));
            let tangency = if mk.x < p.hours {
                p.theta * mk.y - s.wage * mk.x
            } else {
                0.0
            };
            max(&[budget, tangency])
        }
        2 => supply::leisure_choice(mk.y, p)?.labor - mk.x,
        3 => supply::labor_supply(mk.y, p)? - mk.x,
        4 | 9 => {
            econ::production(p.tfp, p.capital, s.employment, p.alpha)? - s.full_employment_output
        }
        5 => econ::mpl(p.tfp, p.capital, mk.x, p.alpha)? - mk.y,
        6 => supply::labor_demand(mk.y, p)? - mk.x,
        7 | 18 => supply::labor_supply(mk.y, p)? - supply::labor_demand(mk.y, p)?,
        8 => econ::production(p.tfp, mk.y, mk.x, p.alpha)? - s.full_employment_output,
        10 => mk.y - p.alpha * s.full_employment_output / mk.x,
        11 => p.p_k * econ::mpk(p.tfp, mk.x, s.employment, p.alpha)? - mk.y,
        12 => mk.y - (p.n + p.delta) * mk.x,
        13 => supply::sras_output(mk.y, s.full_employment_output, p)? - mk.x,
        14 => max(&[
            demand::ad_output(mk.y, p)? - mk.x,
            supply::sras_output(mk.y, s.full_employment_output, p)? - mk.x,
        ]),
        15 | 16 => econ::money_demand(s.price, s.output, mk.y, p)? - mk.x,
        17 => demand::lm_rate(mk.x, s.price, p)? - mk.y,
        19 => demand::ad_output(mk.y, p)? - mk.x,
        20 => max(&[
            equilibrium::phillips(mk.x, p) - mk.y,
            equilibrium::okun_u(s.output, s.full_employment_output, p)? - mk.x,
        ]),
        21 => econ::national_saving(s.output, mk.y, p) - mk.x,
        22 => econ::national_saving(s.output, mk.y, p) - econ::investment_demand(mk.y, p),
        23 => demand::is_output(mk.y, p)? - mk.x,
        24 => max(&[
            demand::is_output(demand::real_rate(mk.y, p), p)? - mk.x,
            demand::lm_rate(mk.x, s.price, p)? - mk.y,
        ]),
        25 => mk.y - (mk.x / 100.0 + p.delta) * p.p_k,
        26 => econ::investment_demand(mk.y, p) - mk.x,
        27 => demand::aggregate_expenditure(mk.x, s.real_rate, p) - mk.y,
        other => return Err(Error::UnknownNode(other)),
    };
    Ok(r.abs())
}

fn definition(node: NodeId) -> Option<&'static str> {
    match node {
        17 => Some(LM_DEFINITION),
        23 => Some(IS_DEFINITION),
        _ => None,
    }
}

pub(super) fn build(
    node: NodeId,
    current: Layer,
    baseline: Layer,
    overlay: Overlay,
    viewport: Viewport,
    dirty: bool,
) -> Result<PanelPayload> {
    let diagram = BigPicture::canonical().node(node)?;
    let labels = (diagram.x_label.as_str(), diagram.y_label.as_str());
    let primary = match overlay {
        Overlay::Baseline => baseline,
        Overlay::Current | Overlay::Both => current,
    };
    let primary_marker = marker(node, primary)?;
    let ranges = viewport.resolve(&primary_marker)?;
    let layers: &[(Layer, &str)] = match overlay {
        Overlay::Current => &[(current, "")],
        Overlay::Baseline => &[(baseline, BASELINE_SUFFIX)],
        Overlay::Both => &[(baseline, BASELINE_SUFFIX), (current, "")],
    };
    let mut all = Vec::new();
    for &(layer, suffix) in layers {
        let mut set = curves(node, layer, labels, ranges)?;
        for curve in &mut set {
            curve.name.push_str(suffix);
        }
        if let Some(first) = set.first_mut() {
            let m = marker(node, layer)?;
            first
                .markers
                .push(Marker::new(format!("{}{suffix}", m.name), m.x, m.y));
        }
        all.extend(set);
    }
    Ok(PanelPayload {
        node_id: node,
        curves: all,
        equilibrium_marker: Some(primary_marker),
        definition: definition(node).map(str::to_string),
        dirty,
    })
}
