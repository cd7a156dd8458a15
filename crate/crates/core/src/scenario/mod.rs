//! Scenarios: a parameter set, its baseline equilibrium and a shock history.
//!
//! A scenario is persisted as one JSON document. The document stores only the
//! current parameters; the starting parameters are recovered by undoing the
//! shocks in reverse, so the history is the single source of truth for replay.

mod http;
mod panel;
mod store;

use serde::{Deserialize, Serialize};

pub use http::{router, serve, ADDR_ENV, DATA_ENV, DEFAULT_ADDR, DEFAULT_DATA_DIR};
pub use panel::{
    defining_residual, Layer, Overlay, PanelPayload, Ranges, Viewport, BASELINE_SUFFIX,
    IS_DEFINITION, LM_DEFINITION, SAMPLES,
};
pub use store::ScenarioStore;

use crate::equilibrium::short_run_ge;
use crate::error::{Error, Result};
use crate::graph::{BigPicture, NodeId, PropagationPlan};
use crate::params::Params;
use crate::state::EconState;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Shock {
    pub field: String,
    pub old_value: f64,
    pub new_value: f64,
    /// Milliseconds since the Unix epoch.
    pub timestamp: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Scenario {
    pub id: String,
    pub params: Params,
    pub baseline: EconState,
    pub shocks: Vec<Shock>,
    pub current: EconState,
    pub last_plan: PropagationPlan,
}

impl Scenario {
    pub fn new(id: impl Into<String>, params: Params) -> Result<Scenario> {
        params.validate()?;
        let baseline = short_run_ge(&params)?;
        Ok(Scenario {
            id: id.into(),
            params,
            baseline,
            shocks: Vec::new(),
            current: baseline,
            last_plan: PropagationPlan::default(),
        })
    }

    /// Parameters before the first shock.
    pub fn initial_params(&self) -> Result<Params> {
        let mut params = self.params;
        for shock in self.shocks.iter().rev() {
            if params.get(&shock.field) != Some(shock.new_value) {
                return Err(Error::Config(format!(
                    "shock history of {} is inconsistent at field {}",
                    self.id, shock.field
                )));
            }
            params.set(&shock.field, shock.old_value)?;
        }
        Ok(params)
    }

    /// The scenario after setting `field` to `value`. `self` is unchanged.
    pub fn shocked(
        &self,
        field: &str,
        value: f64,
        timestamp: u64,
    ) -> Result<(Scenario, PropagationPlan)> {
        let old_value = self
            .params
            .get(field)
            .ok_or_else(|| Error::UnknownField(field.to_string()))?;
        let params = self.params.with(field, value)?;
        params.validate()?;
        let current = short_run_ge(&params)?;
        let plan = BigPicture::canonical().propagate(&[field])?;
        let mut next = self.clone();
        next.params = params;
        next.current = current;
        next.shocks.push(Shock {
            field: field.to_string(),
            old_value,
            new_value: value,
            timestamp,
        });
        next.last_plan = plan.clone();
        Ok((next, plan))
    }

    /// Rebuilds the scenario from its starting parameters and shock history.
    pub fn replay(&self) -> Result<Scenario> {
        let mut scenario = Scenario::new(self.id.clone(), self.initial_params()?)?;
        for shock in &self.shocks {
            scenario = scenario
                .shocked(&shock.field, shock.new_value, shock.timestamp)?
                .0;
        }
        Ok(scenario)
    }

    pub fn panel(
        &self,
        node: NodeId,
        overlay: Overlay,
        viewport: Viewport,
    ) -> Result<PanelPayload> {
        let initial = self.initial_params()?;
        panel::build(
            node,
            Layer {
                params: &self.params,
                state: &self.current,
            },
            Layer {
                params: &initial,
                state: &self.baseline,
            },
            overlay,
            viewport,
            self.last_plan.contains(node),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldDelta {
    pub field: String,
    pub a: f64,
    pub b: f64,
    /// `b - a`.
    pub delta: f64,
    /// `b / a`, absent when `a` is zero.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub a: String,
    pub b: String,
    pub deltas: Vec<FieldDelta>,
}

impl Comparison {
    pub fn get(&self, field: &str) -> Option<&FieldDelta> {
        self.deltas.iter().find(|d| d.field == field)
    }
}

/// Field-by-field differences between the current states of two scenarios.
pub fn compare(a: &Scenario, b: &Scenario) -> Comparison {
    let deltas = EconState::FIELDS
        .iter()
        .map(|&field| {
            let (va, vb) = (
                a.current.get(field).unwrap_or(f64::NAN),
                b.current.get(field).unwrap_or(f64::NAN),
            );
            FieldDelta {
                field: field.to_string(),
                a: va,
                b: vb,
                delta: vb - va,
                ratio: (va != 0.0).then(|| vb / va),
            }
        })
        .collect();
    Comparison {
        a: a.id.clone(),
        b: b.id.clone(),
        deltas,
    }
}
