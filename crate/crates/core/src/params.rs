//! Exogenous parameters of the model economy.
//!
//! Field keys in config files and JSON are the short economic symbols
//! (`alpha`, `A`, `K`, `Ms`, ...); unknown keys are rejected so that a typo in
//! a scenario file fails loudly instead of silently falling back to a default.
//! Missing keys take the default economy's value.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

macro_rules! params {
    ($( $(#[$doc:meta])* $field:ident => $key:literal = $default:expr ),* $(,)?) => {
        #[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
        #[serde(deny_unknown_fields, default)]
        pub struct Params {
            $( $(#[$doc])* #[serde(rename = $key)] pub $field: f64, )*
        }

        impl Default for Params {
            fn default() -> Self {
                Self { $( $field: $default, )* }
            }
        }

        impl Params {
            /// Serialized key of every field, in declaration order.
            pub const FIELDS: &'static [&'static str] = &[$($key),*];

            pub fn get(&self, key: &str) -> Option<f64> {
                match key {
                    $( $key => Some(self.$field), )*
                    _ => None,
                }
            }

            fn slot(&mut self, key: &str) -> Option<&mut f64> {
                match key {
                    $( $key => Some(&mut self.$field), )*
                    _ => None,
                }
            }
        }
    };
}

params! {
    /// Capital share in Cobb-Douglas production.
    alpha => "alpha" = 0.5,
    /// Total factor productivity.
    tfp => "A" = 1.0,
    /// Aggregate capital stock (exogenous in the short-run blocks).
    capital => "K" = 10_000.0,
    /// Depreciation rate per period (fraction).
    delta => "delta" = 0.08,
    /// Population growth rate per period (fraction).
    n => "n" = 0.02,
    /// Saving rate S/Y (fraction).
    s => "s" = 0.2,
    /// Weight on leisure in household utility.
    theta => "theta" = 1.0,
    /// Time endowment per household (hours).
    hours => "H" = 16.0,
    /// Nonlabor income per household.
    m => "m" = 8.0,
    /// Number of identical households.
    households => "Nh" = 100.0,
    c0 => "c0" = 200.0,
    /// Marginal propensity to consume.
    c1 => "c1" = 0.75,
    /// Interest sensitivity of consumption, per rate point.
    e => "e" = 10.0,
    /// Autonomous investment.
    i0 => "I0" = 200.0,
    /// Interest sensitivity of investment, per rate point.
    d => "d" = 25.0,
    /// Lump-sum taxes.
    taxes => "T" = 100.0,
    /// Government expenditures.
    gov => "G" = 300.0,
    /// Nominal money supply, set by the central bank.
    money_supply => "Ms" = 1000.0,
    /// Income coefficient of the liquidity function.
    k_y => "kY" = 0.5,
    /// Interest semi-elasticity of money demand, per rate point.
    b => "b" = 0.1,
    /// Price of capital goods.
    p_k => "pK" = 1.0,
    /// Price-output elasticity of short-run aggregate supply.
    gamma => "gamma" = 1.0,
    /// Expected price level.
    price_expectation => "PE" = 1.0,
    /// Expected inflation (fraction per period).
    pi_e => "piE" = 0.0,
    /// Slope of the short-run Phillips curve.
    beta => "beta" = 0.5,
    /// Natural rate of unemployment (fraction).
    u_bar => "Ubar" = 0.05,
    /// Output-gap to unemployment coefficient.
    omega => "omega" = 0.5,
}

impl Params {
    pub fn has_field(key: &str) -> bool {
        Self::FIELDS.contains(&key)
    }

    /// Sets one field by key. Does not validate the result.
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        let slot = self
            .slot(key)
            .ok_or_else(|| Error::UnknownField(key.to_string()))?;
        *slot = value;
        Ok(())
    }

    /// Copy with one field replaced.
    pub fn with(&self, key: &str, value: f64) -> Result<Params> {
        let mut p = *self;
        p.set(key, value)?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for key in Self::FIELDS {
            let v = self.get(key).unwrap_or(f64::NAN);
            if !v.is_finite() {
                return Err(Error::validation(key, "must be finite"));
            }
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::validation("alpha", "must satisfy 0 < alpha < 1"));
        }
        if !(self.c1 > 0.0 && self.c1 < 1.0) {
            return Err(Error::validation("c1", "must satisfy 0 < c1 < 1"));
        }
        let positive = [
            ("A", self.tfp),
            ("K", self.capital),
            ("H", self.hours),
            ("Nh", self.households),
            ("d", self.d),
            ("kY", self.k_y),
            ("b", self.b),
            ("gamma", self.gamma),
            ("pK", self.p_k),
            ("Ms", self.money_supply),
            ("PE", self.price_expectation),
        ];
        for (key, v) in positive {
            if v <= 0.0 {
                return Err(Error::validation(key, "must be strictly positive"));
            }
        }
        let nonnegative = [
            ("delta", self.delta),
            ("n", self.n),
            ("s", self.s),
            ("theta", self.theta),
            ("e", self.e),
            ("m", self.m),
            ("omega", self.omega),
            ("beta", self.beta),
            ("Ubar", self.u_bar),
        ];
        for (key, v) in nonnegative {
            if v < 0.0 {
                return Err(Error::validation(key, "must be nonnegative"));
            }
        }
        if self.s > 1.0 {
            return Err(Error::validation("s", "must satisfy 0 <= s <= 1"));
        }
        if self.u_bar >= 1.0 {
            return Err(Error::validation("Ubar", "must satisfy 0 <= Ubar < 1"));
        }
        Ok(())
    }

    /// Parses a flat `key = value` config file.
    pub fn from_config_str(text: &str) -> Result<Params> {
        toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))
    }

    pub fn from_json_str(text: &str) -> Result<Params> {
        Ok(serde_json::from_str(text)?)
    }

    /// Loads a config file; `.json` files are read as JSON, everything else as `key = value`.
    pub fn load(path: &Path) -> Result<Params> {
        let text = std::fs::read_to_string(path)?;
        if path.extension().is_some_and(|ext| ext == "json") {
            Self::from_json_str(&text)
        } else {
            Self::from_config_str(&text)
        }
    }

    pub fn to_config_string(&self) -> String {
        let mut out = String::new();
        for key in Self::FIELDS {
            out.push_str(&format!(
                "{key} = {:?}\n",
                self.get(key).unwrap_or_default()
            ));
        }
        out
    }
}
