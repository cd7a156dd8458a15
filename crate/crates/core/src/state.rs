//! Endogenous solution of the model economy.

use serde::{Deserialize, Serialize};

/// A value type whose fields can be read as a named vector of reals.
///
/// Comparative statics and scenario comparisons work on anything that
/// implements this.
pub trait StateVector {
    fn names(&self) -> Vec<&'static str>;
    fn values(&self) -> Vec<f64>;
}

impl StateVector for f64 {
    fn names(&self) -> Vec<&'static str> {
        vec!["value"]
    }

    fn values(&self) -> Vec<f64> {
        vec![*self]
    }
}

macro_rules! econ_state {
    ($( $(#[$doc:meta])* $field:ident => $key:literal ),* $(,)?) => {
        /// Interest rates `i` and `r` are in percent points; `Uu` and `pi` are fractions.
        #[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
        #[serde(deny_unknown_fields)]
        pub struct EconState {
            $( $(#[$doc])* #[serde(rename = $key)] pub $field: f64, )*
        }

        impl EconState {
            pub const FIELDS: &'static [&'static str] = &[$($key),*];

            pub fn get(&self, key: &str) -> Option<f64> {
                match key {
                    $( $key => Some(self.$field), )*
                    _ => None,
                }
            }
        }

        impl StateVector for EconState {
            fn names(&self) -> Vec<&'static str> {
                Self::FIELDS.to_vec()
            }

            fn values(&self) -> Vec<f64> {
                vec![$( self.$field ),*]
            }
        }
    };
}

econ_state! {
    output => "Y",
    consumption => "C",
    /// Private investment.
    investment => "Ipriv",
    /// National saving, `Y - C - G`.
    saving => "Snat",
    price => "P",
    nominal_rate => "i",
    real_rate => "r",
    /// Real wage.
    wage => "w",
    /// Aggregate employment in hours.
    employment => "L",
    unemployment => "Uu",
    inflation => "pi",
    full_employment_output => "Ybar",
    /// Leisure hours of one household.
    leisure => "leisure",
}

impl EconState {
    /// `Y - (C + I + G)`; zero at a goods-market equilibrium.
    pub fn goods_residual(&self, gov: f64) -> f64 {
        self.output - (self.consumption + self.investment + gov)
    }
}
