//! Registry of the notation used on diagram axes and in the state types.
//!
//! Several printed symbols are overloaded (`L` is leisure, labor and the
//! liquidity function; `I` is income and investment; `U` is utility and
//! unemployment; `W` is hours worked and the nominal wage). Registry keys
//! therefore carry a context suffix in brackets where needed, and
//! [`SymbolEntry::symbol`] holds the printed form used on axes.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Serialize;

/// What a symbol refers to in the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Owner {
    /// A field of one of the value types (`Params`, `EconState`, ...).
    Field {
        ty: &'static str,
        field: &'static str,
    },
    /// A schedule or solver in the engine.
    Operation { name: &'static str },
    /// Typographic marker (fixed or changing), not a quantity.
    Notation,
    /// Listed in the notation table but not modeled.
    OutOfScope,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SymbolEntry {
    pub key: &'static str,
    pub symbol: &'static str,
    pub description: &'static str,
    pub unit: &'static str,
    pub owner: Owner,
}

const fn field(ty: &'static str, field: &'static str) -> Owner {
    Owner::Field { ty, field }
}

const fn op(name: &'static str) -> Owner {
    Owner::Operation { name }
}

macro_rules! entries {
    ($( ($key:literal, $symbol:literal, $desc:literal, $unit:literal, $owner:expr) ),* $(,)?) => {
        const ENTRIES: &[SymbolEntry] = &[
            $( SymbolEntry { key: $key, symbol: $symbol, description: $desc, unit: $unit, owner: $owner } ),*
        ];
    };
}

entries! {
    ("-", "-", "Fixed", "", Owner::Notation),
    ("~", "~", "Changing", "", Owner::Notation),
    ("I[income]", "I", "Income", "real units", field("HouseholdChoice", "cons")),
    ("I(w1)", "I(w1)", "Income at wage rate 1", "real units", op("leisure_choice")),
    ("U[utility]", "U", "Utility level OR Utility Indifference Curve", "utils", field("HouseholdChoice", "utility")),
    ("L[leisure]", "L", "Leisure hours", "hours", field("HouseholdChoice", "leisure")),
    ("W[hours]", "W", "Hours worked", "hours", field("HouseholdChoice", "labor")),
    ("W[nominal]", "W", "Nominal wage rate", "currency per hour", op("nominal_wage")),
    ("w", "w", "Real wage rate OR W/P", "real units per hour", field("EconState", "w")),
    ("P", "P", "Price level", "price units", field("EconState", "P")),
    ("I.E", "I.E", "Income effect", "hours", field("SlutskyDecomposition", "income")),
    ("S.E", "S.E", "Substitution effect", "hours", field("SlutskyDecomposition", "substitution")),
    ("L[labor]", "L", "Labor supplied OR Labor hours worked", "hours", field("EconState", "L")),
    ("LS", "LS", "Supply of labor", "hours", op("labor_supply")),
    ("LD", "LD", "Demand for labor", "hours", op("labor_demand")),
    ("MCL", "MCL", "Marginal cost of labor", "real units per hour", op("labor_supply")),
    ("MPL", "MPL", "Marginal product of labor", "output per hour", op("mpl")),
    ("Y", "Y", "Output (Income)", "output units", field("EconState", "Y")),
    ("A", "A", "Technology level OR Total Factor Productivity (TFP) level", "output units", field("Params", "A")),
    ("PF", "PF", "Production function", "output units", op("production")),
    ("MPL'", "MPL'", "Derivative of marginal product of labor with respect to L", "output per hour squared", op("mpl_slope")),
    ("MPK", "MPK", "Marginal product of capital", "output per capital unit", op("mpk")),
    ("MPK'", "MPK'", "Derivative of marginal product of capital with respect to K", "output per capital unit squared", op("mpk_slope")),
    ("f(.)", "f(.)", "Function of", "output per worker", op("per_worker_output")),
    ("δ", "δ", "Depreciation rate", "fraction per period", field("Params", "delta")),
    ("k", "k", "Capital per worker (K/L)", "capital units per worker", op("solow_solve")),
    ("k*", "k*", "Steady-state k", "capital units per worker", field("SolowSolution", "kStar")),
    ("k-gold", "k-gold", "Golden-rule k", "capital units per worker", field("SolowSolution", "kGold")),
    ("n", "n", "Population growth rate", "fraction per period", field("Params", "n")),
    ("s", "s", "Saving rate (S/Y)", "fraction", field("Params", "s")),
    ("LRAS", "LRAS", "Long-run aggregate supply", "output units", op("lras_output")),
    ("SRAS", "SRAS", "Short-run aggregate supply", "output units", op("sras_output")),
    ("AS", "AS", "Aggregate supply", "output units", op("sras_output")),
    ("AD", "AD", "Aggregate demand", "output units", op("ad_output")),
    ("FE", "FE", "Full employment", "hours", op("labor_market_eq")),
    ("Ȳ", "Ȳ", "Output level at full employment", "output units", field("EconState", "Ybar")),
    ("PE", "PE", "Price expectation", "price units", field("Params", "PE")),
    ("MS̄", "MS̄", "Money supply", "currency", field("Params", "Ms")),
    ("M0", "M0", "Sum of currency in circulation (notes and coins) plus banks' reserves with the central bank", "currency", Owner::OutOfScope),
    ("M1", "M1", "Currency in circulation plus current (checking) accounts plus deposit accounts transferable by checks", "currency", Owner::OutOfScope),
    ("i", "i", "Nominal interest rate", "percent points", field("EconState", "i")),
    ("r", "r", "Real interest rate", "percent points", field("EconState", "r")),
    ("MD", "MD", "Money demand (Demand for money)", "currency", op("money_demand")),
    ("LM", "LM", "Liquidity-Money equilibrium curve", "percent points", op("lm_rate")),
    ("L(Y, i)", "L(Y, i)", "Liquidity function", "real units", op("liquidity")),
    ("S", "S", "National saving", "output units", field("EconState", "Snat")),
    ("I[investment]", "I", "National investment", "output units", field("EconState", "Ipriv")),
    ("IS", "IS", "Investment-Saving curve", "output units", op("is_output")),
    ("K", "K", "Capital stock", "capital units", field("Params", "K")),
    ("UC", "UC", "User cost of capital", "price units per period", op("user_cost")),
    ("E", "E", "Expenditures", "output units", op("aggregate_expenditure")),
    ("G", "G", "Government Expenditures", "output units", field("Params", "G")),
    ("I(r1)", "I(r1)", "Investments made at the interest rate \"r1\"", "output units", op("investment_demand")),
    ("C", "C", "Consumption", "output units", field("EconState", "C")),
    ("π", "π", "Inflation rate", "fraction per period", field("EconState", "pi")),
    ("U[unemployment]", "U", "Unemployment rate", "fraction", field("EconState", "Uu")),
    ("Ū", "Ū", "The natural rate of unemployment", "fraction", field("Params", "Ubar")),
    ("LRPC", "LRPC", "Long-run Philips curve", "fraction", op("lrpc_curve")),
    ("SRPC", "SRPC", "Short-run Philips curve", "fraction", op("phillips")),
}

/// Engine operations a registry entry may name as its owner.
pub const OPERATIONS: &[&str] = &[
    "leisure_choice",
    "nominal_wage",
    "labor_supply",
    "labor_demand",
    "labor_market_eq",
    "mpl",
    "mpk",
    "mpl_slope",
    "mpk_slope",
    "production",
    "per_worker_output",
    "solow_solve",
    "lras_output",
    "sras_output",
    "ad_output",
    "money_demand",
    "liquidity",
    "lm_rate",
    "is_output",
    "user_cost",
    "aggregate_expenditure",
    "investment_demand",
    "phillips",
    "lrpc_curve",
];

#[derive(Debug)]
pub struct SymbolRegistry {
    entries: BTreeMap<&'static str, SymbolEntry>,
}

impl SymbolRegistry {
    pub fn global() -> &'static SymbolRegistry {
        static REGISTRY: OnceLock<SymbolRegistry> = OnceLock::new();
        REGISTRY.get_or_init(|| SymbolRegistry {
            entries: ENTRIES.iter().map(|e| (e.key, *e)).collect(),
        })
    }

    pub fn get(&self, key: &str) -> Option<&SymbolEntry> {
        self.entries.get(key)
    }

    pub fn contains(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    /// Printed axis label for a registry key.
    pub fn label(&self, key: &str) -> Option<&'static str> {
        self.get(key).map(|e| e.symbol)
    }

    pub fn entries(&self) -> impl Iterator<Item = &SymbolEntry> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::params::Params;
    use crate::state::EconState;
    use crate::supply::{HouseholdChoice, SlutskyDecomposition, SolowSolution};

    fn type_fields(ty: &str) -> Option<&'static [&'static str]> {
        match ty {
            "Params" => Some(Params::FIELDS),
            "EconState" => Some(EconState::FIELDS),
            "HouseholdChoice" => Some(HouseholdChoice::FIELDS),
            "SlutskyDecomposition" => Some(SlutskyDecomposition::FIELDS),
            "SolowSolution" => Some(SolowSolution::FIELDS),
            _ => None,
        }
    }

    #[test]
    fn keys_are_unique() {
        let keys: HashSet<_> = ENTRIES.iter().map(|e| e.key).collect();
        assert_eq!(keys.len(), ENTRIES.len());
    }

    #[test]
    fn every_in_scope_symbol_has_a_resolvable_owner() {
        let mut owned_fields = HashSet::new();
        for e in SymbolRegistry::global().entries() {
            match e.owner {
                Owner::Field { ty, field } => {
                    let fields =
                        type_fields(ty).unwrap_or_else(|| panic!("{}: unknown type {ty}", e.key));
                    assert!(
                        fields.contains(&field),
                        "{}: {ty} has no field {field}",
                        e.key
                    );
                    assert!(
                        owned_fields.insert((ty, field)),
                        "{}: field {ty}.{field} owned twice",
                        e.key
                    );
                }
                Owner::Operation { name } => {
                    assert!(OPERATIONS.contains(&name), "{}: {name}", e.key)
                }
                Owner::Notation => assert!(matches!(e.key, "-" | "~")),
                Owner::OutOfScope => {
                    assert!(matches!(e.key, "M0" | "M1"), "{} out of scope", e.key)
                }
            }
        }
    }

    #[test]
    fn overloaded_symbols_share_a_printed_form() {
        let reg = SymbolRegistry::global();
        for (a, b) in [
            ("L[leisure]", "L[labor]"),
            ("I[income]", "I[investment]"),
            ("U[utility]", "U[unemployment]"),
            ("W[hours]", "W[nominal]"),
        ] {
            assert_eq!(reg.label(a), reg.label(b));
            assert_ne!(reg.get(a).unwrap().owner, reg.get(b).unwrap().owner);
        }
    }

    #[test]
    fn phillips_axes_print_as_u_and_pi() {
        let reg = SymbolRegistry::global();
        assert_eq!(reg.label("U[unemployment]"), Some("U"));
        assert_eq!(reg.label("π"), Some("π"));
    }
}
