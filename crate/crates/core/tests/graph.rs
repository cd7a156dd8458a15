use std::collections::BTreeSet;

use macroatlas::graph::{BigPicture, EdgeKind, Side};
use macroatlas::symbols::{Owner, SymbolRegistry};
use macroatlas::Params;

mod common;
use common::TITLES;

#[test]
fn titles_are_verbatim() {
    let g = BigPicture::canonical();
    for (i, title) in TITLES.iter().enumerate() {
        assert_eq!(g.node(i as u32 + 1).unwrap().name, *title);
    }
}

#[test]
fn sides() {
    let g = BigPicture::canonical();
    let of = |side| -> BTreeSet<u32> {
        g.nodes
            .iter()
            .filter(|n| n.side == side)
            .map(|n| n.id)
            .collect()
    };
    assert_eq!(of(Side::Integrative), BTreeSet::from([14, 20]));
    assert!(of(Side::SupplySide).contains(&13));
    assert!(of(Side::DemandSide).contains(&24));
}

#[test]
fn money_channel_is_a_single_path() {
    let g = BigPicture::canonical();
    let paths = g.provenance_paths(15, 14).unwrap();
    assert_eq!(paths, vec![vec![15, 16, 17, 24, 19, 14]]);
    let names: Vec<&str> = paths[0]
        .iter()
        .map(|&id| g.node(id).unwrap().name.as_str())
        .collect();
    assert_eq!(names[2], "LM Diagram (Liquidity-Money Diagram)");
}

#[test]
fn production_reaches_equilibrium_through_both_sides() {
    let g = BigPicture::canonical();
    let paths = g.provenance_paths(8, 14).unwrap();
    assert!(paths.iter().any(|p| p.contains(&13)));
    assert!(paths.iter().any(|p| p.contains(&24)));
    for p in &paths {
        for w in p.windows(2) {
            assert!(g
                .edges
                .iter()
                .any(|e| e.kind == EdgeKind::Derivation && e.from == w[0] && e.to == w[1]));
        }
    }
    assert!(g.provenance_paths(20, 1).unwrap().is_empty());
}

#[test]
fn propagation_examples() {
    let g = BigPicture::canonical();
    let set = |field: &str| -> BTreeSet<u32> {
        g.propagate(&[field]).unwrap().dirty.into_iter().collect()
    };
    assert_eq!(set("Ms"), BTreeSet::from([16, 17, 24, 19, 14, 20]));
    assert!(set("G").iter().all(|&n| n > 13));
    let tech = set("A");
    for id in [4, 5, 6, 7, 13, 14] {
        assert!(tech.contains(&id), "{id}");
    }
    let both = g.propagate(&["Ms", "G"]).unwrap();
    assert_eq!(both.trigger, vec!["Ms", "G"]);
    assert_eq!(
        both.dirty.iter().collect::<BTreeSet<_>>().len(),
        both.dirty.len()
    );
}

#[test]
fn dot_is_well_formed() {
    let dot = BigPicture::canonical().to_dot();
    assert!(dot.starts_with("digraph bigpicture {\n") && dot.ends_with("}\n"));
    assert_eq!(dot.matches('{').count(), dot.matches('}').count());
    assert_eq!(dot.matches(" -> ").count(), 31);
    for title in TITLES {
        assert!(dot.contains(&format!("[label=\"{title}\"]")), "{title}");
    }
}

#[test]
fn json_round_trip() {
    let g = BigPicture::canonical();
    let back = BigPicture::from_json(&g.to_json()).unwrap();
    assert_eq!(&back, g);
}

/// Every entry of the notation list: printed symbol and description.
const NOTATION: &[(&str, &str)] = &[
    ("-", "Fixed"),
    ("~", "Changing"),
    ("I", "Income"),
    ("I(w1)", "Income at wage rate 1"),
    ("U", "Utility level OR Utility Indifference Curve"),
    ("L", "Leisure hours"),
    ("W", "Hours worked"),
    ("W", "Nominal wage rate"),
    ("w", "Real wage rate OR W/P"),
    ("P", "Price level"),
    ("I.E", "Income effect"),
    ("S.E", "Substitution effect"),
    ("L", "Labor supplied OR Labor hours worked"),
    ("LS", "Supply of labor"),
    ("LD", "Demand for labor"),
    ("MCL", "Marginal cost of labor"),
    ("MPL", "Marginal product of labor"),
    ("Y", "Output (Income)"),
    ("A", "Technology level OR Total Factor Productivity (TFP) level"),
    ("PF", "Production function"),
    ("MPL'", "Derivative of marginal product of labor with respect to L"),
    ("MPK", "Marginal product of capital"),
    ("MPK'", "Derivative of marginal product of capital with respect to K"),
    ("f(.)", "Function of"),
    ("δ", "Depreciation rate"),
    ("k", "Capital per worker (K/L)"),
    ("k*", "Steady-state k"),
    ("k-gold", "Golden-rule k"),
    ("n", "Population growth rate"),
    ("s", "Saving rate (S/Y)"),
    ("LRAS", "Long-run aggregate supply"),
    ("SRAS", "Short-run aggregate supply"),
    ("AS", "Aggregate supply"),
    ("AD", "Aggregate demand"),
    ("FE", "Full employment"),
    ("Ȳ", "Output level at full employment"),
    ("PE", "Price expectation"),
    ("MS̄", "Money supply"),
    ("M0", "Sum of currency in circulation (notes and coins) plus banks' reserves with the central bank"),
    ("M1", "Currency in circulation plus current (checking) accounts plus deposit accounts transferable by checks"),
    ("i", "Nominal interest rate"),
    ("r", "Real interest rate"),
    ("MD", "Money demand (Demand for money)"),
    ("LM", "Liquidity-Money equilibrium curve"),
    ("L(Y, i)", "Liquidity function"),
    ("S", "National saving"),
    ("I", "National investment"),
    ("IS", "Investment-Saving curve"),
    ("K", "Capital stock"),
    ("UC", "User cost of capital"),
    ("E", "Expenditures"),
    ("G", "Government Expenditures"),
    ("I(r1)", "Investments made at the interest rate \"r1\""),
    ("C", "Consumption"),
    ("π", "Inflation rate"),
    ("U", "Unemployment rate"),
    ("Ū", "The natural rate of unemployment"),
    ("LRPC", "Long-run Philips curve"),
    ("SRPC", "Short-run Philips curve"),
];

#[test]
fn registry_covers_the_notation_list() {
    let reg = SymbolRegistry::global();
    assert_eq!(reg.len(), NOTATION.len());
    for (symbol, description) in NOTATION {
        assert!(
            reg.entries()
                .any(|e| e.symbol == *symbol && e.description == *description),
            "missing {symbol}: {description}"
        );
    }
    let out_of_scope: Vec<_> = reg
        .entries()
        .filter(|e| e.owner == Owner::OutOfScope)
        .map(|e| e.key)
        .collect();
    assert_eq!(out_of_scope, vec!["M0", "M1"]);
}

#[test]
fn parameter_symbols_point_at_params() {
    for e in SymbolRegistry::global().entries() {
        if let Owner::Field {
            ty: "Params",
            field,
        } = e.owner
        {
            assert!(Params::has_field(field), "{}", e.key);
        }
    }
}

#[test]
fn axis_labels_print_as_registry_symbols() {
    let reg = SymbolRegistry::global();
    let g = BigPicture::canonical();
    let n20 = g.node(20).unwrap();
    assert_eq!(reg.label(&n20.x_label), Some("U"));
    assert_eq!(reg.label(&n20.y_label), Some("π"));
    for n in &g.nodes {
        assert!(
            reg.label(&n.x_label).is_some() && reg.label(&n.y_label).is_some(),
            "{}",
            n.id
        );
    }
}
