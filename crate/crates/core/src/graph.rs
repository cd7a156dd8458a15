//! The big-picture diagram graph.
//!
//! Twenty-seven diagrams are linked by three kinds of relationship: one
//! diagram is derived from another (`Derivation`), one is the commonly used
//! part of a more complex one (`PartOfComplex`), or two are views of the same
//! concept (`DualView`). The node and edge lists live in
//! `data/bigpicture.json` so they can be amended without touching code.
//!
//! Only `Derivation` edges carry dependency: closure queries, provenance
//! paths and shock propagation all walk that subgraph, which must be acyclic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::Params;
use crate::symbols::SymbolRegistry;

const CANONICAL_DATA: &str = include_str!("../data/bigpicture.json");

pub type NodeId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    SupplySide,
    DemandSide,
    Integrative,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct DiagramNode {
    pub id: NodeId,
    pub name: String,
    pub side: Side,
    pub x_label: String,
    pub y_label: String,
    /// Engine operations that render this panel; empty for purely definitional nodes.
    pub binding: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl DiagramNode {
    pub fn is_definitional(&self) -> bool {
        self.binding.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EdgeKind {
    Derivation,
    PartOfComplex,
    DualView,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Edge {
    pub from: NodeId,
    pub to: NodeId,
    pub kind: EdgeKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Edge {
    /// `DualView` edges are symmetric; this reports whether the edge joins `a` and `b`.
    pub fn joins(&self, a: NodeId, b: NodeId) -> bool {
        (self.from == a && self.to == b)
            || (self.kind == EdgeKind::DualView && self.from == b && self.to == a)
    }
}

/// Nodes to recompute after a shock, in dependency order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropagationPlan {
    pub dirty: Vec<NodeId>,
    pub trigger: Vec<String>,
}

impl PropagationPlan {
    pub fn contains(&self, id: NodeId) -> bool {
        self.dirty.contains(&id)
    }
}

/// Most-upstream diagrams each parameter enters.
pub const PARAMETER_OWNERS: &[(&str, &[NodeId])] = &[
    ("A", &[4, 8, 9]),
    ("K", &[4, 8, 9]),
    ("alpha", &[4, 8, 9]),
    ("theta", &[1]),
    ("H", &[1]),
    ("m", &[1]),
    ("Nh", &[1]),
    ("delta", &[12, 25]),
    ("n", &[12, 25]),
    ("s", &[12, 25]),
    ("Ms", &[16]),
    ("kY", &[15]),
    ("b", &[15]),
    ("c0", &[21, 22, 27]),
    ("c1", &[21, 22, 27]),
    ("T", &[21, 22, 27]),
    ("e", &[21, 22, 27]),
    ("G", &[22, 27]),
    ("I0", &[25, 26]),
    ("d", &[25, 26]),
    ("pK", &[25, 26]),
    ("PE", &[13]),
    ("gamma", &[13]),
    ("piE", &[20]),
    ("beta", &[20]),
    ("Ubar", &[20]),
    ("omega", &[20]),
];

pub fn parameter_owners(field: &str) -> Option<&'static [NodeId]> {
    PARAMETER_OWNERS
        .iter()
        .find(|(name, _)| *name == field)
        .map(|(_, owners)| *owners)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BigPicture {
    pub nodes: Vec<DiagramNode>,
    pub edges: Vec<Edge>,
    #[serde(skip)]
    index: Index,
}

#[derive(Debug, Clone, Default, PartialEq)]
struct Index {
    children: BTreeMap<NodeId, Vec<NodeId>>,
    parents: BTreeMap<NodeId, Vec<NodeId>>,
    topo: Vec<NodeId>,
}

#[derive(Deserialize)]
struct RawGraph {
    nodes: Vec<DiagramNode>,
    edges: Vec<Edge>,
}

impl BigPicture {
    /// The shipped 27-diagram graph.
    pub fn canonical() -> &'static BigPicture {
        static GRAPH: OnceLock<BigPicture> = OnceLock::new();
        GRAPH.get_or_init(|| {
            BigPicture::from_json(CANONICAL_DATA).expect("shipped graph data is valid")
        })
    }

    pub fn from_json(text: &str) -> Result<BigPicture> {
        let raw: RawGraph = serde_json::from_str(text)?;
        BigPicture::new(raw.nodes, raw.edges)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("graph serializes");
        out.push('\n');
        out
    }

    pub fn new(mut nodes: Vec<DiagramNode>, edges: Vec<Edge>) -> Result<BigPicture> {
        nodes.sort_by_key(|n| n.id);
        let ids: BTreeSet<NodeId> = nodes.iter().map(|n| n.id).collect();
        if ids.len() != nodes.len() {
            return Err(Error::Graph("duplicate node ids".into()));
        }
        let registry = SymbolRegistry::global();
        for node in &nodes {
            for label in [&node.x_label, &node.y_label] {
                if !registry.contains(label) {
                    return Err(Error::Graph(format!(
                        "node {} axis label {label:?} is not a registry symbol",
                        node.id
                    )));
                }
            }
        }
        let mut seen = BTreeSet::new();
        for edge in &edges {
            for end in [edge.from, edge.to] {
                if !ids.contains(&end) {
                    return Err(Error::Graph(format!("edge references unknown node {end}")));
                }
            }
            if edge.from == edge.to {
                return Err(Error::Graph(format!("self-loop on node {}", edge.from)));
            }
            let key = match edge.kind {
                EdgeKind::DualView => (edge.from.min(edge.to), edge.from.max(edge.to), edge.kind),
                _ => (edge.from, edge.to, edge.kind),
            };
            if !seen.insert(key) {
                return Err(Error::Graph(format!(
                    "duplicate edge {} -> {}",
                    edge.from, edge.to
                )));
            }
            if edge.kind == EdgeKind::PartOfComplex && edge.note.as_deref().unwrap_or("").is_empty()
            {
                return Err(Error::Graph(format!(
                    "part-of edge {} -> {} must name the selected segment",
                    edge.from, edge.to
                )));
            }
        }

        let mut index = Index::default();
        for id in &ids {
            index.children.insert(*id, Vec::new());
            index.parents.insert(*id, Vec::new());
        }
        for edge in edges.iter().filter(|e| e.kind == EdgeKind::Derivation) {
            index.children.entry(edge.from).or_default().push(edge.to);
            index.parents.entry(edge.to).or_default().push(edge.from);
        }
        for list in index
            .children
            .values_mut()
            .chain(index.parents.values_mut())
        {
            list.sort_unstable();
        }
        let mut graph = BigPicture {
            nodes,
            edges,
            index,
        };
        graph.index.topo = graph
            .topological_order(&ids)
            .ok_or_else(|| Error::Graph("derivation edges contain a cycle".into()))?;
        Ok(graph)
    }

    pub fn node(&self, id: NodeId) -> Result<&DiagramNode> {
        self.nodes
            .binary_search_by_key(&id, |n| n.id)
            .map(|i| &self.nodes[i])
            .map_err(|_| Error::UnknownNode(id))
    }

    pub fn edge_kinds(&self) -> BTreeSet<EdgeKind> {
        self.edges.iter().map(|e| e.kind).collect()
    }

    /// Derivation parents of a node.
    pub fn parents(&self, id: NodeId) -> Result<&[NodeId]> {
        self.node(id)?;
        Ok(self
            .index
            .parents
            .get(&id)
            .map(Vec::as_slice)
            .unwrap_or(&[]))
    }

    pub fn children(&self, id: NodeId) -> Result<&[NodeId]> {
        self.node(id)?;
        Ok(self
            .index
            .children
            .get(&id)
            .map(Vec::as_slice)
            .unwrap_or(&[]))
    }

    /// Kahn's algorithm restricted to `subset`; among ready nodes the highest id goes first.
    fn topological_order(&self, subset: &BTreeSet<NodeId>) -> Option<Vec<NodeId>> {
        let mut indegree: BTreeMap<NodeId, usize> = subset
            .iter()
            .map(|id| {
                let n = self.index.parents[id]
                    .iter()
                    .filter(|p| subset.contains(p))
                    .count();
                (*id, n)
            })
            .collect();
        let mut ready: BTreeSet<NodeId> = indegree
            .iter()
            .filter(|(_, &d)| d == 0)
            .map(|(id, _)| *id)
            .collect();
        let mut order = Vec::with_capacity(subset.len());
        while let Some(id) = ready.pop_last() {
            order.push(id);
            for child in &self.index.children[&id] {
                if let Some(d) = indegree.get_mut(child) {
                    *d -= 1;
                    if *d == 0 {
                        ready.insert(*child);
                    }
                }
            }
        }
        (order.len() == subset.len()).then_some(order)
    }

    /// A topological order of all nodes over derivation edges.
    pub fn topo_order(&self) -> &[NodeId] {
        &self.index.topo
    }

    fn closure(
        &self,
        start: NodeId,
        next: &BTreeMap<NodeId, Vec<NodeId>>,
    ) -> Result<BTreeSet<NodeId>> {
        self.node(start)?;
        let mut seen = BTreeSet::new();
        let mut stack = vec![start];
        while let Some(id) = stack.pop() {
            for &n in &next[&id] {
                if seen.insert(n) {
                    stack.push(n);
                }
            }
        }
        Ok(seen)
    }

    pub fn descendants(&self, id: NodeId) -> Result<BTreeSet<NodeId>> {
        self.closure(id, &self.index.children)
    }

    pub fn ancestors(&self, id: NodeId) -> Result<BTreeSet<NodeId>> {
        self.closure(id, &self.index.parents)
    }

    /// Every simple derivation path from `from` to `to`, in lexicographic order.
    pub fn provenance_paths(&self, from: NodeId, to: NodeId) -> Result<Vec<Vec<NodeId>>> {
        self.node(from)?;
        self.node(to)?;
        let mut paths = Vec::new();
        let mut path = vec![from];
        self.walk(to, &mut path, &mut paths);
        Ok(paths)
    }

    fn walk(&self, target: NodeId, path: &mut Vec<NodeId>, out: &mut Vec<Vec<NodeId>>) {
        let here = *path.last().expect("path is never empty");
        if here == target {
            if path.len() > 1 {
                out.push(path.clone());
            }
            return;
        }
        for &child in &self.index.children[&here] {
            if !path.contains(&child) {
                path.push(child);
                self.walk(target, path, out);
                path.pop();
            }
        }
    }

    /// Diagrams affected by shocking the given parameters.
    pub fn propagate<S: AsRef<str>>(&self, fields: &[S]) -> Result<PropagationPlan> {
        let mut dirty = BTreeSet::new();
        let mut trigger = Vec::new();
        for field in fields {
            let field = field.as_ref();
            if !Params::has_field(field) {
                return Err(Error::UnknownField(field.to_string()));
            }
            let owners =
                parameter_owners(field).ok_or_else(|| Error::UnknownField(field.to_string()))?;
            for &owner in owners {
                dirty.insert(owner);
                dirty.extend(self.descendants(owner)?);
            }
            if !trigger.iter().any(|t| t == field) {
                trigger.push(field.to_string());
            }
        }
        let dirty = self
            .topological_order(&dirty)
            .expect("subgraph of an acyclic graph is acyclic");
        Ok(PropagationPlan { dirty, trigger })
    }

    /// Nodes reachable from `id` ignoring edge direction and kind.
    pub fn undirected_component(&self, id: NodeId) -> Result<BTreeSet<NodeId>> {
        self.node(id)?;
        let mut seen = BTreeSet::from([id]);
        let mut stack = vec![id];
        while let Some(here) = stack.pop() {
            for edge in &self.edges {
                let other = if edge.from == here {
                    edge.to
                } else if edge.to == here {
                    edge.from
                } else {
                    continue;
                };
                if seen.insert(other) {
                    stack.push(other);
                }
            }
        }
        Ok(seen)
    }

    /// Graphviz description. Derivation edges are solid, part-of edges
    /// dotted, dual views dashed and bidirectional.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str("digraph bigpicture {\n");
        out.push_str("  rankdir=TB;\n");
        out.push_str("  node [shape=box, fontname=\"Helvetica\"];\n");
        for (side, cluster, title) in [
            (Side::SupplySide, "cluster_supply", "Supply Side"),
            (Side::DemandSide, "cluster_demand", "Demand Side"),
            (
                Side::Integrative,
                "cluster_equilibrium",
                "General Equilibrium",
            ),
        ] {
            let _ = writeln!(out, "  subgraph {cluster} {{");
            let _ = writeln!(out, "    label=\"{title}\";");
            for node in self.nodes.iter().filter(|n| n.side == side) {
                let _ = writeln!(out, "    n{} [label=\"{}\"];", node.id, escape(&node.name));
            }
            out.push_str("  }\n");
        }
        let mut edges: Vec<&Edge> = self.edges.iter().collect();
        edges.sort_by_key(|e| (e.kind, e.from, e.to));
        for edge in edges {
            let style = match edge.kind {
                EdgeKind::Derivation => "style=solid".to_string(),
                EdgeKind::PartOfComplex => "style=dotted".to_string(),
                EdgeKind::DualView => "style=dashed, dir=both".to_string(),
            };
            let label = edge
                .note
                .as_deref()
                .map(|n| format!(", label=\"{}\"", escape(n)))
                .unwrap_or_default();
            let _ = writeln!(out, "  n{} -> n{} [{style}{label}];", edge.from, edge.to);
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> &'static BigPicture {
        BigPicture::canonical()
    }

    #[test]
    fn canonical_shape() {
        assert_eq!(g().nodes.len(), 27);
        assert_eq!(g().edges.len(), 31);
        assert_eq!(
            g().edge_kinds(),
            BTreeSet::from([
                EdgeKind::Derivation,
                EdgeKind::PartOfComplex,
                EdgeKind::DualView
            ])
        );
        let ids: Vec<NodeId> = g().nodes.iter().map(|n| n.id).collect();
        assert_eq!(ids, (1..=27).collect::<Vec<_>>());
        assert!(g().nodes.iter().all(|n| !n.is_definitional()));
    }

    #[test]
    fn keynesian_cross_edge_note() {
        let e = g()
            .edges
            .iter()
            .find(|e| e.from == 27 && e.to == 23)
            .unwrap();
        assert_eq!(e.kind, EdgeKind::Derivation);
        assert_eq!(e.note.as_deref(), Some("One way to derive IS"));
    }

    #[test]
    fn dual_views_are_symmetric() {
        let e = g()
            .edges
            .iter()
            .find(|e| e.kind == EdgeKind::DualView && e.joins(27, 22))
            .unwrap();
        assert!(e.joins(22, 27));
        assert!(g()
            .edges
            .iter()
            .any(|e| e.kind == EdgeKind::DualView && e.joins(18, 7)));
    }

    #[test]
    fn closures() {
        assert_eq!(
            g().descendants(16).unwrap(),
            BTreeSet::from([17, 24, 19, 14, 20])
        );
        assert_eq!(g().descendants(14).unwrap(), BTreeSet::from([20]));
        assert!(g().ancestors(1).unwrap().is_empty());
        assert!(matches!(g().descendants(99), Err(Error::UnknownNode(99))));
        assert_eq!(g().parents(14).unwrap(), &[13, 19]);
    }

    #[test]
    fn provenance() {
        assert_eq!(
            g().provenance_paths(15, 14).unwrap(),
            vec![vec![15, 16, 17, 24, 19, 14]]
        );
        let paths = g().provenance_paths(8, 14).unwrap();
        assert!(paths.contains(&vec![8, 4, 5, 6, 7, 13, 14]));
        assert!(paths.contains(&vec![8, 9, 10, 11, 26, 22, 23, 24, 19, 14]));
        assert!(g().provenance_paths(20, 1).unwrap().is_empty());
        assert!(g().provenance_paths(0, 1).is_err());
    }

    #[test]
    fn propagation_plans() {
        assert_eq!(
            g().propagate(&["Ms"]).unwrap().dirty,
            vec![16, 17, 24, 19, 14, 20]
        );
        let plan = g().propagate(&["G"]).unwrap();
        assert_eq!(plan.dirty, vec![27, 22, 23, 24, 19, 14, 20]);
        assert!(plan.dirty.iter().all(|&n| n > 13));
        let empty: [&str; 0] = [];
        assert_eq!(g().propagate(&empty).unwrap(), PropagationPlan::default());
        assert!(matches!(g().propagate(&["Q"]), Err(Error::UnknownField(_))));
    }

    #[test]
    fn every_parameter_has_owners() {
        for field in Params::FIELDS {
            let owners = parameter_owners(field).unwrap_or_else(|| panic!("{field}"));
            assert!(!owners.is_empty());
        }
        assert_eq!(PARAMETER_OWNERS.len(), Params::FIELDS.len());
    }

    #[test]
    fn plans_are_closed_and_ordered() {
        for field in Params::FIELDS {
            let plan = g().propagate(&[*field]).unwrap();
            let set: BTreeSet<NodeId> = plan.dirty.iter().copied().collect();
            for &id in &plan.dirty {
                assert!(g().descendants(id).unwrap().is_subset(&set), "{field}");
            }
            for (pos, &id) in plan.dirty.iter().enumerate() {
                for ancestor in g().ancestors(id).unwrap().intersection(&set) {
                    let apos = plan.dirty.iter().position(|x| x == ancestor).unwrap();
                    assert!(apos < pos, "{field}: {ancestor} after {id}");
                }
            }
        }
    }

    #[test]
    fn single_component() {
        assert_eq!(g().undirected_component(14).unwrap().len(), 27);
    }

    #[test]
    fn cycles_rejected() {
        let mut nodes = g().nodes.clone();
        nodes.truncate(2);
        let edges = vec![
            Edge {
                from: 1,
                to: 2,
                kind: EdgeKind::Derivation,
                note: None,
            },
            Edge {
                from: 2,
                to: 1,
                kind: EdgeKind::Derivation,
                note: None,
            },
        ];
        assert!(matches!(
            BigPicture::new(nodes, edges),
            Err(Error::Graph(_))
        ));
    }

    #[test]
    fn dual_view_cycles_are_not_dependency_cycles() {
        let mut nodes = g().nodes.clone();
        nodes.truncate(2);
        let edges = vec![
            Edge {
                from: 1,
                to: 2,
                kind: EdgeKind::Derivation,
                note: None,
            },
            Edge {
                from: 2,
                to: 1,
                kind: EdgeKind::DualView,
                note: None,
            },
        ];
        assert!(BigPicture::new(nodes, edges).is_ok());
    }

    #[test]
    fn bad_labels_and_part_of_without_note_rejected() {
        let mut nodes = g().nodes.clone();
        nodes.truncate(2);
        let bad = vec![Edge {
            from: 1,
            to: 2,
            kind: EdgeKind::PartOfComplex,
            note: None,
        }];
        assert!(BigPicture::new(nodes.clone(), bad).is_err());
        nodes[0].x_label = "not-a-symbol".into();
        assert!(BigPicture::new(nodes, vec![]).is_err());
    }

    #[test]
    fn dot_export() {
        let dot = g().to_dot();
        assert_eq!(dot, g().to_dot());
        let node_statements = dot
            .lines()
            .filter(|l| {
                l.trim_start().starts_with('n') && l.contains(" [label=") && !l.contains("->")
            })
            .count();
        assert_eq!(node_statements, 27);
        assert!(dot.contains("n22 -> n27 [style=dashed, dir=both"));
        assert!(dot.contains("n3 -> n7 [style=dotted"));
        assert!(dot.contains("n24 -> n19 [style=solid"));
    }

    #[test]
    fn json_round_trip() {
        let json = g().to_json();
        let back = BigPicture::from_json(&json).unwrap();
        assert_eq!(&back, g());
        assert_eq!(back.to_json(), json);
    }
}
