//! Planar-embedded Brauer trees.
//!
//! A tree stores its vertices and edges in file order together with, for
//! every vertex, the counterclockwise cyclic order of its incident edges.
//! Trees are validated once at construction and immutable afterwards.

mod fold;
mod format;
mod iso;
mod ops;
mod random;
mod render;

pub use fold::{
    fold, fold_automorphism, fold_with_layout, folded_label, quotient, split_folded, FoldLayout,
};
pub use format::{parse, serialize};
pub use iso::{planar_iso, IsoFlags, PlanarIso};
pub use ops::{distance, leaves, path_between, real_stem, relabel};
pub use random::random_tree;
pub use render::{render_ascii, render_dot};

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::qpoly::QPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    /// A unipotent character.
    Unip,
    /// The vertex carrying the exceptional characters.
    Exc,
    /// A single non-unipotent character that is not exceptional.
    Nonunip,
}

impl VertexKind {
    pub fn token(self) -> &'static str {
        match self {
            VertexKind::Unip => "unip",
            VertexKind::Exc => "exc",
            VertexKind::Nonunip => "nonunip",
        }
    }

    pub fn from_token(s: &str) -> Option<Self> {
        match s {
            "unip" => Some(VertexKind::Unip),
            "exc" => Some(VertexKind::Exc),
            "nonunip" => Some(VertexKind::Nonunip),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub label: String,
    pub kind: VertexKind,
    pub real: bool,
    pub conj: Option<String>,
    pub series: Option<String>,
    pub degree: Option<QPoly>,
    pub frob: Option<String>,
}

impl Vertex {
    /// A real unipotent vertex with no optional attributes.
    pub fn unip(label: impl Into<String>) -> Self {
        Vertex {
            label: label.into(),
            kind: VertexKind::Unip,
            real: true,
            conj: None,
            series: None,
            degree: None,
            frob: None,
        }
    }

    pub fn with_kind(mut self, kind: VertexKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn with_degree(mut self, degree: QPoly) -> Self {
        self.degree = Some(degree);
        self
    }

    pub fn is_unipotent(&self) -> bool {
        self.kind == VertexKind::Unip
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub label: String,
    /// Endpoint vertex indices, in the order written in the file.
    pub ends: (usize, usize),
    pub cuspidal: bool,
}

impl Edge {
    /// The endpoint opposite to `v`. `v` must be an endpoint.
    pub fn other(&self, v: usize) -> usize {
        if self.ends.0 == v {
            self.ends.1
        } else {
            debug_assert_eq!(self.ends.1, v);
            self.ends.0
        }
    }

    pub fn touches(&self, v: usize) -> bool {
        self.ends.0 == v || self.ends.1 == v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Multiplicity {
    Symbolic,
    Concrete(u32),
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Symbolic => write!(f, "symbolic"),
            Multiplicity::Concrete(m) => write!(f, "{m}"),
        }
    }
}

/// Edge description used when building a tree from labels.
#[derive(Debug, Clone)]
pub struct EdgeSpec {
    pub label: String,
    pub a: String,
    pub b: String,
    pub cuspidal: bool,
}

impl EdgeSpec {
    pub fn new(label: impl Into<String>, a: impl Into<String>, b: impl Into<String>) -> Self {
        EdgeSpec {
            label: label.into(),
            a: a.into(),
            b: b.into(),
            cuspidal: false,
        }
    }

    pub fn cuspidal(mut self) -> Self {
        self.cuspidal = true;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("edge `{0}` is a loop")]
    Loop(String),
    #[error("order at `{vertex}` is incomplete: missing {missing:?}")]
    OrderIncomplete {
        vertex: String,
        missing: Vec<String>,
    },
    #[error("order at `{vertex}` lists `{edge}`, which is not incident or is repeated")]
    OrderInconsistent { vertex: String, edge: String },
    #[error("more than one exceptional vertex")]
    TwoExceptional,
    #[error("exceptional vertex `{0}` requires multiplicity other than 1")]
    ExceptionalWithTrivialMultiplicity(String),
    #[error("multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("a tree needs at least one edge")]
    NoEdges,
    #[error("the graph is not a tree: {0}")]
    NotATree(String),
    #[error("vertex `{0}`: real flag disagrees with its conjugate")]
    RealFlag(String),
    #[error("census: {unip} unipotent vertices but {edges} edges")]
    Census { unip: usize, edges: usize },
    #[error("real stem is not a line: {0}")]
    RealStemNotALine(String),
    #[error("fold: {0}")]
    Fold(String),
    #[error("relabel: {0}")]
    Relabel(String),
}

impl TreeError {
    /// Stable short code for reports.
    pub fn code(&self) -> &'static str {
        match self {
            TreeError::Syntax { .. } => "syntax",
            TreeError::DuplicateLabel(_) => "duplicate-label",
            TreeError::UnknownVertex(_) => "unknown-vertex",
            TreeError::UnknownEdge(_) => "unknown-edge",
            TreeError::Loop(_) => "loop",
            TreeError::OrderIncomplete { .. } => "order-incomplete",
            TreeError::OrderInconsistent { .. } => "order-inconsistent",
            TreeError::TwoExceptional => "two-exceptional",
            TreeError::ExceptionalWithTrivialMultiplicity(_) => "exceptional-with-m1",
            TreeError::ZeroMultiplicity => "zero-multiplicity",
            TreeError::NoEdges => "no-edges",
            TreeError::NotATree(_) => "not-a-tree",
            TreeError::RealFlag(_) => "real-flag",
            TreeError::Census { .. } => "census",
            TreeError::RealStemNotALine(_) => "real-stem-not-a-line",
            TreeError::Fold(_) => "fold",
            TreeError::Relabel(_) => "relabel",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrauerTree {
    id: String,
    multiplicity: Multiplicity,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    /// Counterclockwise incident edges per vertex, rotated so that the
    /// byte-wise smallest edge label comes first.
    order: Vec<Vec<usize>>,
    vindex: HashMap<String, usize>,
    eindex: HashMap<String, usize>,
}

impl BrauerTree {
    /// Builds and validates a tree. A vertex with at most two incident edges
    /// may be omitted from `orders`; its order is then taken from edge order.
    pub fn new(
        id: impl Into<String>,
        multiplicity: Multiplicity,
        vertices: Vec<Vertex>,
        edges: Vec<EdgeSpec>,
        orders: Vec<(String, Vec<String>)>,
    ) -> Result<Self, TreeError> {
        if multiplicity == Multiplicity::Concrete(0) {
            return Err(TreeError::ZeroMultiplicity);
        }
        let mut vindex = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vindex.insert(v.label.clone(), i).is_some() {
                return Err(TreeError::DuplicateLabel(v.label.clone()));
            }
        }
        let mut eindex = HashMap::new();
        let mut built = Vec::with_capacity(edges.len());
        for (i, e) in edges.into_iter().enumerate() {
            if eindex.insert(e.label.clone(), i).is_some() {
                return Err(TreeError::DuplicateLabel(e.label));
            }
            let a = *vindex
                .get(&e.a)
                .ok_or_else(|| TreeError::UnknownVertex(e.a.clone()))?;
            let b = *vindex
                .get(&e.b)
                .ok_or_else(|| TreeError::UnknownVertex(e.b.clone()))?;
            if a == b {
                return Err(TreeError::Loop(e.label));
            }
            built.push(Edge {
                label: e.label,
                ends: (a, b),
                cuspidal: e.cuspidal,
            });
        }
        if built.is_empty() {
            return Err(TreeError::NoEdges);
        }

        for v in &vertices {
            match &v.conj {
                Some(c) if !vindex.contains_key(c) => {
                    return Err(TreeError::UnknownVertex(c.clone()))
                }
                _ => {}
            }
            let self_conj = v.conj.as_ref().is_none_or(|c| c == &v.label);
            if v.real != self_conj {
                return Err(TreeError::RealFlag(v.label.clone()));
            }
        }
        let exc: Vec<&Vertex> = vertices
            .iter()
            .filter(|v| v.kind == VertexKind::Exc)
            .collect();
        if exc.len() > 1 {
            return Err(TreeError::TwoExceptional);
        }
        if let (Some(x), Multiplicity::Concrete(1)) = (exc.first(), multiplicity) {
            return Err(TreeError::ExceptionalWithTrivialMultiplicity(
                x.label.clone(),
            ));
        }

        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
        for (i, e) in built.iter().enumerate() {
            incident[e.ends.0].push(i);
            incident[e.ends.1].push(i);
        }

        let mut given: Vec<Option<Vec<usize>>> = vec![None; vertices.len()];
        for (vl, seq) in orders {
            let v = *vindex
                .get(&vl)
                .ok_or_else(|| TreeError::UnknownVertex(vl.clone()))?;
            if given[v].is_some() {
                return Err(TreeError::DuplicateLabel(format!("ORDER {vl}")));
            }
            let mut idx = Vec::with_capacity(seq.len());
            for el in seq {
                let e = *eindex
                    .get(&el)
                    .ok_or_else(|| TreeError::UnknownEdge(el.clone()))?;
                if !built[e].touches(v) || idx.contains(&e) {
                    return Err(TreeError::OrderInconsistent {
                        vertex: vl.clone(),
                        edge: el,
                    });
                }
                idx.push(e);
            }
            let missing: Vec<String> = incident[v]
                .iter()
                .filter(|e| !idx.contains(e))
                .map(|&e| built[e].label.clone())
                .collect();
            if !missing.is_empty() {
                return Err(TreeError::OrderIncomplete {
                    vertex: vl,
                    missing,
                });
            }
            given[v] = Some(idx);
        }
        let mut order = Vec::with_capacity(vertices.len());
        for (v, g) in given.into_iter().enumerate() {
            let seq = match g {
                Some(s) => s,
                None if incident[v].len() <= 2 => incident[v].clone(),
                None => {
                    return Err(TreeError::OrderIncomplete {
                        vertex: vertices[v].label.clone(),
                        missing: incident[v]
                            .iter()
                            .map(|&e| built[e].label.clone())
                            .collect(),
                    })
                }
            };
            order.push(canonical_rotation(seq, &built));
        }

        let tree = BrauerTree {
            id: id.into(),
            multiplicity,
            vertices,
            edges: built,
            order,
            vindex,
            eindex,
        };
        tree.check_acyclic_connected()?;
        tree.check_census()?;
        Ok(tree)
    }

    fn check_acyclic_connected(&self) -> Result<(), TreeError> {
        if self.edges.len() + 1 != self.vertices.len() {
            return Err(TreeError::NotATree(format!(
                "{} vertices and {} edges",
                self.vertices.len(),
                self.edges.len()
            )));
        }
        let seen = self.bfs_distances(0);
        if let Some(v) = seen.iter().position(|d| d.is_none()) {
            return Err(TreeError::NotATree(format!(
                "`{}` is not connected to `{}`",
                self.vertices[v].label, self.vertices[0].label
            )));
        }
        Ok(())
    }

    fn check_census(&self) -> Result<(), TreeError> {
        let non_unip = self.vertices.iter().filter(|v| !v.is_unipotent()).count();
        if non_unip == 1 {
            let unip = self.vertices.len() - 1;
            if unip != self.edges.len() {
                return Err(TreeError::Census {
                    unip,
                    edges: self.edges.len(),
                });
            }
        }
        Ok(())
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn multiplicity(&self) -> Multiplicity {
        self.multiplicity
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, v: usize) -> &Vertex {
        &self.vertices[v]
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vindex.get(label).copied()
    }

    pub fn edge_index(&self, label: &str) -> Option<usize> {
        self.eindex.get(label).copied()
    }

    pub fn require_vertex(&self, label: &str) -> Result<usize, TreeError> {
        self.vertex_index(label)
            .ok_or_else(|| TreeError::UnknownVertex(label.to_string()))
    }

    pub fn require_edge(&self, label: &str) -> Result<usize, TreeError> {
        self.edge_index(label)
            .ok_or_else(|| TreeError::UnknownEdge(label.to_string()))
    }

    /// Counterclockwise incident edges at `v`.
    pub fn order(&self, v: usize) -> &[usize] {
        &self.order[v]
    }

    /// Number of edges at `v`.
    pub fn valency(&self, v: usize) -> usize {
        self.order[v].len()
    }

    /// The edge following `e` counterclockwise around `v`.
    pub fn succ(&self, v: usize, e: usize) -> usize {
        let ord = &self.order[v];
        let pos = ord.iter().position(|&x| x == e).expect("edge at vertex");
        ord[(pos + 1) % ord.len()]
    }

    /// The edge preceding `e` counterclockwise around `v`.
    pub fn pred(&self, v: usize, e: usize) -> usize {
        let ord = &self.order[v];
        let pos = ord.iter().position(|&x| x == e).expect("edge at vertex");
        ord[(pos + ord.len() - 1) % ord.len()]
    }

    pub fn exceptional(&self) -> Option<usize> {
        self.vertices.iter().position(|v| v.kind == VertexKind::Exc)
    }

    /// The unique non-unipotent vertex, if there is exactly one.
    pub fn non_unipotent(&self) -> Option<usize> {
        let mut it = self
            .vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_unipotent())
            .map(|(i, _)| i);
        match (it.next(), it.next()) {
            (Some(v), None) => Some(v),
            _ => None,
        }
    }

    /// Multiplicity attached to vertex `v` for a concrete `m`.
    pub fn vertex_multiplicity(&self, v: usize, m: u32) -> u32 {
        if self.vertices[v].kind == VertexKind::Exc {
            m
        } else {
            1
        }
    }

    /// The edge joining `a` and `b`, if any.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.order[a]
            .iter()
            .copied()
            .find(|&e| self.edges[e].other(a) == b)
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.order[v].iter().map(move |&e| self.edges[e].other(v))
    }

    /// The common vertex of two distinct edges, if they share one.
    pub fn shared_vertex(&self, e: usize, f: usize) -> Option<usize> {
        let (a, b) = self.edges[e].ends;
        if self.edges[f].touches(a) {
            Some(a)
        } else if self.edges[f].touches(b) {
            Some(b)
        } else {
            None
        }
    }

    pub(crate) fn bfs_distances(&self, from: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertices.len()];
        dist[from] = Some(0);
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            let dv = dist[v].unwrap();
            for w in self.neighbours(v) {
                if dist[w].is_none() {
                    dist[w] = Some(dv + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Copy of this tree with another id.
    pub fn with_id(&self, id: impl Into<String>) -> Self {
        let mut t = self.clone();
        t.id = id.into();
        t
    }

    /// Copy of this tree with another multiplicity, revalidated.
    pub fn with_multiplicity(&self, m: Multiplicity) -> Result<Self, TreeError> {
        let (vertices, edges, orders) = self.to_specs();
        BrauerTree::new(self.id.clone(), m, vertices, edges, orders)
    }

    /// Decomposes the tree into constructor input.
    #[allow(clippy::type_complexity)]
    pub fn to_specs(&self) -> (Vec<Vertex>, Vec<EdgeSpec>, Vec<(String, Vec<String>)>) {
        let edges = self
            .edges
            .iter()
            .map(|e| EdgeSpec {
                label: e.label.clone(),
                a: self.vertices[e.ends.0].label.clone(),
                b: self.vertices[e.ends.1].label.clone(),
                cuspidal: e.cuspidal,
            })
            .collect();
        let orders = self
            .vertices
            .iter()
            .enumerate()
            .map(|(v, vx)| {
                (
                    vx.label.clone(),
                    self.order[v]
                        .iter()
                        .map(|&e| self.edges[e].label.clone())
                        .collect(),
                )
            })
            .collect();
        (self.vertices.clone(), edges, orders)
    }
}

fn canonical_rotation(seq: Vec<usize>, edges: &[Edge]) -> Vec<usize> {
    let start = (0..seq.len())
        .min_by(|&i, &j| {
            edges[seq[i]]
                .label
                .as_bytes()
                .cmp(edges[seq[j]].label.as_bytes())
        })
        .unwrap_or(0);
    let mut out = seq[start..].to_vec();
    out.extend_from_slice(&seq[..start]);
    out
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn successor_and_predecessor() {
        let t = star(3, false, Multiplicity::Concrete(1));
        let x = t.vertex_index("x").unwrap();
        let s = |l: &str| t.edge_index(l).unwrap();
        assert_eq!(t.succ(x, s("S0")), s("S1"));
        assert_eq!(t.succ(x, s("S2")), s("S0"));
        assert_eq!(t.pred(x, s("S0")), s("S2"));
    }

    #[test]
    fn rejects_cycles_and_disconnected_graphs() {
        let vs = vec![Vertex::unip("a"), Vertex::unip("b"), Vertex::unip("c")];
        let err = BrauerTree::new(
            "cyc",
            Multiplicity::Symbolic,
            vs.clone(),
            vec![
                EdgeSpec::new("e0", "a", "b"),
                EdgeSpec::new("e1", "b", "c"),
                EdgeSpec::new("e2", "c", "a"),
            ],
            vec![],
        )
        .unwrap_err();
        assert_eq!(err.code(), "not-a-tree");
    }

    #[test]
    fn rejects_two_exceptional_vertices() {
        let vs = vec![
            Vertex::unip("a").with_kind(VertexKind::Exc),
            Vertex::unip("b").with_kind(VertexKind::Exc),
        ];
        let err = BrauerTree::new(
            "x",
            Multiplicity::Symbolic,
            vs,
            vec![EdgeSpec::new("e", "a", "b")],
            vec![],
        )
        .unwrap_err();
        assert_eq!(err, TreeError::TwoExceptional);
    }

    #[test]
    fn exceptional_needs_nontrivial_multiplicity() {
        let vs = vec![
            Vertex::unip("a").with_kind(VertexKind::Exc),
            Vertex::unip("b"),
        ];
        let err = BrauerTree::new(
            "x",
            Multiplicity::Concrete(1),
            vs,
            vec![EdgeSpec::new("e", "a", "b")],
            vec![],
        )
        .unwrap_err();
        assert_eq!(err.code(), "exceptional-with-m1");
    }

    #[test]
    fn census_holds_with_one_nonunipotent_vertex() {
        let vs = vec![
            Vertex::unip("a").with_kind(VertexKind::Nonunip),
            Vertex::unip("b"),
            Vertex::unip("c"),
        ];
        BrauerTree::new(
            "x",
            Multiplicity::Symbolic,
            vs,
            vec![EdgeSpec::new("e", "a", "b"), EdgeSpec::new("f", "b", "c")],
            vec![],
        )
        .unwrap();
    }

    #[test]
    fn order_rotated_to_smallest_label() {
        let t = BrauerTree::new(
            "r",
            Multiplicity::Symbolic,
            vec![
                Vertex::unip("x"),
                Vertex::unip("a"),
                Vertex::unip("b"),
                Vertex::unip("c"),
            ],
            vec![
                EdgeSpec::new("B", "x", "a"),
                EdgeSpec::new("C", "x", "b"),
                EdgeSpec::new("A", "x", "c"),
            ],
            vec![("x".into(), vec!["C".into(), "A".into(), "B".into()])],
        )
        .unwrap();
        let labels: Vec<&str> = t
            .order(0)
            .iter()
            .map(|&e| t.edge(e).label.as_str())
            .collect();
        assert_eq!(labels, ["A", "B", "C"]);
    }

    #[test]
    fn missing_order_for_branch_vertex_is_incomplete() {
        let err = BrauerTree::new(
            "r",
            Multiplicity::Symbolic,
            vec![
                Vertex::unip("x"),
                Vertex::unip("a"),
                Vertex::unip("b"),
                Vertex::unip("c"),
            ],
            vec![
                EdgeSpec::new("B", "x", "a"),
                EdgeSpec::new("C", "x", "b"),
                EdgeSpec::new("A", "x", "c"),
            ],
            vec![],
        )
        .unwrap_err();
        assert_eq!(err.code(), "order-incomplete");
    }
}
