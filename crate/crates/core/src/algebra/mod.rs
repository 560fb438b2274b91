//! The basic Brauer tree algebra of a planar tree with concrete multiplicity.
//!
//! The algebra is the path algebra of a quiver modulo relations. Its points
//! are the edges of the tree; at every vertex `v` with `m_v * k_v >= 2`
//! there is an arrow `S -> succ_v(S)` for each edge `S` at `v`. Modules are
//! quiver representations over the rationals, and the indecomposable
//! projectives are built explicitly from the cyclic orders.

pub mod complex;
pub mod decomposition;
pub mod linalg;
pub mod maps;
pub mod module;
pub mod walk;

pub use complex::{
    homology, lemma_complex, DiffEntry, DiffKind, Homology, LemmaComplex, ProjComplex,
};
pub use decomposition::{cartan, cartan_det, decomposition_matrix, DecompositionMatrix};
pub use maps::{canonical_generator, canonical_map, hom_from_projective, ProjMap};
pub use module::Module;
pub use walk::{walk, CharacterVector, WalkResult};

use std::collections::HashMap;

use thiserror::Error;

use crate::tree::{BrauerTree, Multiplicity, TreeError, VertexKind};
use linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("multiplicity is symbolic; a concrete m is required")]
    SymbolicMultiplicity,
    #[error("tree has multiplicity {tree}, but m = {given} was requested")]
    MultiplicityMismatch { tree: u32, given: u32 },
    #[error("m must be at least 1")]
    ZeroMultiplicity,
    #[error("m = {0} needs an exceptional vertex")]
    NoExceptionalVertex(u32),
    #[error("a single edge with m = 1 gives a simple algebra")]
    Degenerate,
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("no canonical map: {0}")]
    NoCanonicalMap(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not a complex: d{from} followed by d{to} is nonzero")]
    NotAComplex { from: i64, to: i64 },
    #[error("bad complex: {0}")]
    BadComplex(String),
    #[error("bad path: {0}")]
    BadPath(String),
    #[error("certificate requires an edge between `{0}` and `{1}`")]
    CertificateRequiresEdge(String, String),
}

impl AlgebraError {
    pub fn code(&self) -> &'static str {
        match self {
            AlgebraError::SymbolicMultiplicity => "symbolic-multiplicity",
            AlgebraError::MultiplicityMismatch { .. } => "multiplicity-mismatch",
            AlgebraError::ZeroMultiplicity => "zero-multiplicity",
            AlgebraError::NoExceptionalVertex(_) => "no-exceptional-vertex",
            AlgebraError::Degenerate => "degenerate",
            AlgebraError::Tree(e) => e.code(),
            AlgebraError::NoCanonicalMap(_) => "no-canonical-map",
            AlgebraError::Unsupported(_) => "unsupported",
            AlgebraError::NotAComplex { .. } => "not-a-complex",
            AlgebraError::BadComplex(_) => "bad-complex",
            AlgebraError::BadPath(_) => "bad-path",
            AlgebraError::CertificateRequiresEdge(..) => "certificate-requires-edge",
        }
    }
}

/// Arrow `src -> tgt` going once around `vertex`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arrow {
    pub vertex: usize,
    pub src: usize,
    pub tgt: usize,
}

/// Position of a basis vector of an indecomposable projective `P_S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisTag {
    Top,
    /// The `step`-th element walking around `vertex`, counting from 1.
    Chain {
        vertex: usize,
        step: usize,
    },
    Socle,
}

/// Explicit basis and action of `P_S`.
///
/// Basis order: top, chain around the first endpoint, chain around the
/// second endpoint, socle.
#[derive(Debug, Clone)]
pub struct Projective {
    pub edge: usize,
    pub tags: Vec<BasisTag>,
    /// Composition factor (point) of each basis vector.
    pub points: Vec<usize>,
    /// Index of each basis vector among those at the same point.
    pub local: Vec<usize>,
    /// For every non-top basis vector, an arrow and a basis vector it is the
    /// image of. Entries come after their source.
    pub parent: Vec<Option<(usize, usize)>>,
    /// Every nonzero action `(arrow, from, to)`: the arrow sends `from` to `to`.
    pub action: Vec<(usize, usize, usize)>,
    pub module: Module,
}

impl Projective {
    pub fn dim(&self) -> usize {
        self.tags.len()
    }

    pub fn index_of(&self, tag: BasisTag) -> Option<usize> {
        self.tags.iter().position(|&t| t == tag)
    }
}

#[derive(Debug, Clone)]
pub struct TreeAlgebra {
    tree: BrauerTree,
    m: u32,
    arrows: Vec<Arrow>,
    arrow_at: HashMap<(usize, usize), usize>,
    projectives: Vec<Projective>,
}

impl TreeAlgebra {
    pub fn new(tree: &BrauerTree, m: u32) -> Result<Self, AlgebraError> {
        if m == 0 {
            return Err(AlgebraError::ZeroMultiplicity);
        }
        if let Multiplicity::Concrete(tm) = tree.multiplicity() {
            if tm != m {
                return Err(AlgebraError::MultiplicityMismatch { tree: tm, given: m });
            }
        }
        if m >= 2 && tree.exceptional().is_none() {
            return Err(AlgebraError::NoExceptionalVertex(m));
        }
        if tree.num_edges() == 1 && m == 1 {
            return Err(AlgebraError::Degenerate);
        }
        let mut alg = TreeAlgebra {
            tree: tree.clone(),
            m,
            arrows: Vec::new(),
            arrow_at: HashMap::new(),
            projectives: Vec::new(),
        };
        for v in 0..tree.num_vertices() {
            if alg.walk_length(v) >= 2 {
                for &s in tree.order(v) {
                    alg.arrow_at.insert((v, s), alg.arrows.len());
                    alg.arrows.push(Arrow {
                        vertex: v,
                        src: s,
                        tgt: tree.succ(v, s),
                    });
                }
            }
        }
        alg.projectives = (0..tree.num_edges())
            .map(|s| alg.build_projective(s))
            .collect();
        Ok(alg)
    }

    /// Builds the algebra for a tree whose multiplicity is concrete.
    pub fn from_tree(tree: &BrauerTree) -> Result<Self, AlgebraError> {
        match tree.multiplicity() {
            Multiplicity::Concrete(m) => Self::new(tree, m),
            Multiplicity::Symbolic => Err(AlgebraError::SymbolicMultiplicity),
        }
    }

    pub fn tree(&self) -> &BrauerTree {
        &self.tree
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn num_points(&self) -> usize {
        self.tree.num_edges()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// The arrow leaving `src` around `v`, if `v` carries arrows.
    pub fn arrow(&self, v: usize, src: usize) -> Option<usize> {
        self.arrow_at.get(&(v, src)).copied()
    }

    /// `m_v`: the multiplicity of vertex `v`.
    pub fn vertex_multiplicity(&self, v: usize) -> usize {
        if self.tree.vertex(v).kind == VertexKind::Exc {
            self.m as usize
        } else {
            1
        }
    }

    /// `m_v * k_v`: length of the full cycle around `v`.
    pub fn walk_length(&self, v: usize) -> usize {
        self.vertex_multiplicity(v) * self.tree.valency(v)
    }

    /// Total dimension, the sum of `m_v * k_v^2` over vertices.
    pub fn dim(&self) -> usize {
        (0..self.tree.num_vertices())
            .map(|v| self.walk_length(v) * self.tree.valency(v))
            .sum()
    }

    pub fn projective(&self, s: usize) -> &Projective {
        &self.projectives[s]
    }

    pub fn projectives(&self) -> &[Projective] {
        &self.projectives
    }

    pub fn simple(&self, s: usize) -> Module {
        let mut dims = vec![0; self.num_points()];
        dims[s] = 1;
        Module::zero_action(self, dims)
    }

    /// 1 iff `t` follows `s` directly around an endpoint of `s` carrying
    /// arrows, i.e. iff `t` is in the head of the radical of `P_s`.
    pub fn ext1(&self, s: usize, t: usize) -> u8 {
        let (a, b) = self.tree.edge(s).ends;
        let hit = [a, b]
            .iter()
            .any(|&v| self.walk_length(v) >= 2 && self.tree.succ(v, s) == t);
        u8::from(hit)
    }

    /// Dimension of the homomorphisms `P_s -> P_t`, read off the basis of `P_t`.
    pub fn hom_dim(&self, s: usize, t: usize) -> usize {
        self.projectives[t].module.dims()[s]
    }

    /// The edges of the full cycle around `v` starting at `s`, one per arrow.
    pub fn cycle_arrows(&self, v: usize, s: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = s;
        for _ in 0..self.walk_length(v) {
            let a = self.arrow(v, cur).expect("vertex carries arrows");
            out.push(a);
            cur = self.arrows[a].tgt;
        }
        out
    }

    fn build_projective(&self, s: usize) -> Projective {
        let t = &self.tree;
        let (u, v) = t.edge(s).ends;
        let mut tags = vec![BasisTag::Top];
        let mut points = vec![s];
        let mut parent = vec![None];
        let mut action = Vec::new();
        let mut chain_ends = Vec::new();
        for w in [u, v] {
            let len = self.walk_length(w);
            if len < 2 {
                continue;
            }
            let mut prev = 0;
            let mut cur = s;
            for step in 1..len {
                let a = self.arrow(w, cur).unwrap();
                cur = self.arrows[a].tgt;
                let idx = tags.len();
                tags.push(BasisTag::Chain { vertex: w, step });
                points.push(cur);
                parent.push(Some((a, prev)));
                action.push((a, prev, idx));
                prev = idx;
            }
            chain_ends.push((w, prev, cur));
        }
        let soc = tags.len();
        tags.push(BasisTag::Socle);
        points.push(s);
        for (k, &(w, last, at)) in chain_ends.iter().enumerate() {
            let a = self.arrow(w, at).unwrap();
            debug_assert_eq!(self.arrows[a].tgt, s);
            if k == 0 {
                parent.push(Some((a, last)));
            }
            action.push((a, last, soc));
        }
        let mut dims = vec![0; self.num_points()];
        let mut local = Vec::with_capacity(points.len());
        for &p in &points {
            local.push(dims[p]);
            dims[p] += 1;
        }
        let mut maps: Vec<Matrix> = self
            .arrows
            .iter()
            .map(|ar| Matrix::zeros(dims[ar.tgt], dims[ar.src]))
            .collect();
        for &(a, from, to) in &action {
            maps[a].set(local[to], local[from], linalg::Rat::one());
        }
        Projective {
            edge: s,
            tags,
            points,
            local,
            parent,
            action,
            module: Module::from_parts(dims, maps),
        }
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    pub use crate::tree::{BrauerTree, EdgeSpec, Multiplicity, Vertex, VertexKind};

    pub fn line2() -> BrauerTree {
        BrauerTree::new(
            "line2",
            Multiplicity::Symbolic,
            vec![Vertex::unip("a"), Vertex::unip("b"), Vertex::unip("c")],
            vec![EdgeSpec::new("S0", "a", "b"), EdgeSpec::new("S1", "b", "c")],
            vec![],
        )
        .unwrap()
    }

    pub fn star(k: usize, exceptional: bool) -> BrauerTree {
        let kind = if exceptional {
            VertexKind::Exc
        } else {
            VertexKind::Unip
        };
        let mut vs = vec![Vertex::unip("x").with_kind(kind)];
        let mut es = Vec::new();
        for i in 0..k {
            vs.push(Vertex::unip(format!("u{i}")));
            es.push(EdgeSpec::new(format!("S{i}"), "x", format!("u{i}")));
        }
        let ord = vec![("x".to_string(), (0..k).map(|i| format!("S{i}")).collect())];
        BrauerTree::new("star", Multiplicity::Symbolic, vs, es, ord).unwrap()
    }

    pub fn edge_exc() -> BrauerTree {
        BrauerTree::new(
            "edge",
            Multiplicity::Symbolic,
            vec![
                Vertex::unip("x").with_kind(VertexKind::Exc),
                Vertex::unip("u"),
            ],
            vec![EdgeSpec::new("S", "x", "u")],
            vec![],
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn line_dimensions() {
        let a = TreeAlgebra::new(&line2(), 1).unwrap();
        assert_eq!(a.dim(), 6);
        assert_eq!(a.projective(0).dim(), 3);
        // P_S0 is uniserial S0, S1, S0.
        assert_eq!(a.projective(0).points, vec![0, 1, 0]);
        assert_eq!(a.simple(0).dim(), 1);
    }

    #[test]
    fn star_dimensions() {
        let a = TreeAlgebra::new(&star(3, true), 2).unwrap();
        assert_eq!(a.dim(), 21);
        for s in 0..3 {
            assert_eq!(a.projective(s).dim(), 7);
        }
    }

    #[test]
    fn degenerate_and_symbolic_are_rejected() {
        let single = BrauerTree::new(
            "one",
            Multiplicity::Symbolic,
            vec![Vertex::unip("a"), Vertex::unip("b")],
            vec![EdgeSpec::new("S", "a", "b")],
            vec![],
        )
        .unwrap();
        assert_eq!(
            TreeAlgebra::new(&single, 1).unwrap_err(),
            AlgebraError::Degenerate
        );
        assert!(TreeAlgebra::from_tree(&line2()).is_err());
        assert_eq!(
            TreeAlgebra::new(&line2(), 2).unwrap_err().code(),
            "no-exceptional-vertex"
        );
    }

    #[test]
    fn ext1_rule() {
        let a = TreeAlgebra::new(&star(3, false), 1).unwrap();
        assert_eq!(a.ext1(0, 1), 1);
        assert_eq!(a.ext1(0, 2), 0);
        let l = TreeAlgebra::new(&line2(), 1).unwrap();
        assert_eq!(l.ext1(0, 0), 0);
        assert_eq!(l.ext1(0, 1), 1);
        let e = TreeAlgebra::new(&edge_exc(), 3).unwrap();
        assert_eq!(e.ext1(0, 0), 1);
    }

    #[test]
    fn exceptional_leaf_projective_is_uniserial() {
        let e = TreeAlgebra::new(&edge_exc(), 3).unwrap();
        let p = e.projective(0);
        assert_eq!(p.dim(), 4);
        assert_eq!(p.module.dims(), &[4]);
    }
}
