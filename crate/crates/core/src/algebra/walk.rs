//! Syzygy walks with their lattice characters.
//!
//! A vertex stands for a lattice whose character is that vertex. Taking
//! syzygies of the reduction and tracking `[Omega L] = [P] - [L]` in the
//! Grothendieck group of characters gives the character of each syzygy
//! lattice, since a lattice and its reduction have the same projective cover.

use std::fmt;

use serde::Serialize;

use super::linalg::Matrix;
use super::module::Module;
use super::{AlgebraError, BasisTag, TreeAlgebra};
use crate::tree::{BrauerTree, VertexKind};

/// Integer combination of vertices. The exceptional vertex is one symbol,
/// standing for the sum of the exceptional characters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharacterVector {
    coeffs: Vec<i64>,
}

impl CharacterVector {
    pub fn zero(n: usize) -> Self {
        CharacterVector { coeffs: vec![0; n] }
    }

    pub fn unit(n: usize, v: usize) -> Self {
        let mut c = Self::zero(n);
        c.coeffs[v] = 1;
        c
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn add_vertex(&mut self, v: usize, k: i64) {
        self.coeffs[v] += k;
    }

    /// The vertex, if this is the character of a single vertex.
    pub fn as_vertex(&self) -> Option<usize> {
        let mut it = self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0);
        match (it.next(), it.next()) {
            (Some((v, 1)), None) => Some(v),
            _ => None,
        }
    }

    /// Character of the projective cover of the simple module `s`.
    pub fn projective(t: &BrauerTree, s: usize) -> Self {
        let mut c = Self::zero(t.num_vertices());
        let (a, b) = t.edge(s).ends;
        c.add_vertex(a, 1);
        c.add_vertex(b, 1);
        c
    }

    pub fn display<'a>(&'a self, t: &'a BrauerTree) -> impl fmt::Display + 'a {
        CharDisplay { c: self, t }
    }
}

struct CharDisplay<'a> {
    c: &'a CharacterVector,
    t: &'a BrauerTree,
}

impl fmt::Display for CharDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, &k) in self.c.coeffs.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let label = &self.t.vertex(v).label;
            let sign = if k < 0 { "-" } else { "+" };
            match (first, k.abs()) {
                (true, 1) if k < 0 => write!(f, "-{label}")?,
                (true, 1) => write!(f, "{label}")?,
                (true, a) => write!(f, "{}{a}*{label}", if k < 0 { "-" } else { "" })?,
                (false, 1) => write!(f, " {sign} {label}")?,
                (false, a) => write!(f, " {sign} {a}*{label}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct WalkResult {
    pub character: CharacterVector,
    /// Heads of the projective covers used, one list per step.
    pub heads: Vec<Vec<usize>>,
    pub module: Module,
    /// Number of syzygies actually taken after reducing negative `n`.
    pub steps: usize,
    /// Set when the start vertex is not a leaf; see [`start_module`].
    pub experimental: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct WalkReport {
    pub character: String,
    pub heads: Vec<Vec<String>>,
    pub factors: Vec<String>,
    pub steps: usize,
    pub experimental: bool,
}

impl WalkResult {
    pub fn report(&self, alg: &TreeAlgebra) -> WalkReport {
        let t = alg.tree();
        let lbl = |e: &usize| t.edge(*e).label.clone();
        WalkReport {
            character: self.character.display(t).to_string(),
            heads: self
                .heads
                .iter()
                .map(|h| h.iter().map(lbl).collect())
                .collect(),
            factors: self.module.composition_factors().iter().map(lbl).collect(),
            steps: self.steps,
            experimental: self.experimental,
        }
    }
}

/// Reduction of the lattice of vertex `v`: the simple module of the edge at
/// a leaf. At an internal vertex, the uniserial module whose factors run
/// once counterclockwise around `v` starting from the first edge of its
/// ORDER line.
pub fn start_module(alg: &TreeAlgebra, v: usize) -> Result<Module, AlgebraError> {
    let t = alg.tree();
    if t.vertex(v).kind == VertexKind::Exc {
        return Err(AlgebraError::Unsupported(format!(
            "walk from the exceptional vertex `{}`",
            t.vertex(v).label
        )));
    }
    let head = t.order(v)[0];
    if t.valency(v) == 1 {
        return Ok(alg.simple(head));
    }
    let p = alg.projective(head);
    let dims = p.module.dims();
    let mut spans: Vec<Vec<usize>> = vec![Vec::new(); alg.num_points()];
    for (b, tag) in p.tags.iter().enumerate() {
        let keep = match tag {
            BasisTag::Top => true,
            BasisTag::Chain { vertex, .. } => *vertex == v,
            BasisTag::Socle => false,
        };
        if !keep {
            spans[p.points[b]].push(p.local[b]);
        }
    }
    let spans: Vec<Matrix> = spans
        .iter()
        .enumerate()
        .map(|(q, idx)| Matrix::identity(dims[q]).select_cols(idx))
        .collect();
    Ok(p.module.quotient(alg, &spans))
}

/// `Omega^n` of the lattice of `start`. Negative `n` is reduced modulo the
/// period `2e` of syzygies over a Brauer tree algebra with `e` edges.
pub fn walk(alg: &TreeAlgebra, start: usize, n: i64) -> Result<WalkResult, AlgebraError> {
    let t = alg.tree();
    let module = start_module(alg, start)?;
    let period = 2 * t.num_edges() as i64;
    let steps = n.rem_euclid(period) as usize;
    let mut res = WalkResult {
        character: CharacterVector::unit(t.num_vertices(), start),
        heads: Vec::with_capacity(steps),
        module,
        steps,
        experimental: t.valency(start) > 1,
    };
    for _ in 0..steps {
        let cover = res.module.projective_cover(alg);
        let mut next = CharacterVector::zero(t.num_vertices());
        for &s in &cover.heads {
            let p = CharacterVector::projective(t, s);
            for (v, &k) in p.coeffs.iter().enumerate() {
                next.add_vertex(v, k);
            }
        }
        for (v, &k) in res.character.coeffs.iter().enumerate() {
            next.add_vertex(v, -k);
        }
        res.module = cover.module.kernel(alg, &cover.map);
        res.character = next;
        res.heads.push(cover.heads);
    }
    Ok(res)
}
