//! The folding construction and its inverse.
//!
//! Folding a tree with exceptional vertex `x` of multiplicity `m` by a
//! divisor `d` of `m` takes `d` copies of everything except `x`, labelled
//! `(<label>,<i>)`, and glues them at a single vertex keeping `x`'s label.
//! The cyclic group of order `d` acting by `i -> i+1` has `x` as its only
//! fixed point, and the quotient recovers the original tree.

use super::{BrauerTree, EdgeSpec, Multiplicity, TreeError, Vertex, VertexKind};

/// How the `d` copies of the edges at the exceptional vertex are arranged
/// around the glued vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FoldLayout {
    /// `(l1,0) .. (lr,0), (l1,1) .. (lr,1), ..`. The shift `i -> i+1` is then
    /// a planar automorphism.
    #[default]
    Interleaved,
    /// `(l1,0) .. (l1,d-1), (l2,0) ..`. Only planar-symmetric when the
    /// exceptional vertex has a single edge.
    Blocked,
}

fn fold_err(msg: impl Into<String>) -> TreeError {
    TreeError::Fold(msg.into())
}

pub fn folded_label(label: &str, i: u32) -> String {
    format!("({label},{i})")
}

/// Splits `(<base>,<i>)` into its parts.
pub fn split_folded(label: &str) -> Option<(&str, u32)> {
    let inner = label.strip_prefix('(')?.strip_suffix(')')?;
    let (base, i) = inner.rsplit_once(',')?;
    Some((base, i.parse().ok()?))
}

pub fn fold(t: &BrauerTree, d: u32) -> Result<BrauerTree, TreeError> {
    fold_with_layout(t, d, FoldLayout::Interleaved)
}

pub fn fold_with_layout(
    t: &BrauerTree,
    d: u32,
    layout: FoldLayout,
) -> Result<BrauerTree, TreeError> {
    let x = t
        .exceptional()
        .ok_or_else(|| fold_err("no exceptional vertex"))?;
    let m = match t.multiplicity() {
        Multiplicity::Concrete(m) => m,
        Multiplicity::Symbolic => return Err(fold_err("multiplicity is symbolic")),
    };
    if d <= 1 {
        return Err(fold_err("d must be greater than 1"));
    }
    if m % d != 0 {
        return Err(fold_err("d does not divide m"));
    }
    let new_m = m / d;
    let xl = &t.vertex(x).label;

    let mut centre = t.vertex(x).clone();
    if new_m == 1 {
        centre.kind = VertexKind::Nonunip;
    }
    let mut vertices = vec![centre];
    for i in 0..d {
        for (v, vx) in t.vertices().iter().enumerate() {
            if v == x {
                continue;
            }
            let mut c = vx.clone();
            c.label = folded_label(&vx.label, i);
            c.conj = vx.conj.as_ref().map(|l| folded_label(l, i));
            vertices.push(c);
        }
    }
    let copy = |v: usize, i: u32| -> String {
        if v == x {
            xl.clone()
        } else {
            folded_label(&t.vertex(v).label, i)
        }
    };
    let mut edges = Vec::new();
    for i in 0..d {
        for e in t.edges() {
            edges.push(EdgeSpec {
                label: folded_label(&e.label, i),
                a: copy(e.ends.0, i),
                b: copy(e.ends.1, i),
                cuspidal: e.cuspidal,
            });
        }
    }
    let at_x: Vec<&str> = t
        .order(x)
        .iter()
        .map(|&e| t.edge(e).label.as_str())
        .collect();
    let centre_order: Vec<String> = match layout {
        FoldLayout::Interleaved => (0..d)
            .flat_map(|i| at_x.iter().map(move |l| folded_label(l, i)))
            .collect(),
        FoldLayout::Blocked => at_x
            .iter()
            .flat_map(|l| (0..d).map(move |i| folded_label(l, i)))
            .collect(),
    };
    let mut orders = vec![(xl.clone(), centre_order)];
    for i in 0..d {
        for v in 0..t.num_vertices() {
            if v != x {
                orders.push((
                    folded_label(&t.vertex(v).label, i),
                    t.order(v)
                        .iter()
                        .map(|&e| folded_label(&t.edge(e).label, i))
                        .collect(),
                ));
            }
        }
    }
    BrauerTree::new(
        format!("{}-fold{}", t.id(), d),
        Multiplicity::Concrete(new_m),
        vertices,
        edges,
        orders,
    )
}

struct FoldedShape {
    centre: usize,
    /// `shift[v]` is the vertex with the same base and index `i+1 mod d`.
    shift: Vec<usize>,
    edge_shift: Vec<usize>,
}

fn analyse(t: &BrauerTree, d: u32) -> Result<FoldedShape, TreeError> {
    if d <= 1 {
        return Err(fold_err("d must be greater than 1"));
    }
    let unfolded: Vec<usize> = (0..t.num_vertices())
        .filter(|&v| split_folded(&t.vertex(v).label).is_none())
        .collect();
    let centre = match unfolded.as_slice() {
        [c] => *c,
        _ => {
            return Err(fold_err(format!(
                "expected exactly one vertex without `(label,i)` shape, found {}",
                unfolded.len()
            )))
        }
    };
    let shift_of = |label: &str, what: &str| -> Result<String, TreeError> {
        let (base, i) = split_folded(label)
            .ok_or_else(|| fold_err(format!("{what} `{label}` is not of folded shape")))?;
        if i >= d {
            return Err(fold_err(format!("{what} `{label}` has index at least {d}")));
        }
        Ok(folded_label(base, (i + 1) % d))
    };
    let mut shift = vec![centre; t.num_vertices()];
    for v in 0..t.num_vertices() {
        if v != centre {
            let target = shift_of(&t.vertex(v).label, "vertex")?;
            shift[v] = t.vertex_index(&target).ok_or_else(|| {
                fold_err(format!("orbit of `{}` lacks `{target}`", t.vertex(v).label))
            })?;
        }
    }
    let mut edge_shift = vec![0; t.num_edges()];
    for e in 0..t.num_edges() {
        let target = shift_of(&t.edge(e).label, "edge")?;
        edge_shift[e] = t
            .edge_index(&target)
            .ok_or_else(|| fold_err(format!("orbit of `{}` lacks `{target}`", t.edge(e).label)))?;
    }
    Ok(FoldedShape {
        centre,
        shift,
        edge_shift,
    })
}

/// The generator `(v,i) -> (v,i+1)` of the label action on a folded tree,
/// as a vertex permutation. Fails unless it is a planar automorphism.
pub fn fold_automorphism(t: &BrauerTree, d: u32) -> Result<Vec<usize>, TreeError> {
    let s = analyse(t, d)?;
    for (e, edge) in t.edges().iter().enumerate() {
        let f = s.edge_shift[e];
        let (a, b) = edge.ends;
        if !t.edge(f).touches(s.shift[a]) || !t.edge(f).touches(s.shift[b]) {
            return Err(fold_err(format!(
                "shift does not preserve incidence of `{}`",
                edge.label
            )));
        }
        for v in [a, b] {
            if s.edge_shift[t.succ(v, e)] != t.succ(s.shift[v], f) {
                return Err(fold_err(format!(
                    "shift does not preserve the cyclic order at `{}`",
                    t.vertex(v).label
                )));
            }
        }
    }
    Ok(s.shift)
}

/// Collapses the orbits of the label action. Accepts either layout at the
/// glued vertex.
pub fn quotient(t: &BrauerTree, d: u32) -> Result<BrauerTree, TreeError> {
    let s = analyse(t, d)?;
    let m = match t.multiplicity() {
        Multiplicity::Concrete(m) => m * d,
        Multiplicity::Symbolic => return Err(fold_err("multiplicity is symbolic")),
    };
    let base = |label: &str| -> String {
        split_folded(label)
            .map(|(b, _)| b.to_string())
            .unwrap_or_else(|| label.to_string())
    };
    let index = |label: &str| split_folded(label).map(|(_, i)| i);

    // Edges at a copied vertex carry that vertex's index.
    for (e, edge) in t.edges().iter().enumerate() {
        let i = index(&edge.label);
        for v in [edge.ends.0, edge.ends.1] {
            if v != s.centre && index(&t.vertex(v).label) != i {
                return Err(fold_err(format!(
                    "edge `{}` joins copies with different indices",
                    t.edge(e).label
                )));
            }
        }
    }

    let mut centre = t.vertex(s.centre).clone();
    centre.kind = VertexKind::Exc;
    let mut vertices = vec![centre];
    let mut orders = Vec::new();
    for (v, vx) in t.vertices().iter().enumerate() {
        if index(&vx.label) == Some(0) {
            let mut c: Vertex = vx.clone();
            c.label = base(&vx.label);
            c.conj = vx.conj.as_deref().map(base);
            vertices.push(c);
            orders.push((
                base(&vx.label),
                t.order(v).iter().map(|&e| base(&t.edge(e).label)).collect(),
            ));
        }
    }
    let mut edges = Vec::new();
    for edge in t.edges() {
        if index(&edge.label) == Some(0) {
            edges.push(EdgeSpec {
                label: base(&edge.label),
                a: base(&t.vertex(edge.ends.0).label),
                b: base(&t.vertex(edge.ends.1).label),
                cuspidal: edge.cuspidal,
            });
        }
    }
    let around: Vec<String> = t
        .order(s.centre)
        .iter()
        .map(|&e| base(&t.edge(e).label))
        .collect();
    orders.push((
        t.vertex(s.centre).label.clone(),
        centre_quotient_order(&around, d)?,
    ));

    let id = t
        .id()
        .strip_suffix(&format!("-fold{d}"))
        .unwrap_or(t.id())
        .to_string();
    BrauerTree::new(id, Multiplicity::Concrete(m), vertices, edges, orders)
}

/// Induced order at the glued vertex: the base labels must either repeat
/// with period `r = len/d` or come in cyclic runs of length `d`.
fn centre_quotient_order(around: &[String], d: u32) -> Result<Vec<String>, TreeError> {
    let d = d as usize;
    let n = around.len();
    if !n.is_multiple_of(d) {
        return Err(fold_err("glued vertex valency is not divisible by d"));
    }
    let r = n / d;
    if (0..n).all(|j| around[j] == around[(j + r) % n]) {
        return Ok(around[..r].to_vec());
    }
    // Rotate to the start of a run, then read runs of length d.
    let start = (0..n)
        .find(|&j| around[j] != around[(j + n - 1) % n])
        .unwrap_or(0);
    let rot: Vec<&String> = (0..n).map(|j| &around[(start + j) % n]).collect();
    let runs: Vec<&[&String]> = rot.chunks(d).collect();
    if runs.iter().all(|c| c.iter().all(|l| *l == c[0])) {
        let out: Vec<String> = runs.iter().map(|c| c[0].clone()).collect();
        let mut seen = out.clone();
        seen.sort();
        seen.dedup();
        if seen.len() == out.len() {
            return Ok(out);
        }
    }
    Err(fold_err(
        "order at the glued vertex is not compatible with a free action",
    ))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::iso::{planar_iso, IsoFlags};
    use super::*;

    fn edge_exc(m: u32) -> BrauerTree {
        BrauerTree::new(
            "edge",
            Multiplicity::Concrete(m),
            vec![
                Vertex::unip("x").with_kind(VertexKind::Exc),
                Vertex::unip("u"),
            ],
            vec![EdgeSpec::new("l1", "x", "u")],
            vec![],
        )
        .unwrap()
    }

    fn line_exc(m: u32) -> BrauerTree {
        BrauerTree::new(
            "line",
            Multiplicity::Concrete(m),
            vec![
                Vertex::unip("x").with_kind(VertexKind::Exc),
                Vertex::unip("a"),
                Vertex::unip("b"),
            ],
            vec![EdgeSpec::new("l1", "x", "a"), EdgeSpec::new("l2", "a", "b")],
            vec![],
        )
        .unwrap()
    }

    fn labels(t: &BrauerTree, v: usize) -> Vec<String> {
        t.order(v)
            .iter()
            .map(|&e| t.edge(e).label.clone())
            .collect()
    }

    #[test]
    fn single_edge_folds_to_a_star() {
        let f = fold(&edge_exc(3), 3).unwrap();
        assert_eq!(f.multiplicity(), Multiplicity::Concrete(1));
        let c = f.vertex_index("x").unwrap();
        assert_eq!(f.vertex(c).kind, VertexKind::Nonunip);
        assert_eq!(labels(&f, c), ["(l1,0)", "(l1,1)", "(l1,2)"]);
        for i in 0..3 {
            assert!(f.vertex_index(&format!("(u,{i})")).is_some());
        }
        let sigma = fold_automorphism(&f, 3).unwrap();
        assert_eq!(sigma[c], c);
        let u0 = f.vertex_index("(u,0)").unwrap();
        assert_eq!(f.vertex(sigma[u0]).label, "(u,1)");
    }

    #[test]
    fn single_edge_round_trip() {
        let t = edge_exc(3);
        let q = quotient(&fold(&t, 3).unwrap(), 3).unwrap();
        assert!(planar_iso(&q, &t, &IsoFlags::exact()).is_some());
        assert_eq!(q.multiplicity(), Multiplicity::Concrete(3));
    }

    #[test]
    fn line_folded_in_two() {
        let f = fold(&line_exc(4), 2).unwrap();
        assert_eq!(f.num_vertices(), 5);
        assert_eq!(f.multiplicity(), Multiplicity::Concrete(2));
        let c = f.vertex_index("x").unwrap();
        assert_eq!(f.vertex(c).kind, VertexKind::Exc);
        assert_eq!(labels(&f, c), ["(l1,0)", "(l1,1)"]);
        let sigma = fold_automorphism(&f, 2).unwrap();
        let a0 = f.vertex_index("(a,0)").unwrap();
        let a1 = f.vertex_index("(a,1)").unwrap();
        assert_eq!((sigma[a0], sigma[a1]), (a1, a0));
        let q = quotient(&f, 2).unwrap();
        assert!(planar_iso(&q, &line_exc(4), &IsoFlags::exact()).is_some());
    }

    #[test]
    fn blocked_layout_breaks_symmetry_with_several_edges() {
        let t = star(2, true, Multiplicity::Concrete(2));
        let f = fold_with_layout(&t, 2, FoldLayout::Blocked).unwrap();
        assert!(fold_automorphism(&f, 2).is_err());
        // The quotient still recovers the tree.
        let q = quotient(&f, 2).unwrap();
        assert!(planar_iso(&q, &t, &IsoFlags::exact()).is_some());
        let g = fold(&t, 2).unwrap();
        assert!(fold_automorphism(&g, 2).is_ok());
    }

    #[test]
    fn preconditions() {
        let t = edge_exc(3);
        assert!(fold(&t, 5)
            .unwrap_err()
            .to_string()
            .contains("d does not divide m"));
        assert!(fold(&t, 1).is_err());
        assert!(fold(&line2(Multiplicity::Concrete(1)), 2).is_err());
        assert!(fold_automorphism(&line2(Multiplicity::Concrete(1)), 2).is_err());
        let sym = edge_exc(3)
            .with_multiplicity(Multiplicity::Symbolic)
            .unwrap();
        assert!(fold(&sym, 3).is_err());
    }

    #[test]
    fn folded_label_parsing() {
        assert_eq!(split_folded("(phi_{7,1},2)"), Some(("phi_{7,1}", 2)));
        assert_eq!(split_folded("phi_{7,1}"), None);
        assert_eq!(split_folded("(a,x)"), None);
    }
}
