//! Isomorphism of planar trees.
//!
//! A planar isomorphism is determined by the image of one oriented edge: the
//! cyclic orders then force the image of every edge around each mapped
//! vertex. So the search tries every oriented target edge for a fixed root.

use std::collections::VecDeque;

use super::{BrauerTree, VertexKind};

/// Which decorations an isomorphism has to respect besides planarity.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IsoFlags {
    /// Exceptional vertices map to exceptional vertices.
    pub exceptional: bool,
    /// Vertex kinds agree.
    pub kind: bool,
    /// Series tags agree.
    pub series: bool,
    pub vertex_labels: bool,
    pub edge_labels: bool,
    /// Cuspidal edges map to cuspidal edges.
    pub cuspidal: bool,
    /// Look for isomorphisms that reverse every cyclic order instead.
    pub reversed: bool,
    /// Vertex label pairs `(in T1, in T2)` the bijection must contain.
    pub fixed: Vec<(String, String)>,
}

impl IsoFlags {
    /// Planarity plus the exceptional marking.
    pub fn structural() -> Self {
        IsoFlags {
            exceptional: true,
            ..Default::default()
        }
    }

    /// Everything must match, including labels.
    pub fn exact() -> Self {
        IsoFlags {
            exceptional: true,
            kind: true,
            series: true,
            vertex_labels: true,
            edge_labels: true,
            cuspidal: true,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarIso {
    /// `vertex_map[v]` is the image in T2 of vertex `v` of T1.
    pub vertex_map: Vec<usize>,
    /// `edge_map[e]` is the image in T2 of edge `e` of T1.
    pub edge_map: Vec<usize>,
}

impl PlanarIso {
    /// The bijection as label pairs, in T1 vertex order.
    pub fn vertex_pairs(&self, t1: &BrauerTree, t2: &BrauerTree) -> Vec<(String, String)> {
        self.vertex_map
            .iter()
            .enumerate()
            .map(|(v, &w)| (t1.vertex(v).label.clone(), t2.vertex(w).label.clone()))
            .collect()
    }
}

/// Finds a planar isomorphism `t1 -> t2` respecting `flags`. Among several,
/// returns the least one when T1's vertices are taken in label order and
/// compared by the labels of their images.
pub fn planar_iso(t1: &BrauerTree, t2: &BrauerTree, flags: &IsoFlags) -> Option<PlanarIso> {
    if t1.num_vertices() != t2.num_vertices() || t1.num_edges() != t2.num_edges() {
        return None;
    }
    let mut fixed = Vec::with_capacity(flags.fixed.len());
    for (a, b) in &flags.fixed {
        fixed.push((t1.vertex_index(a)?, t2.vertex_index(b)?));
    }

    let root = 0;
    let (r0, r1) = t1.edge(root).ends;
    let mut best: Option<(Vec<&str>, PlanarIso)> = None;
    for f in 0..t2.num_edges() {
        let (s0, s1) = t2.edge(f).ends;
        for (w0, w1) in [(s0, s1), (s1, s0)] {
            let Some(iso) = extend(t1, t2, root, f, (r0, w0), (r1, w1), flags.reversed) else {
                continue;
            };
            if !decorations_match(t1, t2, &iso, flags)
                || !fixed.iter().all(|&(a, b)| iso.vertex_map[a] == b)
            {
                continue;
            }
            let key = sort_key(t1, t2, &iso);
            if best.as_ref().is_none_or(|(k, _)| key < *k) {
                best = Some((key, iso));
            }
        }
    }
    best.map(|(_, iso)| iso)
}

fn sort_key<'a>(t1: &BrauerTree, t2: &'a BrauerTree, iso: &PlanarIso) -> Vec<&'a str> {
    let mut vs: Vec<usize> = (0..t1.num_vertices()).collect();
    vs.sort_by(|&a, &b| t1.vertex(a).label.cmp(&t1.vertex(b).label));
    vs.iter()
        .map(|&v| t2.vertex(iso.vertex_map[v]).label.as_str())
        .collect()
}

fn extend(
    t1: &BrauerTree,
    t2: &BrauerTree,
    e: usize,
    f: usize,
    (v0, w0): (usize, usize),
    (v1, w1): (usize, usize),
    reversed: bool,
) -> Option<PlanarIso> {
    let mut vmap = vec![usize::MAX; t1.num_vertices()];
    let mut emap = vec![usize::MAX; t1.num_edges()];
    let mut vused = vec![false; t2.num_vertices()];
    let mut eused = vec![false; t2.num_edges()];
    emap[e] = f;
    eused[f] = true;
    let mut queue = VecDeque::new();
    for (v, w) in [(v0, w0), (v1, w1)] {
        vmap[v] = w;
        vused[w] = true;
        queue.push_back((v, w, e, f));
    }
    while let Some((v, w, e, f)) = queue.pop_front() {
        let k = t1.valency(v);
        if k != t2.valency(w) {
            return None;
        }
        let (mut ei, mut fi) = (e, f);
        for _ in 1..k {
            ei = t1.succ(v, ei);
            fi = if reversed {
                t2.pred(w, fi)
            } else {
                t2.succ(w, fi)
            };
            if emap[ei] != usize::MAX {
                if emap[ei] != fi {
                    return None;
                }
                continue;
            }
            if eused[fi] {
                return None;
            }
            emap[ei] = fi;
            eused[fi] = true;
            let (v2, w2) = (t1.edge(ei).other(v), t2.edge(fi).other(w));
            if vmap[v2] != usize::MAX || vused[w2] {
                return None;
            }
            vmap[v2] = w2;
            vused[w2] = true;
            queue.push_back((v2, w2, ei, fi));
        }
    }
    if vmap.contains(&usize::MAX) {
        return None;
    }
    Some(PlanarIso {
        vertex_map: vmap,
        edge_map: emap,
    })
}

fn decorations_match(t1: &BrauerTree, t2: &BrauerTree, iso: &PlanarIso, flags: &IsoFlags) -> bool {
    let vertices_ok = iso.vertex_map.iter().enumerate().all(|(v, &w)| {
        let (a, b) = (t1.vertex(v), t2.vertex(w));
        (!flags.exceptional || (a.kind == VertexKind::Exc) == (b.kind == VertexKind::Exc))
            && (!flags.kind || a.kind == b.kind)
            && (!flags.series || a.series == b.series)
            && (!flags.vertex_labels || a.label == b.label)
    });
    let edges_ok = iso.edge_map.iter().enumerate().all(|(e, &f)| {
        let (a, b) = (t1.edge(e), t2.edge(f));
        (!flags.edge_labels || a.label == b.label) && (!flags.cuspidal || a.cuspidal == b.cuspidal)
    });
    vertices_ok && edges_ok
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{EdgeSpec, Multiplicity, Vertex};
    use super::*;

    fn star3_with_order(order: [&str; 3]) -> BrauerTree {
        let mut vs = vec![Vertex::unip("x")];
        let mut es = Vec::new();
        for i in 0..3 {
            vs.push(Vertex::unip(format!("u{i}")));
            es.push(EdgeSpec::new(format!("S{i}"), "x", format!("u{i}")));
        }
        BrauerTree::new(
            "s",
            Multiplicity::Symbolic,
            vs,
            es,
            vec![("x".into(), order.iter().map(|s| s.to_string()).collect())],
        )
        .unwrap()
    }

    #[test]
    fn identity_on_itself() {
        let t = star(4, true, Multiplicity::Concrete(2));
        let iso = planar_iso(&t, &t, &IsoFlags::exact()).unwrap();
        assert_eq!(iso.vertex_map, (0..t.num_vertices()).collect::<Vec<_>>());
    }

    #[test]
    fn least_bijection_without_labels_is_identity() {
        let t = star(3, false, Multiplicity::Concrete(1));
        let iso = planar_iso(&t, &t, &IsoFlags::default()).unwrap();
        assert_eq!(iso.vertex_map, vec![0, 1, 2, 3]);
    }

    #[test]
    fn rotation_of_a_star() {
        let t = star(3, false, Multiplicity::Concrete(1));
        let flags = IsoFlags {
            fixed: vec![("u0".into(), "u1".into())],
            ..Default::default()
        };
        let iso = planar_iso(&t, &t, &flags).unwrap();
        let pairs = iso.vertex_pairs(&t, &t);
        assert_eq!(
            pairs,
            [("x", "x"), ("u0", "u1"), ("u1", "u2"), ("u2", "u0")]
                .map(|(a, b)| (a.to_string(), b.to_string()))
        );
    }

    #[test]
    fn reversed_order_is_a_different_embedding() {
        let t = star3_with_order(["S0", "S1", "S2"]);
        let r = star3_with_order(["S0", "S2", "S1"]);
        // Without labels the two stars are isomorphic.
        assert!(planar_iso(&t, &r, &IsoFlags::default()).is_some());
        let labels = IsoFlags {
            vertex_labels: true,
            ..Default::default()
        };
        assert!(planar_iso(&t, &r, &labels).is_none());
        let mirrored = IsoFlags {
            vertex_labels: true,
            reversed: true,
            ..Default::default()
        };
        assert!(planar_iso(&t, &r, &mirrored).is_some());
    }

    #[test]
    fn exceptional_marking_is_respected() {
        let a = star(3, true, Multiplicity::Concrete(2));
        let b = star(3, false, Multiplicity::Concrete(2));
        assert!(planar_iso(&a, &b, &IsoFlags::structural()).is_none());
        assert!(planar_iso(&a, &b, &IsoFlags::default()).is_some());
    }

    #[test]
    fn shapes_must_agree() {
        let a = star(3, false, Multiplicity::Concrete(1));
        let b = line2(Multiplicity::Concrete(1));
        assert!(planar_iso(&a, &b, &IsoFlags::default()).is_none());
    }
}
