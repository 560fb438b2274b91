//! Random planar trees for property tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{BrauerTree, EdgeSpec, Multiplicity, Vertex, VertexKind};

/// A uniformly shaped random tree on `edges + 1` vertices `v0, v1, ..` with
/// edges `S0, S1, ..` and shuffled cyclic orders. With a concrete
/// multiplicity above 1, one random vertex is exceptional.
pub fn random_tree<R: Rng>(rng: &mut R, id: &str, edges: usize, m: Multiplicity) -> BrauerTree {
    assert!(edges >= 1, "a tree needs an edge");
    let n = edges + 1;
    let exc = match m {
        Multiplicity::Concrete(k) if k > 1 => Some(rng.gen_range(0..n)),
        _ => None,
    };
    let vertices: Vec<Vertex> = (0..n)
        .map(|i| {
            let v = Vertex::unip(format!("v{i}"));
            if Some(i) == exc {
                v.with_kind(VertexKind::Exc)
            } else {
                v
            }
        })
        .collect();
    let mut incident: Vec<Vec<String>> = vec![Vec::new(); n];
    let mut specs = Vec::with_capacity(edges);
    for i in 1..n {
        let parent = rng.gen_range(0..i);
        let label = format!("S{}", i - 1);
        incident[parent].push(label.clone());
        incident[i].push(label.clone());
        specs.push(EdgeSpec::new(label, format!("v{parent}"), format!("v{i}")));
    }
    let orders = incident
        .into_iter()
        .enumerate()
        .map(|(v, mut seq)| {
            seq.shuffle(rng);
            (format!("v{v}"), seq)
        })
        .collect();
    BrauerTree::new(id, m, vertices, specs, orders).expect("random trees are valid")
}
