use std::collections::HashMap;

use super::{BrauerTree, TreeError};

/// Number of edges on the path between two vertices.
pub fn distance(t: &BrauerTree, a: usize, b: usize) -> usize {
    t.bfs_distances(a)[b].expect("trees are connected")
}

/// Vertex sequence of the unique path from `a` to `b`, both included.
pub fn path_between(t: &BrauerTree, a: usize, b: usize) -> Vec<usize> {
    let dist = t.bfs_distances(b);
    let mut path = vec![a];
    let mut cur = a;
    while cur != b {
        let d = dist[cur].unwrap();
        cur = t
            .neighbours(cur)
            .find(|&w| dist[w] == Some(d - 1))
            .expect("a neighbour one step closer");
        path.push(cur);
    }
    path
}

/// Vertices with exactly one incident edge, in vertex order.
pub fn leaves(t: &BrauerTree) -> Vec<usize> {
    (0..t.num_vertices())
        .filter(|&v| t.valency(v) == 1)
        .collect()
}

/// The line formed by the real vertices together with the non-unipotent
/// vertex, listed from the end that comes first in vertex order.
pub fn real_stem(t: &BrauerTree) -> Result<Vec<usize>, TreeError> {
    let on_stem: Vec<bool> = t
        .vertices()
        .iter()
        .map(|v| v.real || !v.is_unipotent())
        .collect();
    let members: Vec<usize> = (0..t.num_vertices()).filter(|&v| on_stem[v]).collect();
    if members.is_empty() {
        return Err(TreeError::RealStemNotALine("no real vertices".into()));
    }
    let stem_deg = |v: usize| t.neighbours(v).filter(|&w| on_stem[w]).count();
    if let Some(&v) = members.iter().find(|&&v| stem_deg(v) > 2) {
        return Err(TreeError::RealStemNotALine(format!(
            "`{}` has {} real neighbours",
            t.vertex(v).label,
            stem_deg(v)
        )));
    }
    let start = *members
        .iter()
        .find(|&&v| stem_deg(v) <= 1)
        .expect("a finite forest has an end");
    let mut path = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(next) = t.neighbours(cur).find(|&w| on_stem[w] && w != prev) {
        path.push(next);
        prev = cur;
        cur = next;
    }
    if path.len() != members.len() {
        let missing = members.iter().find(|v| !path.contains(v)).unwrap();
        return Err(TreeError::RealStemNotALine(format!(
            "`{}` is not connected to `{}` through real vertices",
            t.vertex(*missing).label,
            t.vertex(start).label
        )));
    }
    Ok(path)
}

/// Renames vertices and edges. Labels absent from `map` are kept; conjugate
/// references follow their vertex. The result must have distinct labels.
pub fn relabel(t: &BrauerTree, map: &HashMap<String, String>) -> Result<BrauerTree, TreeError> {
    let ren = |s: &String| map.get(s).cloned().unwrap_or_else(|| s.clone());
    let (mut vertices, mut edges, orders) = t.to_specs();
    for v in &mut vertices {
        v.label = ren(&v.label);
        v.conj = v.conj.as_ref().map(ren);
    }
    for e in &mut edges {
        e.label = ren(&e.label);
        e.a = ren(&e.a);
        e.b = ren(&e.b);
    }
    let orders = orders
        .into_iter()
        .map(|(v, seq)| (ren(&v), seq.iter().map(ren).collect()))
        .collect();
    BrauerTree::new(t.id(), t.multiplicity(), vertices, edges, orders).map_err(|e| match e {
        TreeError::DuplicateLabel(l) => TreeError::Relabel(format!("two labels map to `{l}`")),
        other => other,
    })
}
