use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::Signed;

use super::{Outcome, Verdict};
use crate::algebra::{homology, lemma_complex, walk, AlgebraError, CharacterVector, TreeAlgebra};
use crate::qpoly::{congruent_mod_phi, QPoly};
use crate::tree::{
    fold, fold_automorphism, planar_iso, real_stem, split_folded, BrauerTree, IsoFlags, VertexKind,
};

/// Trees are connected, so every distance is defined.
fn distances(t: &BrauerTree, from: usize) -> Vec<usize> {
    t.bfs_distances(from)
        .into_iter()
        .map(Option::unwrap)
        .collect()
}

fn vlabel(t: &BrauerTree, v: usize) -> &str {
    &t.vertex(v).label
}

fn elabel(t: &BrauerTree, e: usize) -> &str {
    &t.edge(e).label
}

fn edge_set(t: &BrauerTree, f: &[usize]) -> String {
    let v: Vec<&str> = f.iter().map(|&e| elabel(t, e)).collect();
    format!("{{{}}}", v.join(", "))
}

/// Vertices at distance 1 and 2 apart must have non-congruent and congruent
/// degrees respectively, and so on by parity of the distance.
pub fn check_parity(t: &BrauerTree, d: u32) -> Verdict {
    let v = Verdict::new("parity", t);
    let unip: Vec<usize> = (0..t.num_vertices())
        .filter(|&v| t.vertex(v).is_unipotent())
        .collect();
    let mut degs = Vec::with_capacity(unip.len());
    for &u in &unip {
        match &t.vertex(u).degree {
            Some(p) => degs.push(p),
            None => {
                return v.with_outcome(
                    Outcome::DataMissing,
                    format!("degrees-required: `{}` has no degree", vlabel(t, u)),
                )
            }
        }
    }
    let mut v = v;
    let mut pairs = 0usize;
    'outer: for (i, &a) in unip.iter().enumerate() {
        let dist = distances(t, a);
        for (j, &b) in unip.iter().enumerate().skip(i + 1) {
            let even = dist[b].is_multiple_of(2);
            let congruent = match congruent_mod_phi(degs[i], degs[j], d) {
                Ok(c) => c,
                Err(e) => return v.failed(e.to_string()),
            };
            pairs += 1;
            if even != congruent {
                v.fail(format!(
                    "({}, {}): distance {}, degrees {} and {} are {}congruent modulo Phi_{d}",
                    vlabel(t, a),
                    vlabel(t, b),
                    dist[b],
                    degs[i],
                    degs[j],
                    if congruent { "" } else { "not " }
                ));
                break 'outer;
            }
        }
    }
    if v.is_pass() {
        v.note(format!("{pairs} unipotent pairs consistent modulo Phi_{d}"));
    }
    v
}

/// Degree of the simple module of edge `e`, read from the side of its end
/// `u`: the degree of `u` minus the simples of the other edges at `u`, each
/// read from the side away from `u`. `None` when a needed degree is absent.
fn side_dimension(
    t: &BrauerTree,
    u: usize,
    e: usize,
    memo: &mut HashMap<(usize, usize), Option<QPoly>>,
) -> Option<QPoly> {
    if let Some(r) = memo.get(&(u, e)) {
        return r.clone();
    }
    let mut acc = t.vertex(u).degree.clone();
    for &f in t.order(u) {
        if f == e || acc.is_none() {
            continue;
        }
        let w = t.edge(f).other(u);
        acc = match side_dimension(t, w, f, memo) {
            Some(p) => acc.map(|a| &a - &p),
            None => None,
        };
    }
    memo.insert((u, e), acc.clone());
    acc
}

/// Every edge's simple module must have the same degree from both ends, and
/// that degree must be a polynomial with positive leading coefficient and
/// nonnegative values at `q = 2 ..= bound`.
pub fn check_degree(t: &BrauerTree, bound: u32) -> Verdict {
    let mut v = Verdict::new("degree", t);
    if let Some(u) = (0..t.num_vertices())
        .find(|&u| t.vertex(u).kind != VertexKind::Exc && t.vertex(u).degree.is_none())
    {
        return v.with_outcome(
            Outcome::DataMissing,
            format!("degrees-required: `{}` has no degree", vlabel(t, u)),
        );
    }
    let mut memo = HashMap::new();
    for (e, edge) in t.edges().iter().enumerate() {
        let (a, b) = edge.ends;
        let da = side_dimension(t, a, e, &mut memo);
        let db = side_dimension(t, b, e, &mut memo);
        let dim = match (&da, &db) {
            (Some(x), Some(y)) if x != y => {
                v.fail(format!(
                    "edge `{}`: {} from `{}` but {} from `{}`",
                    edge.label,
                    x,
                    vlabel(t, a),
                    y,
                    vlabel(t, b)
                ));
                continue;
            }
            (Some(x), _) | (None, Some(x)) => x.clone(),
            (None, None) => {
                v.note(format!("edge `{}`: undetermined", edge.label));
                continue;
            }
        };
        if !dim.leading().is_some_and(|c| c.is_positive()) {
            v.fail(format!(
                "edge `{}` has degree {dim}, leading coefficient not positive",
                edge.label
            ));
            continue;
        }
        if let Some(q) = (2..=bound).find(|&q| dim.eval(&BigInt::from(q)).is_negative()) {
            v.fail(format!(
                "edge `{}` has degree {dim}, negative at q = {q}",
                edge.label
            ));
            continue;
        }
        v.note(format!("edge `{}`: {dim}", edge.label));
    }
    v
}

/// Series whose vertices are cuspidal or non-unipotent: each such vertex is
/// a series of its own, so they are not grouped.
fn groups_by_series(t: &BrauerTree) -> BTreeMap<&str, Vec<usize>> {
    let mut groups: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (v, vx) in t.vertices().iter().enumerate() {
        match vx.series.as_deref() {
            Some(s) if vx.is_unipotent() && s != "CUSP" && s != "EXC" => {
                groups.entry(s).or_default().push(v)
            }
            _ => {}
        }
    }
    groups
}

/// Each Harish-Chandra series spans a disjoint union of lines.
pub fn check_hecke(t: &BrauerTree) -> Verdict {
    let mut v = Verdict::new("hecke", t);
    let groups = groups_by_series(t);
    if groups.is_empty() {
        return v.with_outcome(Outcome::NotApplicable, "no series tags");
    }
    for (series, members) in groups {
        let inside: BTreeSet<usize> = members.iter().copied().collect();
        let deg = |u: usize| t.neighbours(u).filter(|w| inside.contains(w)).count();
        if let Some(&b) = members.iter().find(|&&u| deg(u) > 2) {
            v.fail(format!(
                "series {series} branches at `{}` ({} neighbours in the series)",
                vlabel(t, b),
                deg(b)
            ));
            continue;
        }
        let mut lines: Vec<usize> = Vec::new();
        let mut seen = BTreeSet::new();
        for &s in &members {
            if seen.contains(&s) {
                continue;
            }
            let mut stack = vec![s];
            let mut size = 0;
            while let Some(u) = stack.pop() {
                if seen.insert(u) {
                    size += 1;
                    stack.extend(t.neighbours(u).filter(|w| inside.contains(w)));
                }
            }
            lines.push(size);
        }
        let sizes: Vec<String> = lines.iter().map(usize::to_string).collect();
        v.note(format!(
            "series {series}: lines of {} vertices",
            sizes.join(", ")
        ));
    }
    v
}

/// The real vertices and the non-unipotent vertex form a line, and complex
/// conjugation is a planar automorphism reversing every cyclic order.
pub fn check_real_stem(t: &BrauerTree) -> Verdict {
    let mut v = Verdict::new("real-stem", t);
    let stem = match real_stem(t) {
        Ok(s) => s,
        Err(e) => return v.failed(e.to_string()),
    };
    let labels: Vec<&str> = stem.iter().map(|&u| vlabel(t, u)).collect();
    v.note(format!("stem: {}", labels.join(" - ")));
    match t.non_unipotent() {
        Some(n) if !stem.contains(&n) => {
            return v.failed(format!("`{}` is not on the stem", vlabel(t, n)))
        }
        None => v.note("no non-unipotent vertex"),
        _ => {}
    }
    let conj: Vec<usize> = (0..t.num_vertices())
        .map(|u| {
            t.vertex(u)
                .conj
                .as_deref()
                .and_then(|c| t.vertex_index(c))
                .unwrap_or(u)
        })
        .collect();
    if let Some(u) = (0..t.num_vertices()).find(|&u| conj[conj[u]] != u) {
        return v.failed(format!(
            "conjugation is not an involution at `{}`",
            vlabel(t, u)
        ));
    }
    let mut sigma = vec![0; t.num_edges()];
    for (e, edge) in t.edges().iter().enumerate() {
        let (a, b) = edge.ends;
        match t.edge_between(conj[a], conj[b]) {
            Some(f) => sigma[e] = f,
            None => {
                return v.failed(format!(
                    "no edge between `{}` and `{}`, the conjugates of `{}`",
                    vlabel(t, conj[a]),
                    vlabel(t, conj[b]),
                    edge.label
                ))
            }
        }
    }
    for u in 0..t.num_vertices() {
        for &e in t.order(u) {
            if sigma[t.pred(u, e)] != t.succ(conj[u], sigma[e]) {
                return v.failed(format!(
                    "conjugation does not reverse the cyclic order at `{}` after `{}`",
                    vlabel(t, u),
                    elabel(t, e)
                ));
            }
        }
    }
    let pairs = (0..t.num_vertices()).filter(|&u| conj[u] > u).count();
    v.note(format!(
        "conjugation swaps {pairs} vertex pairs and reverses all orders"
    ));
    v
}

/// `St` is joined to the non-unipotent vertex. With `coprime_levis`, the
/// vertices within `radius` of `1` form a line from `1` to `St`, and the edge
/// from `St` to the non-unipotent vertex is cuspidal.
pub fn check_steinberg(t: &BrauerTree, radius: Option<usize>, coprime_levis: bool) -> Verdict {
    let mut v = Verdict::new("steinberg", t);
    let Some(st) = t.vertex_index("St") else {
        return v.with_outcome(Outcome::NotApplicable, "no vertex labelled `St`");
    };
    let Some(n) = t.non_unipotent() else {
        return v.failed("no non-unipotent vertex");
    };
    let Some(st_l) = t.edge_between(st, n) else {
        return v.failed(format!("no edge between `St` and `{}`", vlabel(t, n)));
    };
    v.note(format!(
        "`St` - `{}` is edge `{}`",
        vlabel(t, n),
        elabel(t, st_l)
    ));
    if !coprime_levis {
        return v;
    }
    let r = radius.expect("coprime Levi certificates carry a radius");
    if !t.edge(st_l).cuspidal {
        v.fail(format!("edge `{}` is not cuspidal", elabel(t, st_l)));
    }
    let Some(one) = t.vertex_index("1") else {
        return v.failed("no vertex labelled `1`");
    };
    let dist = distances(t, one);
    let ball: BTreeSet<usize> = (0..t.num_vertices()).filter(|&u| dist[u] <= r).collect();
    let deg = |u: usize| t.neighbours(u).filter(|w| ball.contains(w)).count();
    if let Some(&b) = ball.iter().find(|&&u| deg(u) > 2) {
        v.fail(format!(
            "within distance {r} of `1`, `{}` has {} neighbours",
            vlabel(t, b),
            deg(b)
        ));
        return v;
    }
    let ends: Vec<usize> = ball.iter().copied().filter(|&u| deg(u) <= 1).collect();
    let want: Vec<usize> = {
        let mut w = vec![one, st];
        w.sort_unstable();
        w
    };
    if ends != want {
        let names: Vec<&str> = ends.iter().map(|&u| vlabel(t, u)).collect();
        v.fail(format!(
            "within distance {r} of `1` the line ends at {}, not at `1` and `St`",
            names.join(" and ")
        ));
    } else {
        v.note(format!("line of {} vertices from `1` to `St`", ball.len()));
    }
    v
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterSpec {
    pub path: Vec<String>,
    pub target: Option<String>,
    pub shift: i64,
    pub corollary: bool,
    pub torsion_free: bool,
}

/// Builds the canonical complex along the path and checks the closing edge,
/// the homology against the torsion prediction, and that torsion edges are
/// cuspidal.
pub fn check_coxeter(alg: &TreeAlgebra, spec: &CoxeterSpec) -> Verdict {
    let t = alg.tree();
    let mut v = Verdict::new("coxeter", t);
    let mut path = Vec::with_capacity(spec.path.len());
    for l in &spec.path {
        match t.edge_index(l) {
            Some(e) => path.push(e),
            None => return v.failed(format!("unknown edge `{l}`")),
        }
    }
    let target = match &spec.target {
        None => None,
        Some(l) => match t.vertex_index(l) {
            Some(u) => Some(u),
            None => return v.failed(format!("unknown vertex `{l}`")),
        },
    };
    let lc = match lemma_complex(alg, &path, target, spec.shift) {
        Ok(lc) => lc,
        Err(e @ AlgebraError::CertificateRequiresEdge(..)) => {
            return v.failed(format!("{}: {e}", e.code()))
        }
        Err(e) => return v.failed(format!("{}: {e}", e.code())),
    };
    let tlen = path.len();
    let names: Vec<&str> = lc.vertices.iter().map(|&u| vlabel(t, u)).collect();
    v.note(format!("line {}", names.join(" - ")));
    if let Some(&u) = lc
        .vertices
        .iter()
        .find(|&&u| t.vertex(u).kind == VertexKind::Exc)
    {
        v.fail(format!(
            "line passes through the exceptional vertex `{}`",
            vlabel(t, u)
        ));
    }
    if let Some(s) = lc.closing_edge {
        v.note(format!("closing edge `{}`", elabel(t, s)));
        if let Some(&e) = path.iter().find(|&&e| t.edge(e).cuspidal) {
            v.fail(format!("line edge `{}` is cuspidal", elabel(t, e)));
        }
    }
    for (i, tors) in lc.torsion.iter().enumerate() {
        for &e in tors {
            if !t.edge(e).cuspidal {
                v.fail(format!(
                    "torsion edge `{}` at `{}` is not cuspidal",
                    elabel(t, e),
                    vlabel(t, lc.vertices[i + 1])
                ));
            }
        }
        if spec.torsion_free && !tors.is_empty() {
            v.fail(format!(
                "torsion {} between `{}` and `{}` at `{}`",
                edge_set(t, tors),
                elabel(t, lc.complex.term(spec.shift + (tlen - i) as i64)[0]),
                elabel(t, lc.complex.term(spec.shift + (tlen - i) as i64 - 1)[0]),
                vlabel(t, lc.vertices[i + 1])
            ));
        }
    }
    let h = match homology(alg, &lc.complex) {
        Ok(h) => h,
        Err(e) => return v.failed(format!("{}: {e}", e.code())),
    };
    for (&d, want) in &lc.predicted {
        let got = h.factors(d);
        if got == want.as_slice() {
            v.note(format!("H^{d} = {} as predicted", edge_set(t, got)));
        } else {
            v.fail(format!(
                "H^{d} is {}, predicted {}",
                edge_set(t, got),
                edge_set(t, want)
            ));
        }
    }
    if target.is_none() {
        v.note(format!("degree {} not checked (truncated)", spec.shift + 1));
    }
    if spec.corollary {
        match (target, lc.closing_edge) {
            (Some(vp), Some(s)) => corollary_picture(t, &lc.vertices, &path, vp, s, &mut v),
            _ => v.fail("the local picture at `St` needs a target vertex"),
        }
    }
    v
}

/// The local picture around `St` at the end of the line from `1`.
fn corollary_picture(
    t: &BrauerTree,
    vertices: &[usize],
    path: &[usize],
    vp: usize,
    s: usize,
    v: &mut Verdict,
) {
    let tlen = path.len();
    let st = vertices[tlen];
    if vlabel(t, vertices[0]) != "1" || vlabel(t, st) != "St" {
        v.fail("the line must run from `1` to `St`");
        return;
    }
    if t.vertex(vp).real {
        v.fail(format!("`{}` is real", vlabel(t, vp)));
    }
    let Some(n) = t.non_unipotent() else {
        v.fail("no non-unipotent vertex");
        return;
    };
    let Some(st_l) = t.edge_between(st, n) else {
        v.fail(format!("no edge between `St` and `{}`", vlabel(t, n)));
        return;
    };
    let mut cur = t.succ(st, path[tlen - 1]);
    let mut between = false;
    while cur != st_l && cur != path[tlen - 1] {
        between |= cur == s;
        cur = t.succ(st, cur);
    }
    if between {
        v.note(format!(
            "`{}` lies between `{}` and `{}` at `St`",
            elabel(t, s),
            elabel(t, path[tlen - 1]),
            elabel(t, st_l)
        ));
    } else {
        v.fail(format!(
            "`{}` does not lie between `{}` and `{}` at `St`",
            elabel(t, s),
            elabel(t, path[tlen - 1]),
            elabel(t, st_l)
        ));
    }
    let dist = distances(t, vertices[0]);
    let near: Vec<usize> = (0..t.num_vertices())
        .filter(|&u| dist[u] <= tlen + 1)
        .collect();
    for &u in &near {
        if !t.vertex(u).real && t.vertex(u).is_unipotent() && t.edge_between(u, st).is_none() {
            v.fail(format!(
                "non-real `{}` is near `1` but not joined to `St`",
                vlabel(t, u)
            ));
        }
    }
    let on_stem: BTreeSet<usize> = near
        .iter()
        .copied()
        .filter(|&u| t.vertex(u).real || !t.vertex(u).is_unipotent())
        .collect();
    let mut line: Vec<usize> = vertices.to_vec();
    line.push(n);
    let expected: BTreeSet<usize> = line.iter().copied().collect();
    if on_stem == expected {
        v.note(format!(
            "real stem near `1` is `1` .. `St` - `{}`",
            vlabel(t, n)
        ));
    } else {
        let extra: Vec<&str> = on_stem
            .symmetric_difference(&expected)
            .map(|&u| vlabel(t, u))
            .collect();
        v.fail(format!(
            "real stem near `1` is not the line to `{}`: {}",
            vlabel(t, n),
            extra.join(", ")
        ));
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkSpec {
    pub start: String,
    pub n: i64,
    pub expect: String,
    pub factors: Option<Vec<String>>,
}

/// `Omega^n` of the start lattice has the expected character and, when
/// given, the expected composition factors.
pub fn check_walk(alg: &TreeAlgebra, spec: &WalkSpec) -> Verdict {
    let t = alg.tree();
    let mut v = Verdict::new("walk", t);
    let Some(start) = t.vertex_index(&spec.start) else {
        return v.failed(format!("unknown vertex `{}`", spec.start));
    };
    let Some(expect) = t.vertex_index(&spec.expect) else {
        return v.failed(format!("unknown vertex `{}`", spec.expect));
    };
    let w = match walk(alg, start, spec.n) {
        Ok(w) => w,
        Err(e) => return v.failed(format!("{}: {e}", e.code())),
    };
    let got = w.character.display(t).to_string();
    if w.character == CharacterVector::unit(t.num_vertices(), expect) {
        v.note(format!(
            "Omega^{}({}) has character {got}",
            spec.n, spec.start
        ));
    } else {
        v.fail(format!(
            "Omega^{}({}) has character {got}, expected {}",
            spec.n, spec.start, spec.expect
        ));
    }
    if let Some(labels) = &spec.factors {
        let mut want = Vec::new();
        for l in labels {
            match t.edge_index(l) {
                Some(e) => want.push(e),
                None => return v.failed(format!("unknown edge `{l}`")),
            }
        }
        want.sort_unstable();
        let have = w.module.composition_factors();
        if have == want {
            v.note(format!("composition factors {}", edge_set(t, &have)));
        } else {
            v.fail(format!(
                "composition factors {}, expected {}",
                edge_set(t, &have),
                edge_set(t, &want)
            ));
        }
    }
    if w.experimental {
        v.note("start is not a leaf: internal-start convention");
    }
    v
}

fn perm_order(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut order = 1usize;
    for s in 0..p.len() {
        let mut len = 0;
        let mut c = s;
        while !seen[c] {
            seen[c] = true;
            c = p[c];
            len += 1;
        }
        if len > 0 {
            order = num_integer::lcm(order, len);
        }
    }
    order
}

/// `folded` is planar-isomorphic to the `d`-fold of `base`, and the label
/// action is a planar automorphism of order `d`. Without a label map the
/// labels must agree exactly.
pub fn check_fold(
    base: &BrauerTree,
    folded: &BrauerTree,
    d: u32,
    map: &[(String, String)],
) -> Verdict {
    let mut v = Verdict::new("fold", folded);
    let f = match fold(base, d) {
        Ok(f) => f,
        Err(e) => return v.failed(format!("{}: {e}", e.code())),
    };
    let flags = if map.is_empty() {
        IsoFlags::exact()
    } else {
        IsoFlags {
            kind: true,
            cuspidal: true,
            fixed: map.to_vec(),
            ..IsoFlags::structural()
        }
    };
    if planar_iso(&f, folded, &flags).is_none() {
        return v.failed(format!(
            "not planar-isomorphic to the {d}-fold of `{}`",
            base.id()
        ));
    }
    v.note(format!(
        "planar-isomorphic to the {d}-fold of `{}`",
        base.id()
    ));
    let folded_shape = folded
        .vertices()
        .iter()
        .filter(|x| split_folded(&x.label).is_none())
        .count()
        == 1;
    let sigma = if folded_shape {
        fold_automorphism(folded, d)
    } else {
        fold_automorphism(&f, d)
    };
    match sigma {
        Ok(s) if perm_order(&s) == d as usize => v.note(format!(
            "label action is a planar automorphism of order {d}"
        )),
        Ok(s) => v.fail(format!(
            "label action has order {}, not {d}",
            perm_order(&s)
        )),
        Err(e) => v.fail(format!("label action: {e}")),
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{parse, EdgeSpec, Multiplicity, Vertex};

    fn with_degrees(
        labels: &[(&str, Option<&str>)],
        edges: &[(&str, &str, &str)],
        exc: Option<&str>,
    ) -> BrauerTree {
        let vertices = labels
            .iter()
            .map(|(l, d)| {
                let mut v = Vertex::unip(*l);
                if Some(*l) == exc {
                    v = v.with_kind(VertexKind::Exc);
                }
                if let Some(d) = d {
                    v = v.with_degree(d.parse().unwrap());
                }
                v
            })
            .collect();
        let edges = edges
            .iter()
            .map(|(e, a, b)| EdgeSpec::new(*e, *a, *b))
            .collect();
        BrauerTree::new("t", Multiplicity::Symbolic, vertices, edges, vec![]).unwrap()
    }

    fn sl2() -> BrauerTree {
        with_degrees(
            &[("1", Some("1")), ("St", Some("q")), ("x", Some("q-1"))],
            &[("S0", "1", "St"), ("St_l", "St", "x")],
            Some("x"),
        )
    }

    #[test]
    fn parity_on_degree_fixtures() {
        assert!(check_parity(&sl2(), 2).is_pass());
        // a - b both degree 1 at distance 1.
        let t = with_degrees(
            &[
                ("a", Some("1")),
                ("b", Some("1")),
                ("c", Some("q^2+q+2")),
                ("x", None),
            ],
            &[("S0", "a", "b"), ("S1", "b", "c"), ("S2", "c", "x")],
            Some("x"),
        );
        let v = check_parity(&t, 3);
        assert!(v.is_fail());
        assert!(v.witness.unwrap().starts_with("(a, b)"));
        let t = with_degrees(
            &[("a", Some("1")), ("b", None), ("x", None)],
            &[("S0", "a", "b"), ("S1", "b", "x")],
            Some("x"),
        );
        assert_eq!(check_parity(&t, 3).outcome, Outcome::DataMissing);
    }

    #[test]
    fn degree_checks() {
        let v = check_degree(&sl2(), 10);
        assert!(v.is_pass(), "{v:?}");
        // Interior degree below its neighbour: the middle edge goes negative.
        let t = with_degrees(
            &[
                ("a", Some("q")),
                ("b", Some("1")),
                ("c", Some("q")),
                ("x", None),
            ],
            &[("S0", "a", "b"), ("S1", "b", "c"), ("S2", "c", "x")],
            Some("x"),
        );
        let v = check_degree(&t, 10);
        assert!(v.witness.unwrap().contains("`S1`"));
        // Both sides known and different.
        let t = with_degrees(
            &[
                ("a", Some("1")),
                ("b", Some("q+1")),
                ("c", Some("1")),
                ("x", Some("q")),
            ],
            &[("S0", "a", "b"), ("S1", "b", "c"), ("S2", "c", "x")],
            Some("x"),
        );
        assert!(check_degree(&t, 10).is_fail());
    }

    #[test]
    fn hecke_rejects_a_branching_series() {
        let t = parse(
            "TREE s\nMULTIPLICITY symbolic\nVERTEX x kind=unip real=1 series=PS\n\
             VERTEX a kind=unip real=1 series=PS\nVERTEX b kind=unip real=1 series=PS\n\
             VERTEX c kind=unip real=1 series=PS\nVERTEX e kind=exc real=1 series=EXC\n\
             EDGE S0 x a\nEDGE S1 x b\nEDGE S2 x c\nEDGE S3 a e\n\
             ORDER x: S0 S1 S2\nEND\n",
        )
        .unwrap();
        let v = check_hecke(&t);
        assert!(v.witness.unwrap().contains("`x`"));
    }

    #[test]
    fn real_stem_checks() {
        let line = with_degrees(
            &[("a", None), ("b", None), ("x", None)],
            &[("S0", "a", "b"), ("S1", "b", "x")],
            Some("x"),
        );
        assert!(check_real_stem(&line).is_pass());
        // w and w2 are conjugate but joined to each other, not to p and q.
        let t = parse(
            "TREE r\nMULTIPLICITY symbolic\nVERTEX s kind=unip real=1\n\
             VERTEX x kind=exc real=1\nVERTEX p kind=unip real=0 conj=q\n\
             VERTEX q kind=unip real=0 conj=p\nVERTEX w kind=unip real=0 conj=w2\n\
             VERTEX w2 kind=unip real=0 conj=w\n\
             EDGE S0 s x\nEDGE S1 s p\nEDGE S2 s q\nEDGE S3 p w\nEDGE S4 w w2\n\
             ORDER s: S0 S1 S2\nEND\n",
        )
        .unwrap();
        assert!(check_real_stem(&t).is_fail());
    }

    #[test]
    fn steinberg_checks() {
        let t = sl2();
        assert!(check_steinberg(&t, None, false).is_pass());
        // The Levi condition also needs the cuspidal mark.
        assert!(check_steinberg(&t, Some(1), true).is_fail());
        let moved = with_degrees(
            &[("1", None), ("St", None), ("a", None), ("x", None)],
            &[("S0", "1", "St"), ("S1", "St", "a"), ("S2", "a", "x")],
            Some("x"),
        );
        assert!(check_steinberg(&moved, None, false).is_fail());
        let none = with_degrees(&[("a", None), ("x", None)], &[("S0", "a", "x")], Some("x"));
        assert_eq!(
            check_steinberg(&none, None, false).outcome,
            Outcome::NotApplicable
        );
    }

    #[test]
    fn permutation_order() {
        assert_eq!(perm_order(&[1, 2, 0, 4, 3]), 6);
        assert_eq!(perm_order(&[]), 1);
    }
}
