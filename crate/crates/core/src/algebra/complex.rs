//! Bounded complexes of projectives, their homology over the field, and the
//! canonical complexes along lines in the tree.
//!
//! Degrees are cohomological: the differential `d^n` goes from degree `n`
//! to degree `n+1`.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use super::linalg::{Matrix, Rat};
use super::maps::{canonical_generator, hom_from_projective, ProjMap};
use super::module::{Module, ModuleMap};
use super::{AlgebraError, TreeAlgebra};
use crate::tree::{BrauerTree, VertexKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffKind {
    Zero,
    Canonical,
    Socle,
    Identity,
}

/// One entry of a differential between direct sums: a scalar multiple of a
/// named generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiffEntry {
    pub kind: DiffKind,
    pub scalar: i64,
}

impl DiffEntry {
    pub const ZERO: DiffEntry = DiffEntry {
        kind: DiffKind::Zero,
        scalar: 0,
    };
    pub const CANONICAL: DiffEntry = DiffEntry {
        kind: DiffKind::Canonical,
        scalar: 1,
    };
    pub const SOCLE: DiffEntry = DiffEntry {
        kind: DiffKind::Socle,
        scalar: 1,
    };

    fn parse(tok: &str) -> Option<Self> {
        let (scalar, name) = match tok.split_once('*') {
            Some((k, name)) => (k.parse().ok()?, name),
            None => (1, tok),
        };
        let kind = match name {
            "0" => return Some(DiffEntry::ZERO),
            "can" => DiffKind::Canonical,
            "soc" => DiffKind::Socle,
            "id" => DiffKind::Identity,
            _ => return None,
        };
        Some(DiffEntry { kind, scalar })
    }

    fn render(&self) -> String {
        let name = match self.kind {
            DiffKind::Zero => return "0".into(),
            DiffKind::Canonical => "can",
            DiffKind::Socle => "soc",
            DiffKind::Identity => "id",
        };
        if self.scalar == 1 {
            name.into()
        } else {
            format!("{}*{name}", self.scalar)
        }
    }
}

/// A bounded complex of projectives. Each term is a list of edges (the heads
/// of its indecomposable summands).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjComplex {
    pub id: String,
    pub tree_id: String,
    pub m: u32,
    pub terms: BTreeMap<i64, Vec<usize>>,
    /// `diffs[n][j][i]`: component from summand `i` of degree `n` to summand
    /// `j` of degree `n+1`. Missing differentials between two single
    /// summands default to the canonical map.
    pub diffs: BTreeMap<i64, Vec<Vec<DiffEntry>>>,
}

fn bad(msg: impl Into<String>) -> AlgebraError {
    AlgebraError::BadComplex(msg.into())
}

impl ProjComplex {
    pub fn term(&self, n: i64) -> &[usize] {
        self.terms.get(&n).map_or(&[], Vec::as_slice)
    }

    /// Reads the header only: `(id, tree id, m)`.
    pub fn header(text: &str) -> Result<(String, String, u32), AlgebraError> {
        let line = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .find(|l| !l.is_empty())
            .ok_or_else(|| bad("empty complex file"))?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            ["COMPLEX", id, "ON", tree, "M", m] => Ok((
                id.to_string(),
                tree.to_string(),
                m.parse().map_err(|_| bad(format!("bad M `{m}`")))?,
            )),
            _ => Err(bad("expected `COMPLEX <id> ON <tree-id> M <int>`")),
        }
    }

    pub fn parse(text: &str, tree: &BrauerTree) -> Result<Self, AlgebraError> {
        let (id, tree_id, m) = Self::header(text)?;
        if tree_id != tree.id() {
            return Err(bad(format!(
                "complex is on `{tree_id}`, tree given is `{}`",
                tree.id()
            )));
        }
        let mut terms = BTreeMap::new();
        let mut raw_diffs: Vec<(i64, Vec<String>, usize)> = Vec::new();
        for (n, raw) in text
            .lines()
            .enumerate()
            .skip_while(|(_, l)| !l.trim_start().starts_with("COMPLEX"))
            .skip(1)
        {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let deg = |t: &str| -> Result<i64, AlgebraError> {
                t.strip_suffix(':')
                    .and_then(|d| d.parse().ok())
                    .ok_or_else(|| bad(format!("line {}: bad degree `{t}`", n + 1)))
            };
            match toks[0] {
                "DEG" if toks.len() >= 2 => {
                    let d = deg(toks[1])?;
                    let edges = toks[2..]
                        .iter()
                        .map(|l| tree.require_edge(l).map_err(AlgebraError::from))
                        .collect::<Result<Vec<_>, _>>()?;
                    if terms.insert(d, edges).is_some() {
                        return Err(bad(format!("degree {d} given twice")));
                    }
                }
                "DIFF" if toks.len() >= 3 => {
                    let d = deg(toks[1])?;
                    raw_diffs.push((d, toks[2..].iter().map(|s| s.to_string()).collect(), n + 1));
                }
                _ => return Err(bad(format!("line {}: unexpected `{line}`", n + 1))),
            }
        }
        let mut c = ProjComplex {
            id,
            tree_id,
            m,
            terms,
            diffs: BTreeMap::new(),
        };
        for (d, toks, line) in raw_diffs {
            let (src, tgt) = (c.term(d).len(), c.term(d + 1).len());
            let entry = match toks[0].as_str() {
                "canonical" if toks.len() == 1 => {
                    if src != 1 || tgt != 1 {
                        return Err(bad(format!(
                            "line {line}: `canonical` needs one summand on each side"
                        )));
                    }
                    vec![vec![DiffEntry::CANONICAL]]
                }
                "matrix" => {
                    let vals = toks[1..]
                        .iter()
                        .map(|t| {
                            DiffEntry::parse(t)
                                .ok_or_else(|| bad(format!("line {line}: bad entry `{t}`")))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    if vals.len() != src * tgt {
                        return Err(bad(format!(
                            "line {line}: expected {} entries, found {}",
                            src * tgt,
                            vals.len()
                        )));
                    }
                    vals.chunks(src.max(1)).map(<[DiffEntry]>::to_vec).collect()
                }
                other => return Err(bad(format!("line {line}: bad differential `{other}`"))),
            };
            if c.diffs.insert(d, entry).is_some() {
                return Err(bad(format!("differential {d} given twice")));
            }
        }
        Ok(c)
    }

    pub fn to_text(&self, tree: &BrauerTree) -> String {
        let mut out = format!("COMPLEX {} ON {} M {}\n", self.id, self.tree_id, self.m);
        for (d, edges) in &self.terms {
            let _ = write!(out, "DEG {d}:");
            for &e in edges {
                let _ = write!(out, " {}", tree.edge(e).label);
            }
            out.push('\n');
        }
        for (d, rows) in &self.diffs {
            let _ = write!(out, "DIFF {d}: matrix");
            for e in rows.iter().flatten() {
                let _ = write!(out, " {}", e.render());
            }
            out.push('\n');
        }
        out
    }

    /// Component matrix of `d^n`, filling the single-summand default.
    fn differential(&self, n: i64) -> Result<Vec<Vec<DiffEntry>>, AlgebraError> {
        let (src, tgt) = (self.term(n), self.term(n + 1));
        if let Some(d) = self.diffs.get(&n) {
            return Ok(d.clone());
        }
        if src.is_empty() || tgt.is_empty() {
            return Ok(vec![vec![DiffEntry::ZERO; src.len()]; tgt.len()]);
        }
        if src.len() == 1 && tgt.len() == 1 {
            return Ok(vec![vec![DiffEntry::CANONICAL]]);
        }
        Err(bad(format!(
            "differential {n} between direct sums must be given"
        )))
    }

    fn term_module(&self, alg: &TreeAlgebra, n: i64) -> Module {
        let parts: Vec<&Module> = self
            .term(n)
            .iter()
            .map(|&s| &alg.projective(s).module)
            .collect();
        Module::direct_sum(alg, &parts)
    }

    /// `d^n` as a module map.
    pub fn differential_map(&self, alg: &TreeAlgebra, n: i64) -> Result<ModuleMap, AlgebraError> {
        let comps = self.differential(n)?;
        let (src, tgt) = (self.term(n), self.term(n + 1));
        let np = alg.num_points();
        let offsets = |edges: &[usize]| -> Vec<Vec<usize>> {
            let mut acc = vec![0; np];
            let mut out = Vec::new();
            for &s in edges {
                out.push(acc.clone());
                for (q, d) in alg.projective(s).module.dims().iter().enumerate() {
                    acc[q] += d;
                }
            }
            out.push(acc);
            out
        };
        let (so, to) = (offsets(src), offsets(tgt));
        let mut blocks: Vec<Matrix> = (0..np)
            .map(|q| Matrix::zeros(to[tgt.len()][q], so[src.len()][q]))
            .collect();
        for (j, &t) in tgt.iter().enumerate() {
            for (i, &s) in src.iter().enumerate() {
                let entry = comps[j][i];
                let kind = match entry.kind {
                    DiffKind::Zero => continue,
                    DiffKind::Canonical => ProjMap::Canonical,
                    DiffKind::Socle => ProjMap::Socle,
                    DiffKind::Identity => ProjMap::Identity,
                };
                let g: Vec<Rat> = canonical_generator(alg, kind, s, t)?
                    .iter()
                    .map(|x| x * &Rat::int(entry.scalar))
                    .collect();
                let f = hom_from_projective(alg, s, &alg.projective(t).module, &g);
                for (q, b) in f.blocks.iter().enumerate() {
                    blocks[q].put_block(to[j][q], so[i][q], b);
                }
            }
        }
        Ok(ModuleMap { blocks })
    }
}

/// Homology over the field, degree by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homology {
    /// Composition factors (edges, with repetition, sorted) of every degree
    /// with nonzero homology.
    pub degrees: BTreeMap<i64, Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HomologyRow {
    pub degree: i64,
    pub dim: usize,
    pub factors: Vec<String>,
}

impl Homology {
    pub fn factors(&self, n: i64) -> &[usize] {
        self.degrees.get(&n).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self, n: i64) -> usize {
        self.factors(n).len()
    }

    pub fn nonzero_degrees(&self) -> Vec<i64> {
        self.degrees.keys().copied().collect()
    }

    pub fn rows(&self, tree: &BrauerTree) -> Vec<HomologyRow> {
        self.degrees
            .iter()
            .map(|(&degree, f)| HomologyRow {
                degree,
                dim: f.len(),
                factors: f.iter().map(|&e| tree.edge(e).label.clone()).collect(),
            })
            .collect()
    }

    pub fn to_tsv(&self, tree: &BrauerTree) -> String {
        let mut out = String::from("degree\tdim\tfactors\n");
        for r in self.rows(tree) {
            let _ = writeln!(out, "{}\t{}\t{}", r.degree, r.dim, r.factors.join(" "));
        }
        out
    }
}

/// Homology of `c` over the field, after checking `d^{n+1} d^n = 0`.
pub fn homology(alg: &TreeAlgebra, c: &ProjComplex) -> Result<Homology, AlgebraError> {
    let (Some(&lo), Some(&hi)) = (c.terms.keys().next(), c.terms.keys().next_back()) else {
        return Ok(Homology {
            degrees: BTreeMap::new(),
        });
    };
    let mut maps = BTreeMap::new();
    for n in lo - 1..=hi {
        maps.insert(n, c.differential_map(alg, n)?);
    }
    for n in lo..hi {
        if !maps[&(n + 1)].compose(&maps[&n]).is_zero() {
            return Err(AlgebraError::NotAComplex { from: n, to: n + 1 });
        }
    }
    let mut degrees = BTreeMap::new();
    for n in lo..=hi {
        let dims = c.term_module(alg, n).dims().to_vec();
        let mut factors = Vec::new();
        for (q, &d) in dims.iter().enumerate() {
            let h = d - maps[&n].blocks[q].rank() - maps[&(n - 1)].blocks[q].rank();
            factors.extend(std::iter::repeat_n(q, h));
        }
        if !factors.is_empty() {
            degrees.insert(n, factors);
        }
    }
    Ok(Homology { degrees })
}

/// Canonical complex along a line `S_0 .. S_{t-1}` starting at a leaf, with
/// the predicted field homology.
#[derive(Debug, Clone)]
pub struct LemmaComplex {
    pub complex: ProjComplex,
    /// `V_0 .. V_t`: the leaf, the successive shared vertices, the far end.
    pub vertices: Vec<usize>,
    /// The edge `S_t` from `V_t` to `V'`, when `V'` is given.
    pub closing_edge: Option<usize>,
    /// `torsion[i]`: edges strictly between `S_i` and `S_{i+1}`,
    /// counterclockwise at `V_{i+1}`.
    pub torsion: Vec<Vec<usize>>,
    /// Predicted composition factors (sorted) at each checked degree.
    pub predicted: BTreeMap<i64, Vec<usize>>,
}

fn bad_path(msg: impl Into<String>) -> AlgebraError {
    AlgebraError::BadPath(msg.into())
}

/// Vertices `V_0 .. V_t` of a line of edges starting at a leaf.
fn line_vertices(tree: &BrauerTree, path: &[usize]) -> Result<Vec<usize>, AlgebraError> {
    let label = |e: usize| tree.edge(e).label.clone();
    let mut vs = Vec::with_capacity(path.len() + 1);
    let first = tree.edge(path[0]);
    let v0 = if path.len() == 1 {
        if tree.valency(first.ends.0) == 1 {
            first.ends.0
        } else {
            first.ends.1
        }
    } else {
        let shared = tree.shared_vertex(path[0], path[1]).ok_or_else(|| {
            bad_path(format!(
                "`{}` and `{}` do not meet",
                label(path[0]),
                label(path[1])
            ))
        })?;
        first.other(shared)
    };
    vs.push(v0);
    for &s in path {
        let cur = *vs.last().unwrap();
        let e = tree.edge(s);
        if !e.touches(cur) {
            return Err(bad_path(format!(
                "`{}` does not continue the line at `{}`",
                e.label,
                tree.vertex(cur).label
            )));
        }
        let next = e.other(cur);
        if vs.contains(&next) {
            return Err(bad_path(format!("`{}` revisits a vertex", e.label)));
        }
        vs.push(next);
    }
    if tree.valency(v0) != 1 {
        return Err(bad_path(format!(
            "`{}` is not a leaf",
            tree.vertex(v0).label
        )));
    }
    Ok(vs)
}

/// Edges strictly between `from` and `to`, counterclockwise around `v`.
fn strictly_between(tree: &BrauerTree, v: usize, from: usize, to: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut cur = tree.succ(v, from);
    while cur != to && cur != from {
        out.push(cur);
        cur = tree.succ(v, cur);
    }
    out
}

/// Builds `0 -> P_{S_t} -> P_{S_{t-1}} -> .. -> P_{S_0} -> 0` with `P_{S_t}`
/// in degree `shift` and canonical differentials.
///
/// Predicted homology over the field, with `tors(i)` as in
/// [`LemmaComplex::torsion`]: `{S_0} + tors(0)` in the top degree,
/// `tors(i) + tors(i-1)` in degree `shift+t-i`, and in degree `shift` the
/// edges at `V'` (each `m` times if `V'` is exceptional) plus `tors(t-1)`.
///
/// Without `V'` the complex stops at `P_{S_{t-1}}` in degree `shift+1` and
/// only degrees `shift+2 ..= shift+t` are predicted.
pub fn lemma_complex(
    alg: &TreeAlgebra,
    path: &[usize],
    v_prime: Option<usize>,
    shift: i64,
) -> Result<LemmaComplex, AlgebraError> {
    let tree = alg.tree();
    if path.is_empty() {
        return Err(bad_path("empty path"));
    }
    let t = path.len();
    let vertices = line_vertices(tree, path)?;
    let vt = vertices[t];
    let closing_edge = match v_prime {
        None => None,
        Some(vp) => {
            let e = tree.edge_between(vt, vp).ok_or_else(|| {
                AlgebraError::CertificateRequiresEdge(
                    tree.vertex(vt).label.clone(),
                    tree.vertex(vp).label.clone(),
                )
            })?;
            if e == path[t - 1] {
                return Err(bad_path("V' is the previous vertex of the line"));
            }
            Some(e)
        }
    };
    let mut full: Vec<usize> = path.to_vec();
    full.extend(closing_edge);

    let mut torsion = Vec::new();
    for i in 0..full.len() - 1 {
        torsion.push(strictly_between(
            tree,
            vertices[i + 1],
            full[i],
            full[i + 1],
        ));
    }

    let mut terms = BTreeMap::new();
    for (i, &s) in full.iter().enumerate() {
        terms.insert(shift + t as i64 - i as i64, vec![s]);
    }
    let complex = ProjComplex {
        id: format!("line-{}", tree.edge(path[0]).label),
        tree_id: tree.id().to_string(),
        m: alg.m(),
        terms,
        diffs: BTreeMap::new(),
    };

    let mut predicted = BTreeMap::new();
    let top = shift + t as i64;
    let tors = |i: usize| torsion.get(i).cloned().unwrap_or_default();
    let mut top_f = vec![path[0]];
    top_f.extend(tors(0));
    predicted.insert(top, top_f);
    let last_inner = if closing_edge.is_some() { t } else { t - 1 };
    for i in 1..last_inner {
        let mut f = tors(i);
        f.extend(tors(i - 1));
        predicted.insert(top - i as i64, f);
    }
    if let (Some(vp), Some(_)) = (v_prime, closing_edge) {
        let mult = if tree.vertex(vp).kind == VertexKind::Exc {
            alg.m() as usize
        } else {
            1
        };
        let mut f: Vec<usize> = tree
            .order(vp)
            .iter()
            .flat_map(|&e| std::iter::repeat_n(e, mult))
            .collect();
        f.extend(tors(t - 1));
        predicted.insert(shift, f);
    }
    for f in predicted.values_mut() {
        f.sort_unstable();
    }
    Ok(LemmaComplex {
        complex,
        vertices,
        closing_edge,
        torsion,
        predicted,
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    fn line3() -> BrauerTree {
        BrauerTree::new(
            "l3",
            Multiplicity::Symbolic,
            vec![
                Vertex::unip("a"),
                Vertex::unip("b"),
                Vertex::unip("c"),
                Vertex::unip("d"),
            ],
            vec![
                EdgeSpec::new("S0", "a", "b"),
                EdgeSpec::new("S1", "b", "c"),
                EdgeSpec::new("S2", "c", "d"),
            ],
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn zero_complex_has_no_homology() {
        let a = TreeAlgebra::new(&line2(), 1).unwrap();
        let c = ProjComplex {
            id: "z".into(),
            tree_id: "line2".into(),
            m: 1,
            terms: BTreeMap::new(),
            diffs: BTreeMap::new(),
        };
        assert!(homology(&a, &c).unwrap().degrees.is_empty());
    }

    #[test]
    fn single_projective_is_its_own_homology() {
        let a = TreeAlgebra::new(&line2(), 1).unwrap();
        let c = ProjComplex {
            id: "p".into(),
            tree_id: "line2".into(),
            m: 1,
            terms: BTreeMap::from([(0, vec![0])]),
            diffs: BTreeMap::new(),
        };
        assert_eq!(homology(&a, &c).unwrap().factors(0), &[0, 0, 1]);
    }

    #[test]
    fn line_complex_matches_prediction() {
        let tree = line3();
        let a = TreeAlgebra::new(&tree, 1).unwrap();
        let d = tree.vertex_index("d").unwrap();
        let lc = lemma_complex(&a, &[0, 1], Some(d), 0).unwrap();
        let h = homology(&a, &lc.complex).unwrap();
        for (deg, f) in &lc.predicted {
            assert_eq!(h.factors(*deg), f.as_slice(), "degree {deg}");
        }
        assert_eq!(h.nonzero_degrees(), vec![0, 2]);
    }

    #[test]
    fn torsion_between_consecutive_edges_on_a_star() {
        // Leaf a - S0 - x, with S1 and S2 leaving x; S2 sits between S0 and S1.
        let tree = BrauerTree::new(
            "t",
            Multiplicity::Symbolic,
            vec![
                Vertex::unip("a"),
                Vertex::unip("x"),
                Vertex::unip("b"),
                Vertex::unip("c"),
                Vertex::unip("d"),
            ],
            vec![
                EdgeSpec::new("S0", "a", "x"),
                EdgeSpec::new("S1", "x", "b"),
                EdgeSpec::new("S2", "x", "c"),
                EdgeSpec::new("S3", "b", "d"),
            ],
            vec![("x".into(), vec!["S0".into(), "S2".into(), "S1".into()])],
        )
        .unwrap();
        let a = TreeAlgebra::new(&tree, 1).unwrap();
        let d = tree.vertex_index("d").unwrap();
        let lc = lemma_complex(&a, &[0, 1], Some(d), 0).unwrap();
        assert_eq!(lc.torsion[0], vec![2]);
        let h = homology(&a, &lc.complex).unwrap();
        for (deg, f) in &lc.predicted {
            assert_eq!(h.factors(*deg), f.as_slice(), "degree {deg}");
        }
        assert!(h.factors(2).contains(&2));
    }

    #[test]
    fn missing_closing_edge_is_reported() {
        let tree = line3();
        let a = TreeAlgebra::new(&tree, 1).unwrap();
        let lc = lemma_complex(&a, &[0], Some(tree.vertex_index("d").unwrap()), 0);
        assert_eq!(lc.unwrap_err().code(), "certificate-requires-edge");
        let lc = lemma_complex(&a, &[1], None, 0);
        assert_eq!(lc.unwrap_err().code(), "bad-path");
    }

    #[test]
    fn non_complex_is_rejected() {
        let tree = line2();
        let a = TreeAlgebra::new(&tree, 1).unwrap();
        let text = "COMPLEX c ON line2 M 1\nDEG 0: S0\nDEG 1: S0\nDEG 2: S0\n\
                    DIFF 0: matrix id\nDIFF 1: matrix id\n";
        let c = ProjComplex::parse(text, &tree).unwrap();
        assert_eq!(homology(&a, &c).unwrap_err().code(), "not-a-complex");
    }

    #[test]
    fn complex_text_round_trip() {
        let tree = star(3, true);
        let text = "COMPLEX c ON star M 2\nDEG 0: S0\nDEG 1: S1 S2\n\
                    DIFF 0: matrix can -1*can\n";
        let c = ProjComplex::parse(text, &tree).unwrap();
        assert_eq!(
            c.diffs[&0],
            vec![
                vec![DiffEntry::CANONICAL],
                vec![DiffEntry {
                    kind: DiffKind::Canonical,
                    scalar: -1
                }]
            ]
        );
        let again = ProjComplex::parse(&c.to_text(&tree), &tree).unwrap();
        assert_eq!(again, c);
        assert!(ProjComplex::parse(
            "COMPLEX c ON star M 2\nDEG 0: S0 S1\nDEG 1: S2\nDIFF 0: canonical\n",
            &tree
        )
        .is_err());
    }
}
