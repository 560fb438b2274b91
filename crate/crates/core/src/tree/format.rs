//! Line-based text format for trees.
//!
//! ```text
//! TREE <id>
//! MULTIPLICITY symbolic | <int>
//! VERTEX <label> kind=<unip|exc|nonunip> real=<0|1> [conj=..] [series=..] [deg=..] [frob=..]
//! EDGE <label> <v1> <v2> [cuspidal]
//! ORDER <vertex>: <edge> <edge> ...
//! END
//! ```
//!
//! `#` starts a comment. Serialization is canonical: vertices and edges in
//! input order, one ORDER line per vertex rotated to its smallest edge label.

use std::fmt::Write;

use super::{BrauerTree, EdgeSpec, Multiplicity, TreeError, Vertex, VertexKind};
use crate::qpoly::QPoly;

fn syntax(line: usize, msg: impl Into<String>) -> TreeError {
    TreeError::Syntax {
        line,
        msg: msg.into(),
    }
}

pub fn parse(text: &str) -> Result<BrauerTree, TreeError> {
    let mut id: Option<String> = None;
    let mut mult: Option<Multiplicity> = None;
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut orders = Vec::new();
    let mut ended = false;

    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if ended {
            return Err(syntax(line_no, "content after END"));
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "TREE" => {
                if id.is_some() {
                    return Err(syntax(line_no, "second TREE header"));
                }
                if toks.len() != 2 {
                    return Err(syntax(line_no, "expected `TREE <id>`"));
                }
                id = Some(toks[1].to_string());
            }
            _ if id.is_none() => return Err(syntax(line_no, "missing TREE header")),
            "MULTIPLICITY" => {
                if toks.len() != 2 {
                    return Err(syntax(line_no, "expected `MULTIPLICITY symbolic|<int>`"));
                }
                mult = Some(match toks[1] {
                    "symbolic" => Multiplicity::Symbolic,
                    s => Multiplicity::Concrete(
                        s.parse()
                            .map_err(|_| syntax(line_no, format!("bad multiplicity `{s}`")))?,
                    ),
                });
            }
            "VERTEX" => vertices.push(parse_vertex(&toks, line_no)?),
            "EDGE" => {
                let cuspidal = match toks.len() {
                    4 => false,
                    5 if toks[4] == "cuspidal" => true,
                    _ => {
                        return Err(syntax(
                            line_no,
                            "expected `EDGE <label> <v1> <v2> [cuspidal]`",
                        ))
                    }
                };
                edges.push(EdgeSpec {
                    label: toks[1].to_string(),
                    a: toks[2].to_string(),
                    b: toks[3].to_string(),
                    cuspidal,
                });
            }
            "ORDER" => {
                let v = toks
                    .get(1)
                    .and_then(|t| t.strip_suffix(':'))
                    .ok_or_else(|| syntax(line_no, "expected `ORDER <vertex>: <edges>`"))?;
                orders.push((
                    v.to_string(),
                    toks[2..].iter().map(|s| s.to_string()).collect(),
                ));
            }
            "END" => ended = true,
            other => return Err(syntax(line_no, format!("unknown keyword `{other}`"))),
        }
    }
    let id = id.ok_or_else(|| syntax(0, "missing TREE header"))?;
    if !ended {
        return Err(syntax(text.lines().count(), "missing END"));
    }
    let mult = mult.ok_or_else(|| syntax(0, "missing MULTIPLICITY"))?;
    BrauerTree::new(id, mult, vertices, edges, orders)
}

fn parse_vertex(toks: &[&str], line_no: usize) -> Result<Vertex, TreeError> {
    let label = toks
        .get(1)
        .ok_or_else(|| syntax(line_no, "VERTEX without label"))?;
    let mut kind = None;
    let mut real = None;
    let mut v = Vertex::unip(*label);
    for tok in &toks[2..] {
        let (key, val) = tok
            .split_once('=')
            .ok_or_else(|| syntax(line_no, format!("expected key=value, got `{tok}`")))?;
        match key {
            "kind" => {
                kind = Some(
                    VertexKind::from_token(val)
                        .ok_or_else(|| syntax(line_no, format!("bad kind `{val}`")))?,
                )
            }
            "real" => {
                real = Some(match val {
                    "0" => false,
                    "1" => true,
                    _ => return Err(syntax(line_no, format!("bad real flag `{val}`"))),
                })
            }
            "conj" => v.conj = Some(val.to_string()),
            "series" => v.series = Some(val.to_string()),
            "deg" => {
                v.degree = Some(
                    val.parse::<QPoly>()
                        .map_err(|e| syntax(line_no, e.to_string()))?,
                )
            }
            "frob" => v.frob = Some(val.to_string()),
            _ => return Err(syntax(line_no, format!("unknown attribute `{key}`"))),
        }
    }
    v.kind = kind.ok_or_else(|| syntax(line_no, "VERTEX needs kind="))?;
    v.real = real.ok_or_else(|| syntax(line_no, "VERTEX needs real="))?;
    Ok(v)
}

pub fn serialize(t: &BrauerTree) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "TREE {}", t.id());
    let _ = writeln!(out, "MULTIPLICITY {}", t.multiplicity());
    for v in t.vertices() {
        let _ = write!(
            out,
            "VERTEX {} kind={} real={}",
            v.label,
            v.kind.token(),
            u8::from(v.real)
        );
        if let Some(c) = &v.conj {
            let _ = write!(out, " conj={c}");
        }
        if let Some(s) = &v.series {
            let _ = write!(out, " series={s}");
        }
        if let Some(d) = &v.degree {
            let _ = write!(out, " deg={d}");
        }
        if let Some(f) = &v.frob {
            let _ = write!(out, " frob={f}");
        }
        out.push('\n');
    }
    for e in t.edges() {
        let _ = write!(
            out,
            "EDGE {} {} {}",
            e.label,
            t.vertex(e.ends.0).label,
            t.vertex(e.ends.1).label
        );
        if e.cuspidal {
            out.push_str(" cuspidal");
        }
        out.push('\n');
    }
    for (i, v) in t.vertices().iter().enumerate() {
        let _ = write!(out, "ORDER {}:", v.label);
        for &e in t.order(i) {
            let _ = write!(out, " {}", t.edge(e).label);
        }
        out.push('\n');
    }
    out.push_str("END\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const DEMO: &str = "TREE demo\nMULTIPLICITY 1\n\
        VERTEX a kind=unip real=1\nVERTEX b kind=unip real=1\nVERTEX c kind=unip real=1\n\
        EDGE S0 a b\nEDGE S1 b c\n\
        ORDER a: S0\nORDER b: S0 S1\nORDER c: S1\nEND\n";

    #[test]
    fn demo_line_parses() {
        let t = parse(DEMO).unwrap();
        assert_eq!(t.num_edges(), 2);
        assert_eq!(t.num_vertices(), 3);
        assert_eq!(serialize(&t), DEMO);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = DEMO.replace("EDGE S0 a b", "# first edge\n\nEDGE S0 a b   # trailing");
        assert_eq!(parse(&text).unwrap(), parse(DEMO).unwrap());
    }

    #[test]
    fn omitted_edge_in_order_is_reported() {
        let text = DEMO.replace("ORDER b: S0 S1", "ORDER b: S0");
        assert_eq!(parse(&text).unwrap_err().code(), "order-incomplete");
    }

    #[test]
    fn foreign_edge_in_order_is_reported() {
        let text = DEMO.replace("ORDER a: S0", "ORDER a: S0 S1");
        assert_eq!(parse(&text).unwrap_err().code(), "order-inconsistent");
    }

    #[test]
    fn unknown_vertex_and_duplicates() {
        let text = DEMO.replace("EDGE S1 b c", "EDGE S1 b z");
        assert_eq!(parse(&text).unwrap_err().code(), "unknown-vertex");
        let text = DEMO.replace("VERTEX c kind", "VERTEX b kind");
        assert_eq!(parse(&text).unwrap_err().code(), "duplicate-label");
    }

    #[test]
    fn attributes_round_trip_in_canonical_order() {
        let text = "TREE t\nMULTIPLICITY symbolic\n\
            VERTEX x kind=exc real=1 series=EXC deg=q-1\n\
            VERTEX y kind=unip real=0 frob=i deg=q^2+1 conj=z series=CUSP\n\
            VERTEX z kind=unip real=0 conj=y\n\
            EDGE e x y cuspidal\nEDGE f x z\nEND\n";
        let t = parse(text).unwrap();
        let s = serialize(&t);
        assert!(s.contains("VERTEX y kind=unip real=0 conj=z series=CUSP deg=q^2+1 frob=i\n"));
        assert!(s.contains("EDGE e x y cuspidal\n"));
        assert_eq!(serialize(&parse(&s).unwrap()), s);
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let text = DEMO.replace("VERTEX a kind=unip real=1", "VERTEX a kind=bogus real=1");
        match parse(&text).unwrap_err() {
            TreeError::Syntax { line, .. } => assert_eq!(line, 3),
            e => panic!("unexpected {e:?}"),
        }
        assert!(parse(&DEMO.replace("END\n", "")).is_err());
    }
}
