//! Text renderings for display. Both walk the tree from its first vertex and
//! list the children of each vertex counterclockwise, starting after the
//! edge to the parent.

use std::fmt::Write;

use super::{BrauerTree, VertexKind};

/// Child edges of `v` in counterclockwise order, starting after `parent_edge`.
fn children(t: &BrauerTree, v: usize, parent_edge: Option<usize>) -> Vec<usize> {
    let ord = t.order(v);
    match parent_edge {
        None => ord.to_vec(),
        Some(p) => {
            let pos = ord.iter().position(|&e| e == p).unwrap();
            (1..ord.len()).map(|k| ord[(pos + k) % ord.len()]).collect()
        }
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering. `ordering=out` keeps the children of every vertex in
/// counterclockwise order.
pub fn render_dot(t: &BrauerTree) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph {} {{", quote(t.id()));
    let _ = writeln!(out, "  ordering=out;");
    for v in t.vertices() {
        let shape = match v.kind {
            VertexKind::Exc => "doublecircle",
            VertexKind::Nonunip => "box",
            VertexKind::Unip => "ellipse",
        };
        let _ = writeln!(out, "  {} [shape={shape}];", quote(&v.label));
    }
    let mut stack = vec![(0usize, None)];
    while let Some((v, parent)) = stack.pop() {
        let kids = children(t, v, parent);
        for &e in &kids {
            let edge = t.edge(e);
            let w = edge.other(v);
            let style = if edge.cuspidal {
                ", color=\"black:black\""
            } else {
                ""
            };
            let _ = writeln!(
                out,
                "  {} -- {} [label={}{style}];",
                quote(&t.vertex(v).label),
                quote(&t.vertex(w).label),
                quote(&edge.label)
            );
        }
        for &e in kids.iter().rev() {
            stack.push((t.edge(e).other(v), Some(e)));
        }
    }
    out.push_str("}\n");
    out
}

/// Indented outline, one vertex per line, with the edge leading to it.
pub fn render_ascii(t: &BrauerTree) -> String {
    fn tag(t: &BrauerTree, v: usize) -> String {
        let vx = t.vertex(v);
        match vx.kind {
            VertexKind::Exc => format!("{} [exc]", vx.label),
            VertexKind::Nonunip => format!("{} [nonunip]", vx.label),
            VertexKind::Unip => vx.label.clone(),
        }
    }
    fn walk(t: &BrauerTree, v: usize, parent: Option<usize>, prefix: &str, out: &mut String) {
        let kids = children(t, v, parent);
        for (k, &e) in kids.iter().enumerate() {
            let last = k + 1 == kids.len();
            let edge = t.edge(e);
            let w = edge.other(v);
            let bar = if edge.cuspidal { "==" } else { "--" };
            let _ = writeln!(
                out,
                "{prefix}{} {bar} {} {bar} {}",
                if last { "`" } else { "|" },
                edge.label,
                tag(t, w)
            );
            let next = format!("{prefix}{}", if last { "   " } else { "|  " });
            walk(t, w, Some(e), &next, out);
        }
    }
    let mut out = format!("{}\n", tag(t, 0));
    walk(t, 0, None, "", &mut out);
    out
}
