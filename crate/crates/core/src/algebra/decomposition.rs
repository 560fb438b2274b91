use num_bigint::BigInt;
use serde::Serialize;

use super::linalg::det_bareiss;
use super::TreeAlgebra;
use crate::tree::{BrauerTree, VertexKind};

/// Rows are characters (vertices), columns are simple modules (edges).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionMatrix {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub entries: Vec<Vec<i64>>,
}

impl DecompositionMatrix {
    pub fn to_tsv(&self) -> String {
        let mut out = format!("\t{}\n", self.cols.join("\t"));
        for (r, row) in self.rows.iter().zip(&self.entries) {
            let cells: Vec<String> = row.iter().map(i64::to_string).collect();
            out.push_str(&format!("{r}\t{}\n", cells.join("\t")));
        }
        out
    }
}

/// Rows in vertex order. With `expand = Some(m)` the exceptional row is
/// repeated `m` times as `<label>#1 .. <label>#m`.
pub fn decomposition_matrix(t: &BrauerTree, expand: Option<u32>) -> DecompositionMatrix {
    let cols = t.edges().iter().map(|e| e.label.clone()).collect();
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    for (v, vx) in t.vertices().iter().enumerate() {
        let row: Vec<i64> = t.edges().iter().map(|e| i64::from(e.touches(v))).collect();
        match (vx.kind, expand) {
            (VertexKind::Exc, Some(m)) => {
                for i in 1..=m {
                    rows.push(format!("{}#{i}", vx.label));
                    entries.push(row.clone());
                }
            }
            _ => {
                rows.push(vx.label.clone());
                entries.push(row);
            }
        }
    }
    DecompositionMatrix {
        rows,
        cols,
        entries,
    }
}

/// Cartan matrix `D^T D` with `D` expanded at the algebra's `m`.
pub fn cartan(alg: &TreeAlgebra) -> Vec<Vec<i64>> {
    let d = decomposition_matrix(alg.tree(), Some(alg.m()));
    let e = d.cols.len();
    (0..e)
        .map(|i| {
            (0..e)
                .map(|j| d.entries.iter().map(|r| r[i] * r[j]).sum())
                .collect()
        })
        .collect()
}

pub fn cartan_det(alg: &TreeAlgebra) -> BigInt {
    det_bareiss(&cartan(alg))
}
