//! Executable certificates: each determination argument becomes a predicate
//! on a tree with a verdict, a trace and, on failure, a witness.

mod certificate;
mod checks;

use std::fmt;
use std::path::{Path, PathBuf};

use serde::Serialize;

pub use certificate::{CertError, CertKind, Certificate, Payload};
pub use checks::{
    check_coxeter, check_degree, check_fold, check_hecke, check_parity, check_real_stem,
    check_steinberg, check_walk, CoxeterSpec, WalkSpec,
};

use crate::algebra::{homology, ProjComplex, TreeAlgebra};
use crate::tree::{BrauerTree, Multiplicity};

/// Multiplicity used for algebra-level certificates that do not fix one.
pub const DEFAULT_M: u32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    NotApplicable,
    DataMissing,
}

impl Outcome {
    pub fn token(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::NotApplicable => "not-applicable",
            Outcome::DataMissing => "data-missing",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Result of one check. A failing verdict always carries a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub check: String,
    pub tree: String,
    pub outcome: Outcome,
    pub trace: Vec<String>,
    pub witness: Option<String>,
}

impl Verdict {
    pub fn new(check: impl Into<String>, tree: &BrauerTree) -> Self {
        Verdict {
            check: check.into(),
            tree: tree.id().to_string(),
            outcome: Outcome::Pass,
            trace: Vec::new(),
            witness: None,
        }
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.trace.push(line.into());
    }

    /// Marks the verdict failed. The first witness is kept.
    pub fn fail(&mut self, witness: impl Into<String>) {
        let w = witness.into();
        debug_assert!(!w.is_empty());
        self.trace.push(format!("FAIL {w}"));
        if self.outcome != Outcome::Fail {
            self.outcome = Outcome::Fail;
            self.witness = Some(w);
        }
    }

    pub fn with_outcome(mut self, outcome: Outcome, reason: impl Into<String>) -> Self {
        self.outcome = outcome;
        self.trace.push(reason.into());
        self
    }

    pub fn failed(mut self, witness: impl Into<String>) -> Self {
        self.fail(witness);
        self
    }

    pub fn is_pass(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn is_fail(&self) -> bool {
        self.outcome == Outcome::Fail
    }

    pub fn tsv_header() -> &'static str {
        "tree\tcheck\tverdict\twitness"
    }

    pub fn tsv_row(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}",
            self.tree,
            self.check,
            self.outcome,
            self.witness.as_deref().unwrap_or("")
        )
    }

    /// Human-readable report: a status line and the indented trace.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} on {}", self.outcome, self.check, self.tree);
        if let Some(w) = &self.witness {
            out += &format!(": {w}");
        }
        out.push('\n');
        for l in &self.trace {
            out += &format!("  {l}\n");
        }
        out
    }
}

/// Where a certificate finds the other trees and files it refers to.
pub trait CertEnv {
    fn tree(&self, id: &str) -> Option<BrauerTree>;
    /// Directory that relative file names in the certificate are taken from.
    fn base_dir(&self) -> Option<&Path>;
}

/// Resolves nothing: fold and complex certificates fail to find their inputs.
pub struct NoEnv;

impl CertEnv for NoEnv {
    fn tree(&self, _: &str) -> Option<BrauerTree> {
        None
    }

    fn base_dir(&self) -> Option<&Path> {
        None
    }
}

/// Resolves companion trees by reading `<root>/<id>/tree.bt` and files
/// relative to `dir`.
pub struct DirEnv {
    pub root: Option<PathBuf>,
    pub dir: PathBuf,
}

impl CertEnv for DirEnv {
    fn tree(&self, id: &str) -> Option<BrauerTree> {
        let path = self.root.as_ref()?.join(id).join("tree.bt");
        crate::tree::parse(&std::fs::read_to_string(path).ok()?).ok()
    }

    fn base_dir(&self) -> Option<&Path> {
        Some(&self.dir)
    }
}

fn cert_name(c: &Certificate) -> String {
    format!("{}:{}", c.kind, c.id)
}

fn algebra_for(tree: &BrauerTree, m: u32) -> Result<TreeAlgebra, String> {
    let t = match tree.multiplicity() {
        Multiplicity::Concrete(k) if k != m => {
            return Err(format!("tree has multiplicity {k}, certificate uses {m}"))
        }
        Multiplicity::Concrete(_) => tree.clone(),
        Multiplicity::Symbolic => tree
            .with_multiplicity(Multiplicity::Concrete(m))
            .map_err(|e| e.to_string())?,
    };
    TreeAlgebra::new(&t, m).map_err(|e| format!("{}: {e}", e.code()))
}

/// Runs one certificate against `tree`.
pub fn check(cert: &Certificate, tree: &BrauerTree, env: &dyn CertEnv) -> Verdict {
    let name = cert_name(cert);
    let base = Verdict::new(name.clone(), tree);
    if cert.tree != tree.id() {
        return base.failed(format!(
            "certificate is for `{}`, not `{}`",
            cert.tree,
            tree.id()
        ));
    }
    let m = cert.m.unwrap_or(match tree.multiplicity() {
        Multiplicity::Concrete(m) => m,
        Multiplicity::Symbolic => DEFAULT_M,
    });
    let alg = if cert.kind.needs_algebra() {
        match algebra_for(tree, m) {
            Ok(a) => Some(a),
            Err(e) => return base.failed(format!("algebra: {e}")),
        }
    } else {
        None
    };
    let mut v = match &cert.payload {
        Payload::Parity { d } => check_parity(tree, *d),
        Payload::Degree { bound } => check_degree(tree, *bound),
        Payload::Hecke => check_hecke(tree),
        Payload::RealStem => check_real_stem(tree),
        Payload::Steinberg {
            radius,
            coprime_levis,
        } => check_steinberg(tree, *radius, *coprime_levis),
        Payload::Coxeter {
            path,
            target,
            shift,
            corollary,
            torsion_free,
        } => check_coxeter(
            alg.as_ref().unwrap(),
            &CoxeterSpec {
                path: path.clone(),
                target: target.clone(),
                shift: *shift,
                corollary: *corollary,
                torsion_free: *torsion_free,
            },
        ),
        Payload::Walk {
            start,
            n,
            expect,
            factors,
        } => check_walk(
            alg.as_ref().unwrap(),
            &WalkSpec {
                start: start.clone(),
                n: *n,
                expect: expect.clone(),
                factors: factors.clone(),
            },
        ),
        Payload::Fold { companion, d, map } => match env.tree(companion) {
            Some(base_tree) => check_fold(&base_tree, tree, *d, map),
            None => base
                .clone()
                .failed(format!("companion tree `{companion}` not found")),
        },
        Payload::Complex { file, homology } => {
            check_complex_file(alg.as_ref().unwrap(), env, file, homology)
        }
    };
    v.check = name;
    if cert.kind.needs_algebra() {
        v.trace.insert(0, format!("m = {m}"));
    }
    v
}

fn check_complex_file(
    alg: &TreeAlgebra,
    env: &dyn CertEnv,
    file: &str,
    expected: &std::collections::BTreeMap<i64, Vec<String>>,
) -> Verdict {
    let tree = alg.tree();
    let v = Verdict::new("complex", tree);
    let Some(dir) = env.base_dir() else {
        return v.failed(format!("no directory to resolve `{file}`"));
    };
    let text = match std::fs::read_to_string(dir.join(file)) {
        Ok(t) => t,
        Err(e) => return v.failed(format!("cannot read `{file}`: {e}")),
    };
    let c = match ProjComplex::parse(&text, tree) {
        Ok(c) => c,
        Err(e) => return v.failed(format!("{}: {e}", e.code())),
    };
    check_complex(alg, &c, expected)
}

/// Compares the field homology of `c` with `expected`, degree by degree.
pub fn check_complex(
    alg: &TreeAlgebra,
    c: &ProjComplex,
    expected: &std::collections::BTreeMap<i64, Vec<String>>,
) -> Verdict {
    let tree = alg.tree();
    let mut v = Verdict::new("complex", tree);
    if c.m != alg.m() {
        v.note(format!(
            "complex file says M {}, checked with m = {}",
            c.m,
            alg.m()
        ));
    }
    let h = match homology(alg, c) {
        Ok(h) => h,
        Err(e) => return v.failed(format!("{}: {e}", e.code())),
    };
    let mut expected_idx = std::collections::BTreeMap::new();
    for (&d, labels) in expected {
        let mut f = Vec::new();
        for l in labels {
            match tree.edge_index(l) {
                Some(e) => f.push(e),
                None => return v.failed(format!("unknown edge `{l}` in expected homology")),
            }
        }
        f.sort_unstable();
        if !f.is_empty() {
            expected_idx.insert(d, f);
        }
    }
    let names = |f: &[usize]| -> String {
        let v: Vec<&str> = f.iter().map(|&e| tree.edge(e).label.as_str()).collect();
        format!("{{{}}}", v.join(", "))
    };
    let degrees: std::collections::BTreeSet<i64> = h
        .degrees
        .keys()
        .chain(expected_idx.keys())
        .copied()
        .collect();
    for d in degrees {
        let got = h.factors(d);
        let want = expected_idx.get(&d).map_or(&[][..], Vec::as_slice);
        if got == want {
            v.note(format!("H^{d} = {}", names(got)));
        } else {
            v.fail(format!("H^{d} is {}, expected {}", names(got), names(want)));
        }
    }
    v
}
