//! Certificate files: one header line and kind-specific payload lines.
//!
//! ```text
//! CERT <id> kind=<kind> tree=<tree-id> [m=<int>]
//! PATH S0 S1 S2
//! TARGET E7[i]
//! SHIFT 7
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("certificate line {line}: {msg}")]
pub struct CertError {
    pub line: usize,
    pub msg: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CertKind {
    Parity,
    Degree,
    Hecke,
    RealStem,
    Steinberg,
    Coxeter,
    Walk,
    Fold,
    Complex,
}

impl CertKind {
    pub fn token(self) -> &'static str {
        match self {
            CertKind::Parity => "parity",
            CertKind::Degree => "degree",
            CertKind::Hecke => "hecke",
            CertKind::RealStem => "real-stem",
            CertKind::Steinberg => "steinberg",
            CertKind::Coxeter => "coxeter",
            CertKind::Walk => "walk",
            CertKind::Fold => "fold",
            CertKind::Complex => "complex",
        }
    }

    /// Whether the check runs on the tree algebra and so needs a concrete `m`.
    pub fn needs_algebra(self) -> bool {
        matches!(self, CertKind::Coxeter | CertKind::Walk | CertKind::Complex)
    }
}

impl fmt::Display for CertKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for CertKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "parity" => CertKind::Parity,
            "degree" => CertKind::Degree,
            "hecke" => CertKind::Hecke,
            "real-stem" => CertKind::RealStem,
            "steinberg" => CertKind::Steinberg,
            "coxeter" => CertKind::Coxeter,
            "walk" => CertKind::Walk,
            "fold" => CertKind::Fold,
            "complex" => CertKind::Complex,
            _ => return Err(format!("unknown certificate kind `{s}`")),
        })
    }
}

/// Payload of a certificate. Labels are kept as text and resolved against
/// the tree when the certificate is checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Parity {
        d: u32,
    },
    Degree {
        bound: u32,
    },
    Hecke,
    RealStem,
    Steinberg {
        radius: Option<usize>,
        /// No proper Levi subgroup has order divisible by the prime.
        coprime_levis: bool,
    },
    Coxeter {
        path: Vec<String>,
        /// `V'`. Without it only the truncated complex is checked.
        target: Option<String>,
        shift: i64,
        /// Also assert the local picture at `St` for leaf `1` lines.
        corollary: bool,
        /// Assert that the complex has no torsion at all.
        torsion_free: bool,
    },
    Walk {
        start: String,
        n: i64,
        expect: String,
        factors: Option<Vec<String>>,
    },
    Fold {
        /// The tree this one should be the `d`-fold of.
        companion: String,
        d: u32,
        /// Vertex label pairs `(label in the fold, label in this tree)`.
        map: Vec<(String, String)>,
    },
    Complex {
        /// Path of a complex file, relative to the certificate's directory.
        file: String,
        /// Expected field homology; degrees not listed must vanish.
        homology: BTreeMap<i64, Vec<String>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub id: String,
    pub kind: CertKind,
    pub tree: String,
    pub m: Option<u32>,
    pub payload: Payload,
}

fn err(line: usize, msg: impl Into<String>) -> CertError {
    CertError {
        line,
        msg: msg.into(),
    }
}

struct Lines {
    /// Keyword to `(line number, arguments)`, in file order.
    entries: Vec<(String, usize, Vec<String>)>,
}

impl Lines {
    fn take(&mut self, key: &str) -> Option<(usize, Vec<String>)> {
        let i = self.entries.iter().position(|(k, _, _)| k == key)?;
        let (_, line, args) = self.entries.remove(i);
        Some((line, args))
    }

    fn take_all(&mut self, key: &str) -> Vec<(usize, Vec<String>)> {
        let mut out = Vec::new();
        while let Some(x) = self.take(key) {
            out.push(x);
        }
        out
    }

    fn flag(&mut self, key: &str) -> Result<bool, CertError> {
        match self.take(key) {
            None => Ok(false),
            Some((_, args)) if args.is_empty() => Ok(true),
            Some((line, _)) => Err(err(line, format!("`{key}` takes no arguments"))),
        }
    }

    fn single(&mut self, key: &str) -> Result<Option<(usize, String)>, CertError> {
        match self.take(key) {
            None => Ok(None),
            Some((line, args)) if args.len() == 1 => Ok(Some((line, args[0].clone()))),
            Some((line, _)) => Err(err(line, format!("`{key}` takes one argument"))),
        }
    }

    fn required<T: FromStr>(&mut self, key: &str, header: usize) -> Result<T, CertError> {
        let (line, v) = self
            .single(key)?
            .ok_or_else(|| err(header, format!("missing `{key}`")))?;
        v.parse()
            .map_err(|_| err(line, format!("bad `{key}` value `{v}`")))
    }

    fn optional<T: FromStr>(&mut self, key: &str) -> Result<Option<T>, CertError> {
        match self.single(key)? {
            None => Ok(None),
            Some((line, v)) => v
                .parse()
                .map(Some)
                .map_err(|_| err(line, format!("bad `{key}` value `{v}`"))),
        }
    }
}

impl Certificate {
    pub fn parse(text: &str) -> Result<Self, CertError> {
        let mut header = None;
        let mut lines = Lines {
            entries: Vec::new(),
        };
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut toks = line.split_whitespace().map(str::to_string);
            let key = toks.next().unwrap();
            let args: Vec<String> = toks.collect();
            if header.is_none() {
                if key != "CERT" {
                    return Err(err(i + 1, "expected `CERT <id> kind=<k> tree=<id>`"));
                }
                header = Some((i + 1, args));
            } else if key == "CERT" {
                return Err(err(i + 1, "second `CERT` header"));
            } else {
                lines.entries.push((key, i + 1, args));
            }
        }
        let (hl, hargs) = header.ok_or_else(|| err(0, "empty certificate"))?;
        let id = hargs
            .first()
            .filter(|a| !a.contains('='))
            .ok_or_else(|| err(hl, "missing certificate id"))?
            .clone();
        let (mut kind, mut tree, mut m) = (None, None, None);
        for a in &hargs[1..] {
            match a.split_once('=') {
                Some(("kind", k)) => kind = Some(k.parse::<CertKind>().map_err(|e| err(hl, e))?),
                Some(("tree", t)) => tree = Some(t.to_string()),
                Some(("m", v)) => {
                    m = Some(
                        v.parse::<u32>()
                            .ok()
                            .filter(|&m| m > 0)
                            .ok_or_else(|| err(hl, format!("bad m `{v}`")))?,
                    )
                }
                _ => return Err(err(hl, format!("unexpected `{a}`"))),
            }
        }
        let kind = kind.ok_or_else(|| err(hl, "missing kind="))?;
        let tree = tree.ok_or_else(|| err(hl, "missing tree="))?;

        let payload = match kind {
            CertKind::Parity => Payload::Parity {
                d: lines.required("D", hl)?,
            },
            CertKind::Degree => Payload::Degree {
                bound: lines.optional("BOUND")?.unwrap_or(10),
            },
            CertKind::Hecke => Payload::Hecke,
            CertKind::RealStem => Payload::RealStem,
            CertKind::Steinberg => {
                let radius = lines.optional("RADIUS")?;
                let coprime_levis = match lines.single("LEVIS")? {
                    None => false,
                    Some((_, v)) if v == "coprime" => true,
                    Some((_, v)) if v == "any" => false,
                    Some((line, v)) => return Err(err(line, format!("bad LEVIS `{v}`"))),
                };
                if coprime_levis && radius.is_none() {
                    return Err(err(hl, "`LEVIS coprime` needs `RADIUS`"));
                }
                Payload::Steinberg {
                    radius,
                    coprime_levis,
                }
            }
            CertKind::Coxeter => {
                let (pl, path) = lines
                    .take("PATH")
                    .ok_or_else(|| err(hl, "missing `PATH`"))?;
                if path.is_empty() {
                    return Err(err(pl, "empty path"));
                }
                Payload::Coxeter {
                    path,
                    target: lines.single("TARGET")?.map(|(_, v)| v),
                    shift: lines.required("SHIFT", hl)?,
                    corollary: lines.flag("COROLLARY")?,
                    torsion_free: lines.flag("TORSION-FREE")?,
                }
            }
            CertKind::Walk => Payload::Walk {
                start: lines.required("START", hl)?,
                n: lines.required("N", hl)?,
                expect: lines.required("EXPECT", hl)?,
                factors: lines.take("FACTORS").map(|(_, f)| f),
            },
            CertKind::Fold => {
                let (cl, args) = lines
                    .take("COMPANION")
                    .ok_or_else(|| err(hl, "missing `COMPANION <tree-id> D <int>`"))?;
                let (companion, d) = match args.as_slice() {
                    [c, dk, d] if dk == "D" => (
                        c.clone(),
                        d.parse::<u32>()
                            .ok()
                            .filter(|&d| d > 0)
                            .ok_or_else(|| err(cl, format!("bad divisor `{d}`")))?,
                    ),
                    _ => return Err(err(cl, "expected `COMPANION <tree-id> D <int>`")),
                };
                let mut map = Vec::new();
                for (line, args) in lines.take_all("MAP") {
                    match args.as_slice() {
                        [a, b] => map.push((a.clone(), b.clone())),
                        _ => return Err(err(line, "expected `MAP <folded-label> <label>`")),
                    }
                }
                Payload::Fold { companion, d, map }
            }
            CertKind::Complex => {
                let file = lines
                    .single("COMPLEX")?
                    .ok_or_else(|| err(hl, "missing `COMPLEX <file>`"))?
                    .1;
                let mut homology = BTreeMap::new();
                for (line, args) in lines.take_all("HOMOLOGY") {
                    let deg = args
                        .first()
                        .and_then(|d| d.strip_suffix(':'))
                        .and_then(|d| d.parse::<i64>().ok())
                        .ok_or_else(|| err(line, "expected `HOMOLOGY <deg>: <edges>`"))?;
                    if homology.insert(deg, args[1..].to_vec()).is_some() {
                        return Err(err(line, format!("degree {deg} given twice")));
                    }
                }
                Payload::Complex { file, homology }
            }
        };
        if let Some((key, line, _)) = lines.entries.first() {
            return Err(err(*line, format!("unexpected `{key}` for kind {kind}")));
        }
        Ok(Certificate {
            id,
            kind,
            tree,
            m,
            payload,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("CERT {} kind={} tree={}", self.id, self.kind, self.tree);
        if let Some(m) = self.m {
            out += &format!(" m={m}");
        }
        out.push('\n');
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        match &self.payload {
            Payload::Parity { d } => line(format!("D {d}")),
            Payload::Degree { bound } => line(format!("BOUND {bound}")),
            Payload::Hecke | Payload::RealStem => {}
            Payload::Steinberg {
                radius,
                coprime_levis,
            } => {
                if let Some(r) = radius {
                    line(format!("RADIUS {r}"));
                }
                if *coprime_levis {
                    line("LEVIS coprime".into());
                }
            }
            Payload::Coxeter {
                path,
                target,
                shift,
                corollary,
                torsion_free,
            } => {
                line(format!("PATH {}", path.join(" ")));
                if let Some(t) = target {
                    line(format!("TARGET {t}"));
                }
                line(format!("SHIFT {shift}"));
                if *corollary {
                    line("COROLLARY".into());
                }
                if *torsion_free {
                    line("TORSION-FREE".into());
                }
            }
            Payload::Walk {
                start,
                n,
                expect,
                factors,
            } => {
                line(format!("START {start}"));
                line(format!("N {n}"));
                line(format!("EXPECT {expect}"));
                if let Some(f) = factors {
                    line(format!("FACTORS {}", f.join(" ")));
                }
            }
            Payload::Fold { companion, d, map } => {
                line(format!("COMPANION {companion} D {d}"));
                for (a, b) in map {
                    line(format!("MAP {a} {b}"));
                }
            }
            Payload::Complex { file, homology } => {
                line(format!("COMPLEX {file}"));
                for (d, f) in homology {
                    line(
                        format!("HOMOLOGY {d}: {}", f.join(" "))
                            .trim_end()
                            .to_string(),
                    );
                }
            }
        }
        out
    }
}
