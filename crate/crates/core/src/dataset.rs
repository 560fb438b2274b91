//! The shipped trees, their metadata and certificates.
//!
//! Layout: `<root>/<id>/tree.bt`, `<root>/<id>/meta` (`key = value` lines),
//! `<root>/<id>/certs/*.cert`, plus any files the certificates refer to.
//! The root is `$BRAUER_DATA` when set, else the `data` directory of this
//! repository.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::tree::{parse, serialize, BrauerTree, TreeError};
use crate::validation::{check, CertError, Certificate, DirEnv, Outcome, Verdict};

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("unknown dataset id `{0}`")]
    UnknownId(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Tree { path: PathBuf, source: TreeError },
    #[error("{path}: {source}")]
    Cert { path: PathBuf, source: CertError },
    #[error("{path}: line {line}: {msg}")]
    Meta {
        path: PathBuf,
        line: usize,
        msg: String,
    },
}

fn read(path: &Path) -> Result<String, DatasetError> {
    fs::read_to_string(path).map_err(|source| DatasetError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    /// A tree believed correct; every certificate must pass.
    Reference,
    /// A refuted embedding; at least one certificate must fail.
    Negative,
    /// A small constructed tree; every certificate must pass.
    Synthetic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Meta {
    pub description: String,
    pub role: Role,
    pub group: Option<String>,
    pub d: Option<u32>,
    pub rank: Option<usize>,
    /// Whether no proper Levi subgroup has order divisible by `l`.
    pub coprime_levis: bool,
}

impl Meta {
    pub fn parse(text: &str, path: &Path) -> Result<Self, DatasetError> {
        let bad = |line: usize, msg: String| DatasetError::Meta {
            path: path.to_path_buf(),
            line,
            msg,
        };
        let mut kv = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| bad(i + 1, "expected `key = value`".into()))?;
            if kv
                .insert(k.trim().to_string(), (i + 1, v.trim().to_string()))
                .is_some()
            {
                return Err(bad(i + 1, format!("duplicate key `{}`", k.trim())));
            }
        }
        let mut take = |k: &str| kv.remove(k);
        let description = take("description").map(|(_, v)| v).unwrap_or_default();
        let role = match take("role") {
            None => Role::Reference,
            Some((_, v)) if v == "reference" => Role::Reference,
            Some((_, v)) if v == "negative" => Role::Negative,
            Some((_, v)) if v == "synthetic" => Role::Synthetic,
            Some((l, v)) => return Err(bad(l, format!("unknown role `{v}`"))),
        };
        let group = take("group").map(|(_, v)| v);
        let d = match take("d") {
            None => None,
            Some((l, v)) => Some(v.parse().map_err(|_| bad(l, format!("bad d `{v}`")))?),
        };
        let rank = match take("rank") {
            None => None,
            Some((l, v)) => Some(v.parse().map_err(|_| bad(l, format!("bad rank `{v}`")))?),
        };
        let coprime_levis = match take("cuspidal-levis") {
            None => false,
            Some((_, v)) if v == "coprime" => true,
            Some((_, v)) if v == "any" => false,
            Some((l, v)) => return Err(bad(l, format!("bad cuspidal-levis `{v}`"))),
        };
        if let Some((k, (l, _))) = kv.into_iter().next() {
            return Err(bad(l, format!("unknown key `{k}`")));
        }
        Ok(Meta {
            description,
            role,
            group,
            d,
            rank,
            coprime_levis,
        })
    }
}

#[derive(Debug, Clone)]
pub struct TreeRecord {
    pub id: String,
    pub dir: PathBuf,
    /// The file as shipped, kept for the canonical-form check.
    pub text: String,
    pub tree: BrauerTree,
    pub meta: Meta,
    /// Certificates sorted by file name.
    pub certs: Vec<(String, Certificate)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TreeReport {
    pub id: String,
    pub role: Role,
    pub passed: bool,
    pub verdicts: Vec<Verdict>,
}

impl TreeReport {
    /// Reference and synthetic trees pass when no verdict fails. A negative
    /// tree passes when some certificate refutes it with a witness and its
    /// file-level checks still hold.
    fn assemble(id: String, role: Role, verdicts: Vec<Verdict>) -> Self {
        let file_ok = verdicts
            .iter()
            .filter(|v| v.check == "census" || v.check == "format")
            .all(|v| !v.is_fail());
        let passed = match role {
            Role::Negative => {
                file_ok
                    && verdicts
                        .iter()
                        .any(|v| v.is_fail() && v.witness.as_deref().is_some_and(|w| !w.is_empty()))
            }
            _ => verdicts.iter().all(|v| !v.is_fail()),
        };
        TreeReport {
            id,
            role,
            passed,
            verdicts,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Dataset {
    root: PathBuf,
}

impl Dataset {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Dataset { root: root.into() }
    }

    /// `$BRAUER_DATA`, falling back to the repository's `data` directory.
    pub fn from_env() -> Self {
        match std::env::var_os("BRAUER_DATA") {
            Some(p) if !p.is_empty() => Dataset::new(p),
            _ => Dataset::new(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")),
        }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    /// Ids of all subdirectories holding a `tree.bt`, sorted.
    pub fn list(&self) -> Result<Vec<String>, DatasetError> {
        let entries = fs::read_dir(&self.root).map_err(|source| DatasetError::Io {
            path: self.root.clone(),
            source,
        })?;
        let mut ids: Vec<String> = entries
            .filter_map(Result::ok)
            .filter(|e| e.path().join("tree.bt").is_file())
            .filter_map(|e| e.file_name().into_string().ok())
            .collect();
        ids.sort();
        Ok(ids)
    }

    pub fn tree_path(&self, id: &str) -> PathBuf {
        self.root.join(id).join("tree.bt")
    }

    pub fn load(&self, id: &str) -> Result<TreeRecord, DatasetError> {
        let dir = self.root.join(id);
        let path = dir.join("tree.bt");
        if id.is_empty() || id.contains(['/', '\\']) || !path.is_file() {
            return Err(DatasetError::UnknownId(id.to_string()));
        }
        let text = read(&path)?;
        let tree = parse(&text).map_err(|source| DatasetError::Tree {
            path: path.clone(),
            source,
        })?;
        let meta_path = dir.join("meta");
        let meta = if meta_path.is_file() {
            Meta::parse(&read(&meta_path)?, &meta_path)?
        } else {
            Meta::parse("", &meta_path)?
        };
        let mut certs = Vec::new();
        let cdir = dir.join("certs");
        if cdir.is_dir() {
            let mut files: Vec<PathBuf> = fs::read_dir(&cdir)
                .map_err(|source| DatasetError::Io {
                    path: cdir.clone(),
                    source,
                })?
                .filter_map(Result::ok)
                .map(|e| e.path())
                .filter(|p| p.extension().is_some_and(|x| x == "cert"))
                .collect();
            files.sort();
            for p in files {
                let c = Certificate::parse(&read(&p)?).map_err(|source| DatasetError::Cert {
                    path: p.clone(),
                    source,
                })?;
                let name = p.file_name().unwrap().to_string_lossy().into_owned();
                certs.push((name, c));
            }
        }
        Ok(TreeRecord {
            id: id.to_string(),
            dir,
            text,
            tree,
            meta,
            certs,
        })
    }

    /// File-level checks followed by every certificate of the record.
    pub fn check_record(&self, rec: &TreeRecord) -> TreeReport {
        let mut verdicts = vec![census(&rec.tree), format_check(rec)];
        if rec.tree.id() != rec.id {
            let v = Verdict::new("id", &rec.tree).failed(format!(
                "tree id `{}` in directory `{}`",
                rec.tree.id(),
                rec.id
            ));
            verdicts.push(v);
        }
        let env = DirEnv {
            root: Some(self.root.clone()),
            dir: rec.dir.clone(),
        };
        let cert_verdicts: Vec<Verdict> = rec
            .certs
            .par_iter()
            .map(|(_, c)| check(c, &rec.tree, &env))
            .collect();
        verdicts.extend(cert_verdicts);
        TreeReport::assemble(rec.id.clone(), rec.meta.role, verdicts)
    }

    /// Loads and checks every tree in parallel. Reports come back in id
    /// order regardless of scheduling.
    pub fn check_all(&self) -> Result<Vec<TreeReport>, DatasetError> {
        let ids = self.list()?;
        ids.par_iter()
            .map(|id| self.load(id).map(|rec| self.check_record(&rec)))
            .collect()
    }
}

/// One unipotent vertex per edge, so the exceptional vertex is the only
/// non-unipotent one.
pub fn census(t: &BrauerTree) -> Verdict {
    let mut v = Verdict::new("census", t);
    let unip = t.vertices().iter().filter(|x| x.is_unipotent()).count();
    if unip == t.num_edges() {
        v.note(format!(
            "{unip} unipotent vertices, {} edges",
            t.num_edges()
        ));
        v
    } else {
        v.failed(format!(
            "{unip} unipotent vertices but {} edges",
            t.num_edges()
        ))
    }
}

fn format_check(rec: &TreeRecord) -> Verdict {
    let v = Verdict::new("format", &rec.tree);
    let canonical = serialize(&rec.tree);
    if canonical != rec.text {
        let line = canonical
            .lines()
            .zip(rec.text.lines())
            .position(|(a, b)| a != b)
            .unwrap_or_else(|| canonical.lines().count().min(rec.text.lines().count()));
        return v.failed(format!(
            "tree.bt is not in canonical form from line {}",
            line + 1
        ));
    }
    match parse(&canonical) {
        Ok(t) if serialize(&t) == canonical => {
            v.with_outcome(Outcome::Pass, "canonical and stable")
        }
        Ok(_) => v.failed("serializing twice changes the text"),
        Err(e) => v.failed(format!("canonical form does not parse: {e}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn meta_parsing() {
        let p = Path::new("meta");
        let m = Meta::parse(
            "description = x\nrole = negative\nd = 20\ncuspidal-levis = coprime\n",
            p,
        )
        .unwrap();
        assert_eq!(m.role, Role::Negative);
        assert_eq!(m.d, Some(20));
        assert!(m.coprime_levis);
        assert!(Meta::parse("role = odd\n", p).is_err());
        assert!(Meta::parse("colour = red\n", p).is_err());
        assert!(Meta::parse("d = 1\nd = 2\n", p).is_err());
    }

    #[test]
    fn unknown_ids_are_errors() {
        let ds = Dataset::from_env();
        assert!(matches!(ds.load("nope"), Err(DatasetError::UnknownId(_))));
        assert!(matches!(
            ds.load("../data"),
            Err(DatasetError::UnknownId(_))
        ));
    }
}
