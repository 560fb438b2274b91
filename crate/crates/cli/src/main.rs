//! `brauer`: batch front end for trees, certificates and the dataset.
//!
//! Exit codes: 0 when every verdict passes, 1 when some verdict fails, 2 on
//! bad input. Tables go to standard output, diagnostics to standard error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use brauer::algebra::{
    cartan, cartan_det, decomposition_matrix, homology, walk, ProjComplex, TreeAlgebra,
};
use brauer::dataset::{Dataset, TreeReport};
use brauer::tree::{fold, parse, render_ascii, render_dot, serialize, BrauerTree, Multiplicity};
use brauer::validation::{check, CertEnv, Certificate, Verdict};

#[derive(Parser)]
#[command(
    name = "brauer",
    version,
    about = "Planar Brauer trees, tree algebras and certificates"
)]
struct Cli {
    /// Print reports as JSON instead of TSV.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run certificates on a tree. Without --cert, runs the certificates
    /// shipped next to it.
    Validate {
        tree: String,
        #[arg(long = "cert")]
        certs: Vec<PathBuf>,
        /// Also print each verdict's trace to standard error.
        #[arg(long)]
        trace: bool,
    },
    /// Decomposition matrix: characters by simple modules.
    Decomp {
        tree: String,
        #[arg(long)]
        m: Option<u32>,
        /// Repeat the exceptional row m times.
        #[arg(long)]
        expanded: bool,
    },
    /// Cartan matrix of the tree algebra.
    Cartan {
        tree: String,
        #[arg(long)]
        m: Option<u32>,
    },
    /// Dimensions of Ext^1 between simple modules.
    Ext1 {
        tree: String,
        #[arg(long)]
        m: Option<u32>,
    },
    /// Omega^n of the lattice of a vertex.
    Omega {
        tree: String,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        start: String,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Field homology of a complex of projectives.
    Homology {
        complex: PathBuf,
        /// Tree the complex lives on; found from the header when omitted.
        #[arg(long)]
        tree: Option<String>,
        #[arg(long)]
        m: Option<u32>,
    },
    /// Fold a tree by a divisor of its multiplicity.
    Fold {
        tree: String,
        #[arg(long)]
        d: u32,
    },
    /// Draw a tree.
    Render {
        tree: String,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
    },
    /// The shipped dataset.
    Dataset {
        #[command(subcommand)]
        cmd: DatasetCmd,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Ascii,
}

#[derive(Subcommand)]
enum DatasetCmd {
    /// List tree ids with their role and description.
    List,
    /// Check every tree against its certificates.
    CheckAll,
}

/// Loaded tree with the directory it came from.
struct Source {
    tree: BrauerTree,
    dir: PathBuf,
    path: PathBuf,
}

/// A tree argument is a file path, or else a dataset id.
fn load_tree(arg: &str) -> Result<Source> {
    let p = Path::new(arg);
    let path = if p.is_file() {
        p.to_path_buf()
    } else {
        let ds = Dataset::from_env();
        let q = ds.tree_path(arg);
        if !q.is_file() {
            bail!("no tree file `{arg}` and no dataset tree with that id");
        }
        q
    };
    let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
    let tree = parse(&text).with_context(|| format!("{}", path.display()))?;
    let dir = path
        .parent()
        .map_or_else(|| PathBuf::from("."), Path::to_path_buf);
    Ok(Source { tree, dir, path })
}

/// Resolves companion trees next to the file, then in the dataset.
struct CliEnv {
    dir: PathBuf,
}

impl CertEnv for CliEnv {
    fn tree(&self, id: &str) -> Option<BrauerTree> {
        let candidates = [
            self.dir.join(format!("{id}.bt")),
            self.dir.join("..").join(id).join("tree.bt"),
            Dataset::from_env().tree_path(id),
        ];
        let path = candidates.iter().find(|p| p.is_file())?;
        parse(&fs::read_to_string(path).ok()?).ok()
    }

    fn base_dir(&self) -> Option<&Path> {
        Some(&self.dir)
    }
}

fn algebra(t: &BrauerTree, m: Option<u32>) -> Result<TreeAlgebra> {
    let m = match (t.multiplicity(), m) {
        (Multiplicity::Concrete(k), Some(m)) if k != m => {
            bail!("tree has multiplicity {k}, but --m {m} was given")
        }
        (Multiplicity::Concrete(k), _) => k,
        (Multiplicity::Symbolic, Some(m)) => m,
        (Multiplicity::Symbolic, None) => bail!("multiplicity is symbolic; pass --m"),
    };
    let t = t.with_multiplicity(Multiplicity::Concrete(m))?;
    Ok(TreeAlgebra::new(&t, m)?)
}

fn print_json<T: Serialize>(v: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn matrix_tsv(labels: &[String], rows: &[Vec<String>]) -> String {
    let mut out = format!("\t{}\n", labels.join("\t"));
    for (l, r) in labels.iter().zip(rows) {
        out += &format!("{l}\t{}\n", r.join("\t"));
    }
    out
}

fn exit_for(all_pass: bool) -> ExitCode {
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn validate(src: &Source, cert_files: &[PathBuf], trace: bool, json: bool) -> Result<ExitCode> {
    let mut certs = Vec::new();
    let files: Vec<PathBuf> = if cert_files.is_empty() {
        let dir = src.dir.join("certs");
        let mut v: Vec<PathBuf> = match fs::read_dir(&dir) {
            Ok(rd) => rd
                .filter_map(Result::ok)
                .map(|e| e.path())
                .filter(|p| p.extension().is_some_and(|x| x == "cert"))
                .collect(),
            Err(_) => Vec::new(),
        };
        v.sort();
        v
    } else {
        cert_files.to_vec()
    };
    for f in &files {
        let text = fs::read_to_string(f).with_context(|| format!("reading {}", f.display()))?;
        certs.push(Certificate::parse(&text).with_context(|| format!("{}", f.display()))?);
    }
    let env = CliEnv {
        dir: src.dir.clone(),
    };
    let mut verdicts = vec![brauer::dataset::census(&src.tree)];
    verdicts.extend(certs.iter().map(|c| check(c, &src.tree, &env)));
    if certs.is_empty() {
        eprintln!(
            "{}: no certificates; only the census was checked",
            src.path.display()
        );
    }
    if trace {
        for v in &verdicts {
            eprint!("{}", v.to_text());
        }
    }
    if json {
        print_json(&verdicts)?;
    } else {
        println!("{}", Verdict::tsv_header());
        for v in &verdicts {
            println!("{}", v.tsv_row());
        }
    }
    Ok(exit_for(verdicts.iter().all(|v| !v.is_fail())))
}

#[derive(Serialize)]
struct MatrixReport {
    labels: Vec<String>,
    entries: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    det: Option<String>,
}

#[derive(Serialize)]
struct OmegaReport {
    tree: String,
    m: u32,
    start: String,
    n: i64,
    /// Label of the simple module when the result is simple.
    simple: Option<String>,
    #[serde(flatten)]
    walk: brauer::algebra::walk::WalkReport,
}

fn homology_cmd(file: &Path, tree: Option<&str>, m: Option<u32>, json: bool) -> Result<ExitCode> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let (_, tree_id, file_m) = ProjComplex::header(&text)?;
    let src = match tree {
        Some(t) => load_tree(t)?,
        None => {
            let beside = file
                .parent()
                .and_then(Path::parent)
                .map(|d| d.join("tree.bt"))
                .filter(|p| p.is_file());
            let beside = beside.and_then(|p| {
                let s = load_tree(p.to_str()?).ok()?;
                (s.tree.id() == tree_id).then_some(s)
            });
            match beside {
                Some(s) => s,
                None => load_tree(&tree_id)?,
            }
        }
    };
    let alg = algebra(&src.tree, Some(m.unwrap_or(file_m)))?;
    let c = ProjComplex::parse(&text, &src.tree)?;
    let h = homology(&alg, &c)?;
    if json {
        print_json(&h.rows(&src.tree))?;
    } else {
        print!("{}", h.to_tsv(&src.tree));
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ListRow {
    id: String,
    role: brauer::dataset::Role,
    vertices: usize,
    edges: usize,
    certificates: usize,
    description: String,
}

fn dataset_cmd(cmd: &DatasetCmd, json: bool) -> Result<ExitCode> {
    let ds = Dataset::from_env();
    match cmd {
        DatasetCmd::List => {
            let mut rows = Vec::new();
            for id in ds.list()? {
                let r = ds.load(&id)?;
                rows.push(ListRow {
                    id,
                    role: r.meta.role,
                    vertices: r.tree.num_vertices(),
                    edges: r.tree.num_edges(),
                    certificates: r.certs.len(),
                    description: r.meta.description,
                });
            }
            if json {
                print_json(&rows)?;
            } else {
                println!("id\trole\tvertices\tedges\tcertificates\tdescription");
                for r in &rows {
                    let role = serde_json::to_value(r.role)?;
                    println!(
                        "{}\t{}\t{}\t{}\t{}\t{}",
                        r.id,
                        role.as_str().unwrap_or_default(),
                        r.vertices,
                        r.edges,
                        r.certificates,
                        r.description
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        DatasetCmd::CheckAll => {
            let reports: Vec<TreeReport> = ds.check_all()?;
            if json {
                print_json(&reports)?;
            } else {
                println!("{}", Verdict::tsv_header());
                for r in &reports {
                    for v in &r.verdicts {
                        println!("{}", v.tsv_row());
                    }
                }
            }
            let failed: Vec<&str> = reports
                .iter()
                .filter(|r| !r.passed)
                .map(|r| r.id.as_str())
                .collect();
            eprintln!(
                "{} trees, {} passed{}",
                reports.len(),
                reports.len() - failed.len(),
                if failed.is_empty() {
                    String::new()
                } else {
                    format!("; failed: {}", failed.join(", "))
                }
            );
            Ok(exit_for(failed.is_empty()))
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let json = cli.json;
    match &cli.cmd {
        Cmd::Validate { tree, certs, trace } => validate(&load_tree(tree)?, certs, *trace, json),
        Cmd::Decomp { tree, m, expanded } => {
            let src = load_tree(tree)?;
            let expand = if *expanded {
                match (src.tree.multiplicity(), m) {
                    (_, Some(m)) => Some(*m),
                    (Multiplicity::Concrete(k), None) => Some(k),
                    (Multiplicity::Symbolic, None) => {
                        bail!("--expanded needs a multiplicity; pass --m")
                    }
                }
            } else {
                None
            };
            let d = decomposition_matrix(&src.tree, expand);
            if json {
                print_json(&d)?;
            } else {
                print!("{}", d.to_tsv());
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Cartan { tree, m } => {
            let src = load_tree(tree)?;
            let alg = algebra(&src.tree, *m)?;
            let c = cartan(&alg);
            let report = MatrixReport {
                labels: src.tree.edges().iter().map(|e| e.label.clone()).collect(),
                entries: c
                    .iter()
                    .map(|r| r.iter().map(i64::to_string).collect())
                    .collect(),
                det: Some(cartan_det(&alg).to_string()),
            };
            if json {
                print_json(&report)?;
            } else {
                print!("{}", matrix_tsv(&report.labels, &report.entries));
                eprintln!("det = {}", report.det.unwrap_or_default());
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Ext1 { tree, m } => {
            let src = load_tree(tree)?;
            let alg = algebra(&src.tree, *m)?;
            let e = src.tree.num_edges();
            let report = MatrixReport {
                labels: src.tree.edges().iter().map(|e| e.label.clone()).collect(),
                entries: (0..e)
                    .map(|s| (0..e).map(|t| alg.ext1(s, t).to_string()).collect())
                    .collect(),
                det: None,
            };
            if json {
                print_json(&report)?;
            } else {
                print!("{}", matrix_tsv(&report.labels, &report.entries));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Omega { tree, m, start, n } => {
            let src = load_tree(tree)?;
            let alg = algebra(&src.tree, *m)?;
            let t = alg.tree();
            let v = t
                .vertex_index(start)
                .ok_or_else(|| anyhow!("unknown vertex `{start}`"))?;
            let w = walk(&alg, v, *n)?;
            let report = w.report(&alg);
            let simple = (w.module.dim() == 1).then(|| report.factors[0].clone());
            if json {
                print_json(&OmegaReport {
                    tree: t.id().to_string(),
                    m: alg.m(),
                    start: start.clone(),
                    n: *n,
                    simple,
                    walk: report,
                })?;
            } else {
                println!("character: {}", report.character);
                match simple {
                    Some(s) => println!("module: simple {s}"),
                    None => println!(
                        "module: dimension {}, factors {}",
                        w.module.dim(),
                        report.factors.join(" ")
                    ),
                }
                println!("steps: {}", report.steps);
                if report.experimental {
                    eprintln!(
                        "note: `{start}` is not a leaf; the start module is uniserial around it"
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Homology { complex, tree, m } => homology_cmd(complex, tree.as_deref(), *m, json),
        Cmd::Fold { tree, d } => {
            let src = load_tree(tree)?;
            let f = fold(&src.tree, *d).map_err(|e| match e {
                brauer::tree::TreeError::Fold(msg) => anyhow!(msg),
                e => e.into(),
            })?;
            if json {
                print_json(&serde_json::json!({ "id": f.id(), "text": serialize(&f) }))?;
            } else {
                print!("{}", serialize(&f));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Render { tree, format } => {
            let src = load_tree(tree)?;
            let out = match format {
                Format::Dot => render_dot(&src.tree),
                Format::Ascii => render_ascii(&src.tree),
            };
            if json {
                print_json(&serde_json::json!({ "id": src.tree.id(), "rendering": out }))?;
            } else {
                print!("{out}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Dataset { cmd } => dataset_cmd(cmd, json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
