use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn brauer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brauer"))
        .args(args)
        .env("BRAUER_DATA", data())
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn tree_file(id: &str) -> String {
    data()
        .join(id)
        .join("tree.bt")
        .to_string_lossy()
        .into_owned()
}

#[test]
fn omega_reaches_a_simple_module() {
    let o = brauer(&[
        "omega",
        &tree_file("e8_d24"),
        "--m",
        "2",
        "--start",
        "1",
        "--n",
        "12",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("character: E8[i]\n"), "{out}");
    assert!(out.contains("module: simple E8[i]\n"), "{out}");
}

#[test]
fn omega_accepts_negative_steps_and_dataset_ids() {
    let o = brauer(&[
        "omega", "e8_d20", "--m", "2", "--start", "E8[i]", "--n", "-2",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("character: E8[zeta]\n"));
}

#[test]
fn fold_rejects_a_non_divisor() {
    let o = brauer(&["fold", &tree_file("syn_star"), "--d", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("d does not divide m"));
}

#[test]
fn fold_output_matches_the_shipped_fixture() {
    let o = brauer(&["fold", "syn_star", "--d", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let shipped = std::fs::read_to_string(tree_file("syn_star_fold3")).unwrap();
    assert_eq!(
        stdout(&o).replace("syn_star-fold3", "syn_star_fold3"),
        shipped
    );
}

#[test]
fn dataset_check_all_passes_and_is_deterministic() {
    let a = brauer(&["dataset", "check-all"]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    let b = brauer(&["dataset", "check-all"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).starts_with("tree\tcheck\tverdict\twitness\n"));
}

#[test]
fn dataset_list_names_every_tree() {
    let o = brauer(&["dataset", "list"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for id in [
        "e7_d9",
        "e8_d9_phi21",
        "2f4_d24-analog",
        "bad_e8_d20_st2",
        "syn_star",
    ] {
        assert!(
            out.lines().any(|l| l.starts_with(&format!("{id}\t"))),
            "{id}"
        );
    }
    let o = brauer(&["--json", "dataset", "list"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r["id"] == "e7_d14" && r["edges"] == 14));
}

#[test]
fn validate_exit_codes() {
    let o = brauer(&["validate", "e7_d14"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = brauer(&["validate", "bad_e8_d15_swap"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("walk:omega19\tfail\tOmega^19(1) has character E8[theta]"));
    let o = brauer(&["validate", "no-such-tree"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn validate_with_explicit_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.cert");
    std::fs::write(
        &good,
        "CERT w kind=walk tree=e8_d15 m=2\nSTART 1\nN 30\nEXPECT phi_{8,1}\n",
    )
    .unwrap();
    let o = brauer(&["validate", "e8_d15", "--cert", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let bad = dir.path().join("bad.cert");
    std::fs::write(
        &bad,
        "CERT c kind=coxeter tree=e8_d15\nPATH S0 S1\nTARGET E8[zeta]\nSHIFT 0\n",
    )
    .unwrap();
    let o = brauer(&[
        "--json",
        "validate",
        "e8_d15",
        "--cert",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let w = v[1]["witness"].as_str().unwrap();
    assert!(w.starts_with("certificate-requires-edge"), "{w}");
    let broken = dir.path().join("broken.cert");
    std::fs::write(&broken, "CERT c kind=walk tree=e8_d15\nSTART 1\n").unwrap();
    let o = brauer(&["validate", "e8_d15", "--cert", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("missing `N`"));
}

#[test]
fn fold_certificate_finds_its_companion_next_to_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let base = std::fs::read_to_string(tree_file("syn_star")).unwrap();
    std::fs::write(dir.path().join("syn_star.bt"), &base).unwrap();
    let o = brauer(&[
        "fold",
        dir.path().join("syn_star.bt").to_str().unwrap(),
        "--d",
        "3",
    ]);
    let folded = dir.path().join("folded.bt");
    std::fs::write(&folded, stdout(&o)).unwrap();
    let cert = dir.path().join("f.cert");
    std::fs::write(
        &cert,
        "CERT f kind=fold tree=syn_star-fold3\nCOMPANION syn_star D 3\n",
    )
    .unwrap();
    let o = brauer(&[
        "validate",
        folded.to_str().unwrap(),
        "--cert",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn homology_tables() {
    let c = data().join("e8_d20/complexes/C.cx");
    let o = brauer(&["homology", c.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "degree\tdim\tfactors\n10\t1\tE8[i]\n20\t1\tP0\n"
    );
    let d = data().join("bad_e8_d20_d4/complexes/D.cx");
    let o = brauer(&["--json", "homology", d.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let degrees: Vec<i64> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["degree"].as_i64().unwrap())
        .collect();
    assert_eq!(degrees, [8, 9, 12]);
}

#[test]
fn homology_of_a_complex_outside_the_dataset() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("x.cx");
    std::fs::write(
        &f,
        "COMPLEX x ON syn_line2 M 1\nDEG 0: S0\nDEG 1: S0\nDIFF 0: matrix soc\n",
    )
    .unwrap();
    let o = brauer(&[
        "homology",
        f.to_str().unwrap(),
        "--tree",
        &tree_file("syn_line2"),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    // P_S0 is uniserial S0, S1, S0; the socle map kills its radical.
    assert_eq!(
        stdout(&o),
        "degree\tdim\tfactors\n0\t2\tS0 S1\n1\t2\tS0 S1\n"
    );
}

#[test]
fn matrices() {
    let o = brauer(&["cartan", "syn_star"]);
    assert_eq!(
        stdout(&o),
        "\tA\tB\tC\nA\t4\t3\t0\nB\t3\t4\t1\nC\t0\t1\t2\n"
    );
    assert_eq!(stderr(&o), "det = 10\n");
    let o = brauer(&["ext1", "syn_line2"]);
    assert_eq!(stdout(&o), "\tS0\tS1\nS0\t0\t1\nS1\t1\t0\n");
    let o = brauer(&["decomp", "syn_edge_exc", "--expanded"]);
    assert_eq!(stdout(&o), "\tS0\na\t1\nx#1\t1\nx#2\t1\nx#3\t1\n");
    let o = brauer(&["cartan", "e7_d14"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("pass --m"));
}

#[test]
fn render_formats() {
    let o = brauer(&["render", "syn_star", "--format", "dot"]);
    assert!(stdout(&o).starts_with("graph \"syn_star\" {"));
    let o = brauer(&["render", "syn_star", "--format", "svg"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(brauer(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        brauer(&["omega", "e8_d24", "--bogus"]).status.code(),
        Some(2)
    );
    assert_eq!(brauer(&[]).status.code(), Some(2));
}
