use std::process::{Command, Output};

use warpcoflow::cli::{CatalogReport, ClassifyReport, LaplacianReport, SolveOutput, TorsionReport, VerifyReport, WarpReport};
use warpcoflow::flows::TableReport;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_warpcoflow")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json<T: serde::de::DeserializeOwned + serde::Serialize + PartialEq + std::fmt::Debug>(args: &[&str]) -> (T, i32) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let text = stdout(&out);
    let report: T = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    let again: T = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(report, again);
    (report, out.status.code().unwrap())
}

#[test]
fn catalog_lists_every_base() {
    let (report, code) = json::<CatalogReport>(&["catalog"]);
    assert_eq!(code, 0);
    assert_eq!(report.entries.len(), 15);
    assert!(report.entries.iter().any(|e| e.name == "h2" && e.family.to_string() == "balanced"));
    assert!(stdout(&run(&["catalog"])).lines().any(|l| l.starts_with("h2") && l.contains("balanced")));
}

#[test]
fn catalog_single_entry() {
    let out = run(&["catalog", "--name", "h3"]);
    assert!(stdout(&out).contains("(0,0,0,0,0,-2h12+2h34)"));
    let bad = run(&["catalog", "--name", "bogus"]);
    assert_eq!(bad.status.code(), Some(2));
    let err = String::from_utf8(bad.stderr).unwrap();
    assert!(err.contains("g6,118") && err.contains("h19-"));
}

#[test]
fn torsion_reports() {
    let (nk, code) = json::<TorsionReport>(&["torsion", "--algebra", "su2+su2"]);
    assert_eq!(code, 0);
    assert_eq!(nk.torsion.sigma0, "-2");
    let (h4, _) = json::<TorsionReport>(&["torsion", "--algebra", "h4"]);
    assert_eq!(h4.torsion.class.to_string(), "balanced");

    let dir = std::env::temp_dir().join(format!("warpcoflow-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("abelian.alg");
    std::fs::write(&file, "(0,0,0,0,0,0)\n").unwrap();
    let (ab, code) = json::<TorsionReport>(&["torsion", "--file", file.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(ab.torsion.nonzero.is_empty());
    let broken = dir.join("broken.alg");
    std::fs::write(&broken, "(0,h34,0,h56,0,0)\n").unwrap();
    assert_eq!(run(&["torsion", "--file", broken.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn classify_and_warp() {
    let (c, code) = json::<ClassifyReport>(&["classify", "--algebra", "su2+su2", "--alpha", "0", "--beta", "1"]);
    assert_eq!(code, 0);
    assert_eq!(c.g2_class.to_string(), "coclosed");
    let (w, code) = json::<WarpReport>(&["warp", "--algebra", "g5,1+R", "--alpha", "3/5", "--beta", "4/5", "--c", "2"]);
    assert_eq!(code, 0);
    assert!(w.g2.paths_agree && w.conditions_agree && w.star_identities);
    assert_eq!(w.conditions.len(), 9);
    assert_eq!(run(&["warp", "--algebra", "h3", "--alpha", "1", "--beta", "1"]).status.code(), Some(2));
}

#[test]
fn laplacian_of_nearly_kahler() {
    let (l, code) = json::<LaplacianReport>(&["laplacian", "--algebra", "su2+su2", "--alpha", "0", "--beta", "1"]);
    assert_eq!(code, 0);
    assert_eq!(l.coclosed_formula, Some(true));
    assert!(l.laplacian_star_phi.contains("12 x^{1234}") && l.laplacian_star_phi.contains("12 x^{1357}"));
    let (closed, _) = json::<LaplacianReport>(&["laplacian", "--algebra", "e11+e11"]);
    assert!(closed.closed_system.is_some());
}

#[test]
fn verify_cases() {
    let (nk, code) = json::<VerifyReport>(&["verify", "--case", "nk-s3s3", "--c", "1"]);
    assert_eq!(code, 0);
    assert!(nk.record.residual_zero);
    assert_eq!(nk.record.validity, "(-inf, 1/6)");
    let (e, code) = json::<VerifyReport>(&["verify", "--case", "e11e11"]);
    assert_eq!(code, 0);
    assert_eq!(e.record.warp, "c*exp(-2t)");
    let (bad, code) = json::<VerifyReport>(&["verify", "--case", "e11e11", "--perturb", "k=+1/100", "--sample-t", "0,1/2"]);
    assert_eq!(code, 1);
    assert!(!bad.record.residual_zero);
    assert!(!bad.failures.is_empty());
    assert_eq!(bad.samples.len(), 2);
    assert!(!bad.samples[0].residual.is_empty());
}

#[test]
fn solve_rows() {
    let (g, code) = json::<SolveOutput>(&["solve", "--algebra", "g5,1+R", "--class", "shf"]);
    assert_eq!(code, 0);
    assert!(g.solutions.iter().any(|s| s.beta_or_rate == "1/6" && s.k == "-3" && s.residual_zero));
    let (a, _) = json::<SolveOutput>(&["solve", "--algebra", "A5,17", "--class", "shf", "--param", "a=2"]);
    assert!(a.solutions.iter().any(|s| s.k == "-16" && s.residual_zero));
    assert_eq!(run(&["solve", "--algebra", "h3", "--class", "shf"]).status.code(), Some(2));
}

#[test]
fn tables_balanced() {
    let (t, code) = json::<TableReport>(&["tables", "--which", "balanced"]);
    assert_eq!(code, 0);
    assert!(t.pass);
    let ks: Vec<&str> = t.rows.iter().map(|r| r.solutions[0].k.as_str()).collect();
    assert_eq!(ks, ["-192", "-12", "-9", "-6", "-3", "-2"]);
    let text = stdout(&run(&["tables"]));
    assert!(text.lines().last().unwrap() == "PASS");
    assert!(text.contains("A146 = -4*(1+k*t)^(2a5); A236 = -4*(1+k*t)^(2a5)"));
}
