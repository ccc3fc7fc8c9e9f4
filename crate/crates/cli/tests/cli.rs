use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

use stacky_cli::{ReportDocument, StackyFanDocument};
use tempfile::NamedTempFile;

fn stacky(args: &[&str], color: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stacky"))
        .args(args)
        .env("STACKY_COLOR", color)
        .output()
        .expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    stacky(args, "0")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_temp(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn gallery_file(name: &str) -> NamedTempFile {
    let out = run(&["gallery", name]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    write_temp(&stdout(&out))
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

fn report_of(file: &Path) -> ReportDocument {
    let out = run(&["report", "--json", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    ReportDocument::from_json(&stdout(&out)).unwrap()
}

#[test]
fn validate_accepts_p2() {
    let f = gallery_file("p2");
    let out = run(&["validate", path(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["valid"], true);
}

#[test]
fn dependent_rays_exit_two() {
    let f = write_temp(r#"{"group":{"rank":2,"torsion":[]},"beta":[[1,0],[2,0],[0,1]],"max_cones":[[0,1],[2]]}"#);
    let out = run(&["validate", path(&f)]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["valid"], false);
    assert!(stdout(&out).contains("simpliciality"), "{}", stdout(&out));
}

#[test]
fn malformed_json_exit_one() {
    let f = write_temp("{not json");
    assert_eq!(run(&["validate", path(&f)]).status.code(), Some(1));
    assert_eq!(run(&["validate", "/nonexistent/doc.json"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn report_json_round_trips() {
    let f = gallery_file("z2-example");
    let out = run(&["report", "--json", path(&f)]);
    let text = stdout(&out);
    let r = ReportDocument::from_json(&text).unwrap();
    assert_eq!(r.to_json().trim(), text.trim());
    assert!(r.is_global_quotient);
    assert_eq!(r.pi1_order.unwrap().0, 4.into());
}

#[test]
fn cover_is_simply_connected() {
    for name in ["z2-example", "wps-1-2", "sheared-a1-2-m112", "z4-example"] {
        let f = gallery_file(name);
        let out = run(&["cover", path(&f)]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        let cover = write_temp(&stdout(&out));
        let r = report_of(cover.path());
        assert_eq!(r.pi1_order.unwrap().0, 1.into(), "{name}");
        // covering does not change whether the stack is a global quotient
        assert_eq!(r.is_global_quotient, report_of(f.path()).is_global_quotient, "{name}");
    }
}

#[test]
fn z2_cover_document() {
    let f = gallery_file("z2-example");
    let doc = StackyFanDocument::from_json(&stdout(&run(&["cover", path(&f)]))).unwrap();
    assert_eq!(doc.group.rank, 1);
    assert!(doc.group.torsion.is_empty());
    let beta: Vec<i64> = doc.beta.iter().map(|c| i64::try_from(&c[0].0).unwrap()).collect();
    assert!(beta == [1, -1] || beta == [-1, 1], "{beta:?}");
}

#[test]
fn color_follows_environment() {
    let f = gallery_file("wps-1-2");
    let plain = stacky(&["report", path(&f)], "0");
    assert_eq!(plain.status.code(), Some(0));
    assert!(!stdout(&plain).contains('\x1b'));
    let colored = stacky(&["report", path(&f)], "always");
    assert!(stdout(&colored).contains('\x1b'));
}

#[test]
fn sweep_csv() {
    let out = run(&["sweep", "sheared-simplex", "--a", "1,2", "--m", "1..2", "--csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1 + 8);
    assert!(text.contains("\"1,2\",\"1,1,2\",true,2"), "{text}");
}
