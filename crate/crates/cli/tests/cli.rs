use dotlab::io::poly;
use dotlab::{fixtures, LatticePolytope};
use std::path::PathBuf;
use std::process::{Command, Output};

fn dotlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dotlab")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// A scratch directory unique to one test.
fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("dotlab-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn write_poly(dir: &PathBuf, name: &str, p: &LatticePolytope) -> String {
    let f = dir.join(name);
    std::fs::write(&f, poly::serialize(p)).unwrap();
    f.to_str().unwrap().to_string()
}

#[test]
fn validate_reports_position_and_input_error() {
    let d = scratch("validate");
    let bad = d.join("bad.poly");
    std::fs::write(&bad, "D 0 0 D 4 0 X 4 3 X 0 3\n").unwrap();
    let o = dotlab(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 1"), "{err}");
    let good = write_poly(&d, "good.poly", &fixtures::rectangle());
    assert_eq!(dotlab(&["validate", &good]).status.code(), Some(0));
    assert_eq!(dotlab(&["validate", d.join("missing.poly").to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn case2_labels_after_extraction() {
    let d = scratch("label");
    let p = write_poly(&d, "case2.poly", &fixtures::thm1_case2());
    let g = d.join("case2.dg");
    assert_eq!(dotlab(&["extract", &p, "-o", g.to_str().unwrap()]).status.code(), Some(0));
    let o = dotlab(&["label", g.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(+1, 0, -1)"), "{}", stdout(&o));
    // labels straight from the polytope agree
    assert_eq!(stdout(&dotlab(&["label", &p])), stdout(&o));
}

#[test]
fn reduce_certificate_replays() {
    let d = scratch("reduce");
    let p = write_poly(&d, "case2.poly", &fixtures::thm1_case2());
    let cert = d.join("cert.json");
    let o = dotlab(&["reduce", &p, "--to-empty", "--cert", cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(dotlab(&["replay", &p, cert.to_str().unwrap()]).status.code(), Some(0));
    let other = write_poly(&d, "venn.poly", &fixtures::venn());
    assert_eq!(dotlab(&["replay", &other, cert.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn verify_small_thm1_passes_with_json() {
    let d = scratch("verify");
    let report = d.join("report.json");
    let o = dotlab(&["--json", "verify", "thm1", "--window", "5x3", "--max-corners", "6", "--report", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.is_object());
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(r["pass"], true);
    assert_eq!(dotlab(&["verify", "ring2", "--window", "4x4"]).status.code(), Some(2));
}

#[test]
fn jobs_setting_does_not_change_output() {
    let run = |jobs: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_dotlab"))
            .env("DOTLAB_JOBS", jobs)
            .args(["--json", "verify", "lemmas", "--window", "3x3", "--max-corners", "6"])
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
        stdout(&o)
    };
    assert_eq!(run("1"), run("2"));
}

#[test]
fn realize_miss_is_a_negative_result() {
    let d = scratch("realize");
    let p = write_poly(&d, "venn.poly", &fixtures::venn());
    let g = d.join("venn.dg");
    assert_eq!(dotlab(&["extract", &p, "-o", g.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(dotlab(&["realize", g.to_str().unwrap(), "--window", "2x2"]).status.code(), Some(1));
    let o = dotlab(&["realize", g.to_str().unwrap(), "--window", "6x6"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn render_writes_svg() {
    let d = scratch("render");
    let p = write_poly(&d, "rect.poly", &fixtures::rectangle());
    let out = d.join("rect.svg");
    assert_eq!(dotlab(&["render", &p, "-o", out.to_str().unwrap()]).status.code(), Some(0));
    assert!(std::fs::read_to_string(out).unwrap().starts_with("<svg"));
}
