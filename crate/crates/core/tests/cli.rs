use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn qschur(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qschur")).current_dir(dir).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn schur_dim_prints_ten() {
    let dir = tempfile::tempdir().unwrap();
    let o = qschur(dir.path(), &["schur", "dim", "type=gl", "d=2", "qf=box:2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "10");
}

#[test]
fn consts_match_golden_and_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("job.cfg"), "# gl(2), weights in a 2-box\ntype=gl d=2\nqf=box:2\n").unwrap();
    for out in ["a", "b"] {
        let o = qschur(dir.path(), &["schur", "consts", "--config", "job.cfg", "--out", out]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let a = fs::read(dir.path().join("a/consts.json")).unwrap();
    let b = fs::read(dir.path().join("b/consts.json")).unwrap();
    assert_eq!(a, b);
    let golden = include_str!("golden/gl2_box2_consts.json");
    assert_eq!(String::from_utf8(a).unwrap(), golden);
}

#[test]
fn census_json_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = |out: &'static str| ["census", "type=sp", "rank=4", "qf=jmath:1", "--out", out];
    assert_eq!(qschur(dir.path(), &args("a")).status.code(), Some(0));
    assert_eq!(qschur(dir.path(), &args("b")).status.code(), Some(0));
    let a = fs::read_to_string(dir.path().join("a/census.json")).unwrap();
    assert_eq!(a, fs::read_to_string(dir.path().join("b/census.json")).unwrap());
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    let rec = &v["records"][0];
    for key in ["gamma", "w_word", "nu", "dim_F_gamma", "dim_Z", "coset_size", "closure_cells"] {
        assert!(rec.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn sl2_remark_prints_matrices_and_pass() {
    let dir = tempfile::tempdir().unwrap();
    let o = qschur(dir.path(), &["affine", "sl2-remark"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("e^{-w}: [[0, -1], [1, z]]"), "{s}");
    assert!(s.trim_end().ends_with("PASS"));
    assert!(dir.path().join("out/sl2_remark.json").exists());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let usage = qschur(dir.path(), &["schur", "dim", "type=A", "rank=99"]);
    assert_eq!(usage.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&usage.stderr).contains("line 1, key `rank`"));
    assert_eq!(qschur(dir.path(), &["census"]).status.code(), Some(2));
    assert_eq!(qschur(dir.path(), &["verify", "bogus"]).status.code(), Some(2));
    assert_eq!(qschur(dir.path(), &["frobnicate"]).status.code(), Some(2));
    // the center weight must be dominant
    let fail = qschur(dir.path(), &["affine", "center-check", "type=A", "rank=1", "qf=zero", "mu=(-1)"]);
    assert_eq!(fail.status.code(), Some(2));
    let howe = qschur(dir.path(), &["howe", "check", "type=A", "rank=1", "qf=regular", "qg=zero", "--q0", "3"]);
    assert_eq!(howe.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("out/verdict.json")).unwrap()).unwrap();
    assert_eq!(v[0]["verdict"], "fails");
    assert_eq!(v[0]["affine"]["commutant_rank"], 4);
}
