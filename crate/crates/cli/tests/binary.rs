use std::path::PathBuf;
use std::process::Command;

fn koszul(args: &[&str]) -> (i32, String) {
    let corpus = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let out = Command::new(env!("CARGO_BIN_EXE_koszul"))
        .args(args)
        .current_dir(corpus)
        .output()
        .unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn exit_codes() {
    assert_eq!(koszul(&["dual", "arrow_loop.alg"]).0, 0);
    assert_eq!(koszul(&["classify", "branched_line.alg", "bad_vertex.mod"]).0, 1);
    assert_eq!(
        koszul(&["classify", "arrow_loop.alg", "strand.mod", "--dmax", "10"]).0,
        2
    );
    assert_eq!(
        koszul(&["ainfty", "arrow_loop.alg", "staircase.hom", "--field", "251"]).0,
        3
    );
    assert_eq!(koszul(&["check", "branched_line.alg", "broken_relation.mod"]).0, 1);
    assert_eq!(koszul(&["frobnicate"]).0, 1);
}

#[test]
fn orbit_summary_line() {
    let (code, out) = koszul(&["ainfty", "arrow_loop.alg", "one_index.hom", "--field", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("0 slots, 1 structure, 1 orbit"), "{out}");
    let (_, out) = koszul(&["ainfty", "arrow_loop.alg", "staircase.hom", "--field", "3"]);
    assert!(out.contains("3 slots, 27 structures, 4 orbits"), "{out}");
}
