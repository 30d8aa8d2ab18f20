//! Runs every command in `corpus/cases.txt` from the corpus directory and
//! compares exit code, stdout and stderr with `corpus/expected/<name>.out`.
//! Set `UPDATE_GOLDEN=1` to rewrite the expected files.

use std::fs;
use std::path::PathBuf;

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn render(code: i32, out: &str, err: &str) -> String {
    format!("exit: {code}\n--- stdout\n{out}--- stderr\n{err}")
}

#[test]
fn golden_reports() {
    let dir = corpus();
    // the only test in this binary, so changing directory is safe
    std::env::set_current_dir(&dir).unwrap();
    let cases = fs::read_to_string("cases.txt").unwrap();
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut failures = Vec::new();
    let mut count = 0;
    for line in cases
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
    {
        let (name, cmd) = line.split_once(':').expect("`name: args`");
        let args = std::iter::once("koszul").chain(cmd.split_whitespace());
        let (code, out, err) = koszul_cli::run(args);
        let got = render(code, &out, &err);
        let path = PathBuf::from("expected").join(format!("{}.out", name.trim()));
        count += 1;
        if update {
            fs::write(&path, &got).unwrap();
            continue;
        }
        match fs::read_to_string(&path) {
            Ok(want) if want == got => {}
            Ok(want) => failures.push(format!("{name}: output differs\n--- want\n{want}--- got\n{got}")),
            Err(_) => failures.push(format!("{name}: missing {}", path.display())),
        }
    }
    assert!(count >= 20, "only {count} cases");
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
