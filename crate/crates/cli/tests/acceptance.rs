//! Release criterion: machine reports are byte-identical across repeated
//! runs of the same command with the same inputs and seed.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wlskit"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn criterion_11_report_determinism() {
    let commands: Vec<Vec<String>> = vec![
        vec!["ring", "wls-find", "--in", &fixture("t2.json"), "--seed", "7"],
        vec!["ring", "wls-find", "--in", &fixture("cp2.json"), "--seed", "7"],
        vec!["ring", "wls-find", "--in", &fixture("t4.json"), "--seed", "7"],
        vec!["ss", "pages", "--in", &fixture("hopf.json")],
        vec!["group", "snf", "--in", &fixture("snf-example.json")],
    ]
    .into_iter()
    .map(|v| v.into_iter().map(String::from).collect())
    .collect();
    for args in &commands {
        let mut full: Vec<&str> = args.iter().map(String::as_str).collect();
        full.extend(["--format", "json"]);
        let first = run(&full);
        assert_eq!(first.status.code(), Some(0), "command fails: {args:?}");
        for _ in 0..2 {
            let again = run(&full);
            assert_eq!(first.stdout, again.stdout, "report bytes drifted: {args:?}");
        }
    }
    println!("criterion 11: PASS — identical inputs and seed give byte-identical reports");
}
