use std::fs;
use std::process::{Command, Output};

fn igames(args: &[&str]) -> Output {
    let cwd = tempfile::tempdir().unwrap();
    Command::new(env!("CARGO_BIN_EXE_igames")).args(args).current_dir(cwd.path()).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn matrix_demo_lists_all_equilibria() {
    let o = igames(&["matrix-demo"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let after = |head: &str| -> Vec<String> {
        text.split(head).nth(1).unwrap().lines().skip(1).take_while(|l| l.starts_with("  ")).map(|l| l.trim().to_string()).collect()
    };
    assert_eq!(after("strong Stackelberg"), ["(0, 0) costs (0, 5)"]);
    assert_eq!(after("weak Stackelberg"), ["(-1, 1) costs (5, 0)  <- selected", "(0, 1) costs (5, 5)"]);
    assert_eq!(after("pure Nash"), ["(-1, 1) costs (5, 0)", "(0, 0) costs (0, 5)", "(0, 1) costs (5, 5)"]);
    assert!(text.contains(" 1    5,10   10,10   15,10"), "{text}");
}

#[test]
fn verify_exit_codes() {
    assert_eq!(igames(&["verify", "--profile", "0,0", "--stackelberg", "strong"]).status.code(), Some(0));
    assert_eq!(igames(&["verify", "--profile", "0,1", "--stackelberg", "strong"]).status.code(), Some(1));
    assert_eq!(igames(&["verify", "--profile", "-1,1", "--stackelberg", "weak"]).status.code(), Some(0));
    let o = igames(&["verify", "--profile", "1,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("Nash: no"));
    assert!(stdout(&o).contains("improves by playing -1"));
    assert!(stdout(&igames(&["verify", "--profile", "0,0"])).contains("Nash: yes"));
    assert_eq!(igames(&["verify", "--profile", "0"]).status.code(), Some(2));
    assert_eq!(igames(&["verify", "--profile", "3,0"]).status.code(), Some(2));
}

#[test]
fn verify_reads_table_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pd.txt");
    // Prisoner's dilemma as costs: defecting (1) dominates.
    fs::write(&path, "L\\F 0 1\n0 1,1 3,0\n1 0,3 2,2\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(igames(&["verify", p, "--profile", "1,1"]).status.code(), Some(0));
    assert_eq!(igames(&["verify", p, "--profile", "0,0"]).status.code(), Some(1));
    fs::write(&path, "L\\F 0 1\n0 1,1\n").unwrap();
    assert_eq!(igames(&["verify", p, "--profile", "0,0"]).status.code(), Some(2));
    let missing = dir.path().join("none.txt");
    assert_eq!(igames(&["verify", missing.to_str().unwrap(), "--profile", "0,0"]).status.code(), Some(2));
    fs::write(&path, "L\\F 0\n0 3,4\n").unwrap();
    assert_eq!(igames(&["verify", p, "--profile", "0,0"]).status.code(), Some(0));
}

#[test]
fn simulate_writes_reproducible_outputs() {
    let run = |dir: &std::path::Path| {
        let o = igames(&[
            "simulate", "--scenarios", "6", "--epochs", "20", "--game", "nbr,sse", "--behavior", "ideal,constant",
            "--out", dir.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).contains("Crashes per 100 Games"));
        fs::read_to_string(dir.join("scenarios.csv")).unwrap()
    };
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let (csv_a, csv_b) = (run(a.path()), run(b.path()));
    assert_eq!(csv_a.lines().count(), 1 + 2 * 2 * 6);
    let strip = |s: &str| -> Vec<String> {
        s.lines().map(|l| l.rsplit_once(',').unwrap().0.to_string()).collect()
    };
    assert_eq!(strip(&csv_a), strip(&csv_b));
    for f in ["summary.json", "manifest.json"] {
        let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(a.path().join(f)).unwrap()).unwrap();
        assert!(!v.is_null());
    }
}

#[test]
fn simulate_rejects_bad_config() {
    let o = igames(&["simulate", "--players", "3", "--scenarios", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = igames(&["simulate", "--setting", "hierarchy", "--game", "nbr", "--scenarios", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn simulate_json_and_env() {
    let cwd = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_igames"))
        .current_dir(cwd.path())
        .args(["simulate", "--format", "json", "--game", "nbr", "--behavior", "ideal"])
        .env("IGAMES_SCENARIOS", "2")
        .env("IGAMES_EPOCHS", "5")
        .output()
        .unwrap();
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["summary"]["scenario_count"], 2);
    assert!(cwd.path().join("igames-out/scenarios.csv").exists());
}

#[test]
fn bench_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let o = igames(&["bench", "--players", "2", "--scenarios", "2", "--epochs", "5", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(dir.path().join("bench.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 5);
}
