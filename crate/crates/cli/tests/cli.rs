use std::fs;
use std::process::{Command, Output};

fn cobdist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cobdist"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn bounds_prints_a_passing_report() {
    let o = cobdist(&["bounds", "--link", "T(3,12)", "--k", "4", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("lower     4"), "{s}");
    assert!(s.contains("upper     8"), "{s}");
    assert!(s.contains("pass"));
}

#[test]
fn bounds_json_parses() {
    let o = cobdist(&["bounds", "--link", "a^2b^3ab^2", "--k", "3", "--n", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.trim_start().starts_with('{') && s.contains("\"lower\""), "{s}");
}

#[test]
fn bad_input_is_a_usage_error() {
    assert_eq!(cobdist(&["bounds", "--link", "T(3,", "--k", "4", "--n", "1"]).status.code(), Some(2));
    assert_eq!(cobdist(&["bounds", "--link", "a^4", "--k", "4", "--n", "1"]).status.code(), Some(2));
    assert_eq!(cobdist(&["verify", "--theorem", "T9"]).status.code(), Some(2));
    assert_eq!(cobdist(&["signature", "--link", "T(2,3)", "--grid", "1/4:0:1/2"]).status.code(), Some(2));
}

#[test]
fn reduce_then_check() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let p = path.to_str().unwrap();
    let o = cobdist(&["reduce", "--braid", "(ab)^30", "--k", "5", "-o", p]);
    assert_eq!(o.status.code(), Some(0));
    let o = cobdist(&["check", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("valid"));

    // claiming a different initial word breaks the replay
    let text = fs::read_to_string(&path).unwrap();
    let forged = text.replacen("\"initial\": \"ab", "\"initial\": \"abab", 1);
    assert_ne!(text, forged, "certificate should name its initial word");
    fs::write(&path, forged).unwrap();
    let o = cobdist(&["check", p]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn check_missing_file_is_a_usage_error() {
    assert_eq!(cobdist(&["check", "/nonexistent/cert.json"]).status.code(), Some(2));
}

#[test]
fn signature_sweep_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sig.csv");
    let o = cobdist(&["signature", "--link", "T(2,5)", "--grid", "1/10:1/10:9/10", "--csv", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let csv = fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("theta,sigma,nullity,side,evaluated_at"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 9);
    assert!(rows[4].starts_with("1/2,4,"), "{}", rows[4]);
}

#[test]
fn verify_small_grid() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t2.csv");
    let o = cobdist(&[
        "verify",
        "--theorem",
        "T2",
        "--grid",
        "k=4..=6,m=1..=20,n=0..=10",
        "--csv",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failures"));
    assert!(fs::read_to_string(&path).unwrap().lines().count() > 1);
}

#[test]
fn theta_outside_the_open_interval_is_rejected() {
    let o = cobdist(&["signature", "--link", "T(2,3)", "--grid", "0:1/2:1/2"]);
    assert_eq!(o.status.code(), Some(2));
}
