use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gridups")).args(args).env("GRIDUPS_THREADS", "2").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn temp_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn validate_reports_shape() {
    let o = run(&["validate", "corpus:theta3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "ok n=3 mode=graph V=2 l=n/a max_m=2");
    let o = run(&["validate", "corpus:unknot_trefoil"]);
    assert!(stdout(&o).contains("l=2"));
}

#[test]
fn single_t_and_reflection() {
    let o = run(&["upsilon", "corpus:trefoil5", "--t", "1/2"]);
    assert_eq!(stdout(&o).trim(), "1/2");
    let o = run(&["upsilon", "corpus:trefoil5", "--t", "3/2"]);
    assert_eq!(stdout(&o).trim(), "1/2");
    let o = run(&["upsilon", "corpus:theta3", "--t", "1", "--format", "json"]);
    let j: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(j["upsilon"], "-1/2");
    assert_eq!(j["t"], "1/1");
}

#[test]
fn homology_listing() {
    let o = run(&["upsilon", "corpus:unknot2", "--t", "1/2", "--homology"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("0"));
    assert!(text.lines().count() > 1);
}

#[test]
fn profile_text_csv_and_plot() {
    let o = run(&["upsilon", "corpus:trefoil5", "--profile", "4"]);
    let text = stdout(&o);
    assert!(text.contains("1/2 1/2\n"));
    assert!(text.contains("# linear=true"));
    assert!(text.contains("# slope_at_0=1"));
    let o = run(&["upsilon", "corpus:figure8", "--profile", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), "t,upsilon\n0/1,0\n1/2,0\n1/1,0\n");
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("p.svg");
    let o = run(&["upsilon", "corpus:theta3", "--profile", "4", "--plot", svg.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<polyline"));
}

#[test]
fn exit_codes() {
    let bad = temp_file("n=2 mode=link\nX,X\nO*,O\n");
    assert_eq!(run(&["validate", bad.path().to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(run(&["validate", "/nonexistent/file.grid"]).status.code(), Some(1));
    assert_eq!(run(&["upsilon", "corpus:theta3", "--t", "3/2"]).status.code(), Some(2));
    assert_eq!(run(&["upsilon", "corpus:trefoil5", "--t", "5/2"]).status.code(), Some(2));
    let o = run(&["verify", "cobordism", "corpus:trefoil5", "corpus:unknot2", "--saddles", "2", "--genus", "0"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_commands() {
    let moves = temp_file("stab 0 2\n");
    let o = run(&["verify", "invariance", "corpus:trefoil5", "corpus:trefoil6", "--moves", moves.path().to_str().unwrap(), "--q", "3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let j: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(j["pass"], true);
    assert_eq!(j["records"].as_array().unwrap().len(), 8);

    let o = run(&["verify", "crossing", "corpus:unknot2", "corpus:trefoil5"]);
    assert!(o.status.success());

    let o = run(&["verify", "cobordism", "corpus:trefoil5", "corpus:unknot2", "--saddles", "2"]);
    assert!(o.status.success());
    let j: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(j["info"]["genus"], "1");

    let o = run(&["verify", "cobordism", "corpus:unknot2", "corpus:unknot2", "--saddles", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn apply_and_corpus() {
    let moves = temp_file("stab 0 0\n");
    let o = run(&["apply", "corpus:unknot1", "--moves", moves.path().to_str().unwrap()]);
    let want = run(&["corpus", "unknot2"]);
    assert_eq!(stdout(&o), stdout(&want));
    let list = stdout(&run(&["corpus"]));
    assert!(list.lines().any(|l| l == "theta_wedge"));
    assert_eq!(run(&["corpus", "nope"]).status.code(), Some(1));
}
