use std::path::Path;
use std::process::Command;

const SMALL: &str = r#"
preset = "gross-neveu"
length = 32.0
final_time = 0.25
deltas = [0.125, 0.0625, 0.03125]
reference_points = 256
reference_step = 0.0009765625
reference_tolerance = 1e-6
snapshots = 2
"#;

fn run(args: &[&str], config: &str, dir: &Path) -> (i32, String) {
    let path = dir.join("run.toml");
    std::fs::write(&path, config).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_nlqw"))
        .args(args)
        .arg(&path)
        .arg("--out")
        .arg(dir.join("out"))
        .output()
        .unwrap();
    let text = String::from_utf8_lossy(&out.stdout).into_owned() + &String::from_utf8_lossy(&out.stderr);
    (out.status.code().unwrap(), text)
}

#[test]
fn converge_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run(&["converge"], SMALL, dir.path());
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("slope"));
    let csv = std::fs::read_to_string(dir.path().join("out/convergence.csv")).unwrap();
    assert_eq!(csv.lines().count(), 4);
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("out/summary.json")).unwrap()).unwrap();
    assert!(summary["slope"].as_f64().is_some(), "{summary}");
}

#[test]
fn format_flag_limits_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run(&["converge", "--format", "csv"], SMALL, dir.path());
    assert_eq!(code, 0, "{text}");
    assert!(dir.path().join("out/convergence.csv").exists());
    assert!(!dir.path().join("out/summary.json").exists());
}

#[test]
fn simulate_writes_snapshots() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run(&["simulate"], SMALL, dir.path());
    assert_eq!(code, 0, "{text}");
    let names: Vec<String> = std::fs::read_dir(dir.path().join("out"))
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    assert_eq!(names.len(), 6, "{names:?}");
    let file = std::fs::File::open(dir.path().join("out/walk_00008.dat")).unwrap();
    let u = nlqw::spectral::read_snapshot(std::io::BufReader::new(file)).unwrap();
    assert_eq!(u.grid().points(), 1024);
}

#[test]
fn check_passes() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run(&["check", "--seed", "5"], "preset = \"thirring\"", dir.path());
    assert_eq!(code, 0, "{text}");
    assert!(!text.contains("FAIL"));
    assert!(dir.path().join("out/invariants.csv").exists());
}

#[test]
fn configuration_errors_exit_with_four() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run(&["converge"], &format!("{SMALL}sobolev = 0\n"), dir.path());
    assert_eq!(code, 4, "{text}");
    let (code, _) = run(&["converge"], "preset = \"free\"\nbogus = true", dir.path());
    assert_eq!(code, 4);
}

#[test]
fn unverified_reference_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let config = SMALL.replace("reference_tolerance = 1e-6", "reference_tolerance = 1e-9");
    let (code, text) = run(&["converge", "--scheme", "lie"], &config, dir.path());
    assert_eq!(code, 3, "{text}");
    assert!(text.contains("verified") || text.contains("halving"), "{text}");
}
