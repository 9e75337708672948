use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn spacetime(args: &[&str], out_dir: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_spacetime"));
    cmd.args(args).env_remove("SPACETIME_OUT_DIR");
    if let Some(dir) = out_dir {
        cmd.env("SPACETIME_OUT_DIR", dir);
    }
    cmd.output().unwrap()
}

fn stdout(out: &Output) -> &str {
    std::str::from_utf8(&out.stdout).unwrap()
}

fn golden(name: &str) -> String {
    fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

#[test]
fn experiments_match_golden_files() {
    let out = spacetime(&["time-dilation", "--beta", "0.5"], None);
    assert!(out.status.success());
    assert_eq!(stdout(&out), golden("dilation_beta05.csv"));

    let out = spacetime(&["constant-force", "--ti", "1", "--mu", "1"], None);
    assert!(out.status.success());
    assert_eq!(stdout(&out), golden("force_ti1_mu1.csv"));
}

#[test]
fn one_tick_trace_matches_golden_file() {
    let out = spacetime(&["trace", "--beta", "0.5", "--ticks", "1"], None);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text, golden("trace_beta05_1tick.csv"));
    // cell 5 reads its first local tick at node 12, and the origin cell carries
    // the particle over nodes 1..=5
    assert!(text.lines().any(|l| l == "12,local-tick,5,,,,,"));
    let moves: Vec<_> = text.lines().filter(|l| l.contains(",move,")).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(moves, ["1", "2", "3", "4", "5"]);
}

#[test]
fn zero_intensity_leaves_the_particle_at_rest() {
    let out = spacetime(&["constant-force", "--ti", "0", "--ticks", "3"], None);
    assert!(out.status.success());
    for line in stdout(&out).lines().skip(1) {
        assert!(line.ends_with(",0.0,0.0,0.0,0.0,1.0,1.0,0.0"), "{line}");
    }
}

#[test]
fn sync_table_spot_value() {
    let out = spacetime(&["sync-table", "--sigma-max", "10", "--rho-max", "5"], None);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("sigma,rho,marked"));
    assert!(text.lines().any(|l| l == "10,5,12"));
    assert_eq!(text.lines().count(), 1 + 11 * 6);
}

#[test]
fn exit_codes() {
    assert_eq!(spacetime(&["--help"], None).status.code(), Some(0));
    assert_eq!(spacetime(&["bogus"], None).status.code(), Some(1));
    assert_eq!(spacetime(&["time-dilation", "--beta", "2"], None).status.code(), Some(1));
    assert_eq!(spacetime(&["time-dilation", "--beta", "0.55"], None).status.code(), Some(1));
    assert_eq!(spacetime(&["constant-force", "--ti", "1", "--mu", "0"], None).status.code(), Some(1));
    assert_eq!(spacetime(&["time-dilation", "--beta", "0.5", "--cells", "3"], None).status.code(), Some(2));
    let ok = spacetime(&["time-dilation", "--beta", "2", "--allow-superluminal", "--ticks", "2"], None);
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn failed_runs_write_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("rows.csv");
    let plot = dir.path().join("plot.txt");
    let out = spacetime(
        &[
            "time-dilation",
            "--beta",
            "0.5",
            "--cells",
            "3",
            "--out",
            csv.to_str().unwrap(),
            "--plot",
            plot.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(!csv.exists() && !plot.exists());
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn relative_outputs_land_in_the_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = spacetime(&["time-dilation", "--beta", "0.5", "--out", "rows.csv", "--plot", "worldline.txt"], Some(dir.path()));
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(fs::read_to_string(dir.path().join("rows.csv")).unwrap(), golden("dilation_beta05.csv"));
    let plot = fs::read_to_string(dir.path().join("worldline.txt")).unwrap();
    assert_eq!(plot.lines().next(), Some("0.5 1.2"));
    assert_eq!(plot.lines().count(), 7);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# one-act force from rest\nexperiment=constant-force\nti=1, mu=1\nticks=3\n").unwrap();
    let cfg = cfg.to_str().unwrap();

    let out = spacetime(&["--config", cfg, "constant-force"], None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let expected: String = golden("force_ti1_mu1.csv").lines().take(5).map(|l| format!("{l}\n")).collect();
    assert_eq!(stdout(&out), expected);

    let out = spacetime(&["--config", cfg, "constant-force", "--ticks", "8"], None);
    assert_eq!(stdout(&out), golden("force_ti1_mu1.csv"));

    fs::write(dir.path().join("bad.cfg"), "experiment=constant-force\nti=1\ncolour=red\n").unwrap();
    let out = spacetime(&["--config", dir.path().join("bad.cfg").to_str().unwrap(), "constant-force"], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("colour"));
}
