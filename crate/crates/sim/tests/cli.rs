use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hdr-sim"))
}

const SMALL: &str = r#"
snr_grid_db = [0.0, 10.0]
n_trials = 6
seed = 3
n_grid = [[4, 4]]

[dims]
m_y = 2
m_z = 2
q_y = 2
q_z = 2
n_y = 2
n_z = 2
t = 4
k = 4
"#;

#[test]
fn nmse_writes_csv_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.toml");
    std::fs::write(&cfg, SMALL).unwrap();
    let out = dir.path().join("nmse.csv");
    let status = bin().args(["nmse", "--config"]).arg(&cfg).arg("--out").arg(&out).status().unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("method,snr_db,metric,stat,value,n_trials,config_hash\n"));
    assert!(!text.contains('\r'));
    // 3 estimators x 2 SNRs x 2 stats + header
    assert_eq!(text.lines().count(), 13);

    // same seed, different thread count: identical bytes
    let out2 = dir.path().join("nmse2.csv");
    let status = bin().args(["nmse", "--threads", "3", "--config"]).arg(&cfg).arg("--out").arg(&out2).status().unwrap();
    assert!(status.success());
    assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(&out2).unwrap());
}

#[test]
fn overrides_and_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.toml");
    std::fs::write(&cfg, SMALL).unwrap();
    let run = |seed: &str| {
        let o = bin().args(["se", "--trials", "2", "--seed", seed, "--config"]).arg(&cfg).output().unwrap();
        assert!(o.status.success());
        String::from_utf8(o.stdout).unwrap()
    };
    let a = run("1");
    assert!(a.lines().skip(1).all(|l| l.split(',').nth(5) == Some("2")));
    assert!(a.contains("Ideal,"));
    assert_ne!(a, run("2"));
}

#[test]
fn complexity_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.toml");
    std::fs::write(&cfg, SMALL).unwrap();
    let o = bin().args(["complexity", "--config"]).arg(&cfg).output().unwrap();
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("KRF,,flops_analytic,N=16,")));
    assert!(text.lines().any(|l| l.starts_with("HDR,,flops_measured,N=16,")));
}

#[test]
fn validate_reports_the_design() {
    let o = bin().arg("validate").output().unwrap();
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("config_hash"));
    assert!(text.contains("M = 16, Q = 16, N = 16, T = 16, K = 16"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, SMALL.replace("t = 4", "t = 1")).unwrap();
    let o = bin().args(["validate", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("infeasible"));

    let o = bin().args(["nmse", "--config"]).arg(dir.path().join("missing.toml")).output().unwrap();
    assert_eq!(o.status.code(), Some(1));

    let cfg = dir.path().join("ok.toml");
    std::fs::write(&cfg, SMALL).unwrap();
    let o = bin()
        .args(["nmse", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path().join("no/such/dir/x.csv"))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));

    let o = bin().args(["nmse", "--trials", "0"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}
