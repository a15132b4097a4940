use std::path::Path;
use std::process::{Command, Output};

fn mmfd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mmfd")).args(args).output().expect("spawn mmfd")
}

fn rows(path: &Path) -> Vec<Vec<String>> {
    let text = std::fs::read_to_string(path).unwrap();
    text.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn mean_sum(rows: &[Vec<String>], strategy: &str, snr: f64) -> f64 {
    rows.iter()
        .find(|r| r[0] == strategy && r[1].parse::<f64>().unwrap() == snr)
        .map(|r| r[5].parse().unwrap())
        .unwrap()
}

#[test]
fn single_ideal_fd_record_sums_both_links() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let o = mmfd(&["--trials", "1", "--snr", "0", "--strategies", "ideal_fd", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r = rows(&out);
    assert_eq!(r.len(), 1);
    let (ki, ij, sum): (f64, f64, f64) = (r[0][3].parse().unwrap(), r[0][4].parse().unwrap(), r[0][5].parse().unwrap());
    assert!((sum - (ki + ij)).abs() <= 1e-9);
    assert!(ki > 0.0 && ij > 0.0);
    assert!(dir.path().join("r.means.csv").exists());
}

#[test]
fn same_seed_gives_identical_csv() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for (p, threads) in [(&a, "1"), (&b, "3")] {
        let o = mmfd(&["--trials", "4", "--seed", "11", "--threads", threads, "--out", p.to_str().unwrap()]);
        assert!(o.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn fig2_case_a_beats_eigen_only() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig2.csv");
    let o = mmfd(&["--preset", "fig2", "--trials", "20", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert!(stdout.contains("case_a") && stdout.contains("ideal_fd"));
    let means = rows(&dir.path().join("fig2.means.csv"));
    for snr in [-10.0, -5.0, 0.0, 5.0, 10.0, 15.0, 20.0] {
        assert!(mean_sum(&means, "case_a", snr) >= mean_sum(&means, "eigen_only", snr));
    }
}

#[test]
fn json_output_mirrors_records() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = mmfd(&["--trials", "2", "--snr", "5", "--strategies", "hd,case_a", "--format", "json",
                   "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.trim_start().starts_with('['));
    assert_eq!(text.matches("\"se_sum\"").count(), 4);
    assert!(dir.path().join("r.means.json").exists());
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("s.toml");
    std::fs::write(&cfg, "nt = 8\nnr = 8\nns = 2\nnrf = 4\ntrials = 3\nstrategies = [\"case_b\"]\n").unwrap();
    let out = dir.path().join("r.csv");
    let o = mmfd(&["--config", cfg.to_str().unwrap(), "--trials", "1", "--snr", "0", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(rows(&out).len(), 1);
}

#[test]
fn channel_dump_has_three_matrices_per_trial() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("ch.csv");
    let o = mmfd(&["--nt", "4", "--nr", "4", "--ns", "1", "--nrf", "2", "--trials", "2", "--snr", "0",
                   "--dump-channels", dump.to_str().unwrap(), "--out", dir.path().join("r.csv").to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&dump).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines[0].starts_with("0,desired,4,4,"));
    assert!(lines[2].starts_with("0,si_composite,4,4,"));
    assert_eq!(lines[0].split(',').count(), 4 + 2 * 16);
}

#[test]
fn invalid_config_exits_with_2() {
    let o = mmfd(&["--ns", "4", "--nt", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ns ≤ min(nt,nr)"));

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "bogus_key = 1\n").unwrap();
    assert_eq!(mmfd(&["--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(mmfd(&["--strategies", "nonsense"]).status.code(), Some(2));
}

#[test]
fn unknown_flag_is_rejected() {
    assert_eq!(mmfd(&["--frobnicate"]).status.code(), Some(2));
    assert_eq!(mmfd(&["--preset", "fig2", "--config", "x.toml"]).status.code(), Some(2));
}

#[test]
fn unwritable_output_exits_with_4() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("missing").join("r.csv");
    let o = mmfd(&["--trials", "1", "--snr", "0", "--strategies", "hd", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
}
