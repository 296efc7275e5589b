use langparam::sweep::{run_sweep, run_sweep_with, Check, SweepConfig, Verdict};

fn config(seed: u64, count: usize) -> SweepConfig {
    SweepConfig {
        primes: vec![2, 3, 5, 7],
        max_dim: 6,
        count,
        seed,
        ..SweepConfig::default()
    }
}

#[test]
fn replay_is_byte_identical() {
    let a = run_sweep(&config(42, 20)).unwrap().to_jsonl();
    let b = run_sweep(&config(42, 20)).unwrap().to_jsonl();
    assert_eq!(a, b);
    let c = run_sweep(&config(43, 20)).unwrap().to_jsonl();
    assert_ne!(a, c);
}

#[test]
fn parallel_matches_sequential() {
    let cfg = config(7, 15);
    assert_eq!(
        run_sweep_with(&cfg, true).unwrap(),
        run_sweep_with(&cfg, false).unwrap()
    );
}

#[test]
fn report_shape() {
    let report = run_sweep(&config(5, 10)).unwrap();
    assert!(
        report.all_pass(),
        "{:#?}",
        report.records.iter().find(|r| r.verdict != Verdict::Pass)
    );
    let text = report.to_jsonl();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 10 * Check::ALL.len() + 1);
    let last: serde_json::Value = serde_json::from_str(lines.last().unwrap()).unwrap();
    assert_eq!(last["summary"]["total"], 90);
    let first: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    for key in ["index", "p", "check", "inputs", "verdict", "witness"] {
        assert!(first.get(key).is_some(), "{key}");
    }
}

#[test]
fn adding_checks_does_not_move_other_items() {
    let mut only = config(9, 8);
    only.checks = vec![Check::Prasad];
    let mut both = config(9, 8);
    both.checks = vec![Check::Lambda, Check::Prasad];
    let a = run_sweep(&only).unwrap();
    let b = run_sweep(&both).unwrap();
    let b_prasad: Vec<_> = b
        .records
        .into_iter()
        .filter(|r| r.check == "prasad")
        .collect();
    assert_eq!(a.records, b_prasad);
}

#[test]
fn output_file_holds_the_report() {
    let path = std::env::temp_dir().join(format!("langparam-sweep-{}.jsonl", std::process::id()));
    let mut cfg = config(3, 4);
    cfg.output = Some(path.clone());
    let report = run_sweep(&cfg).unwrap();
    assert_eq!(std::fs::read_to_string(&path).unwrap(), report.to_jsonl());
    std::fs::remove_file(path).unwrap();
}
