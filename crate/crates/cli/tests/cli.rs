use std::path::PathBuf;
use std::process::Command as Process;

use alternant_cli::{
    parse_jobspec, parse_records, render_records, run, Command, DeltaRange, Record, RunOptions,
};

fn spec_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("specs")
        .join(name)
}

fn spec_text(name: &str) -> String {
    std::fs::read_to_string(spec_path(name)).unwrap()
}

fn subcode_params(r: &Record) -> (Option<u64>, usize, usize, usize, usize) {
    match r {
        Record::Subcode {
            delta,
            k_prime,
            d_prime,
            s,
            t,
            ..
        } => (*delta, *k_prime, *d_prime, *s, *t),
        other => panic!("expected a subcode record, got {other:?}"),
    }
}

fn binary() -> Process {
    Process::new(env!("CARGO_BIN_EXE_alternant"))
}

#[test]
fn cyclic_length_must_divide_group_order() {
    let text = spec_text("f8_cyclic.toml").replace("n = 7", "n = 6");
    let job = parse_jobspec(&text).unwrap();
    let err = run(&job, Command::Extract, &RunOptions::default()).unwrap_err();
    assert!(
        err.to_string().contains("n must be a divisor of Q-1"),
        "{err}"
    );
    assert_eq!(err.exit_code(), 1);
}

#[test]
fn duplicate_locators_are_rejected() {
    let text =
        "p = 2\nm = 3\next_poly = [1, 1, 0, 1]\nk = 2\nlocators = [\"a^1\", \"a^8\", \"a^3\"]\n";
    let job = parse_jobspec(text).unwrap();
    let err = run(&job, Command::Construct, &RunOptions::default()).unwrap_err();
    assert!(err.to_string().contains("coincide"), "{err}");
}

#[test]
fn extract_delta_four() {
    let job = parse_jobspec(&spec_text("f8_delta4.toml")).unwrap();
    let out = run(&job, Command::Extract, &RunOptions::default()).unwrap();
    assert_eq!(subcode_params(&out.records[0]), (Some(4), 1, 7, 3, 1));
}

#[test]
fn sweep_reproduces_worked_example() {
    let job = parse_jobspec(&spec_text("f8_cyclic.toml")).unwrap();
    let opts = RunOptions {
        delta_range: Some(DeltaRange { start: 0, end: 6 }),
        ..Default::default()
    };
    let out = run(&job, Command::Sweep, &opts).unwrap();
    let rows: Vec<_> = out.records.iter().map(subcode_params).collect();
    assert_eq!(rows.len(), 7);
    let by_delta = |d: u64| rows.iter().find(|r| r.0 == Some(d)).map(|r| (r.1, r.2));
    assert_eq!(by_delta(0), Some((4, 3)));
    assert_eq!(by_delta(1), Some((3, 4)));
    assert_eq!(by_delta(4), Some((1, 7)));
    let deltas: Vec<_> = rows.iter().map(|r| r.0.unwrap()).collect();
    assert_eq!(deltas, (0..7).collect::<Vec<_>>());
}

#[test]
fn sweep_requires_cyclic_form() {
    let job = parse_jobspec(&spec_text("f16_over_f4.toml")).unwrap();
    let err = run(&job, Command::Sweep, &RunOptions::default()).unwrap_err();
    assert_eq!(err.exit_code(), 1);
}

#[test]
fn verify_passes_on_sample_specs() {
    for name in ["f8_cyclic.toml", "f8_delta4.toml", "f16_over_f4.toml"] {
        let job = parse_jobspec(&spec_text(name)).unwrap();
        let out = run(&job, Command::Verify, &RunOptions::default()).unwrap();
        assert!(!out.verification_failed, "{name}: {:?}", out.records);
        assert!(out
            .records
            .iter()
            .any(|r| matches!(r, Record::Check { .. })));
    }
}

#[test]
fn verify_refuses_over_limit() {
    let job = parse_jobspec(&spec_text("f8_cyclic.toml")).unwrap();
    let opts = RunOptions {
        limit: Some(100),
        ..Default::default()
    };
    let err = run(&job, Command::Verify, &opts).unwrap_err();
    assert_eq!(err.exit_code(), 3);
}

#[test]
fn nested_reports_frontier_and_chain() {
    let job = parse_jobspec(&spec_text("f8_cyclic.toml")).unwrap();
    let out = run(&job, Command::Nested, &RunOptions::default()).unwrap();
    let frontier: Vec<(usize, usize)> = out
        .records
        .iter()
        .filter_map(|r| match r {
            Record::Selection {
                kind,
                k_prime,
                d_prime,
                ..
            } if kind == "frontier" => Some((*k_prime, *d_prime)),
            _ => None,
        })
        .collect();
    assert!(frontier.contains(&(4, 3)));
    assert!(frontier.contains(&(3, 4)));
    let all = run(
        &job,
        Command::Nested,
        &RunOptions {
            all: true,
            ..Default::default()
        },
    )
    .unwrap();
    // 7 basis rows give 28 contiguous ranges
    assert_eq!(all.records.len(), 1 + 28);
}

#[test]
fn records_round_trip_and_are_deterministic() {
    let job = parse_jobspec(&spec_text("f8_cyclic.toml")).unwrap();
    let opts = RunOptions {
        dump_matrices: true,
        ..Default::default()
    };
    for command in [
        Command::Construct,
        Command::Extract,
        Command::Nested,
        Command::Sweep,
    ] {
        let first = run(&job, command, &opts).unwrap();
        let text = render_records(&first.records);
        assert_eq!(parse_records(&text).unwrap(), first.records);
        let second = run(&job, command, &opts).unwrap();
        assert_eq!(render_records(&second.records), text);
    }
}

#[test]
fn binary_exit_codes_and_output() {
    let out = binary()
        .args(["run", "--spec"])
        .arg(spec_path("f8_delta4.toml"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let records = parse_records(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(subcode_params(&records[0]), (Some(4), 1, 7, 3, 1));

    let out = binary()
        .args(["verify", "--limit", "10", "--spec"])
        .arg(spec_path("f8_cyclic.toml"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, spec_text("f8_cyclic.toml").replace("n = 7", "n = 6")).unwrap();
    let out = binary()
        .args(["extract", "--spec"])
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("n must be a divisor of Q-1"), "{stderr}");
}

#[test]
fn binary_sweep_is_byte_identical_across_runs() {
    let run_once = || {
        binary()
            .args([
                "sweep",
                "--format",
                "records",
                "--delta-range",
                "0..6",
                "--spec",
            ])
            .arg(spec_path("f8_cyclic.toml"))
            .output()
            .unwrap()
            .stdout
    };
    let a = run_once();
    assert!(!a.is_empty());
    assert_eq!(a, run_once());
}
