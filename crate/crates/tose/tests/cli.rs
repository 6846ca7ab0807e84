//! End-to-end tests of the benchmark binary: output formats,
//! determinism, flag/config-file precedence, log bases, and the
//! documented exit codes (0 success, 1 invalid configuration,
//! 2 numerical failure, 3 I/O failure).

use std::fs;
use std::process::{Command, Output};
use tose::{parse_csv, parse_scenario, Method, CSV_HEADER};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tose"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no exit code")
}

/// Small-network manifest keeping every run under a second.
fn small_config(dir: &std::path::Path) -> std::path::PathBuf {
    let path = dir.join("small.cfg");
    fs::write(&path, "num_bs = 60\nnum_clusters = 3\ntrials = 5\n").expect("write config");
    path
}

#[test]
fn help_and_version_exit_zero() {
    let help = run(&["--help"]);
    assert_eq!(code(&help), 0);
    let text = stdout_of(&help);
    for sub in ["accuracy", "scaling", "convergence", "gen-scenario"] {
        assert!(text.contains(sub), "help does not mention `{sub}`");
    }
    assert_eq!(code(&run(&["--version"])), 0);
    assert_eq!(code(&run(&["accuracy", "--help"])), 0);
}

#[test]
fn unknown_flag_exits_one() {
    let out = run(&["accuracy", "--no-such-flag"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn invalid_parameter_exits_one() {
    let out = run(&["accuracy", "--beta=-3"]);
    assert_eq!(code(&out), 1);
    assert!(stderr_of(&out).contains("beta"), "error names the parameter");

    let out = run(&["accuracy", "--area", "hexagon"]);
    assert_eq!(code(&out), 1);

    let out = run(&["scaling", "--jm-grid", "32,16"]);
    assert_eq!(code(&out), 1, "descending grid is invalid");

    let out = run(&["accuracy", "--log-base", "10"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn degenerate_spectrum_exits_two() {
    let dir = tempfile::tempdir().expect("tempdir");
    let cfg = dir.path().join("degen.cfg");
    // Vanishing transmit power against a unit noise floor drives every
    // normalized gain toward zero, so no trial can lift a spike above
    // the bulk edge.
    fs::write(
        &cfg,
        "num_bs = 60\nnum_clusters = 3\ntrials = 3\np = 1e-30\nn0 = 1.0\n",
    )
    .expect("write config");
    let out = run(&["accuracy", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr_of(&out).contains("degenerate"));
}

#[test]
fn io_failures_exit_three() {
    let out = run(&["accuracy", "--config", "/no/such/dir/config.cfg"]);
    assert_eq!(code(&out), 3);

    let dir = tempfile::tempdir().expect("tempdir");
    let cfg = small_config(dir.path());
    let out = run(&[
        "gen-scenario",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        "/no/such/dir/scenario.txt",
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn accuracy_csv_is_well_formed_and_deterministic() {
    let dir = tempfile::tempdir().expect("tempdir");
    let cfg = small_config(dir.path());
    let args = [
        "accuracy",
        "--config",
        cfg.to_str().unwrap(),
        "--seed",
        "5",
    ];

    let first = run(&args);
    assert_eq!(code(&first), 0, "stderr: {}", stderr_of(&first));
    let text = stdout_of(&first);
    assert!(text.starts_with(CSV_HEADER));

    let records = parse_csv(&text).expect("well-formed CSV");
    assert_eq!(records.len(), 2);
    assert_eq!(records[0].method, Method::ExactMatrixProd);
    assert_eq!(records[1].method, Method::Tose);
    assert_eq!(records[0].rel_error, None);
    assert!(records[1].rel_error.is_some());
    assert_eq!(records[0].seed, 5);
    assert!(records.iter().all(|r| r.wall_time_s > 0.0));

    // Everything except wall-clock time is a pure function of the seed.
    let second = parse_csv(&stdout_of(&run(&args))).expect("well-formed CSV");
    for (a, b) in records.iter().zip(&second) {
        assert_eq!(a.method, b.method);
        assert_eq!((a.j_m, a.k_m, a.trials, a.seed), (b.j_m, b.k_m, b.trials, b.seed));
        assert_eq!(a.beta.to_bits(), b.beta.to_bits());
        assert_eq!(a.capacity_mean.to_bits(), b.capacity_mean.to_bits());
        assert_eq!(a.capacity_std.to_bits(), b.capacity_std.to_bits());
        assert_eq!(a.rel_error, b.rel_error);
    }
}

#[test]
fn out_flag_writes_the_same_csv_to_disk() {
    let dir = tempfile::tempdir().expect("tempdir");
    let cfg = small_config(dir.path());
    let out_path = dir.path().join("records.csv");

    let piped = run(&["accuracy", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&piped), 0);

    let filed = run(&[
        "accuracy",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&filed), 0);
    assert!(stdout_of(&filed).is_empty(), "--out suppresses stdout CSV");

    let from_stdout = parse_csv(&stdout_of(&piped)).expect("stdout CSV");
    let from_file =
        parse_csv(&fs::read_to_string(&out_path).expect("read csv")).expect("file CSV");
    assert_eq!(from_stdout.len(), from_file.len());
    for (a, b) in from_stdout.iter().zip(&from_file) {
        assert_eq!(a.capacity_mean.to_bits(), b.capacity_mean.to_bits());
    }
}

#[test]
fn scaling_emits_two_records_per_grid_point() {
    for extra in [&[][..], &["--include-trace"][..]] {
        let mut args = vec!["scaling", "--jm-grid", "16,32"];
        args.extend_from_slice(extra);
        let out = run(&args);
        assert_eq!(code(&out), 0, "stderr: {}", stderr_of(&out));
        let records = parse_csv(&stdout_of(&out)).expect("well-formed CSV");
        assert_eq!(records.len(), 4);
        assert_eq!(records[0].j_m, 16);
        assert_eq!(records[2].j_m, 32);
        assert!(records.iter().all(|r| r.wall_time_s > 0.0));
        assert!(records
            .iter()
            .all(|r| r.k_m == (0.5 * r.j_m as f64).round() as usize));
    }
}

#[test]
fn convergence_runs_a_small_grid() {
    let out = run(&["convergence", "--m-grid", "2,3", "--trials", "5"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_of(&out));
    let records = parse_csv(&stdout_of(&out)).expect("well-formed CSV");
    assert_eq!(records.len(), 4);
    assert_eq!(records[0].method, Method::ExactHadamard);
    assert_eq!(records[1].method, Method::Tose);
    // J = 100 M keeps the per-cluster size near 100 at every grid point.
    assert!(records.iter().all(|r| r.j_m >= 50 && r.j_m <= 200));
}

#[test]
fn gen_scenario_dump_parses_and_is_deterministic() {
    let dir = tempfile::tempdir().expect("tempdir");
    let cfg = small_config(dir.path());
    let args = [
        "gen-scenario",
        "--config",
        cfg.to_str().unwrap(),
        "--beta",
        "0.5",
    ];

    let out = run(&args);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_of(&out));
    let dump = stdout_of(&out);

    let (scenario, config) = parse_scenario(&dump).expect("dump parses");
    assert_eq!(scenario.bs_positions.len(), 60);
    assert_eq!(scenario.user_positions.len(), 30);
    assert_eq!(scenario.num_clusters, 3);
    assert_eq!(config.num_bs, 60);

    let again = stdout_of(&run(&args));
    assert_eq!(dump, again, "same seed reproduces the dump byte for byte");
}

#[test]
fn log_base_two_rescales_capacities() {
    let dir = tempfile::tempdir().expect("tempdir");
    let cfg = small_config(dir.path());
    let base = |log_base: &str| {
        let out = run(&[
            "accuracy",
            "--config",
            cfg.to_str().unwrap(),
            "--log-base",
            log_base,
        ]);
        assert_eq!(code(&out), 0);
        parse_csv(&stdout_of(&out)).expect("well-formed CSV")
    };
    let nats = base("e");
    let bits = base("2");
    for (n, b) in nats.iter().zip(&bits) {
        let want = n.capacity_mean / std::f64::consts::LN_2;
        assert_eq!(b.capacity_mean.to_bits(), want.to_bits());
        let want_std = n.capacity_std / std::f64::consts::LN_2;
        assert_eq!(b.capacity_std.to_bits(), want_std.to_bits());
    }
}

#[test]
fn flags_override_config_file_values() {
    let dir = tempfile::tempdir().expect("tempdir");
    let cfg = dir.path().join("override.cfg");
    fs::write(
        &cfg,
        "num_bs = 60\nnum_clusters = 3\ntrials = 5\nbeta = 8\nseed = 1\n",
    )
    .expect("write config");

    let out = run(&[
        "accuracy",
        "--config",
        cfg.to_str().unwrap(),
        "--beta",
        "0.5",
        "--seed",
        "9",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_of(&out));
    let records = parse_csv(&stdout_of(&out)).expect("well-formed CSV");
    assert_eq!(records[0].beta, 0.5);
    assert_eq!(records[0].seed, 9);
}

#[test]
fn explicit_cluster_index_is_respected() {
    let dir = tempfile::tempdir().expect("tempdir");
    let cfg = small_config(dir.path());
    let out = run(&[
        "accuracy",
        "--config",
        cfg.to_str().unwrap(),
        "--cluster",
        "2",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_of(&out));

    let out = run(&[
        "accuracy",
        "--config",
        cfg.to_str().unwrap(),
        "--cluster",
        "99",
    ]);
    assert_eq!(code(&out), 1, "out-of-range cluster index is invalid");
}

#[test]
fn redraw_all_changes_the_estimate() {
    let dir = tempfile::tempdir().expect("tempdir");
    let cfg = small_config(dir.path());
    let mean_with = |mode: &str| {
        let out = run(&[
            "accuracy",
            "--config",
            cfg.to_str().unwrap(),
            "--redraw",
            mode,
        ]);
        assert_eq!(code(&out), 0, "stderr: {}", stderr_of(&out));
        parse_csv(&stdout_of(&out)).expect("well-formed CSV")[0].capacity_mean
    };
    assert_ne!(
        mean_with("fading"),
        mean_with("all"),
        "re-drawn geometry must change the capacity average"
    );
}
