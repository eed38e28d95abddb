//! End-to-end tests of the `discordlab` binary: file parsing, table and CSV
//! output, exit codes, and the dimension-cap override.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use discordlab::{bell_state, io, werner, KrausChannel, Povm};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_discordlab")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write_bell(dir: &Path) -> PathBuf {
    let path = dir.join("bell.json");
    let rho = bell_state(0).unwrap().to_density().unwrap();
    let text = serde_json::to_string_pretty(&io::state_to_file(&rho)).unwrap();
    std::fs::write(&path, text).unwrap();
    path
}

fn write_product(dir: &Path) -> PathBuf {
    let path = dir.join("product.json");
    let text = r#"{
  "dims": [2, 2],
  "matrix": [
    [[0.5, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
    [[0.0, 0.0], [0.5, 0.0], [0.0, 0.0], [0.0, 0.0]],
    [[0.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
    [[0.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]]
  ]
}"#;
    std::fs::write(&path, text).unwrap();
    path
}

fn write_z_channel(dir: &Path) -> PathBuf {
    let path = dir.join("zmeas.json");
    let ch = KrausChannel::measurement(&Povm::computational(2)).unwrap();
    let text = serde_json::to_string_pretty(&io::channel_to_file(&ch)).unwrap();
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn correlations_on_bell_state() {
    let dir = tempfile::tempdir().unwrap();
    let state = write_bell(dir.path());
    let out = run(&["correlations", "--state", state.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("I(A:B)  = 2.000000"), "output:\n{text}");
    assert!(text.contains("D(A:B)  = 1.000000"), "output:\n{text}");
    assert!(text.contains("C       = 1.000000"), "output:\n{text}");
}

#[test]
fn correlations_on_product_state_vanish() {
    let dir = tempfile::tempdir().unwrap();
    let state = write_product(dir.path());
    let out = run(&["correlations", "--state", state.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    for line in ["I(A:B)  = 0.000000", "D(A:B)  = 0.000000", "C       = 0.000000"] {
        assert!(text.contains(line), "missing {line:?} in:\n{text}");
    }
}

#[test]
fn correlations_json_round_trips_through_parsers() {
    let dir = tempfile::tempdir().unwrap();
    let state = write_bell(dir.path());
    let out = run(&["correlations", "--state", state.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let state_file: io::StateFile =
        serde_json::from_value(value["state"].clone()).unwrap();
    let rho = io::state_from_file(&state_file).unwrap();
    assert_eq!(rho.dims(), &[2, 2]);
    let povm_file: io::PovmFile =
        serde_json::from_value(value["optimal_measurement_b"].clone()).unwrap();
    assert!(io::povm_from_file(&povm_file).is_ok());
    assert!((value["discord_measure_b"].as_f64().unwrap() - 1.0).abs() < 1e-6);
}

#[test]
fn correlations_with_fixed_povm_reports_zurek() {
    let dir = tempfile::tempdir().unwrap();
    let state = write_bell(dir.path());
    let povm_path = dir.path().join("z.json");
    let text = serde_json::to_string(&io::povm_to_file(&Povm::computational(2))).unwrap();
    std::fs::write(&povm_path, text).unwrap();
    let out = run(&[
        "correlations",
        "--state",
        state.to_str().unwrap(),
        "--povm",
        povm_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("D_zurek = 1.000000"), "output:\n{text}");
}

#[test]
fn malformed_json_names_the_problem() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\"dims\": [2, 2], \"matrix\": [[[0.5]]]}").unwrap();
    let out = run(&["correlations", "--state", path.to_str().unwrap()]);
    assert!(!out.status.success());
    let err = stderr(&out);
    assert!(err.contains("broken.json"), "stderr:\n{err}");
    // serde reports the offending position.
    assert!(err.contains("line"), "stderr:\n{err}");
}

#[test]
fn invariant_violations_name_the_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.json");
    std::fs::write(
        &path,
        r#"{"dims": [2], "matrix": [[[0.7, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.7, 0.0]]]}"#,
    )
    .unwrap();
    let out = run(&["correlations", "--state", path.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("trace"), "stderr:\n{}", stderr(&out));
}

#[test]
fn protocol_teleport_with_measurement_channel() {
    let dir = tempfile::tempdir().unwrap();
    let state = write_bell(dir.path());
    let channel = write_z_channel(dir.path());
    let out = run(&[
        "protocol",
        "teleport",
        "--state",
        state.to_str().unwrap(),
        "--channel",
        channel.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("loss = 1.000000"), "output:\n{text}");
}

#[test]
fn protocol_fqsw_identity_channel_keeps_gain() {
    let dir = tempfile::tempdir().unwrap();
    let state = write_bell(dir.path());
    let id_path = dir.path().join("id.json");
    let text =
        serde_json::to_string(&io::channel_to_file(&KrausChannel::identity(2))).unwrap();
    std::fs::write(&id_path, text).unwrap();
    let out = run(&[
        "protocol",
        "fqsw",
        "--state",
        state.to_str().unwrap(),
        "--channel",
        id_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("net gain = 1.000000"), "output:\n{text}");
    assert!(text.contains("loss = 0.000000"), "output:\n{text}");
}

#[test]
fn protocol_merge_verify_discord_gap_is_small() {
    // Full dephasing acts as a projective measurement channel on B, so the
    // merging markup lands on the discord of werner(0.5).
    let dir = tempfile::tempdir().unwrap();
    let state_path = dir.path().join("werner.json");
    let text =
        serde_json::to_string(&io::state_to_file(&werner(0.5).unwrap())).unwrap();
    std::fs::write(&state_path, text).unwrap();
    let ch_path = dir.path().join("dephase.json");
    let text =
        serde_json::to_string(&io::channel_to_file(&KrausChannel::dephasing(1.0).unwrap()))
            .unwrap();
    std::fs::write(&ch_path, text).unwrap();
    let out = run(&[
        "protocol",
        "merge",
        "--state",
        state_path.to_str().unwrap(),
        "--channel",
        ch_path.to_str().unwrap(),
        "--verify-discord",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let loss_line = text.lines().find(|l| l.starts_with("loss = ")).unwrap();
    let loss: f64 = loss_line.trim_start_matches("loss = ").parse().unwrap();
    let discord_line = text
        .lines()
        .find(|l| l.starts_with("discord (measure B) = "))
        .unwrap();
    let discord: f64 = discord_line
        .trim_start_matches("discord (measure B) = ")
        .parse()
        .unwrap();
    assert!((loss - discord).abs() < 1e-5, "output:\n{text}");
    assert!(text.contains("gap = "), "output:\n{text}");
}

#[test]
fn protocol_rejects_unknown_name() {
    let dir = tempfile::tempdir().unwrap();
    let state = write_bell(dir.path());
    let channel = write_z_channel(dir.path());
    let out = run(&[
        "protocol",
        "swap",
        "--state",
        state.to_str().unwrap(),
        "--channel",
        channel.to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("unknown protocol"));
}

#[test]
fn sweep_werner_endpoints() {
    let out = run(&[
        "sweep", "--family", "werner", "--from", "0", "--to", "1", "--step", "0.25",
        "--quantities", "discord,concurrence",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6, "header + 5 rows:\n{text}");
    assert_eq!(lines[0], "p,discord,concurrence");
    let first: Vec<f64> = lines[1].split(',').map(|x| x.parse().unwrap()).collect();
    assert!(first[0].abs() < 1e-12 && first[1].abs() < 1e-9 && first[2].abs() < 1e-9);
    let last: Vec<f64> = lines[5].split(',').map(|x| x.parse().unwrap()).collect();
    assert!((last[0] - 1.0).abs() < 1e-12);
    assert!((last[1] - 1.0).abs() < 1e-6);
    assert!((last[2] - 1.0).abs() < 1e-9);
}

#[test]
fn sweep_rejects_empty_grid() {
    let out = run(&[
        "sweep", "--family", "werner", "--from", "0", "--to", "1", "--step", "2",
    ]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("empty grid"));
}

#[test]
fn sweep_custom_grid_dephases_a_state_file() {
    let dir = tempfile::tempdir().unwrap();
    let state = write_bell(dir.path());
    let out = run(&[
        "sweep", "--family", "custom-grid", "--state", state.to_str().unwrap(),
        "--channel-family", "dephasing", "--from", "0", "--to", "1", "--step", "0.5",
        "--quantities", "loss,discord",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4, "header + 3 rows:\n{text}");
    // Full dephasing of a Bell pair costs exactly one ebit of yield.
    let last: Vec<f64> = lines[3].split(',').map(|x| x.parse().unwrap()).collect();
    assert!((last[1] - 1.0).abs() < 1e-9, "loss at p=1:\n{text}");
    // Without --state the family is unusable.
    let out = run(&[
        "sweep", "--family", "custom-grid", "--from", "0", "--to", "1", "--step", "0.5",
    ]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("--state"));
}

#[test]
fn sweep_depolarizing_supports_loss_column() {
    let out = run(&[
        "sweep", "--family", "depolarizing", "--from", "0", "--to", "1", "--step", "0.5",
        "--quantities", "loss,discord",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "p,loss,discord");
    let first: Vec<f64> = lines[1].split(',').map(|x| x.parse().unwrap()).collect();
    assert!(first[1].abs() < 1e-9, "no loss at p=0:\n{text}");
}

#[test]
fn random_scan_50_states_stays_under_gap_bound() {
    let out = run(&["random-scan", "--n", "50", "--seed", "42", "--dims", "2,2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 52, "header + 50 rows + summary:\n{text}");
    assert_eq!(lines[0], "index,seed,discord_b,discord_a,concurrence,min_loss,gap");
    assert!(lines[51].starts_with("# max_gap="));
    let max_gap: f64 = lines[51].trim_start_matches("# max_gap=").parse().unwrap();
    assert!(max_gap <= 1e-5, "gap too large:\n{text}");
}

#[test]
fn random_scan_rejects_zero_count() {
    let out = run(&["random-scan", "--n", "0"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("n >= 1"));
}

#[test]
fn random_scan_rank_one_discord_is_entanglement_entropy() {
    let out = run(&["random-scan", "--n", "1", "--rank", "1", "--seed", "9"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let row = text.lines().nth(1).unwrap();
    let fields: Vec<&str> = row.split(',').collect();
    let seed: u64 = fields[1].parse().unwrap();
    let discord_b: f64 = fields[2].parse().unwrap();
    // For pure states the discord coincides with the entanglement entropy.
    let rho = discordlab::random_density(&[2, 2], 1, seed).unwrap();
    let s_a = discordlab::von_neumann_entropy(&rho.side_marginal(discordlab::Side::A).unwrap())
        .unwrap();
    assert!((discord_b - s_a).abs() < 2e-5, "D={discord_b} S(A)={s_a}");
}

#[test]
fn dimension_cap_env_var_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let state = write_bell(dir.path());
    let out = Command::new(bin())
        .args(["correlations", "--state", state.to_str().unwrap()])
        .env("DISCORDLAB_MAX_DIM", "2")
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(stderr(&out).contains("exceeds the configured cap"));
}
