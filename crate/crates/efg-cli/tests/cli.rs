//! End-to-end tests of the `efg` binary: outputs, exit codes, stdin
//! piping, and the canonical round-trip of every grammar the commands
//! speak.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use efg_cli::formats::{parse_game, print_bridge_spec, print_game};
use efg_core::fixtures::{signal_loss_game, two_secret_bidding_spec};

fn efg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_efg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn efg_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_efg"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child.stdin.as_mut().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().expect("binary finishes")
}

fn stdout(output: &Output) -> String {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn write_temp(content: &str, suffix: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(suffix).tempfile().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f
}

#[test]
fn solve_pure_reports_the_maxmin() {
    let file = write_temp(&print_game(&signal_loss_game()), ".game");
    let out = efg(&["solve-pure", "--game", file.path().to_str().unwrap()]);
    let text = stdout(&out);
    assert!(text.starts_with("maxmin_pure = 1\n"), "got: {text}");

    let out = efg(&["solve-pure", "--minmax", "--game", file.path().to_str().unwrap()]);
    assert!(stdout(&out).starts_with("minmax_pure = 2\n"));
}

#[test]
fn check_pr_answers_false_for_the_connected_poly() {
    let out = efg(&["poly", "check-pr", "--poly", "x*y + ~x*~y"]);
    assert!(stdout(&out).starts_with("perfect_recall = false\n"));

    let out = efg(&["poly", "check-pr", "--poly", "x*y*z + 4*~x*y + 5*~w"]);
    assert!(stdout(&out).starts_with("perfect_recall = true\n"));
}

#[test]
fn gadget_pipes_into_the_estimator() {
    let gadget = stdout(&efg(&["gadget", "sqrt", "--n", "4"]));
    let out = efg_with_stdin(&["solve-beh", "--tol", "1e-4", "--starts", "4"], &gadget);
    let text = stdout(&out);
    let value: f64 = text
        .lines()
        .next()
        .unwrap()
        .strip_prefix("maxmin_beh = ")
        .unwrap()
        .parse()
        .unwrap();
    assert!((value + 2.0).abs() < 1e-4, "value {value}");
    assert!(text.contains("seed = 1"));
}

#[test]
fn poly_to_game_pipes_into_the_pure_solver() {
    let game = stdout(&efg(&["poly", "to-game", "--poly", "3*x^2 + 5*x*y - 8*y^2 - 1"]));
    let out = efg_with_stdin(&["solve-pure-one"], &game);
    assert!(stdout(&out).starts_with("optimum_pure = 2\n"));
}

#[test]
fn game_to_poly_and_formula_outputs() {
    // A one-player game so extraction is allowed.
    let file = write_temp(
        "P1 I=x\n  P1 I=x a=a\n    L u=0 a=a\n    L u=1 a=b\n  L u=0 a=b\n",
        ".game",
    );
    let out = efg(&["game", "to-poly", "--game", file.path().to_str().unwrap()]);
    assert_eq!(stdout(&out), "x*~x\n");

    let out = efg(&["encode-formula", "--game", file.path().to_str().unwrap()]);
    assert_eq!(stdout(&out), "exists x. (0 <= x & x <= 1) & (x*~x >= 0)\n");
}

#[test]
fn validate_and_dump_round_trip() {
    let canonical = print_game(&signal_loss_game());
    let file = write_temp(&canonical, ".game");
    let out = efg(&["--dump-tree", "validate", "--game", file.path().to_str().unwrap()]);
    let text = stdout(&out);
    assert!(text.starts_with(&canonical), "dump not canonical");
    assert!(text.ends_with("valid = true\n"));
    // print(parse(text)) is byte-identical on canonical input.
    assert_eq!(print_game(&parse_game(&canonical).unwrap()), canonical);
}

#[test]
fn classify_and_chance_degree_reports() {
    let file = write_temp(&print_game(&signal_loss_game()), ".game");
    let out = efg(&["classify-recall", "--game", file.path().to_str().unwrap(), "--player", "max"]);
    assert!(stdout(&out).starts_with("recall = SignalLoss\n"));
    let out = efg(&["chance-degree", "--game", file.path().to_str().unwrap()]);
    assert_eq!(stdout(&out), "chance_degree = 1\n");
}

#[test]
fn json_reports_carry_the_same_fields() {
    let file = write_temp(&print_game(&signal_loss_game()), ".game");
    let out = efg(&["--json", "solve-pure", "--game", file.path().to_str().unwrap()]);
    let text = stdout(&out);
    assert!(text.starts_with("{\"maxmin_pure\":\"1\""), "got: {text}");
    assert!(text.ends_with("}\n"));
}

#[test]
fn bridge_commands_cover_the_worked_example() {
    let spec_text = print_bridge_spec(&two_secret_bidding_spec());
    let file = write_temp(&spec_text, ".spec");
    let path = file.path().to_str().unwrap();

    let out = efg(&[
        "bridge", "playout", "--spec", path,
        "--secrets", "spade none spade none",
        "--bids", "0,1,0,2,4,0,0,0",
    ]);
    assert_eq!(stdout(&out), "declarer = N\ncontract = 4\npayoff = 4\n");

    let out = efg(&["bridge", "solve-nob", "--spec", path]);
    let text = stdout(&out);
    assert!(text.starts_with("maxmin_nob = 3/2\n"), "got: {text}");
    assert!(text.contains("enumeration_size = 46656"));

    let compiled = stdout(&efg(&["bridge", "compile", "--spec", path]));
    let out = efg_with_stdin(&["chance-degree"], &compiled);
    assert_eq!(stdout(&out), "chance_degree = 4\n");
}

#[test]
fn gap_gadget_defaults_the_complexity_parameter() {
    let file = write_temp("P1 I=x\n  L u=0 a=l\n  L u=1 a=r\n", ".game");
    let out = efg(&["gadget", "gap", "--game", file.path().to_str().unwrap(), "--l", "1"]);
    let text = stdout(&out);
    let game = parse_game(&text).unwrap();
    assert_eq!(game.node(game.root()).children.len(), 3);
    // Without --l the parameter is the serialized byte length; the chain
    // gets long but still builds.
    let out = efg(&["gadget", "gap", "--game", file.path().to_str().unwrap()]);
    assert!(out.status.success());
}

#[test]
fn exit_codes_distinguish_parse_and_domain_errors() {
    // Malformed game text: parse error, exit 2.
    let bad = write_temp("L u=oops\n", ".game");
    let out = efg(&["solve-pure", "--game", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));

    // Unreadable file: exit 2.
    let out = efg(&["solve-pure", "--game", "/does/not/exist.game"]);
    assert_eq!(out.status.code(), Some(2));

    // Well-formed game, unsatisfiable precondition: domain error, exit 1.
    let two_player = write_temp(&print_game(&signal_loss_game()), ".game");
    let out = efg(&["solve-pure-one", "--game", two_player.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("two active players"));

    // Degenerate gadget parameter: domain error, exit 1.
    let out = efg(&["gadget", "sqrt", "--n", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degenerate"));

    // Unknown subcommand: usage error, exit 2.
    let out = efg(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solve_bi_runs_on_generated_perfect_information_games() {
    let game = stdout(&efg(&["poly", "pr-to-game", "--poly", "3*x + 7*~x"]));
    let out = efg_with_stdin(&["solve-bi"], &game);
    assert!(stdout(&out).starts_with("optimum = 7\n"));
}
