//! `efg` — command-line front end for building, transforming, and solving
//! zero-sum extensive-form games with imperfect recall.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use efg_cli::formats::{
    parse_bridge_spec, parse_game, parse_general_poly, parse_multilinear_poly, print_game,
};
use efg_cli::report::{solve_report, team_report, Report};
use efg_core::bridge::{self, BidSequence, TeamSolveOptions};
use efg_core::game::{self, GameTree, Player};
use efg_core::poly::PerfectRecall;
use efg_core::solvers;
use efg_core::transforms::{self, Relation};
use efg_core::Rational;

#[derive(Parser)]
#[command(name = "efg", version, about = "Zero-sum extensive-form games with imperfect recall")]
struct Cli {
    /// Emit reports as line-delimited JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Echo the parsed game as canonical text before the report.
    #[arg(long, global = true)]
    dump_tree: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlayerArg {
    Max,
    Min,
}

impl From<PlayerArg> for Player {
    fn from(p: PlayerArg) -> Player {
        match p {
            PlayerArg::Max => Player::Max,
            PlayerArg::Min => Player::Min,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RelationArg {
    Ge,
    Gt,
}

#[derive(Args)]
struct GameInput {
    /// Game file in the tree text format; stdin when omitted.
    #[arg(long)]
    game: Option<PathBuf>,
}

#[derive(Args)]
struct PolyInput {
    /// Polynomial text, e.g. "x*y + 4*~x*y".
    #[arg(long)]
    poly: Option<String>,
    /// File containing the polynomial; stdin when neither is given.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct SpecInput {
    /// Bidding-game specification file; stdin when omitted.
    #[arg(long)]
    spec: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the structural invariants of a game and list violations.
    Validate(GameInput),
    /// Classify a player's recall (perfect, A-loss, signal loss,
    /// absent-minded) with a witnessing node pair.
    ClassifyRecall {
        #[command(flatten)]
        input: GameInput,
        #[arg(long, value_enum, default_value = "max")]
        player: PlayerArg,
    },
    /// Compute the chance degree of a game.
    ChanceDegree(GameInput),
    /// Exact pure-strategy maxmin of a two-player game.
    SolvePure {
        #[command(flatten)]
        input: GameInput,
        /// Compute minmax (Min commits first) instead of maxmin.
        #[arg(long)]
        minmax: bool,
    },
    /// Exact pure-strategy optimum of a one-player game.
    SolvePureOne(GameInput),
    /// Numeric behavioural maxmin by multi-start pattern search.
    SolveBeh {
        #[command(flatten)]
        input: GameInput,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
        #[arg(long, default_value_t = 8)]
        starts: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Exact backward induction on a perfect-information one-player game.
    SolveBi(GameInput),
    /// Polynomial operations.
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Game-to-polynomial extraction.
    #[command(subcommand)]
    Game(GameCmd),
    /// Emit the quantified real-arithmetic formula for a maxmin question.
    EncodeFormula {
        #[command(flatten)]
        input: GameInput,
        #[arg(long, default_value = "0")]
        threshold: String,
        #[arg(long, value_enum, default_value = "ge")]
        relation: RelationArg,
    },
    /// Hardness gadget generators.
    #[command(subcommand)]
    Gadget(GadgetCmd),
    /// Bidding-game operations.
    #[command(subcommand)]
    Bridge(BridgeCmd),
}

#[derive(Subcommand)]
enum PolyCmd {
    /// Decide whether a multilinear polynomial has perfect recall.
    CheckPr(PolyInput),
    /// Build the one-player game of a polynomial (chance over terms).
    ToGame(PolyInput),
    /// Build a perfect-information game from a perfect-recall polynomial.
    PrToGame(PolyInput),
}

#[derive(Subcommand)]
enum GameCmd {
    /// Extract the payoff polynomial of a one-player game.
    ToPoly {
        #[command(flatten)]
        input: GameInput,
        #[arg(long, value_enum, default_value = "max")]
        player: PlayerArg,
    },
}

#[derive(Subcommand)]
enum GadgetCmd {
    /// The square-root game: behavioural maxmin is exactly -sqrt(n).
    Sqrt {
        #[arg(long)]
        n: u64,
    },
    /// The square-root-sum game over several parameters and a threshold.
    Sqrtsum {
        /// Comma-separated parameters, e.g. 4,9.
        #[arg(long)]
        a: String,
        #[arg(long)]
        p: u64,
    },
    /// The strict-positivity gap construction around a game.
    Gap {
        #[command(flatten)]
        input: GameInput,
        /// Complexity parameter; defaults to the byte length of the
        /// serialized input game.
        #[arg(long)]
        l: Option<u64>,
    },
}

#[derive(Subcommand)]
enum BridgeCmd {
    /// Compile a bidding-game specification to extensive form.
    Compile(SpecInput),
    /// Exact maxmin over non-overbidding pure team strategies.
    SolveNob {
        #[command(flatten)]
        input: SpecInput,
        #[arg(long, default_value_t = 1_000_000_000)]
        budget: u64,
    },
    /// Play out a bid sequence under a secret profile.
    Playout {
        #[command(flatten)]
        input: SpecInput,
        /// Four secret names in seat order N E S W, space separated.
        #[arg(long)]
        secrets: String,
        /// Comma-separated bid sequence, e.g. 0,1,0,2,4,0,0,0.
        #[arg(long)]
        bids: String,
    },
}

enum CliError {
    /// Unreadable or malformed input: exit code 2.
    Parse(String),
    /// A well-formed request the modules reject: exit code 1.
    Domain(String),
}

impl CliError {
    fn parse(e: impl ToString) -> Self {
        CliError::Parse(e.to_string())
    }

    fn domain(e: impl ToString) -> Self {
        CliError::Domain(e.to_string())
    }
}

fn read_input(path: Option<&Path>, what: &str) -> Result<String, CliError> {
    match path {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| CliError::Parse(format!("cannot read {} file {}: {e}", what, p.display()))),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Parse(format!("cannot read {what} from stdin: {e}")))?;
            Ok(buf)
        }
    }
}

fn load_game(input: &GameInput) -> Result<GameTree, CliError> {
    let text = read_input(input.game.as_deref(), "game")?;
    parse_game(&text).map_err(CliError::parse)
}

fn load_poly_text(input: &PolyInput) -> Result<String, CliError> {
    match &input.poly {
        Some(s) => Ok(s.clone()),
        None => read_input(input.file.as_deref(), "polynomial"),
    }
}

fn load_spec(input: &SpecInput) -> Result<bridge::BridgeSpec, CliError> {
    let text = read_input(input.spec.as_deref(), "spec")?;
    parse_bridge_spec(&text).map_err(CliError::parse)
}

fn parse_threshold(s: &str) -> Result<Rational, CliError> {
    s.parse()
        .map_err(|_| CliError::Parse(format!("bad threshold {s:?}")))
}

fn run(cli: Cli) -> Result<String, CliError> {
    let mut out = String::new();
    let mut dump = |game: &GameTree| {
        if cli.dump_tree {
            out.push_str(&print_game(game));
        }
    };
    let body = match cli.command {
        Command::Validate(input) => {
            let game = load_game(&input)?;
            dump(&game);
            let report_data = game::validate(&game);
            let mut report = Report::new();
            report.field("valid", report_data.is_ok());
            for (i, violation) in report_data.violations.iter().enumerate() {
                report.field(&format!("violation_{i}"), violation);
            }
            report.render(cli.json)
        }
        Command::ClassifyRecall { input, player } => {
            let game = load_game(&input)?;
            dump(&game);
            let class = game::classify_recall(&game, player.into());
            let mut report = Report::new();
            let (name, witness) = match class {
                game::RecallClass::PerfectRecall => ("PerfectRecall", None),
                game::RecallClass::ALoss { witness } => ("ALoss", Some(witness)),
                game::RecallClass::SignalLoss { witness } => ("SignalLoss", Some(witness)),
                game::RecallClass::AbsentMinded { witness } => ("AbsentMinded", Some(witness)),
            };
            report.field("recall", name);
            if let Some((u, v)) = witness {
                report.field("witness", format!("{u},{v}"));
            }
            report.render(cli.json)
        }
        Command::ChanceDegree(input) => {
            let game = load_game(&input)?;
            dump(&game);
            let mut report = Report::new();
            report.field("chance_degree", game::chance_degree(&game));
            report.render(cli.json)
        }
        Command::SolvePure { input, minmax } => {
            let game = load_game(&input)?;
            dump(&game);
            let (label, result) = if minmax {
                ("minmax_pure", solvers::solve_pure_minmax(&game))
            } else {
                ("maxmin_pure", solvers::solve_pure_maxmin(&game))
            };
            let result = result.map_err(CliError::domain)?;
            solve_report(label, &result).render(cli.json)
        }
        Command::SolvePureOne(input) => {
            let game = load_game(&input)?;
            dump(&game);
            let result = solvers::solve_pure_one_player(&game).map_err(CliError::domain)?;
            solve_report("optimum_pure", &result).render(cli.json)
        }
        Command::SolveBeh { input, tol, starts, seed } => {
            if tol <= 0.0 {
                return Err(CliError::Parse(format!("tol must be positive, got {tol}")));
            }
            let game = load_game(&input)?;
            dump(&game);
            let result = solvers::estimate_maxmin_beh(&game, starts, tol, seed).map_err(CliError::domain)?;
            let mut report = solve_report("maxmin_beh", &result);
            report.field("starts", starts);
            report.field("seed", seed);
            report.render(cli.json)
        }
        Command::SolveBi(input) => {
            let game = load_game(&input)?;
            dump(&game);
            let result = solvers::solve_backward_induction(&game).map_err(CliError::domain)?;
            solve_report("optimum", &result).render(cli.json)
        }
        Command::Poly(cmd) => match cmd {
            PolyCmd::CheckPr(input) => {
                let text = load_poly_text(&input)?;
                let poly = parse_multilinear_poly(&text).map_err(CliError::parse)?;
                let verdict = efg_core::poly::is_perfect_recall(&poly);
                let mut report = Report::new();
                report.field("perfect_recall", verdict.is_perfect());
                match &verdict {
                    PerfectRecall::Yes(tree) => {
                        if let efg_core::poly::DecompositionTree::Split { decomposition, .. } = tree {
                            report.field("pivot", &decomposition.pivot);
                        }
                    }
                    PerfectRecall::No { failing } => {
                        report.field("failing", failing);
                    }
                }
                report.render(cli.json)
            }
            PolyCmd::ToGame(input) => {
                let text = load_poly_text(&input)?;
                let poly = parse_general_poly(&text).map_err(CliError::parse)?;
                let game = transforms::poly_to_game(&poly).map_err(CliError::domain)?;
                print_game(&game)
            }
            PolyCmd::PrToGame(input) => {
                let text = load_poly_text(&input)?;
                let poly = parse_multilinear_poly(&text).map_err(CliError::parse)?;
                let game = transforms::pr_poly_to_game(&poly).map_err(CliError::domain)?;
                print_game(&game)
            }
        },
        Command::Game(GameCmd::ToPoly { input, player }) => {
            let game = load_game(&input)?;
            dump(&game);
            let poly = transforms::game_to_poly(&game, player.into()).map_err(CliError::domain)?;
            format!("{poly}\n")
        }
        Command::EncodeFormula { input, threshold, relation } => {
            let game = load_game(&input)?;
            dump(&game);
            let threshold = parse_threshold(&threshold)?;
            let relation = match relation {
                RelationArg::Ge => Relation::Ge,
                RelationArg::Gt => Relation::Gt,
            };
            let formula =
                transforms::encode_maxmin_formula(&game, threshold, relation).map_err(CliError::domain)?;
            format!("{formula}\n")
        }
        Command::Gadget(cmd) => match cmd {
            GadgetCmd::Sqrt { n } => {
                let game = transforms::gadget_sqrt(n).map_err(CliError::domain)?;
                print_game(&game)
            }
            GadgetCmd::Sqrtsum { a, p } => {
                let values: Result<Vec<u64>, _> = a.split(',').map(|s| s.trim().parse::<u64>()).collect();
                let values = values.map_err(|_| CliError::Parse(format!("bad parameter list {a:?}")))?;
                let game = transforms::gadget_sqrtsum(&values, p).map_err(CliError::domain)?;
                print_game(&game)
            }
            GadgetCmd::Gap { input, l } => {
                let text = read_input(input.game.as_deref(), "game")?;
                let game = parse_game(&text).map_err(CliError::parse)?;
                dump(&game);
                let l = l.unwrap_or_else(|| print_game(&game).len() as u64);
                let out = transforms::build_gap_game(&game, l).map_err(CliError::domain)?;
                print_game(&out)
            }
        },
        Command::Bridge(cmd) => match cmd {
            BridgeCmd::Compile(input) => {
                let spec = load_spec(&input)?;
                let game = bridge::compile(&spec).map_err(CliError::domain)?;
                print_game(&game)
            }
            BridgeCmd::SolveNob { input, budget } => {
                let spec = load_spec(&input)?;
                let result = bridge::solve_non_overbidding(&spec, TeamSolveOptions { budget })
                    .map_err(CliError::domain)?;
                team_report("maxmin_nob", &result).render(cli.json)
            }
            BridgeCmd::Playout { input, secrets, bids } => {
                let spec = load_spec(&input)?;
                let names: Vec<&str> = secrets.split_whitespace().collect();
                if names.len() != 4 {
                    return Err(CliError::Parse("need four secret names".to_string()));
                }
                let mut profile = [0usize; 4];
                for (i, name) in names.iter().enumerate() {
                    profile[i] = spec.secrets[i]
                        .iter()
                        .position(|s| s == name)
                        .ok_or_else(|| CliError::Parse(format!("unknown secret {name:?}")))?;
                }
                let bids: Result<Vec<u32>, _> = bids.split(',').map(|s| s.trim().parse::<u32>()).collect();
                let bids = bids.map_err(|_| CliError::Parse("bad bid list".to_string()))?;
                let outcome =
                    bridge::play_out(&spec, &profile, &BidSequence(bids)).map_err(CliError::domain)?;
                let mut report = Report::new();
                match outcome.declarer {
                    Some(seat) => report.field("declarer", seat),
                    None => report.field("declarer", "none"),
                };
                report.field("contract", outcome.contract);
                report.field("payoff", outcome.tmax_payoff);
                report.render(cli.json)
            }
        },
    };
    out.push_str(&body);
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(CliError::Domain(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Parse(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

