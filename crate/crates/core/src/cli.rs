//! The `offnash` command line. Every subcommand prints exactly one JSON
//! document on success (`gen` prints one game per line); failures go to
//! stderr and are signalled by the exit code alone:
//!
//! | code | meaning |
//! |------|---------|
//! | 1 | I/O error |
//! | 2 | unparseable document or bad arguments |
//! | 3 | well-formed but invalid input (shapes, rationals, machines) |
//! | 4 | game not in the locally-suboptimal set for the regime |
//! | 5 | horizon or payoff-set cap exceeded |

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::document::{self, DocError};
use crate::ensemble::{self, EnsembleSpec, Span};
use crate::error::Error;
use crate::game::{Regime, StageGame};
use crate::games;
use crate::rational::{self, Rational};
use crate::report::{self, to_json};
use crate::verify::{self, DEFAULT_LADDER_CAP};
use crate::witness::DEFAULT_CAP;

#[derive(Parser, Debug)]
#[command(name = "offnash", version, about = "Off-equilibrium play in finitely repeated two-player games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RegimeArg {
    Pp,
    Mp,
    Pm,
    Mm,
    All,
}

impl RegimeArg {
    fn regimes(self) -> Vec<Regime> {
        match self {
            RegimeArg::Pp => vec![Regime::Pp],
            RegimeArg::Mp => vec![Regime::Mp],
            RegimeArg::Pm => vec![Regime::Pm],
            RegimeArg::Mm => vec![Regime::Mm],
            RegimeArg::All => Regime::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SingleRegime {
    Pp,
    Mp,
    Pm,
    Mm,
}

impl From<SingleRegime> for Regime {
    fn from(r: SingleRegime) -> Regime {
        match r {
            SingleRegime::Pp => Regime::Pp,
            SingleRegime::Mp => Regime::Mp,
            SingleRegime::Pm => Regime::Pm,
            SingleRegime::Mm => Regime::Mm,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify games in every regime (or one). Several files, or `--lines`,
    /// produce an array of reports in input order.
    Classify {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "all")]
        regime: RegimeArg,
        /// Treat each input as one game document per line.
        #[arg(long)]
        lines: bool,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// Build a witness machine for a positive verdict and verify it.
    Witness {
        path: PathBuf,
        #[arg(long, value_enum)]
        regime: SingleRegime,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Check a machine for subgame perfection and list its off-equilibrium states.
    Verify {
        game: PathBuf,
        machine: PathBuf,
        #[arg(long, value_enum)]
        regime: SingleRegime,
    },
    /// Brute-force pure payoff sets up to a horizon.
    Oracle {
        path: PathBuf,
        #[arg(long, default_value_t = 8)]
        tmax: usize,
        #[arg(long, default_value_t = DEFAULT_LADDER_CAP)]
        cap: usize,
    },
    /// Random integer games, one document per line.
    Gen {
        #[arg(long, default_value = "2")]
        rows: Span,
        #[arg(long, default_value = "2")]
        cols: Span,
        /// Inclusive payoff range `lo..hi`.
        #[arg(long, default_value = "0..3")]
        range: Span,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Print a named reference game.
    Template {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(games::NAMES))]
        name: String,
        /// Parameter of `large_horizon`, as `p/q`.
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        alpha: Option<Rational>,
    },
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    rational::parse(s)
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn io(path: &Path, e: std::io::Error) -> Self {
        Failure { code: 1, message: format!("{}: {e}", path.display()) }
    }

    fn at(path: &Path, e: DocError) -> Self {
        let code = match &e {
            DocError::Syntax { .. } => 2,
            DocError::Semantic(e) => exit_code(e),
        };
        Failure { code, message: format!("{}: {e}", path.display()) }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: exit_code(&e), message: e.to_string() }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Dimension(_) | Error::Input(_) | Error::Regime(_) | Error::MalformedLp(_) | Error::MalformedMachine(_) => 3,
        Error::NotInLs => 4,
        Error::HorizonExceeded { .. } | Error::LadderCap { .. } => 5,
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::io(path, e))
}

fn load_game(path: &Path) -> Result<StageGame, Failure> {
    document::parse_game(&read(path)?).map_err(|e| Failure::at(path, e))
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command) {
        Ok(text) => match out.write_all(text.as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "offnash: {e}");
                1
            }
        },
        Err(f) => {
            let _ = writeln!(err, "offnash: {}", f.message);
            f.code
        }
    }
}

fn execute(command: Command) -> Result<String, Failure> {
    match command {
        Command::Classify { paths, regime, lines, threads } => classify(&paths, &regime.regimes(), lines, threads),
        Command::Witness { path, regime, cap } => {
            let g = load_game(&path)?;
            Ok(to_json(&report::witness(&g, regime.into(), cap)?))
        }
        Command::Verify { game, machine, regime } => {
            let g = load_game(&game)?;
            let m = document::parse_machine(&read(&machine)?).map_err(|e| Failure::at(&machine, e))?;
            Ok(to_json(&report::verify(&g, &m, regime.into())?))
        }
        Command::Oracle { path, tmax, cap } => {
            let g = load_game(&path)?;
            if tmax == 0 {
                return Err(Failure { code: 2, message: "--tmax must be at least 1".into() });
            }
            match verify::payoff_set_ladder(&g, tmax, cap) {
                Ok(ladder) => Ok(to_json(&report::oracle(&g, &ladder, tmax))),
                Err(o) => Err(Failure {
                    code: 5,
                    message: format!(
                        "payoff set grew past {} vectors at horizon {}; complete levels: {}",
                        o.cap,
                        o.horizon,
                        o.horizon - 1
                    ),
                }),
            }
        }
        Command::Gen { rows, cols, range, count, seed } => {
            if rows.lo < 1 || cols.lo < 1 {
                return Err(Failure { code: 2, message: "games need at least one row and one column".into() });
            }
            let spec = EnsembleSpec { rows, cols, payoffs: range };
            let mut text = String::new();
            for g in ensemble::random_games(&spec, count, seed) {
                text.push_str(&document::render_game_line(&g));
                text.push('\n');
            }
            Ok(text)
        }
        Command::Template { name, alpha } => {
            let g = games::by_name(&name, alpha.as_ref()).expect("validated by clap");
            Ok(document::render_game(&g))
        }
    }
}

fn classify(paths: &[PathBuf], regimes: &[Regime], lines: bool, threads: usize) -> Result<String, Failure> {
    let mut games = Vec::new();
    for path in paths {
        let text = read(path)?;
        if lines {
            games.extend(document::parse_game_lines(&text).map_err(|e| Failure::at(path, e))?);
        } else {
            games.push(document::parse_game(&text).map_err(|e| Failure::at(path, e))?);
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure { code: 1, message: e.to_string() })?;
    let reports = pool.install(|| {
        games.par_iter().map(|g| report::classify(g, regimes)).collect::<Result<Vec<_>, Error>>()
    })?;
    if reports.len() == 1 && !lines {
        Ok(to_json(&reports[0]))
    } else {
        Ok(to_json(&reports))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("offnash").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn template_and_gen() {
        let (code, text, _) = call(&["template", "large_horizon", "--alpha", "1/2"]);
        assert_eq!(code, 0);
        assert_eq!(document::parse_game(&text).unwrap(), games::large_horizon(&rational::ratio(1, 2)));
        let (code, a, _) = call(&["gen", "--count", "3", "--seed", "9", "--range", "0..5"]);
        assert_eq!(code, 0);
        assert_eq!(a.lines().count(), 3);
        assert_eq!(a, call(&["gen", "--count", "3", "--seed", "9", "--range", "0..5"]).1);
    }

    #[test]
    fn argument_errors() {
        assert_eq!(call(&["gen"]).0, 2);
        assert_eq!(call(&["template", "nope"]).0, 2);
        assert_eq!(call(&["classify", "/definitely/missing.json"]).0, 1);
    }
}
