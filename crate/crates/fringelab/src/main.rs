use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fringe_core::engine;
use fringe_core::model::Scenario;
use fringelab::{pairwise, pattern, report, scenario, suite};

const EXIT_PARSE: u8 = 1;
const EXIT_UNSUPPORTED: u8 = 2;
const EXIT_REGRESSION: u8 = 3;

#[derive(Parser)]
#[command(
    name = "fringelab",
    about = "n-path interference patterns, wave-nature measures and duality checks",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the linear phase parameter and emit a theta,intensity CSV.
    Pattern {
        /// Scenario file path or built-in name (bimonte3, mw4, piflip4,
        /// ancilla4, dark, pure2).
        scenario: String,
        /// Number of uniform samples over [0, 2 pi).
        #[arg(long, default_value_t = 360)]
        grid: usize,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Coupling strength for the bimonte3 built-in.
        #[arg(long, default_value_t = 0.5)]
        lambda: f64,
    },
    /// Report every applicable measure and duality check for a scenario.
    Analyze {
        scenario: String,
        /// Emit the JSON schema instead of the text table.
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0.5)]
        lambda: f64,
    },
    /// Run the two-path blocking protocol pair by pair.
    Pairwise {
        scenario: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0.5)]
        lambda: f64,
    },
    /// Re-derive every headline number from the built-in scenarios.
    PaperSuite {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load(name_or_path: &str, lambda: f64) -> Result<Scenario, (u8, String)> {
    if let Some(s) = scenario::builtin(name_or_path, lambda) {
        return Ok(s);
    }
    let text = fs::read_to_string(name_or_path)
        .map_err(|e| (EXIT_PARSE, format!("cannot read {name_or_path}: {e}")))?;
    scenario::ScenarioFile::parse(&text)
        .and_then(|doc| doc.to_scenario())
        .map_err(|e| (EXIT_PARSE, e.to_string()))
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), (u8, String)> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| (EXIT_PARSE, format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            std::io::stdout()
                .flush()
                .map_err(|e| (EXIT_PARSE, e.to_string()))
        }
    }
}

fn run() -> Result<(), (u8, String)> {
    match Cli::parse().command {
        Command::Pattern {
            scenario,
            grid,
            out,
            lambda,
        } => {
            let s = load(&scenario, lambda)?;
            let p = engine::sweep(&s, grid)
                .map_err(|e| (EXIT_UNSUPPORTED, format!("cannot sweep this scenario: {e}")))?;
            let mut buf = Vec::new();
            pattern::write_csv(&p, &mut buf).map_err(|e| (EXIT_PARSE, e.to_string()))?;
            emit(&String::from_utf8(buf).expect("ascii csv"), out.as_ref())
        }
        Command::Analyze {
            scenario,
            json,
            out,
            lambda,
        } => {
            let s = load(&scenario, lambda)?;
            let r = report::analyze(&s).map_err(|e| (EXIT_UNSUPPORTED, e.to_string()))?;
            let text = if json {
                let mut t = serde_json::to_string_pretty(&r).expect("serializable report");
                t.push('\n');
                t
            } else {
                report::render_text(&r)
            };
            emit(&text, out.as_ref())
        }
        Command::Pairwise {
            scenario,
            json,
            out,
            lambda,
        } => {
            let s = load(&scenario, lambda)?;
            let r = pairwise::run(&s).map_err(|e| (EXIT_UNSUPPORTED, e.to_string()))?;
            let text = if json {
                let mut t = serde_json::to_string_pretty(&r).expect("serializable report");
                t.push('\n');
                t
            } else {
                pairwise::render_text(&r)
            };
            emit(&text, out.as_ref())?;
            if r.consistent {
                Ok(())
            } else {
                Err((
                    EXIT_REGRESSION,
                    format!(
                        "pairwise reconstruction {:.12} disagrees with direct coherence {:.12}",
                        r.reconstructed, r.direct
                    ),
                ))
            }
        }
        Command::PaperSuite { out } => {
            let results = suite::run();
            emit(&suite::render_text(&results), out.as_ref())?;
            if results.iter().all(|c| c.pass) {
                Ok(())
            } else {
                let failed: Vec<&str> = results
                    .iter()
                    .filter(|c| !c.pass)
                    .map(|c| c.name)
                    .collect();
                Err((EXIT_REGRESSION, format!("failed checks: {}", failed.join(", "))))
            }
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, message)) => {
            eprintln!("fringelab: {message}");
            ExitCode::from(code)
        }
    }
}
