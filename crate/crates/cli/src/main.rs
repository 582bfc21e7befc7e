mod commands;
mod parse;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use commands::CliError;

/// Exact experiments with integral Burau matrices, destabilisation complexes
/// and symplectic weights. Results are written as JSON.
#[derive(Parser, Debug)]
#[command(name = "oddsp", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Write the JSON report here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Also print a human-readable table on standard error.
    #[arg(long, global = true)]
    table: bool,
    /// Abort with exit code 2 after this many seconds.
    #[arg(long, global = true, env = "ODDSP_TIME_LIMIT", value_parser = parse::positive_f64)]
    time_limit: Option<f64>,
    /// Largest number of box vectors scanned when building a complex.
    #[arg(long, global = true, env = "ODDSP_MAX_CANDIDATES", default_value_t = 20_000_000, value_parser = parse::positive_usize)]
    pub max_candidates: usize,
    #[arg(long, global = true, env = "ODDSP_MAX_VERTICES", default_value_t = 50_000, value_parser = parse::positive_usize)]
    pub max_vertices: usize,
    #[arg(long, global = true, env = "ODDSP_MAX_SIMPLICES", default_value_t = 2_000_000, value_parser = parse::positive_usize)]
    pub max_simplices: usize,
    /// Largest weight support materialised by character computations.
    #[arg(long, global = true, env = "ODDSP_MAX_SUPPORT", default_value_t = 5_000_000, value_parser = parse::positive_usize)]
    pub max_support: usize,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Burau matrix of a braid word, with its classification.
    Burau {
        #[arg(long)]
        n: usize,
        /// Signed generator indices, e.g. `1,2,-1`; empty for the identity.
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        word: String,
    },
    /// Braiding matrix `b(n, m)` in the twisted monoidal structure.
    Braiding {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// `eq31` or `eq32`.
        #[arg(long, default_value = "eq31")]
        convention: String,
    },
    /// Build a box truncation of a complex and write it as a complex file.
    Complex {
        /// Z, Y, IX, X or W_Q.
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long = "box")]
        box_bound: u32,
        /// Build `W(σ)` for the simplex `σ`, given as `1,0,0;0,1,0`.
        #[arg(long, allow_hyphen_values = true)]
        relative: Option<String>,
    },
    /// Homology of a complex file.
    Homology {
        #[arg(long)]
        input: PathBuf,
        /// Q, F2 or Z.
        #[arg(long, default_value = "Q")]
        coefficients: String,
        /// Reduced homology (adds degree −1 via the augmentation).
        #[arg(long)]
        reduced: bool,
    },
    /// Kostant table for the vector-stabiliser parabolic of Sp₂ₙ.
    Kostant {
        /// Partition such as `2,1`, or `0` for the trivial weight.
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        n: usize,
    },
    /// Horizontal-strip removals, once or (with `--sp`) twice.
    Pieri {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        sp: bool,
        /// Also report Sp dimensions in rank `n` (and `n+1` for `λ`).
        #[arg(long)]
        n: Option<usize>,
    },
    /// Multiplicity of `V_λ` in `(∧V)^{⊗r}` for Sp₂g.
    Multiplicity {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        g: usize,
        #[arg(long)]
        r: u32,
    },
    /// Exact polynomial through `x:y` points.
    Polyfit {
        /// Points such as `3:4,5:6,7:8`; rationals `a/b` are accepted.
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Random Burau images applied to the standard tuple, checked against the orbit conditions.
    OrbitNecessity {
        /// X or IX.
        #[arg(long, default_value = "X")]
        kind: String,
        #[arg(long)]
        n: usize,
        /// Simplex dimension; the tuple has `p + 1` vectors.
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8.0)]
        mean_length: f64,
    },
    /// Bounded breadth-first search for a word carrying the standard tuple to a target.
    OrbitSearch {
        #[arg(long, default_value = "X")]
        kind: String,
        #[arg(long)]
        n: usize,
        /// Target vectors, e.g. `0,0,1,0;0,0,0,1`.
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long, default_value_t = 4)]
        max_depth: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let global = cli.global.clone();
    let result = match global.time_limit {
        None => commands::run(&cli.command, &global),
        Some(secs) => {
            let (tx, rx) = mpsc::channel();
            let (command, g) = (cli.command.clone(), global.clone());
            std::thread::spawn(move || {
                let _ = tx.send(commands::run(&command, &g));
            });
            rx.recv_timeout(Duration::from_secs_f64(secs))
                .unwrap_or_else(|_| Err(CliError::Budget(format!("time limit of {secs} s exceeded"))))
        }
    };
    match result.and_then(|report| emit(&report, &global)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn emit(report: &commands::Report, global: &GlobalOpts) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(&report.json).expect("JSON values serialise");
    text.push('\n');
    match &global.output {
        Some(path) => std::fs::write(path, &text)
            .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", path.display())))?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| CliError::Validation(e.to_string()))?;
        }
    }
    if global.table {
        eprint!("{}", commands::render_table(&report.json));
    }
    Ok(())
}
