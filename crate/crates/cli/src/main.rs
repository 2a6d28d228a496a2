mod commands;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::json;
use sftclass::DEFAULT_POINTED_BOUND;

use commands::RealizeArgs;
use report::{Report, CONVENTION};

/// Classify one-sided topological Markov shifts.
///
/// Exit codes: 0 success or positive decision, 1 negative decision,
/// 2 invalid input, 3 undecided.
#[derive(Parser)]
#[command(name = "sftclass", version)]
struct Cli {
    /// Emit the structured JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Echo the transpose convention used for BF groups.
    #[arg(long, global = true)]
    transpose_convention: bool,
    /// Largest torsion coset searched when deciding pointed isomorphism.
    #[arg(long, global = true, default_value_t = DEFAULT_POINTED_BOUND)]
    pointed_bound: u64,
    /// Append wall-clock time to the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a matrix against the classification hypotheses.
    Validate { file: String },
    /// Print (BF(A^t), u_A, sign det(id-A)), K-theory and the full-group abelianization.
    Invariant { file: String },
    /// Decide continuous orbit equivalence.
    Coe { a: String, b: String },
    /// Decide flow equivalence.
    Flow { a: String, b: String },
    /// Build a matrix with a prescribed invariant.
    Realize {
        #[arg(long, default_value_t = 0)]
        free_rank: usize,
        /// Invariant factors m1,m2,... with each dividing the next.
        #[arg(long, default_value = "")]
        torsion: String,
        /// Canonical coordinates: free coordinates, then torsion coordinates.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        sign: i8,
        #[arg(long)]
        output: Option<String>,
        /// Stop at the nonnegative integer matrix.
        #[arg(long)]
        no_edge_shift: bool,
    },
    /// Decide whether a locally constant function has a positive class.
    Positivity { matrix: String, function: String },
    /// List periodic orbits up to period p and check counts against traces.
    Periodic { matrix: String, p: usize },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Invariant { .. } => "invariant",
            Command::Coe { .. } => "coe",
            Command::Flow { .. } => "flow",
            Command::Realize { .. } => "realize",
            Command::Positivity { .. } => "positivity",
            Command::Periodic { .. } => "periodic",
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let start = Instant::now();
    let mut report = Report::new(cli.command.name());
    if cli.transpose_convention {
        report.convention = Some(CONVENTION);
    }
    let outcome = match &cli.command {
        Command::Validate { file } => commands::validate_cmd(&mut report, file),
        Command::Invariant { file } => commands::invariant_cmd(&mut report, file),
        Command::Coe { a, b } => commands::coe_cmd(&mut report, a, b, cli.pointed_bound),
        Command::Flow { a, b } => commands::flow_cmd(&mut report, a, b),
        Command::Realize {
            free_rank,
            torsion,
            point,
            sign,
            output,
            no_edge_shift,
        } => commands::realize_cmd(
            &mut report,
            &RealizeArgs {
                free_rank: *free_rank,
                torsion,
                point: point.as_deref(),
                sign: *sign,
                output: output.as_deref(),
                edge_shift: !no_edge_shift,
                bound: cli.pointed_bound,
            },
        ),
        Command::Positivity { matrix, function } => commands::positivity_cmd(&mut report, matrix, function),
        Command::Periodic { matrix, p } => commands::periodic_cmd(&mut report, matrix, *p),
    };
    if let Err(e) = outcome {
        report.fail(&e);
    }
    if cli.timing {
        report.timing = Some(json!({ "elapsed_ms": start.elapsed().as_secs_f64() * 1e3 }));
    }
    if cli.json {
        println!("{}", report.to_json());
    } else if matches!(report.outcome, "error" | "undecided") {
        eprint!("{}", report.to_text());
    } else {
        print!("{}", report.to_text());
    }
    ExitCode::from(report.status as u8)
}
