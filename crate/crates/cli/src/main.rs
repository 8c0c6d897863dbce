use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use blowdown_cli::{rejected, run, Command, JobConfig, Outcome, EXIT_INVALID};
use clap::{Parser, Subcommand};

/// Exact toric models for the symplectic rational blowdown.
///
/// Every subcommand reads a JSON payload (`--json FILE`, or `-` for stdin).
/// Exit status: 0 success, 1 infeasible, 2 invalid input.
#[derive(Parser)]
#[command(name = "blowdown", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(clap::Args)]
struct Input {
    /// Payload file, or `-` for stdin.
    #[arg(long, value_name = "FILE|-", default_value = "-")]
    json: String,
    /// Write the emitted document here instead of stdout (or the path in the job).
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Sub {
    /// Run a full job document whose `command` field picks the action.
    Job(Input),
    /// Negative continued fractions: expand `n/m` or evaluate `terms`.
    Cf(Input),
    /// Convergents, domain and edge spheres of the chain `C_n`.
    Chain(Input),
    /// Intersection form and boundary lens of a linear plumbing.
    Plumbing(Input),
    /// Does a rational ball fit under a chain?
    Fit(Input),
    /// Volume and invariant report for blowing down a chain.
    Blowdown(Input),
    /// Lens type of a domain corner.
    Lens(Input),
    /// Balance rule for 3-fold sum diagrams.
    Diagram(Input),
    /// SVG figures.
    Render(Input),
}

fn read_input(spec: &str) -> io::Result<String> {
    if spec == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(spec)
    }
}

fn emit(outcome: &Outcome, override_path: Option<&PathBuf>) -> io::Result<()> {
    let mut stdout = io::stdout().lock();
    for doc in &outcome.documents {
        let target = override_path
            .cloned()
            .or_else(|| doc.path.as_ref().map(PathBuf::from));
        match target {
            Some(path) => fs::write(path, &doc.content)?,
            None => stdout.write_all(doc.content.as_bytes())?,
        }
    }
    stdout.flush()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, input) = match &cli.command {
        Sub::Job(i) => (None, i),
        Sub::Cf(i) => (Some(Command::Cf), i),
        Sub::Chain(i) => (Some(Command::Chain), i),
        Sub::Plumbing(i) => (Some(Command::Plumbing), i),
        Sub::Fit(i) => (Some(Command::Fit), i),
        Sub::Blowdown(i) => (Some(Command::Blowdown), i),
        Sub::Lens(i) => (Some(Command::Lens), i),
        Sub::Diagram(i) => (Some(Command::Diagram), i),
        Sub::Render(i) => (Some(Command::Render), i),
    };
    let text = match read_input(&input.json) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("blowdown: cannot read {}: {e}", input.json);
            return ExitCode::from(EXIT_INVALID);
        }
    };
    let parsed = match command {
        Some(c) => JobConfig::from_json_for(c, &text),
        None => JobConfig::from_json(&text),
    };
    let outcome = match parsed {
        Ok(job) => run(&job),
        Err(e) => {
            eprintln!("blowdown: {e}");
            rejected(e)
        }
    };
    if let Err(e) = emit(&outcome, input.output.as_ref()) {
        eprintln!("blowdown: cannot write output: {e}");
        return ExitCode::from(EXIT_INVALID);
    }
    ExitCode::from(outcome.exit_code)
}
