use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kmalg::{SpaceSpec, DEFAULT_DEGREE_CAP};
use kmalg_cli::{parse_dsl, parse_poly_text, run, CliError, Item, Options, Verb};

/// Exact computations on two curves glued with contact of order m.
///
/// Exit status: 0 success or admissible, 1 well-formed input that fails the
/// check, 2 input error.
#[derive(Parser)]
#[command(name = "kmalg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a paired operator against the generated conditions and the probe
    Check(Flags),
    /// Compose two operators
    Compose(Flags),
    /// Commutator of two operators
    Commutator(Flags),
    /// Symbol of a paired operator, or validate a written symbol
    Symbol(Flags),
    /// Poisson bracket of two symbols (or of two paired operators)
    Bracket(Flags),
    /// Print the reduced admissibility conditions
    Conditions(Flags),
    /// Extend a glued function to a polynomial on the plane
    Extend(Flags),
    /// Restrict a plane polynomial to the two branches
    Restrict(Flags),
    /// Find a glued function separating two characters
    Witness(Flags),
    /// Check the factorization identities on K0 or K1
    Nullity(Flags),
}

#[derive(Args)]
struct Flags {
    /// Glued space, written K<m>
    #[arg(long, value_parser = parse_space)]
    space: Option<SpaceSpec>,
    /// Operator order
    #[arg(long)]
    order: Option<usize>,
    /// Symbol degree
    #[arg(long)]
    degree: Option<usize>,
    /// Highest monomial degree used by the brute-force probe
    #[arg(long)]
    probe_depth: Option<usize>,
    /// Emit a JSON report
    #[arg(long)]
    json: bool,
    /// Degree cap for inputs and results; also bounds the witness search
    #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
    max_degree: usize,
    /// Embedding profile h(x) for extend/restrict (default x^(m+1))
    #[arg(long)]
    profile: Option<String>,
    /// Input files (`-` or none for stdin)
    inputs: Vec<PathBuf>,
}

fn parse_space(s: &str) -> Result<SpaceSpec, String> {
    let digits = s.strip_prefix(['K', 'k']).unwrap_or(s);
    digits
        .parse()
        .map(SpaceSpec::new)
        .map_err(|_| format!("expected K<m>, found `{s}`"))
}

fn split(command: Command) -> (Verb, Flags) {
    match command {
        Command::Check(f) => (Verb::Check, f),
        Command::Compose(f) => (Verb::Compose, f),
        Command::Commutator(f) => (Verb::Commutator, f),
        Command::Symbol(f) => (Verb::Symbol, f),
        Command::Bracket(f) => (Verb::Bracket, f),
        Command::Conditions(f) => (Verb::Conditions, f),
        Command::Extend(f) => (Verb::Extend, f),
        Command::Restrict(f) => (Verb::Restrict, f),
        Command::Witness(f) => (Verb::Witness, f),
        Command::Nullity(f) => (Verb::Nullity, f),
    }
}

fn read_inputs(verb: Verb, paths: &[PathBuf]) -> Result<Vec<Item>, CliError> {
    let stdin = || -> Result<(String, String), CliError> {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Usage(format!("reading stdin: {e}")))?;
        Ok(("<stdin>".into(), text))
    };
    let sources = if paths.is_empty() {
        if verb.takes_input() {
            vec![stdin()?]
        } else {
            vec![]
        }
    } else {
        paths
            .iter()
            .map(|p| {
                if p.as_os_str() == "-" {
                    return stdin();
                }
                std::fs::read_to_string(p)
                    .map(|t| (p.display().to_string(), t))
                    .map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))
            })
            .collect::<Result<_, _>>()?
    };
    let mut items = Vec::new();
    for (name, text) in sources {
        items.extend(parse_dsl(&text).map_err(|e| e.in_source(&name))?);
    }
    Ok(items)
}

fn execute(verb: Verb, flags: &Flags) -> Result<kmalg_cli::Report, CliError> {
    let profile = flags
        .profile
        .as_deref()
        .map(parse_poly_text)
        .transpose()
        .map_err(|e| CliError::Usage(format!("--profile: column {}: {}", e.column, e.message)))?;
    let opts = Options {
        space: flags.space,
        order: flags.order,
        degree: flags.degree,
        probe_depth: flags.probe_depth,
        max_degree: flags.max_degree,
        profile,
    };
    let items = read_inputs(verb, &flags.inputs)?;
    run(verb, &opts, &items)
}

fn main() -> ExitCode {
    let (verb, flags) = split(Cli::parse().command);
    match execute(verb, &flags) {
        Ok(report) => {
            if flags.json {
                println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("json"));
            } else {
                print!("{}", report.text());
            }
            ExitCode::from(report.verdict.exit_code() as u8)
        }
        Err(e) => {
            if flags.json {
                let obj = serde_json::json!({"verb": verb.name(), "verdict": "error", "error": e.to_string()});
                println!("{}", serde_json::to_string_pretty(&obj).expect("json"));
            }
            eprintln!("kmalg {}: {e}", verb.name());
            ExitCode::from(2)
        }
    }
}
