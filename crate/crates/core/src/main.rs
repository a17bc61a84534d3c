//! Command-line front end.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use wildram::cli::{parse_spec_with_cap, run_modes, LogSetSpec, Mode, Options, Report};
use wildram::Error;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Conductors, characteristic form, cleanliness and loci.
    Analyze,
    /// Blow up until E is empty and analyze every chart.
    Resolve,
    /// CC^log and the characteristic cycle.
    Cc,
    /// Singular support.
    Ss,
    /// Surface point invariants and the surface characteristic cycle.
    Surface,
}

#[derive(Debug, Parser)]
#[command(name = "wildram", version, about = "Ramification invariants and characteristic cycles of rank-one sheaves")]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    /// Problem file.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Largest accepted Witt length.
    #[arg(long, default_value_t = wildram::cli::DEFAULT_WITT_CAP, global = true)]
    witt_cap: usize,
    /// Largest number of nested blow-ups.
    #[arg(long, default_value_t = wildram::blowup::DEFAULT_STEP_CAP, global = true)]
    step_cap: usize,
    /// "auto", "none" or a list such as "1,2".
    #[arg(long, global = true)]
    log_set: Option<String>,
}

fn run(cli: Cli) -> Result<String, Error> {
    let path = cli.input.ok_or_else(|| Error::invalid("--input FILE is required"))?;
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
    let spec = parse_spec_with_cap(&text, cli.witt_cap)?;
    let log_set = cli
        .log_set
        .as_deref()
        .map(|s| LogSetSpec::parse(s).map_err(Error::invalid))
        .transpose()?;
    let opts = Options {
        witt_cap: cli.witt_cap,
        step_cap: cli.step_cap,
        log_set,
    };
    let modes = match cli.command {
        Some(Command::Analyze) => vec![Mode::Analyze],
        Some(Command::Resolve) => vec![Mode::Resolve],
        Some(Command::Cc) => vec![Mode::Cc],
        Some(Command::Ss) => vec![Mode::Ss],
        Some(Command::Surface) => vec![Mode::Surface],
        None if spec.outputs.is_empty() => {
            return Err(Error::invalid("no subcommand given and the problem file requests no outputs"))
        }
        None => spec.outputs.clone(),
    };
    let reports: Vec<Report> = run_modes(&spec, &modes, &opts)?;
    Ok(match cli.format {
        Format::Text => reports.iter().map(Report::to_text).collect::<Vec<_>>().join("\n"),
        Format::Structured if reports.len() == 1 => reports[0].to_structured() + "\n",
        Format::Structured => serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n",
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    match run(cli) {
        Ok(text) => {
            if let Some(path) = out {
                if let Err(e) = std::fs::write(&path, text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
