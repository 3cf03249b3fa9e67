use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use tambara_cli::commands::{self, Options};
use tambara_cli::{CliError, Report};
use tambara_core::Exec;

#[derive(Parser)]
#[command(name = "tambara", version, about = "Finite coends, Tambara modules, optics and dependent lenses")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Skeleton and truncation bound.
    #[arg(long, global = true, default_value_t = 2)]
    bound: usize,
    /// Node budget for every enumeration.
    #[arg(long, global = true, default_value_t = 2_000_000)]
    budget: u64,
    /// Corpus seed.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Carrier bound for the dependent-lens sweeps.
    #[arg(long, global = true, default_value_t = 3)]
    max_size: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Report every timing as 0, for byte-identical reruns.
    #[arg(long, global = true)]
    no_timing: bool,
    /// Run sweeps on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run the law checker of every declaration in an instance file.
    Check { file: String },
    /// Coends of endo-profunctors, checked against the brute-force oracle.
    Coend { file: String, #[arg(long)] name: Option<String> },
    /// Ends of endo-profunctors, checked against the brute-force oracle.
    End { file: String, #[arg(long)] name: Option<String> },
    /// Optic hom-sets of declared optics or of a lens `s,a,b,t`.
    OpticHom {
        file: Option<String>,
        #[arg(long)]
        name: Option<String>,
        #[arg(long, value_parser = parse_four, value_name = "S,A,B,T")]
        lens: Option<[usize; 4]>,
    },
    /// Free and cofree adjunctions on a file or on corpus instances.
    Adjunction { file: Option<String> },
    /// Dependent-lens lemma sweep, equivalence and truncation checks.
    DlensSuite,
    /// Representation check on a file or on corpus instances.
    RepCheck { file: Option<String>, #[arg(long)] name: Option<String> },
    /// All acceptance criteria.
    Suite {
        /// Run only these criteria (1-based).
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
    /// Print the lens instance `s,a,b,t` as an instance file.
    ExportLens {
        #[arg(value_parser = parse_four, default_value = "2,2,2,2", value_name = "S,A,B,T")]
        sizes: [usize; 4],
    },
    /// Print a corpus instance as an instance file.
    ExportCorpus,
}

fn parse_four(s: &str) -> Result<[usize; 4], String> {
    let v: Vec<usize> = s.split(',').map(|x| x.trim().parse::<usize>().map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
    v.try_into().map_err(|_| "expected four comma-separated sizes".to_string())
}

fn run(cli: &Cli) -> Result<Option<Report>, CliError> {
    let opts = Options {
        bound: cli.bound,
        budget: cli.budget,
        seed: cli.seed,
        max_size: cli.max_size,
        exec: if cli.sequential { Exec::Sequential } else { Exec::default() },
    };
    Ok(Some(match &cli.command {
        Command::Check { file } => commands::check(file)?,
        Command::Coend { file, name } => commands::coend_or_end(file, name.as_deref(), false)?,
        Command::End { file, name } => commands::coend_or_end(file, name.as_deref(), true)?,
        Command::OpticHom { file, name, lens } => {
            commands::optic_hom_cmd(file.as_deref(), name.as_deref(), *lens, &opts)?
        }
        Command::Adjunction { file } => commands::adjunction_cmd(file.as_deref(), &opts)?,
        Command::DlensSuite => commands::dlens_suite(&opts)?,
        Command::RepCheck { file, name } => commands::rep_check(file.as_deref(), name.as_deref(), &opts)?,
        Command::Suite { only } => commands::suite(only, &opts)?,
        Command::ExportLens { sizes } => {
            print!("{}", commands::export_lens(*sizes, cli.bound)?);
            return Ok(None);
        }
        Command::ExportCorpus => {
            print!("{}", commands::export_corpus(cli.seed)?);
            return Ok(None);
        }
    }))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(report)) => {
            let report = if cli.no_timing { report.without_timings() } else { report };
            match cli.format {
                Format::Json => print!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
