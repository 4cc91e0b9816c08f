use std::path::PathBuf;
use std::process::ExitCode;

use biham_cli::{
    cmd_check, cmd_classify3_lie, cmd_classify3_linear, cmd_construct, cmd_flatness, cmd_genericity, cmd_verify_paper,
    CliError, ConstructArgs, Report, EXIT_OK, EXIT_USAGE,
};
use clap::{Args, Parser, Subcommand};

/// Flatness of Veronese webs from compatible Poisson pencils, in exact arithmetic.
#[derive(Parser, Debug)]
#[command(name = "biham", version)]
struct Cli {
    /// Emit canonical JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized point searches.
    #[arg(long, global = true, default_value_t = 0x5eed_2024)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Jacobi identity, unimodular ideal, modular vector and center of an algebra file.
    Check { path: PathBuf },
    /// Flatness verdict of a pencil at a point.
    Flatness {
        path: PathBuf,
        /// Comma-separated rationals; defaults to the file's base_point, then to a seeded search.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Compatibility and genericity certificate of a pencil.
    Genericity {
        path: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Build an algebra or pencil file.
    Construct(ConstructCmd),
    /// Recompute the golden facts of the registry.
    VerifyPaper {
        #[arg(long, conflicts_with = "all")]
        case: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Classify a three-dimensional linear pair (--b2, --b3) or Lie pair (--algebra2).
    Classify3 {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, requires = "b3", allow_hyphen_values = true)]
        b2: Option<String>,
        #[arg(long, requires = "b2", allow_hyphen_values = true)]
        b3: Option<String>,
        #[arg(long, conflicts_with_all = ["b2", "b3"])]
        algebra2: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct ConstructCmd {
    /// truncated | secondary | affine | special-affine | ava | product | deformed | prop4 | prop7
    kind: String,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    input2: Option<PathBuf>,
    /// Combination of basis labels, e.g. `e5` or `2*e1 - e3`.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    /// Matrix rows separated by `;`, entries by `,`.
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<String>,
    /// Write the file here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn run(cli: Cli) -> Result<Result<Report, String>, CliError> {
    let seed = cli.seed;
    let report = match cli.command {
        Command::Check { path } => cmd_check(&path)?,
        Command::Flatness { path, point } => cmd_flatness(&path, point.as_deref(), seed)?,
        Command::Genericity { path, point } => cmd_genericity(&path, point.as_deref(), seed)?,
        Command::VerifyPaper { case, all } => cmd_verify_paper(case.as_deref(), all)?,
        Command::Classify3 { algebra, b2, b3, algebra2 } => match (b2, b3, algebra2) {
            (Some(b2), Some(b3), None) => cmd_classify3_linear(&algebra, &b2, &b3)?,
            (None, None, Some(a2)) => cmd_classify3_lie(&algebra, &a2)?,
            _ => return Err(CliError::Usage("classify3 needs --b2 and --b3, or --algebra2".into())),
        },
        Command::Construct(c) => {
            let args = ConstructArgs {
                kind: c.kind,
                m: c.m,
                n: c.n,
                a: c.a,
                input: c.input,
                input2: c.input2,
                alpha: c.alpha,
                beta: c.beta,
                phi: c.phi,
            };
            let text = biham::serial::to_canonical_string(&cmd_construct(&args)?);
            return match c.output {
                Some(path) => {
                    std::fs::write(&path, &text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                    Ok(Err(format!("wrote {}\n", path.display())))
                }
                None => Ok(Err(text)),
            };
        }
    };
    Ok(Ok(report))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { EXIT_OK as u8 });
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok(Ok(report)) => {
            print!("{}", if json { report.to_json() } else { report.to_text() });
            ExitCode::from(report.exit_code as u8)
        }
        Ok(Err(raw)) => {
            print!("{raw}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            if json {
                print!(
                    "{}",
                    biham::serial::to_canonical_string(&serde_json::json!({ "error": e.to_string(), "exit_code": e.exit_code() }))
                );
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
