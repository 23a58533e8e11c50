use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use clarr_core::bundled;
use clarr_core::global::TjurinaMethod;
use clarr_core::report::{analyze, verify_scene, AnalyzeOptions, Report, Status};
use clarr_core::scene::Scene;
use clarr_core::Error;

mod render;

#[derive(Parser)]
#[command(name = "clarr", version, about = "Freeness and invariants of plane curve arrangements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum TauArg {
    Global,
    Local,
    Both,
}

impl From<TauArg> for TjurinaMethod {
    fn from(t: TauArg) -> Self {
        match t {
            TauArg::Global => TjurinaMethod::Global,
            TauArg::Local => TjurinaMethod::Local,
            TauArg::Both => TjurinaMethod::Both,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    A,
    B1,
    B2,
    FreeCase,
    Identities,
}

impl Theorem {
    fn name(self) -> &'static str {
        match self {
            Theorem::A => "A",
            Theorem::B1 => "B1",
            Theorem::B2 => "B2",
            Theorem::FreeCase => "free-case",
            Theorem::Identities => "identities",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute the full invariant report of a scene.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Include per-stage wall-clock timings.
        #[arg(long)]
        timing: bool,
        /// How to compute the total Tjurina number.
        #[arg(long, value_enum, default_value = "both")]
        tau: TauArg,
    },
    /// Run one addition-deletion verifier on a scene.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, ignore_case = true)]
        theorem: Theorem,
        /// A component id, or an inline JSON component for the addition forms.
        #[arg(long)]
        target: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Bundled example scenes.
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
}

#[derive(Subcommand)]
enum ExamplesAction {
    /// List bundled scene names.
    List,
    /// Run a bundled scene and compare it with its manifest.
    Run {
        name: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Print the JSON source of a bundled scene.
    Show { name: String },
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::UnrepresentablePoint(_) => 3,
        Error::IdentityViolated(_) => 4,
        Error::Schema(_)
        | Error::Parse(_)
        | Error::InvalidComponent(_)
        | Error::NotReduced(_)
        | Error::SingularConic(_)
        | Error::EmptyCurve
        | Error::UnknownId(_)
        | Error::NotALine(_)
        | Error::NotAConic(_)
        | Error::LastComponent(_)
        | Error::MissingSingularData(_) => 2,
        _ => 1,
    }
}

fn status_code(s: Status) -> u8 {
    match s {
        Status::Ok => 0,
        Status::IdentityViolated => 4,
        Status::VerdictViolated => 5,
    }
}

struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(error_code(&e), e.to_string())
    }
}

fn load(path: &PathBuf) -> Result<Scene, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure(2, format!("cannot read {}: {e}", path.display())))?;
    Ok(Scene::from_json(&text)?)
}

fn emit(value: &Value, format: Format) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(value).expect("reports serialize")
        ),
        Format::Text => print!("{}", render::text(value)),
    }
}

fn finish(report: &Report, format: Format) -> u8 {
    emit(&report.value, format);
    status_code(report.status)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Analyze {
            file,
            format,
            timing,
            tau,
        } => {
            let scene = load(&file)?;
            let opts = AnalyzeOptions {
                tau: tau.into(),
                timing,
            };
            Ok(finish(&analyze(&scene, opts)?, format))
        }
        Command::Verify {
            file,
            theorem,
            target,
            format,
        } => {
            let scene = load(&file)?;
            let report = verify_scene(&scene, theorem.name(), target.as_deref())?;
            Ok(finish(&report, format))
        }
        Command::Examples { action } => match action {
            ExamplesAction::List => {
                for n in bundled::names() {
                    println!("{n}");
                }
                Ok(0)
            }
            ExamplesAction::Show { name } => {
                print!("{}", bundled::scene_source(&name)?);
                Ok(0)
            }
            ExamplesAction::Run { name, format } => {
                let scene = bundled::scene(&name)?;
                let manifest = bundled::manifest(&name)?;
                let report = analyze(&scene, AnalyzeOptions::default())?;
                emit(&report.value, format);
                let mismatches = manifest.check(&report.value);
                for m in &mismatches {
                    eprintln!(
                        "mismatch at {}: expected {}, found {}",
                        m.pointer, m.expected, m.found
                    );
                }
                if !mismatches.is_empty() {
                    eprintln!("{name}: FAIL ({} mismatches)", mismatches.len());
                    return Ok(6);
                }
                eprintln!("{name}: pass ({} checks)", manifest.checks.len());
                Ok(status_code(report.status))
            }
        },
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("CLARR_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure(2, format!("CLARR_THREADS must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure(1, e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(cli)) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_partition_errors() {
        assert_eq!(error_code(&Error::Schema("x".into())), 2);
        assert_eq!(error_code(&Error::SingularConic("c".into())), 2);
        assert_eq!(error_code(&Error::NotReduced("f".into())), 2);
        assert_eq!(error_code(&Error::UnrepresentablePoint("p".into())), 3);
        assert_eq!(error_code(&Error::IdentityViolated("i".into())), 4);
        assert_eq!(error_code(&Error::StabilizationFailure(8)), 1);
        assert_eq!(status_code(Status::Ok), 0);
        assert_eq!(status_code(Status::IdentityViolated), 4);
        assert_eq!(status_code(Status::VerdictViolated), 5);
    }
}
