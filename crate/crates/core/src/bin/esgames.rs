//! Workbench front door: load document bundles, run validator suites,
//! drive the game constructions, search for uniform structures, and
//! export DOT diagrams.
//!
//! Exit codes: 0 pass, 1 validation failure, 2 input error, 3 resource
//! bound exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use esgames::doc::{check_bundle, report_to_text, Bundle};
use esgames::dot::DotView;
use esgames::limits::Limits;
use esgames::workbench::{build_construction, export_dot_doc, search_strategy_doc, BuildParams};
use esgames::Error;

#[derive(Parser)]
#[command(name = "esgames", version, about = "Event-structure games workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Validate every document in the given bundles.
    Validate {
        /// Bundle files to validate.
        paths: Vec<PathBuf>,
        /// Only let documents of this kind decide the verdict.
        #[arg(long)]
        kind: Option<String>,
        /// Report format.
        #[arg(long, value_enum, default_value = "text")]
        report: ReportFormat,
    },
    /// Run a construction and write the result as a new bundle.
    Build {
        /// One of: dual, par, bang, copycat, uniform-copycat, lift,
        /// colift, tcg.
        construction: String,
        /// Input bundle.
        #[arg(long = "in")]
        input: PathBuf,
        /// Game document (dual, par, bang, copycat, uniform-copycat, tcg).
        #[arg(long)]
        game: Option<String>,
        /// Second game document (par).
        #[arg(long)]
        with: Option<String>,
        /// Copy count (bang).
        #[arg(long)]
        copies: Option<usize>,
        /// Lift witness document (lift, colift).
        #[arg(long)]
        witness: Option<String>,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively search a strategy document for a uniform structure.
    SearchUniform {
        /// Input bundle.
        path: PathBuf,
        /// Strategy document name (defaults to the unique strategy).
        #[arg(long)]
        doc: Option<String>,
        /// Node budget for the search.
        #[arg(long)]
        bound: Option<u64>,
        /// Include the exhaustiveness certificate in a negative result.
        #[arg(long)]
        certificate: bool,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a document as DOT.
    ExportDot {
        /// Input bundle.
        path: PathBuf,
        /// Document to render (defaults to the unique renderable one).
        #[arg(long)]
        doc: Option<String>,
        /// What to draw: causality, conflict, or family.
        #[arg(long, default_value = "causality")]
        view: String,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the bundled fixture catalog into a directory.
    Fixtures {
        #[arg(long)]
        out_dir: PathBuf,
    },
}

fn limits_from_env() -> Limits {
    let mut limits = Limits::default();
    if let Ok(value) = std::env::var("ESGAMES_MAX_CONFIGS") {
        match value.parse::<usize>() {
            Ok(v) if v > 0 => limits.max_configs = v,
            _ => eprintln!("warning: ignoring malformed ESGAMES_MAX_CONFIGS `{value}`"),
        }
    }
    limits
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::ConfigBound { .. }
        | Error::GroupBound { .. }
        | Error::SearchBound(_)
        | Error::TooManyEvents(_) => 3,
        _ => 2,
    }
}

fn load_bundle(path: &Path) -> Result<Bundle, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    Bundle::from_json(&text)
}

fn write_output(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_validate(
    paths: &[PathBuf],
    kind: &Option<String>,
    format: ReportFormat,
    limits: &Limits,
) -> Result<u8, Error> {
    if paths.is_empty() {
        return Err(Error::Invalid("no bundle files given".into()));
    }
    let mut all_ok = true;
    let mut rendered = Vec::new();
    for path in paths {
        let bundle = load_bundle(path)?;
        let mut report = check_bundle(&bundle, limits)?;
        if let Some(kind) = kind {
            report.documents.retain(|d| &d.kind == kind);
            report.ok = report.documents.iter().all(|d| d.ok);
        }
        all_ok &= report.ok;
        rendered.push(match format {
            ReportFormat::Text => format!("== {}\n{}", path.display(), report_to_text(&report)),
            ReportFormat::Json => {
                serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
            }
        });
    }
    for r in rendered {
        print!("{r}");
    }
    Ok(if all_ok { 0 } else { 1 })
}

fn run_fixtures(out_dir: &Path) -> Result<u8, Error> {
    std::fs::create_dir_all(out_dir)
        .map_err(|e| Error::Invalid(format!("cannot create {}: {e}", out_dir.display())))?;
    for (name, bundle) in esgames::fixtures::catalog()? {
        let path = out_dir.join(format!("{name}.json"));
        std::fs::write(&path, bundle.to_json() + "\n")
            .map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))?;
        println!("wrote {}", path.display());
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = limits_from_env();
    let result = match &cli.command {
        Command::Validate {
            paths,
            kind,
            report,
        } => run_validate(paths, kind, *report, &limits),
        Command::Build {
            construction,
            input,
            game,
            with,
            copies,
            witness,
            out,
        } => load_bundle(input).and_then(|bundle| {
            let params = BuildParams {
                game: game.clone(),
                with: with.clone(),
                copies: *copies,
                witness: witness.clone(),
            };
            let output = build_construction(&bundle, construction, &params, &limits)?;
            write_output(out, &(output.to_json() + "\n"))?;
            Ok(0)
        }),
        Command::SearchUniform {
            path,
            doc,
            bound,
            certificate,
            out,
        } => load_bundle(path).and_then(|bundle| {
            let text =
                search_strategy_doc(&bundle, doc.as_deref(), *bound, *certificate, &limits)?;
            write_output(out, &text)?;
            Ok(0)
        }),
        Command::ExportDot {
            path,
            doc,
            view,
            out,
        } => load_bundle(path).and_then(|bundle| {
            let view: DotView = view.parse().map_err(Error::Invalid)?;
            let text = export_dot_doc(&bundle, doc.as_deref(), view)?;
            write_output(out, &text)?;
            Ok(0)
        }),
        Command::Fixtures { out_dir } => run_fixtures(out_dir),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
