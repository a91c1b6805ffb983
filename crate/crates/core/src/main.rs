use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cotorsion_lab::bijections::{verify_all, Lab};
use cotorsion_lab::derived::DerivedModel;
use cotorsion_lab::linalg::Field;
use cotorsion_lab::quiver_rep::{indec_catalog, Quiver, QuiverConfig};
use cotorsion_lab::report::{self, Format};
use cotorsion_lab::subcat::{StarConfig, DEFAULT_WINDOW};
use cotorsion_lab::LabError;

#[derive(Parser)]
#[command(name = "cotorsion-lab", version, about = "Co-t-structures, cotorsion pairs and torsion pairs for type A quivers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the indecomposable modules with their Hom and Ext tables.
    Catalog(Common),
    /// Enumerate the three families independently.
    Enumerate(Common),
    /// Check that the maps between the families are mutually inverse bijections.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Test hook: zero the first nonzero Ext entry of the Hom table.
        #[arg(long)]
        inject_fault: bool,
    },
    /// Draw the AR strip of the linear A_3 example with one intermediate structure marked.
    ExampleA3 {
        #[command(flatten)]
        output: Output,
        /// Index of the intermediate co-t-structure in enumeration order.
        #[arg(long, default_value_t = 0)]
        pick: usize,
    },
}

#[derive(Args)]
struct Common {
    /// Dynkin type; only A is supported.
    #[arg(long = "type", default_value = "A")]
    kind: String,
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// `linear`, or one bit per arrow: 0 for i -> i+1, 1 for i+1 -> i.
    #[arg(long, default_value = "linear")]
    orientation: String,
    /// JSON quiver config; overrides --type, --n and --orientation.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    field_order: u32,
    #[arg(long, default_value_t = DEFAULT_WINDOW)]
    window: i32,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = FormatArg::Md)]
    format: FormatArg,
    /// Directory for the report file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Md,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Md => Format::Markdown,
        }
    }
}

enum Failure {
    Usage(String),
    Verification,
    Internal(String),
}

impl From<LabError> for Failure {
    fn from(e: LabError) -> Self {
        match e {
            LabError::NotTypeA(_) | LabError::Config(_) => Failure::Usage(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

fn quiver(c: &Common) -> Result<Quiver, Failure> {
    let cfg = match &c.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            serde_json::from_str::<QuiverConfig>(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
        }
        None => QuiverConfig { kind: c.kind.clone(), n: c.n, orientation: Some(c.orientation.clone()), arrows: None },
    };
    Ok(cfg.build()?)
}

fn model(c: &Common) -> Result<DerivedModel, Failure> {
    let field = Field::new(c.field_order)
        .ok_or_else(|| Failure::Usage(format!("field order {} is not a supported prime", c.field_order)))?;
    Ok(DerivedModel::new(indec_catalog(&quiver(c)?, field)?)?)
}

fn emit(out: &Output, stem: &str, json: String, md: String) -> Result<(), Failure> {
    let format = Format::from(out.format);
    let text = match format {
        Format::Json => json,
        Format::Markdown => md,
    };
    if let Some(dir) = &out.out {
        write_report(dir, &format!("{stem}.{}", format.extension()), &text)?;
    }
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    Ok(())
}

fn write_report(dir: &Path, name: &str, text: &str) -> Result<(), Failure> {
    std::fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Catalog(c) => {
            let m = model(&c)?;
            let r = report::catalog_report(m.catalog());
            emit(&c.output, "catalog", report::to_json(&r), report::catalog_markdown(m.catalog(), &r))
        }
        Command::Enumerate(c) => {
            let lab = Lab::new(model(&c)?, c.window, StarConfig::default())?;
            let r = report::enumeration_report(&lab)?;
            emit(&c.output, "enumerate", report::to_json(&r), report::enumeration_markdown(&r))
        }
        Command::Verify { common, inject_fault } => {
            let mut m = model(&common)?;
            if inject_fault && m.inject_fault(None).is_none() {
                return Err(Failure::Usage("there is no nonzero Ext entry to perturb".into()));
            }
            let r = verify_all(m, common.window, StarConfig::default())?;
            emit(&common.output, "verify", report::to_json(&r), report::verification_markdown(&r))?;
            if r.passed() {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::ExampleA3 { output, pick } => {
            let lab = report::example_lab(DEFAULT_WINDOW)?;
            let r = report::example_figure(&lab, pick)?;
            emit(&output, "example-a3", report::to_json(&r), report::figure_markdown(&r))?;
            if r.verified {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
