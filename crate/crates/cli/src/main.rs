mod selftest;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qhc_core::catalog::{all_entries, catalog_get, fixture_modules, Label};
use qhc_core::connection::{default_degree_bound, natural_connection, verify_properties};
use qhc_core::gradmod::{canonical_embedding, check_c1, check_c2, check_c3};
use qhc_core::{report, CurveSpec, Error, ModuleSpec, QuasiCurve};
use serde_json::Value;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser)]
#[command(name = "qhc", version, about = "Graded modules and connections over quasi-homogeneous plane curves")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Degree bound for oracles and verification.
    #[arg(long, global = true)]
    max_degree: Option<i64>,
    /// Random samples per verified property.
    #[arg(long, global = true, default_value_t = 100)]
    samples: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect a curve given as JSON.
    Curve {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[command(subcommand)]
        action: CurveAction,
    },
    /// Check or connect a module presented in the normalization.
    Module {
        #[arg(long, value_name = "FILE")]
        curve: PathBuf,
        #[arg(long, value_name = "FILE")]
        module: PathBuf,
        #[command(subcommand)]
        action: ModuleAction,
    },
    /// Built-in ADE and y(x^n - y^m) curves.
    Catalog {
        /// Label such as `E_7` or `Y(3,2)`, or a family letter with --index.
        #[arg(long)]
        label: Option<String>,
        #[arg(long)]
        index: Option<u32>,
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Quick end-to-end consistency run over the catalog.
    Selftest,
}

#[derive(Subcommand, Clone, Copy)]
enum CurveAction {
    Info,
    Branches,
    Semigroups,
    Derivations,
}

#[derive(Subcommand, Clone, Copy)]
enum ModuleAction {
    Check,
    Connect,
}

#[derive(Subcommand, Clone, Copy)]
enum CatalogAction {
    List,
    Info,
    Fixtures,
}

/// What to print and which exit code to use.
struct Output {
    value: Value,
    code: u8,
}

impl Output {
    fn ok(value: Value) -> Self {
        Output { value, code: 0 }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_curve(path: &Path) -> Result<QuasiCurve, Error> {
    CurveSpec::parse(&read(path)?)?.to_curve()
}

fn resolve_label(label: &str, index: Option<u32>) -> Result<Label, Error> {
    match index {
        Some(i) => Label::from_parts(label, i),
        None => Label::parse(label),
    }
}

fn family(l: &Label) -> char {
    l.to_string().chars().next().unwrap_or('?')
}

fn run(cli: &Cli) -> Result<Output, Error> {
    match &cli.command {
        Command::Curve { input, action } => {
            let c = load_curve(input)?;
            Ok(Output::ok(match action {
                CurveAction::Info => report::curve_info(&c),
                CurveAction::Branches => report::branches(&c),
                CurveAction::Semigroups => report::semigroups(&c, cli.max_degree)?,
                CurveAction::Derivations => report::derivations(&c)?,
            }))
        }
        Command::Module { curve, module, action } => {
            let c = load_curve(curve)?;
            let m = ModuleSpec::parse(&read(module)?)?.to_module(&c)?;
            match action {
                ModuleAction::Check => {
                    let canon = canonical_embedding(&c, &m)?;
                    let (c1, c2) = (check_c1(&c, &canon)?, check_c2(&c, &canon)?);
                    Ok(Output::ok(report::module_check(&c, &canon, &c1, &c2, check_c3(&canon))))
                }
                ModuleAction::Connect => {
                    let mut rep = natural_connection(&c, &m)?;
                    if !rep.path.succeeded() {
                        return Ok(Output { value: report::connection(&rep), code: 3 });
                    }
                    let bound = match cli.max_degree {
                        Some(b) => b,
                        None => default_degree_bound(&c, &rep.module)?,
                    };
                    rep.verified = Some(verify_properties(&c, &rep, bound, cli.samples, cli.seed)?);
                    Ok(Output::ok(report::connection(&rep)))
                }
            }
        }
        Command::Catalog { label, index, action } => match action {
            CatalogAction::List => {
                let mut entries = all_entries()?;
                if let Some(l) = label {
                    let want = l.chars().next().map(|c| c.to_ascii_uppercase());
                    entries.retain(|e| Some(family(&e.label)) == want);
                }
                Ok(Output::ok(report::catalog_list(&entries)))
            }
            CatalogAction::Info | CatalogAction::Fixtures => {
                let l = label.as_deref().ok_or_else(|| Error::UnknownLabel("--label is required".into()))?;
                let entry = catalog_get(resolve_label(l, *index)?)?;
                Ok(Output::ok(match action {
                    CatalogAction::Info => report::catalog_entry(&entry),
                    _ => report::fixtures(&entry, &fixture_modules(&entry)?),
                }))
            }
        },
        Command::Selftest => {
            let (value, ok) = selftest::run(cli.samples.min(20), cli.seed);
            Ok(Output { value, code: if ok { 0 } else { 2 } })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&out.value).expect("report serializes") + "\n",
                Format::Text => report::to_text(&out.value),
            };
            let _ = io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_internal() { 2 } else { 1 })
        }
    }
}
