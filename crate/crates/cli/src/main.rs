//! `stratkit` command-line tool.
//!
//! Exit codes: 0 success, 1 verdict mismatch or failed precondition,
//! 2 bad input, 3 internal disagreement between equivalent conditions.

mod render;

use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use stratkit::decomposition::{coarsen, theorem_a, theorem_b};
use stratkit::io::{self, Document, GenKind, GenParams};
use stratkit::oracle;
use stratkit::{classify, Error, Level, PosetStratification};

const MAX_POINTS_VAR: &str = "STRATKIT_MAX_POINTS";

#[derive(Parser)]
#[command(
    name = "stratkit",
    version,
    about = "Decompositions and stratifications of finite spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Full classification report for a decomposition.
    Check {
        doc: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Highest level reached: decomposition, alexandrov, poset-stratified or stratification.
    Classify {
        doc: String,
        /// Exit 1 unless the level is exactly this one.
        #[arg(long)]
        expect: Option<Level>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// The decomposition space as a space document.
    Quotient { doc: String },
    /// The decomposition preorder as a proset document.
    Preorder {
        doc: String,
        /// Emit Graphviz instead.
        #[arg(long)]
        dot: bool,
    },
    /// Merge equivalent strata into a poset-stratification.
    Coarsen { doc: String },
    /// The poset-stratification underlying a stratification.
    TheoremA { doc: String },
    /// Check that an open poset-stratification is a stratification.
    TheoremB {
        doc: String,
        order: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run every check on all small spaces and partitions.
    Verify {
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        points: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Seeded random preorder or partition.
    Gen {
        #[arg(long)]
        kind: GenKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = GenParams::default().density)]
        density: f64,
        /// Number of strata (partitions only).
        #[arg(long)]
        k: Option<usize>,
    },
    /// The built-in fixture catalog.
    Fixture {
        #[command(subcommand)]
        action: FixtureAction,
    },
    /// Graphviz for a poset or a decomposition.
    ExportDot { doc: String },
}

#[derive(Subcommand)]
enum FixtureAction {
    List,
    Show { name: String },
}

enum Failure {
    Mismatch(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<String, (String, Failure)>;

fn load(path: &str) -> Result<Document, Failure> {
    Ok(io::read_document(path)?)
}

fn max_points() -> Result<usize, Failure> {
    match std::env::var(MAX_POINTS_VAR) {
        Ok(v) => v.parse().map_err(|_| {
            Failure::Lib(Error::InvalidParams(format!(
                "{MAX_POINTS_VAR}={v} is not a number"
            )))
        }),
        Err(_) => Ok(oracle::ORDER_BOUND),
    }
}

fn run(command: Command) -> Outcome {
    let mut partial = String::new();
    let result = execute(command, &mut partial);
    result.map(|()| partial.clone()).map_err(|f| (partial, f))
}

fn execute(command: Command, out: &mut String) -> Result<(), Failure> {
    match command {
        Command::Check { doc, format } => {
            let d = load(&doc)?.into_decomposition()?;
            let report = classify(&d)?;
            out.push_str(&match format {
                Format::Text => render::report(&report),
                Format::Json => io::save(&Document::Classification(Box::new(report))),
            });
        }
        Command::Classify {
            doc,
            expect,
            format,
        } => {
            let d = load(&doc)?.into_decomposition()?;
            let report = classify(&d)?;
            let level = report.level;
            match format {
                Format::Text => {
                    out.push_str(&format!("{level}\n"));
                    for reason in &report.reasons {
                        out.push_str(&format!("reason: {reason}\n"));
                    }
                }
                Format::Json => {
                    out.push_str(&io::save(&Document::Classification(Box::new(report))))
                }
            }
            if let Some(expected) = expect {
                if expected != level {
                    return Err(Failure::Mismatch(format!(
                        "expected {expected}, got {level}"
                    )));
                }
            }
        }
        Command::Quotient { doc } => {
            let d = load(&doc)?.into_decomposition()?;
            out.push_str(&io::save(&Document::Space(d.decomposition_space())));
        }
        Command::Preorder { doc, dot } => {
            let d = load(&doc)?.into_decomposition()?;
            if dot {
                out.push_str(&io::export_dot_decomposition(&d)?);
            } else {
                out.push_str(&io::save(&Document::Proset(d.decomposition_preorder()?)));
            }
        }
        Command::Coarsen { doc } => {
            let d = load(&doc)?.into_decomposition()?;
            let (_, ps) = coarsen(&d)?;
            out.push_str(&io::save(&Document::PosetStratification(ps)));
        }
        Command::TheoremA { doc } => {
            let d = load(&doc)?.into_decomposition()?;
            let ps = theorem_a(&d)?;
            out.push_str(&io::save(&Document::PosetStratification(ps)));
        }
        Command::TheoremB { doc, order, format } => {
            let d = load(&doc)?.into_decomposition()?;
            let order = load(&order)?.into_poset()?;
            let ps = PosetStratification::new(d, order)?;
            let verdict = theorem_b(&ps)?;
            match format {
                Format::Text => {
                    out.push_str("stratification: yes\n");
                    out.push_str(&format!(
                        "decomposition preorder contained in order: {}\n",
                        if verdict.preorder_refines_into_order {
                            "yes"
                        } else {
                            "no"
                        }
                    ));
                }
                Format::Json => {
                    let value = serde_json::json!({
                        "stratification": verdict.stratification.is_stratification(),
                        "preorder_refines_into_order": verdict.preorder_refines_into_order,
                        "locally_closed": verdict.stratification.locally_closed,
                        "frontier": verdict.stratification.frontier,
                    });
                    out.push_str(&serde_json::to_string_pretty(&value).expect("json"));
                    out.push('\n');
                }
            }
        }
        Command::Verify {
            exhaustive,
            points,
            format,
        } => {
            if !exhaustive {
                return Err(Failure::Lib(Error::InvalidParams(
                    "only --exhaustive verification is available".into(),
                )));
            }
            let report = oracle::exhaustive_verify_with_limit(points, max_points()?)?;
            out.push_str(&match format {
                Format::Text => render::sweep(&report),
                Format::Json => io::save(&Document::Sweep(Box::new(report.clone()))),
            });
            if !report.passed() {
                let c = report
                    .counterexample
                    .as_ref()
                    .expect("failures carry a counterexample");
                return Err(Failure::Lib(Error::Defect(format!(
                    "{} failures, first in `{}`: {}",
                    report.failures, c.proposition, c.message
                ))));
            }
        }
        Command::Gen {
            kind,
            n,
            seed,
            density,
            k,
        } => {
            let params = GenParams { density, strata: k };
            out.push_str(&io::save(&io::generate(kind, n, params, seed)?));
        }
        Command::Fixture { action } => match action {
            FixtureAction::List => {
                for name in io::fixture_names() {
                    let f = io::fixture(name)?;
                    out.push_str(&format!("{name}\t{}\t{}\n", f.document.kind(), f.notes));
                }
            }
            FixtureAction::Show { name } => {
                out.push_str(&io::save(&io::fixture(&name)?.document));
            }
        },
        Command::ExportDot { doc } => {
            out.push_str(&io::export_dot(&load(&doc)?)?);
        }
    }
    Ok(())
}

fn exit_code(f: &Failure) -> u8 {
    match f {
        Failure::Mismatch(_) => 1,
        Failure::Lib(e) if e.is_defect() => 3,
        Failure::Lib(e) if e.is_precondition() => 1,
        Failure::Lib(_) => 2,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = panic::catch_unwind(AssertUnwindSafe(|| run(cli.command)));
    let mut stdout = std::io::stdout().lock();
    match outcome {
        Ok(Ok(text)) => {
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Ok(Err((text, failure))) => {
            let _ = stdout.write_all(text.as_bytes());
            let _ = stdout.flush();
            match &failure {
                Failure::Mismatch(m) => eprintln!("{m}"),
                Failure::Lib(e) => eprintln!("error: {e}"),
            }
            ExitCode::from(exit_code(&failure))
        }
        Err(_) => {
            eprintln!("error: internal assertion failed");
            ExitCode::from(3)
        }
    }
}
