use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pruferlab::decide::classify_ring;
use pruferlab::dsl::{eval_spec, parse_ring_spec, ParseError};
use pruferlab::limits::MAX_ORDER_ENV;
use pruferlab::suite::run_suite;
use pruferlab::zoo::{build_catalog, parse_predicate, search_catalog, UniverseParams};
use pruferlab::{Error, Limits};

const EXIT_FAILURE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "pruferlab", version, about = "Classify finite commutative rings in the Prüfer-like hierarchy")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one ring given as a spec, e.g. "Triv(Z/4, Self)".
    Report {
        spec: String,
        /// Largest ring order the deciders will enumerate.
        #[arg(long, env = MAX_ORDER_ENV)]
        max_order: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the reference fixtures and the transfer audit.
    Suite {
        /// Order bound of the universe the transfer audit walks.
        #[arg(long, default_value_t = 16)]
        max_order: usize,
        #[arg(long, default_value_t = 2)]
        max_depth: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List universe rings whose flags satisfy a predicate such as
    /// "prufer && !gaussian".
    Search {
        predicate: String,
        #[arg(long, default_value_t = 16)]
        max_order: usize,
        #[arg(long, default_value_t = 2)]
        max_depth: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Exit with status 1 unless there is at least one match.
        #[arg(long, conflicts_with = "expect_empty")]
        expect_some: bool,
        /// Exit with status 1 if anything matches.
        #[arg(long)]
        expect_empty: bool,
    },
    /// Classify the whole universe and export it.
    Catalog {
        #[arg(long, default_value_t = 16)]
        max_order: usize,
        #[arg(long, default_value_t = 2)]
        max_depth: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Parse(String),
    Cap(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(p) => Failure::Parse(p.to_string()),
            e if e.is_resource_cap() => Failure::Cap(e.to_string()),
            e => Failure::Other(e.to_string()),
        }
    }
}

fn parse_failure(input: &str, e: ParseError) -> Failure {
    Failure::Parse(e.render(input))
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Other(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn unsupported(format: Format, command: &str) -> Failure {
    let name = match format {
        Format::Text => "text",
        Format::Json => "json",
        Format::Csv => "csv",
    };
    Failure::Parse(format!("format {name} is not available for {command}"))
}

/// Limits for universe commands: the enumeration cap covers the universe
/// unless the environment lowers it.
fn universe_limits(max_order: usize) -> Limits {
    let limits = Limits::from_env();
    if std::env::var(MAX_ORDER_ENV).is_ok() {
        limits
    } else {
        limits.with_enumeration_cap(limits.max_enumeration_order.max(max_order))
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Report {
            spec,
            max_order,
            format,
            out,
        } => {
            let mut limits = Limits::default();
            if let Some(cap) = max_order {
                limits.max_enumeration_order = cap;
            }
            let ast = parse_ring_spec(&spec).map_err(|e| parse_failure(&spec, e))?;
            let ring = eval_spec(&ast, &limits)?;
            let report = classify_ring(&ring, &limits)?;
            let text = match format {
                Format::Text => report.to_text(),
                Format::Json => json(&report),
                Format::Csv => return Err(unsupported(format, "report")),
            };
            emit(&text, out.as_ref())
        }
        Command::Suite {
            max_order,
            max_depth,
            format,
            out,
        } => {
            let limits = universe_limits(max_order);
            let report = run_suite(UniverseParams { max_order, max_depth }, &limits);
            let text = match format {
                Format::Text => report.to_text(),
                Format::Json => json(&report),
                Format::Csv => return Err(unsupported(format, "suite")),
            };
            emit(&text, out.as_ref())?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Other("suite failed".into()))
            }
        }
        Command::Search {
            predicate,
            max_order,
            max_depth,
            format,
            out,
            expect_some,
            expect_empty,
        } => {
            let pred = parse_predicate(&predicate).map_err(|e| parse_failure(&predicate, e))?;
            let params = UniverseParams { max_order, max_depth };
            let catalog = build_catalog(params, &universe_limits(max_order))?;
            let outcome = search_catalog(&pred, &catalog);
            if outcome.examined == 0 {
                eprintln!("warning: no ring in the universe could be classified");
            }
            let text = match format {
                Format::Text => {
                    let mut t = String::new();
                    for m in &outcome.matches {
                        t.push_str(m);
                        t.push('\n');
                    }
                    t.push_str(&format!(
                        "{} match(es) among {} ring(s) ({} skipped)\n",
                        outcome.matches.len(),
                        outcome.examined,
                        outcome.skipped
                    ));
                    t
                }
                Format::Json => json(&outcome),
                Format::Csv => return Err(unsupported(format, "search")),
            };
            emit(&text, out.as_ref())?;
            if expect_some && outcome.matches.is_empty() {
                return Err(Failure::Other(format!("no ring satisfies {}", outcome.predicate)));
            }
            if expect_empty && !outcome.matches.is_empty() {
                return Err(Failure::Other(format!(
                    "{} ring(s) satisfy {}",
                    outcome.matches.len(),
                    outcome.predicate
                )));
            }
            Ok(())
        }
        Command::Catalog {
            max_order,
            max_depth,
            format,
            out,
        } => {
            let params = UniverseParams { max_order, max_depth };
            let catalog = build_catalog(params, &universe_limits(max_order))?;
            let text = match format {
                Format::Json => catalog.to_json(),
                Format::Csv => catalog.to_csv()?,
                Format::Text => return Err(unsupported(format, "catalog")),
            };
            emit(&text, out.as_ref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Parse(m)) => {
            eprintln!("{m}");
            ExitCode::from(EXIT_PARSE)
        }
        Err(Failure::Cap(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_CAP)
        }
        Err(Failure::Other(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}
