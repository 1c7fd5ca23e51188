//! Command-line front end: compute compositae, solve iterative functional
//! equations, verify candidates, run the corpus, fetch OEIS data.
//!
//! Errors exit with distinct codes so scripts can tell input problems (2),
//! mathematical obstructions (3), order/truncation problems (4), network or
//! cache problems (5) and internal invariant violations (6) apart; plain
//! verification failures exit with 1.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use composita::catalog::Catalog;
use composita::composita::{composita_of, scale_conjugate};
use composita::json::{load_series, parse_rat, CompositaJson, SeriesJson};
use composita::oeis::{OeisClient, CACHE_DIR_ENV};
use composita::solver::iterated_root;
use composita::verify::{load_corpus, run_corpus, verify_solution};
use composita::{Error, Rat, Series};

#[derive(Parser)]
#[command(
    name = "composita",
    version,
    about = "Solve iterative functional equations A(A(...A(x)...)) = F(x) over exact power series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the composita triangle T(n,k) = [x^n] f(x)^k of a series.
    Composita {
        #[command(flatten)]
        input: InputArgs,
        /// Truncation order (defaults to the input's own length).
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Solve A^(2^exponent)(x) = F(x) and print A's coefficients.
    Solve {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        order: Option<usize>,
        /// Number of halvings: 1 solves A(A(x)) = F, 2 solves A^4 = F, ...
        #[arg(long, default_value_t = 1)]
        exponent: u32,
        /// Solve A(A(x)) = F(4x)/4 instead (integer-output transform).
        #[arg(long)]
        scaled: bool,
        /// Also print A's composita triangle.
        #[arg(long)]
        triangle: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Check a candidate solution by direct self-composition.
    Verify {
        /// Series JSON file with the candidate A.
        #[arg(long)]
        candidate: PathBuf,
        #[command(flatten)]
        input: InputArgs,
        /// Total number of copies of A composed (2 checks A(A(x)) = F).
        #[arg(long, default_value_t = 2)]
        iterations: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Run a corpus of known equations; exits nonzero on any failure.
    Corpus {
        /// Corpus JSON file (array of cases).
        #[arg(long)]
        cases: PathBuf,
        /// Directory with fixture series JSON files.
        #[arg(long)]
        fixtures: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Fetch an OEIS sequence b-file, with local caching.
    Fetch {
        /// Sequence id such as A141119.
        #[arg(long)]
        id: String,
        /// Cache directory (default: $COMPOSITA_CACHE_DIR or ./.composita-cache).
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        /// Serve only from the cache; never touch the network.
        #[arg(long)]
        offline: bool,
        /// Cache freshness window in days.
        #[arg(long, default_value_t = 30)]
        ttl_days: u64,
    },
}

/// Exactly one source for the input series.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// Catalog name: sin, expm1, catalan, or quadratic:c.
    #[arg(long)]
    catalog: Option<String>,
    /// Series JSON file.
    #[arg(long)]
    series: Option<PathBuf>,
    /// Comma-separated coefficients f(1), f(2), ... as rational strings.
    #[arg(long)]
    inline: Option<String>,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Table,
    Json,
}

impl InputArgs {
    /// Resolve to a series of the requested order. Catalog entries need an
    /// explicit order; files and inline lists default to their own length
    /// and are zero-extended or truncated when `--order` says otherwise.
    fn resolve(&self, order: Option<usize>) -> Result<Series, Error> {
        if let Some(name) = &self.catalog {
            let entry: Catalog = name.parse()?;
            let order = order.ok_or_else(|| {
                Error::InvalidSeries("--order is required with --catalog".into())
            })?;
            return Ok(entry.series(order));
        }
        let series = if let Some(path) = &self.series {
            load_series(path)?
        } else {
            parse_inline(self.inline.as_deref().expect("clap group guarantees one"))?
        };
        Ok(match order {
            Some(order) if order != series.order() => series.resized(order),
            _ => series,
        })
    }
}

fn parse_inline(text: &str) -> Result<Series, Error> {
    let coeffs: Vec<Rat> = text
        .split(',')
        .map(|part| parse_rat(part.trim()))
        .collect::<Result<_, _>>()?;
    if coeffs.is_empty() {
        return Err(Error::InvalidSeries("empty inline coefficient list".into()));
    }
    Ok(Series::from_coeffs(coeffs))
}

fn coefficient_line(series: &Series) -> String {
    series
        .coeffs()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn print_triangle(comp: &composita::Composita) {
    for row in comp.rows() {
        let line = row
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        println!("{line}");
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::ZeroLeadingCoefficient
        | Error::NonSquareLeadingCoefficient { .. }
        | Error::NegativeBranch { .. }
        | Error::LeadingCoefficientNotOne { .. }
        | Error::NonIntegerCoefficient { .. }
        | Error::HalvingStep { .. } => 3,
        Error::OrderMismatch { .. }
        | Error::EnumerationBound { .. }
        | Error::FixtureTooShort { .. } => 4,
        Error::Network { .. } | Error::OfflineCacheMiss(_) => 5,
        Error::IntegralityViolation { .. } => 6,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Composita { input, order, format } => {
            let series = input.resolve(order)?;
            let comp = composita_of(&series);
            match format {
                Format::Table => print_triangle(&comp),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&CompositaJson::from_composita(&comp))?
                ),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve {
            input,
            order,
            exponent,
            scaled,
            triangle,
            format,
        } => {
            if exponent < 1 {
                return Err(Error::InvalidSeries("--exponent must be at least 1".into()));
            }
            let series = input.resolve(order)?;
            let mut f_comp = composita_of(&series);
            if scaled {
                f_comp = scale_conjugate(&f_comp, &Rat::from_integer(4.into()))?;
            }
            let a_comp = iterated_root(&f_comp, exponent)?;
            let a = a_comp.coefficients();
            match format {
                Format::Table => {
                    println!("{}", coefficient_line(&a));
                    if triangle {
                        print_triangle(&a_comp);
                    }
                }
                Format::Json => {
                    let series_json = SeriesJson::from_series(&a);
                    if triangle {
                        let out = serde_json::json!({
                            "series": series_json,
                            "composita": CompositaJson::from_composita(&a_comp),
                        });
                        println!("{}", serde_json::to_string_pretty(&out)?);
                    } else {
                        println!("{}", serde_json::to_string_pretty(&series_json)?);
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            candidate,
            input,
            iterations,
            format,
        } => {
            let a = load_series(&candidate)?;
            let f = input.resolve(Some(a.order()))?;
            let report = verify_solution(&a, &f, iterations)?;
            match format {
                Format::Table => print!("{report}"),
                Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
            }
            Ok(if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Corpus { cases, fixtures, format } => {
            let corpus = load_corpus(&cases)?;
            let outcomes = run_corpus(&corpus, &fixtures);
            let mut all_pass = true;
            match format {
                Format::Table => {
                    for outcome in &outcomes {
                        match &outcome.result {
                            Ok(report) if report.pass => println!("{}: PASS", outcome.id),
                            Ok(report) => {
                                all_pass = false;
                                println!("{}: FAIL", outcome.id);
                                print!("{report}");
                            }
                            Err(err) => {
                                all_pass = false;
                                println!("{}: ERROR {err}", outcome.id);
                            }
                        }
                    }
                }
                Format::Json => {
                    let entries: Vec<serde_json::Value> = outcomes
                        .iter()
                        .map(|outcome| match &outcome.result {
                            Ok(report) => {
                                all_pass &= report.pass;
                                serde_json::json!({
                                    "id": outcome.id,
                                    "status": if report.pass { "pass" } else { "fail" },
                                    "report": report,
                                })
                            }
                            Err(err) => {
                                all_pass = false;
                                serde_json::json!({
                                    "id": outcome.id,
                                    "status": "error",
                                    "error": err.to_string(),
                                })
                            }
                        })
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&entries)?);
                }
            }
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Fetch {
            id,
            cache_dir,
            offline,
            ttl_days,
        } => {
            let cache_dir = cache_dir
                .or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from(".composita-cache"));
            let client = OeisClient::new(cache_dir)
                .offline(offline)
                .ttl(Duration::from_secs(ttl_days * 24 * 60 * 60));
            let sequence = client.fetch_sequence(&id)?;
            eprintln!("{} terms from {}", sequence.len(), sequence.source);
            let line = sequence
                .terms
                .iter()
                .map(|t| t.to_string())
                .collect::<Vec<_>>()
                .join(", ");
            println!("{line}");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
