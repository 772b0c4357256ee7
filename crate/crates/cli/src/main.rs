use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use strange_ortho::exact::{parse_rational, Rational};
use strange_ortho::report::VerificationReport;
use strange_ortho::suites::{run_suite, Suite, SuiteConfig};
use strange_ortho::tables::{emit_table, Table, TableConfig, TableKind};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Parser)]
#[command(name = "strange-ortho", version)]
#[command(about = "Verify degree-scaled Laguerre orthogonality and emit data tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite: ortho, uniqueness, basis, operator, limit, all
    Verify {
        suite: Suite,
        /// Comma-separated rationals, e.g. 0,1/2,7/3
        #[arg(long, value_parser = parse_one, value_delimiter = ',', allow_hyphen_values = true)]
        alpha: Option<Vec<Rational>>,
        #[arg(long = "kappa-grid", value_parser = parse_one, value_delimiter = ',', allow_hyphen_values = true)]
        kappa_grid: Option<Vec<Rational>>,
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long)]
        mmax: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        xmax: Option<f64>,
        /// Record per-check runtimes (output is then no longer reproducible)
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Emit a table: transform-matrix, energy-levels, h-values, zeros, limit-errors
    Table {
        kind: TableKind,
        #[arg(long, value_parser = parse_one)]
        alpha: Option<Rational>,
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long)]
        mmax: Option<usize>,
        #[arg(long)]
        xmax: Option<f64>,
        /// Spatial dimension for energy levels
        #[arg(long)]
        dim: Option<u32>,
        /// Coulomb coupling k for energy levels
        #[arg(long, value_parser = parse_one)]
        coupling: Option<Rational>,
        #[arg(long)]
        lmax: Option<u32>,
        /// Comma-separated degrees n
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<usize>>,
        /// Comma-separated evaluation points x
        #[arg(long, value_delimiter = ',')]
        points: Option<Vec<f64>>,
        /// Number of zeros per function
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

fn parse_one(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn open_output(out: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn report_csv(report: &VerificationReport, w: Box<dyn Write>) -> Result<(), csv::Error> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(["name", "inputs", "expected", "computed", "exact", "tolerance", "pass"])?;
    for c in &report.checks {
        let inputs: Vec<String> = c.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
        wr.write_record([
            c.name.as_str(),
            &inputs.join(";"),
            &c.expected,
            &c.computed,
            if c.exact { "true" } else { "false" },
            c.tolerance.as_deref().unwrap_or(""),
            if c.pass { "true" } else { "false" },
        ])?;
    }
    wr.flush()?;
    Ok(())
}

fn table_csv(table: &Table, w: Box<dyn Write>) -> Result<(), csv::Error> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(&table.header)?;
    for row in &table.rows {
        wr.write_record(row)?;
    }
    wr.flush()?;
    Ok(())
}

fn write_json(json: String, mut w: Box<dyn Write>) -> io::Result<()> {
    w.write_all(json.as_bytes())?;
    w.write_all(b"\n")?;
    w.flush()
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Verify {
            suite,
            alpha,
            kappa_grid,
            nmax,
            mmax,
            tol,
            xmax,
            timing,
            out,
            format,
        } => {
            let cfg = SuiteConfig {
                alphas: alpha,
                kappas: kappa_grid,
                nmax,
                mmax,
                tol,
                xmax,
                timing,
            };
            if let Err(e) = cfg.validate(suite) {
                return usage_error(e);
            }
            let report = run_suite(suite, &cfg);
            let w = match open_output(&out) {
                Ok(w) => w,
                Err(e) => return usage_error(format!("cannot write output: {e}")),
            };
            let written = match format {
                Format::Json => write_json(report.to_json(), w).map_err(|e| e.to_string()),
                Format::Csv => report_csv(&report, w).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                return usage_error(format!("cannot write output: {e}"));
            }
            for c in report.failures() {
                eprintln!(
                    "FAIL {} {:?}: expected {}, computed {}",
                    c.name, c.inputs, c.expected, c.computed
                );
            }
            eprintln!(
                "suite {}: {}/{} checks passed",
                report.suite, report.summary.passed, report.summary.total
            );
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAILED)
            }
        }
        Command::Table {
            kind,
            alpha,
            nmax,
            mmax,
            xmax,
            dim,
            coupling,
            lmax,
            degrees,
            points,
            count,
            out,
            format,
        } => {
            let cfg = TableConfig {
                alpha,
                nmax,
                mmax,
                xmax,
                dim,
                coupling,
                lmax,
                degrees,
                points,
                count,
            };
            let table = match emit_table(kind, &cfg) {
                Ok(t) => t,
                Err(e) => return usage_error(e),
            };
            let w = match open_output(&out) {
                Ok(w) => w,
                Err(e) => return usage_error(format!("cannot write output: {e}")),
            };
            let written = match format {
                Format::Csv => table_csv(&table, w).map_err(|e| e.to_string()),
                Format::Json => write_json(serde_json::to_string_pretty(&table).expect("table serializes"), w)
                    .map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => usage_error(format!("cannot write output: {e}")),
            }
        }
    }
}
