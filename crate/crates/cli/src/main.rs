//! `polar-ekr`: exact EKR bounds for generators of Hermitian polar spaces.
//!
//! Exit codes: 0 all checks passed, 1 a mathematical property failed,
//! 2 usage or parameter error, 3 resource guard refusal.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use polar_ekr::equality::equality_report;
use polar_ekr::exactnum::parse_rational;
use polar_ekr::hoffman::{bound_report, f_sweep, generic_ratio_bound, identity_suite, WeightVector};
use polar_ekr::lp::{build_lp, lp_vs_ratio};
use polar_ekr::oracle::{enumerate_generators, run_oracle, write_dump, OracleLimits};
use polar_ekr::report::{self, Record};
use polar_ekr::scheme::{check_eigenmatrix, eigenmatrix};
use polar_ekr::{Error, Execution, SchemeParams};

#[derive(Parser, Debug)]
#[command(
    name = "polar-ekr",
    version,
    about = "Exact spectral and LP bounds for EKR sets of generators in H(2d-1, q^2)"
)]
struct Cli {
    /// Evaluate parameter points and inner loops on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weighted ratio bound, optimal f, K and lambda per (d, q).
    Bound {
        #[command(flatten)]
        grid: Grid,
        /// Custom weights c_1..c_d of sum_j c_j A_j (e.g. `-8/5,0,1` at d = 3); reports the floor of the bound.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Option<Vec<String>>,
    },
    /// Eigenmatrix, eigenvalues, valencies and multiplicities.
    Spectrum {
        #[command(flatten)]
        grid: Grid,
    },
    /// Exact Delsarte LP with optimality certificate, compared to the ratio bound.
    Lp {
        #[command(flatten)]
        grid: Grid,
    },
    /// Build the polar space explicitly and verify the scheme (q in {2, 3}, small d).
    Oracle {
        #[command(flatten)]
        grid: Grid,
        /// Refuse constructions with more generators than this.
        #[arg(long, default_value_t = OracleLimits::default().max_generators)]
        max_generators: u64,
        /// Also write each generator list and codimension table into this directory.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Intersection counts forced on a set meeting the bound with equality.
    Equality {
        #[command(flatten)]
        grid: Grid,
    },
    /// Least eigenvalue over a uniform grid of f, against the optimal f.
    Sweep {
        #[command(flatten)]
        grid: Grid,
        /// Number of equally spaced values of f in [0, q^2 - 1].
        #[arg(long, default_value_t = 200)]
        grid_size: usize,
    },
    /// Run every exact identity and sign check.
    Verify {
        #[command(flatten)]
        grid: Grid,
    },
}

#[derive(Args, Debug)]
struct Grid {
    /// Ranks d, comma-separated or repeated.
    #[arg(long = "d", value_delimiter = ',', required = true, num_args = 1..)]
    d: Vec<u32>,
    /// Prime powers q, comma-separated or repeated.
    #[arg(long = "q", value_delimiter = ',', required = true, num_args = 1..)]
    q: Vec<u32>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    /// One JSON record per line.
    Json,
    Csv,
}

struct Outcome {
    record: Record,
    text: String,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Property(_) | Error::Identity(_) => 1,
        Error::Domain(_) | Error::Parse(_) | Error::Io(_) => 2,
        Error::ResourceGuard(_) => 3,
    }
}

fn points(grid: &Grid) -> Result<Vec<SchemeParams>, Error> {
    let mut out = Vec::with_capacity(grid.d.len() * grid.q.len());
    for &d in &grid.d {
        for &q in &grid.q {
            out.push(SchemeParams::new(d, q)?);
        }
    }
    Ok(out)
}

fn parse_weights(raw: &[String]) -> Result<WeightVector, Error> {
    let coeffs = raw
        .iter()
        .map(|s| parse_rational(s.trim()).map_err(|e| Error::Domain(format!("weight {s:?}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    WeightVector::new(coeffs)
}

fn evaluate(command: &Command, p: SchemeParams, exec: Execution) -> Result<Outcome, Error> {
    Ok(match command {
        Command::Bound { weights: None, .. } => {
            let r = bound_report(p)?;
            if !r.bounds_match {
                return Err(Error::Property(format!(
                    "{p}: ratio bound {} differs from closed form {}",
                    r.ratio_bound, r.closed_form_bound
                )));
            }
            Outcome { record: Record::Bound((&r).into()), text: report::bound_text(&r) }
        }
        Command::Bound { weights: Some(raw), .. } => {
            let w = parse_weights(raw)?;
            let r = generic_ratio_bound(&eigenmatrix(p)?, &w)?;
            Outcome { record: Record::Weighted((&r).into()), text: report::weighted_text(&r) }
        }
        Command::Spectrum { .. } => {
            let em = eigenmatrix(p)?;
            check_eigenmatrix(&em)?;
            Outcome { record: Record::Spectrum((&em).into()), text: report::spectrum_text(&em) }
        }
        Command::Lp { .. } => {
            let cmp = lp_vs_ratio(p)?;
            let inst = build_lp(p)?;
            Outcome { record: Record::Lp(report::LpRecord::new(&inst, &cmp)), text: report::lp_text(&inst, &cmp) }
        }
        Command::Oracle { max_generators, dump, .. } => {
            let limits = OracleLimits { max_generators: *max_generators };
            let r = run_oracle(p, limits, exec)?;
            if let Some(dir) = dump {
                write_oracle_dump(dir, p, limits, exec)?;
            }
            Outcome { record: Record::Oracle((&r).into()), text: report::oracle_text(&r) }
        }
        Command::Equality { .. } => {
            let r = equality_report(p)?;
            Outcome { record: Record::Equality((&r).into()), text: report::equality_text(&r) }
        }
        Command::Sweep { grid_size, .. } => {
            let r = f_sweep(p, *grid_size, exec)?;
            Outcome { record: Record::Sweep((&r).into()), text: report::sweep_text(&r) }
        }
        Command::Verify { .. } => {
            let r = identity_suite(p)?;
            Outcome { record: Record::Verify((&r).into()), text: report::verify_text(&r) }
        }
    })
}

fn write_oracle_dump(dir: &Path, p: SchemeParams, limits: OracleLimits, exec: Execution) -> Result<(), Error> {
    std::fs::create_dir_all(dir)?;
    let ps = enumerate_generators(p, limits, exec)?;
    let path = dir.join(format!("generators-d{}-q{}.txt", p.d, p.q));
    let mut out = BufWriter::new(File::create(path)?);
    write_dump(&ps, &mut out)?;
    out.flush()?;
    Ok(())
}

fn grid_of(command: &Command) -> &Grid {
    match command {
        Command::Bound { grid, .. }
        | Command::Spectrum { grid }
        | Command::Lp { grid }
        | Command::Oracle { grid, .. }
        | Command::Equality { grid }
        | Command::Sweep { grid, .. }
        | Command::Verify { grid } => grid,
    }
}

fn emit(outcomes: &[Outcome], format: Format, out: &mut dyn Write) -> Result<(), Error> {
    match format {
        Format::Text => {
            for (i, o) in outcomes.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                write!(out, "{}", o.text)?;
            }
        }
        Format::Json => {
            for o in outcomes {
                writeln!(out, "{}", o.record.to_json())?;
            }
        }
        Format::Csv => {
            if let Some(first) = outcomes.first() {
                writeln!(out, "{}", first.record.csv_header())?;
            }
            for o in outcomes {
                writeln!(out, "{}", o.record.csv_row()?)?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Error> {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    let grid = grid_of(&cli.command);
    let params = points(grid)?;
    let results = exec.map(&params, |&p| evaluate(&cli.command, p, exec));

    let mut code = 0;
    let mut outcomes = Vec::with_capacity(results.len());
    for r in results {
        match r {
            Ok(o) => outcomes.push(o),
            Err(e) => {
                eprintln!("error: {e}");
                if code == 0 {
                    code = exit_code(&e);
                }
            }
        }
    }
    match &grid.output {
        Some(path) => emit(&outcomes, grid.format, &mut BufWriter::new(File::create(path)?))?,
        None => emit(&outcomes, grid.format, &mut io::stdout().lock())?,
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
