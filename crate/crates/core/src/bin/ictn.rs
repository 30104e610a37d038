use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ictn::characters::char_records;
use ictn::cotangent::{ct_zeta, half_angle_convert, matrix_ict, theorem1_ict, SinCosExpr};
use ictn::cycfield::CycElem;
use ictn::golden::{run_golden, to_fixture_json, GoldenFixture};
use ictn::ntheory::is_squarefree;
use ictn::series::{MobiusSieve, SeriesRecord};
use ictn::verify::{verify, Check, Method};
use ictn::Error;

#[derive(Parser)]
#[command(
    name = "ictn",
    version,
    about = "Exact inverse cotangent numbers in cyclotomic fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    /// Powers of ζ_n, canonical mod Φ_n
    Zeta,
    /// s_j or c_j, j ∈ R
    Sc,
    /// sa_m = i sin(πm/n) or ca_m = cos(πm/n)
    HalfAngle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Ct,
    Ict,
}

#[derive(Subcommand)]
enum Command {
    /// Print ct_1 or ĉt_1 for one (n, r)
    Table {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u32,
        #[arg(long, value_enum, default_value = "zeta")]
        basis: BasisArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, value_enum, default_value = "ict")]
        which: Which,
    },
    /// Cross-check the exact routes against each other and the series
    Verify {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u32,
        /// Comma-separated subset of theorem1, theorem2, matrix, series
        #[arg(long, default_value = "theorem1,theorem2,matrix")]
        methods: String,
        #[arg(long, default_value_t = 100_000)]
        series_limit: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Recompute every embedded reference value
    Golden {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Characters mod n with conductors and Gauss sums
    Chars {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Partial sum of the Möbius series for ĉt_j
    Series {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = 1)]
        j: i64,
        #[arg(long, default_value_t = 100_000)]
        series_limit: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

enum Failure {
    Usage(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

// Like println!, but a closed pipe (`ictn chars --n 60 | head`) is not an error.
macro_rules! out {
    ($($arg:tt)*) => {{
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

fn json<T: Serialize>(v: &T) -> String {
    to_fixture_json(v).trim_end().to_string()
}

fn cmd_table(n: u64, r: u32, basis: BasisArg, format: Format, which: Which) -> CmdResult {
    let squarefree = is_squarefree(n);
    if !squarefree && basis != BasisArg::Zeta {
        return Err(Failure::Usage(format!(
            "n = {n} is not square-free: the s/c and half-angle forms need the square-free route; use --basis zeta"
        )));
    }
    let value: CycElem = match which {
        Which::Ct => ct_zeta(n, r)?,
        Which::Ict if squarefree => theorem1_ict(n, r)?.to_cyc().canonicalize(),
        Which::Ict => matrix_ict(n, r)?.0,
    };
    let out = match basis {
        BasisArg::Zeta => match format {
            Format::Text => value.to_string(),
            Format::Json => json(&value),
        },
        BasisArg::Sc => {
            let e = SinCosExpr::from_cyc(&value, r)?;
            match format {
                Format::Text => e.render(),
                Format::Json => json(&e),
            }
        }
        BasisArg::HalfAngle => {
            let e = half_angle_convert(&SinCosExpr::from_cyc(&value, r)?);
            match format {
                Format::Text => {
                    let nz = ictn::cotangent::HalfAngleExpr {
                        coeffs: e.nonzero(),
                        ..e
                    };
                    nz.render()
                }
                Format::Json => json(&GoldenFixture::from_expr(&e, "computed")),
            }
        }
    };
    out!("{out}");
    Ok(())
}

fn print_checks(title: &str, checks: &[Check], format: Format) {
    match format {
        Format::Text => {
            if !title.is_empty() {
                out!("{title}");
            }
            for c in checks {
                out!("{c}");
            }
        }
        Format::Json => out!("{}", json(&checks)),
    }
}

fn cmd_verify(n: u64, r: u32, methods: &str, limit: u64, format: Format) -> CmdResult {
    let methods: Vec<Method> = methods
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect::<Result<_, _>>()?;
    if methods.is_empty() {
        return Err(Failure::Usage("no methods given".into()));
    }
    if methods.contains(&Method::Theorem1) && !is_squarefree(n) {
        return Err(Failure::Usage(format!(
            "theorem1 needs square-free n, got {n}"
        )));
    }
    let report = verify(n, r, &methods, limit)?;
    match format {
        Format::Text => print_checks(&format!("n = {n}, r = {r}"), &report.checks, format),
        Format::Json => out!("{}", json(&report)),
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn cmd_golden(format: Format) -> CmdResult {
    let checks = run_golden()?;
    print_checks("", &checks, format);
    if checks.iter().all(|c| c.passed) {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn cmd_chars(n: u64, format: Format) -> CmdResult {
    let rows = char_records(n)?;
    match format {
        Format::Text => {
            for row in &rows {
                let i = &row.info;
                out!(
                    "chi{:?} order {} conductor {} parity {:+} tau = {} (z = zeta_{})",
                    i.exponents,
                    i.order,
                    i.conductor,
                    i.parity,
                    row.gauss_sum,
                    row.gauss_sum.order()
                );
            }
        }
        Format::Json => out!("{}", json(&rows)),
    }
    Ok(())
}

fn cmd_series(n: u64, r: u32, j: i64, limit: u64, format: Format) -> CmdResult {
    if r == 0 {
        return Err(Error::WeightTooSmall.into());
    }
    let res = MobiusSieve::new(limit)?.ict_numeric(n, r, j, limit)?;
    let out = SeriesRecord::from(&res);
    match format {
        Format::Text => {
            out!(
                "ict_{j} (n = {n}, r = {r}, limit {limit}) ~ {:.16e} {:+.16e}i",
                out.re,
                out.im
            );
            match out.tail_bound {
                Some(t) => out!(
                    "tail bound {t:.3e}, rounding bound {:.3e}",
                    out.rounding_bound
                ),
                None => out!(
                    "no tail bound for r = 1, rounding bound {:.3e}",
                    out.rounding_bound
                ),
            }
        }
        Format::Json => out!("{}", json(&out)),
    }
    Ok(())
}

fn configure_threads() {
    if let Ok(v) = std::env::var("ICTN_THREADS") {
        if let Ok(k) = v.trim().parse::<usize>() {
            if k > 0 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(k)
                    .build_global();
            }
        }
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Table {
            n,
            r,
            basis,
            format,
            which,
        } => cmd_table(n, r, basis, format, which),
        Command::Verify {
            n,
            r,
            methods,
            series_limit,
            format,
        } => cmd_verify(n, r, &methods, series_limit, format),
        Command::Golden { format } => cmd_golden(format),
        Command::Chars { n, format } => cmd_chars(n, format),
        Command::Series {
            n,
            r,
            j,
            series_limit,
            format,
        } => cmd_series(n, r, j, series_limit, format),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
