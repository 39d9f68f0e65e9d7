//! Command-line front end: zeta evaluation, the critical-line zero cache,
//! prime staircases, explicit-formula reconstructions, and the Casimir
//! closed forms. Values print with 10 significant digits in plain mode and
//! 15 in csv/json; all diagnostics go to stderr.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use zetakit::critical_line::{
    count_zeros_formula, find_zeros, verify_count, z_function, ZeroOrdinate, ZeroTable,
    DEFAULT_SCAN_STEP,
};
use zetakit::explicit_formula::{pi_explicit, riemann_big_pi_explicit, von_mangoldt_psi_explicit};
use zetakit::numfmt::{format_significant, snap15};
use zetakit::prime_arith::{big_pi, chebyshev_psi, mobius_invert_pi, PrimeSieve};
use zetakit::regularization::{casimir_energy, casimir_force_per_area, CasimirConfig, HBAR_C};
use zetakit::zeta_engine::{zeta, EvalOptions};

const CACHE_ENV: &str = "ZETAKIT_CACHE";

#[derive(Parser)]
#[command(
    name = "zetakit",
    version,
    about = "Riemann zeta toolkit: evaluation, critical-line zeros, explicit prime formulas, Casimir forces"
)]
struct Cli {
    /// Output format (plain prints 10 significant digits, csv/json print 15)
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Zero-cache CSV path; defaults to $ZETAKIT_CACHE
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, ValueEnum)]
enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate zeta
    Zeta {
        #[command(subcommand)]
        cmd: ZetaCmd,
    },
    /// Maintain the critical-line zero cache
    Zeros {
        #[command(subcommand)]
        cmd: ZerosCmd,
    },
    /// Exact prime staircases (midpoint value at jumps)
    Primes {
        #[arg(value_enum)]
        kind: StairKind,
        x: f64,
    },
    /// Explicit-formula reconstructions from cached zeros
    Explicit {
        #[arg(value_enum)]
        kind: StairKind,
        x: f64,
        /// Number of zero pairs to use
        #[arg(long, default_value_t = 100)]
        pairs: usize,
    },
    /// Parallel-plate vacuum energy and force (hbar = c = 1; SI shown in plain mode)
    Casimir {
        /// Plate separation
        #[arg(long)]
        a: f64,
        /// Plate area
        #[arg(long, default_value_t = 1.0)]
        area: f64,
    },
}

#[derive(Subcommand)]
enum ZetaCmd {
    /// Evaluate zeta(re + i im)
    Eval {
        #[arg(long, allow_negative_numbers = true)]
        re: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        im: f64,
        /// Absolute tolerance
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}

#[derive(Subcommand)]
enum ZerosCmd {
    /// Extend the cached zero table up to t_max
    Scan {
        #[arg(long = "t-max")]
        t_max: f64,
        #[arg(long, default_value_t = DEFAULT_SCAN_STEP)]
        step: f64,
        /// Refinement half-width target per zero
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum StairKind {
    Pi,
    Bigpi,
    Psi,
}

impl StairKind {
    fn name(self) -> &'static str {
        match self {
            StairKind::Pi => "pi",
            StairKind::Bigpi => "bigpi",
            StairKind::Psi => "psi",
        }
    }
}

enum CliError {
    Lib(zetakit::Error),
    Usage(String),
}

impl From<zetakit::Error> for CliError {
    fn from(e: zetakit::Error) -> Self {
        CliError::Lib(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match &e {
                CliError::Lib(zetakit::Error::CacheCorrupt(_)) => 3,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let fmt = cli.format;
    match cli.cmd {
        Cmd::Zeta {
            cmd: ZetaCmd::Eval { re, im, tol },
        } => cmd_zeta_eval(re, im, tol, fmt),
        Cmd::Zeros {
            cmd: ZerosCmd::Scan { t_max, step, tol },
        } => cmd_zeros_scan(t_max, step, tol, cache_path(&cli)?, fmt),
        Cmd::Primes { kind, x } => cmd_primes(kind, x, fmt),
        Cmd::Explicit { kind, x, pairs } => cmd_explicit(kind, x, pairs, cache_path(&cli)?, fmt),
        Cmd::Casimir { a, area } => cmd_casimir(a, area, fmt),
    }
}

fn cache_path(cli: &Cli) -> Result<PathBuf, CliError> {
    if let Some(p) = &cli.cache {
        return Ok(p.clone());
    }
    if let Some(p) = std::env::var_os(CACHE_ENV) {
        if !p.is_empty() {
            return Ok(PathBuf::from(p));
        }
    }
    Err(CliError::Usage(format!(
        "no cache path: pass --cache PATH or set {CACHE_ENV}"
    )))
}

fn digits(fmt: Format) -> usize {
    match fmt {
        Format::Plain => 10,
        Format::Csv | Format::Json => 15,
    }
}

fn render(v: f64, fmt: Format) -> String {
    format_significant(v, digits(fmt))
}

fn cmd_zeta_eval(re: f64, im: f64, tol: f64, fmt: Format) -> Result<(), CliError> {
    let opts = EvalOptions {
        tol,
        ..EvalOptions::default()
    };
    let v = zeta(Complex64::new(re, im), &opts)?;
    match fmt {
        Format::Plain => {
            if v.im == 0.0 {
                println!("{}", render(v.re, fmt));
            } else {
                println!("{} {}{}i", render(v.re, fmt), sign_of(v.im), render(v.im.abs(), fmt));
            }
            eprintln!("note: absolute error <= {}", format_significant(tol, 3));
        }
        Format::Csv => {
            println!("re,im,value_re,value_im,abs_err");
            println!(
                "{},{},{},{},{}",
                render(re, fmt),
                render(im, fmt),
                render(v.re, fmt),
                render(v.im, fmt),
                render(tol, fmt)
            );
        }
        Format::Json => {
            println!(
                "{{\"re\": {}, \"im\": {}, \"value_re\": {}, \"value_im\": {}, \"abs_err\": {}}}",
                render(re, fmt),
                render(im, fmt),
                render(v.re, fmt),
                render(v.im, fmt),
                render(tol, fmt)
            );
        }
    }
    Ok(())
}

fn sign_of(v: f64) -> &'static str {
    if v < 0.0 {
        "- "
    } else {
        "+ "
    }
}

/// Load the cache if the file exists; a missing file is an empty table.
fn load_cache(path: &PathBuf) -> Result<Option<ZeroTable>, CliError> {
    if !path.exists() {
        return Ok(None);
    }
    let text = fs::read_to_string(path).map_err(|e| {
        CliError::Usage(format!("cannot read cache {}: {e}", path.display()))
    })?;
    Ok(Some(ZeroTable::from_csv(&text)?))
}

/// Write the table atomically: temp file in the same directory, then rename.
fn write_cache(path: &PathBuf, table: &ZeroTable) -> Result<(), CliError> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, table.to_csv())
        .and_then(|()| fs::rename(&tmp, path))
        .map_err(|e| CliError::Usage(format!("cannot write cache {}: {e}", path.display())))
}

fn cmd_zeros_scan(
    t_max: f64,
    step: f64,
    tol: f64,
    path: PathBuf,
    fmt: Format,
) -> Result<(), CliError> {
    if !(t_max > 0.0) || !t_max.is_finite() {
        return Err(CliError::Usage(format!(
            "t-max must be finite and positive, got {t_max}"
        )));
    }
    let existing = load_cache(&path)?.unwrap_or_default();
    let new_zeros: Vec<ZeroOrdinate> = if t_max > existing.t_max_scanned {
        let t_start = if existing.t_max_scanned > 0.0 {
            existing.t_max_scanned
        } else {
            1.0
        };
        let fresh = find_zeros(t_start, t_max, step, tol)?;
        // a zero astride the old frontier may be found twice
        let window = (2.0 * tol).max(1e-6);
        let frontier = existing.zeros.last().map_or(0.0, |z| z.t);
        fresh
            .zeros
            .into_iter()
            .filter(|z| z.t > frontier + window)
            .collect()
    } else {
        Vec::new()
    };
    let mut zeros = existing.zeros.clone();
    zeros.extend(new_zeros.iter().copied());
    for (i, z) in zeros.iter_mut().enumerate() {
        z.index = i as u32 + 1;
        z.t = snap15(z.t);
        z.err = snap15(z.err);
    }
    let merged = ZeroTable {
        zeros,
        t_max_scanned: snap15(t_max.max(existing.t_max_scanned)),
    };
    write_cache(&path, &merged)?;

    // verification point nudged off any zero of Z
    let mut t_v = merged.t_max_scanned;
    for _ in 0..8 {
        if z_function(t_v)?.abs() > 1e-6 {
            break;
        }
        t_v -= 0.5 * step;
    }
    let report = verify_count(&merged, t_v)?;
    let verdict = if report.pass { "PASS" } else { "FAIL" };
    if !report.pass {
        eprintln!(
            "WARN: count mismatch at T = {}: table {}, predicted {}",
            report.t,
            report.table_count,
            format_significant(report.predicted, 6)
        );
    }

    let reindexed: Vec<&ZeroOrdinate> = merged
        .zeros
        .iter()
        .skip(merged.len() - new_zeros.len())
        .collect();
    match fmt {
        Format::Plain => {
            for z in &reindexed {
                println!("{} {} {}", z.index, render(z.t, fmt), render(z.err, fmt));
            }
            println!(
                "{} new zeros, {} total, scanned to {}; verify {} (table {}, predicted {})",
                reindexed.len(),
                merged.len(),
                render(merged.t_max_scanned, fmt),
                verdict,
                report.table_count,
                format_significant(report.predicted, 6)
            );
        }
        Format::Csv => {
            println!("index,t,err");
            for z in &reindexed {
                println!("{},{},{}", z.index, render(z.t, fmt), render(z.err, fmt));
            }
            eprintln!("note: {} new, {} total, verify {}", reindexed.len(), merged.len(), verdict);
        }
        Format::Json => {
            let rows: Vec<String> = reindexed
                .iter()
                .map(|z| {
                    format!(
                        "{{\"index\": {}, \"t\": {}, \"err\": {}}}",
                        z.index,
                        render(z.t, fmt),
                        render(z.err, fmt)
                    )
                })
                .collect();
            println!(
                "{{\"new_zeros\": [{}], \"total\": {}, \"t_max_scanned\": {}, \"verify\": \"{}\"}}",
                rows.join(", "),
                merged.len(),
                render(merged.t_max_scanned, fmt),
                verdict
            );
        }
    }
    Ok(())
}

fn staircase_sieve(x: f64) -> Result<PrimeSieve, CliError> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(CliError::Usage(format!(
            "x must be finite and non-negative, got {x}"
        )));
    }
    Ok(PrimeSieve::new((x.floor() as u64).max(2))?)
}

fn exact_staircase(kind: StairKind, x: f64, sieve: &PrimeSieve) -> Result<f64, CliError> {
    Ok(match kind {
        StairKind::Pi => mobius_invert_pi(x, sieve)?,
        StairKind::Bigpi => big_pi(x, sieve)?,
        StairKind::Psi => chebyshev_psi(x, sieve)?,
    })
}

fn cmd_primes(kind: StairKind, x: f64, fmt: Format) -> Result<(), CliError> {
    let sieve = staircase_sieve(x)?;
    let value = exact_staircase(kind, x, &sieve)?;
    match fmt {
        Format::Plain => println!("{}", render(value, fmt)),
        Format::Csv => {
            println!("kind,x,value");
            println!("{},{},{}", kind.name(), render(x, fmt), render(value, fmt));
        }
        Format::Json => println!(
            "{{\"kind\": \"{}\", \"x\": {}, \"value\": {}}}",
            kind.name(),
            render(x, fmt),
            render(value, fmt)
        ),
    }
    Ok(())
}

/// Invert the smoothed counting formula: the T at which N(T) reaches `count`.
fn scan_target_for(count: usize) -> f64 {
    let want = count as f64 + 1.0;
    let mut lo = 10.0;
    let mut hi = 1e7;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let n = count_zeros_formula(mid).unwrap_or(f64::INFINITY);
        if n < want {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (hi / 5.0).ceil() * 5.0
}

fn cmd_explicit(
    kind: StairKind,
    x: f64,
    pairs: usize,
    path: PathBuf,
    fmt: Format,
) -> Result<(), CliError> {
    if pairs == 0 {
        return Err(CliError::Usage("pairs must be at least 1".into()));
    }
    let table = load_cache(&path)?.ok_or_else(|| {
        CliError::Usage(format!(
            "no zero cache at {}; create one with: zetakit zeros scan --t-max {}",
            path.display(),
            scan_target_for(pairs)
        ))
    })?;
    if table.len() < pairs {
        return Err(CliError::Usage(format!(
            "cache holds {} zero pairs, need {}; extend it with: zetakit zeros scan --t-max {}",
            table.len(),
            pairs,
            scan_target_for(pairs)
        )));
    }
    let head = table.head(pairs);
    let sieve = staircase_sieve(x)?;
    let exact = exact_staircase(kind, x, &sieve)?;
    // (value, decomposition) — the Mobius reassembly has no single decomposition
    let (value, parts) = match kind {
        StairKind::Psi => {
            let r = von_mangoldt_psi_explicit(x, &head)?;
            (r.value, Some((r.smooth_part, r.oscillatory_part, r.tail_part)))
        }
        StairKind::Bigpi => {
            let r = riemann_big_pi_explicit(x, &head)?;
            (r.value, Some((r.smooth_part, r.oscillatory_part, r.tail_part)))
        }
        StairKind::Pi => (pi_explicit(x, &head, 64)?, None),
    };
    let delta = value - exact;
    match fmt {
        Format::Plain => {
            println!("value {}", render(value, fmt));
            if let Some((s, o, t)) = parts {
                println!("smooth {}", render(s, fmt));
                println!("oscillatory {}", render(o, fmt));
                println!("tail {}", render(t, fmt));
            }
            println!("exact {}", render(exact, fmt));
            println!("delta {}", render(delta, fmt));
        }
        Format::Csv => {
            println!("kind,x,pairs,value,smooth,oscillatory,tail,exact,delta");
            let (s, o, t) = parts.map_or((String::new(), String::new(), String::new()), |p| {
                (render(p.0, fmt), render(p.1, fmt), render(p.2, fmt))
            });
            println!(
                "{},{},{},{},{},{},{},{},{}",
                kind.name(),
                render(x, fmt),
                pairs,
                render(value, fmt),
                s,
                o,
                t,
                render(exact, fmt),
                render(delta, fmt)
            );
        }
        Format::Json => {
            let decomposition = parts.map_or(String::new(), |p| {
                format!(
                    ", \"smooth\": {}, \"oscillatory\": {}, \"tail\": {}",
                    render(p.0, fmt),
                    render(p.1, fmt),
                    render(p.2, fmt)
                )
            });
            println!(
                "{{\"kind\": \"{}\", \"x\": {}, \"pairs\": {}{}, \"value\": {}, \"exact\": {}, \"delta\": {}}}",
                kind.name(),
                render(x, fmt),
                pairs,
                decomposition,
                render(value, fmt),
                render(exact, fmt),
                render(delta, fmt)
            );
        }
    }
    Ok(())
}

fn cmd_casimir(a: f64, area: f64, fmt: Format) -> Result<(), CliError> {
    let cfg = CasimirConfig { a, area };
    let energy = casimir_energy(&cfg)?;
    let force = casimir_force_per_area(a)?;
    match fmt {
        Format::Plain => {
            println!("energy {}", render(energy, fmt));
            println!("force_per_area {}", render(force, fmt));
            println!(
                "energy_si {} J (lengths in m)",
                format_significant(energy * HBAR_C, 10)
            );
            println!(
                "force_per_area_si {} N/m^2",
                format_significant(force * HBAR_C, 10)
            );
        }
        Format::Csv => {
            println!("energy,force_per_area,a,area");
            println!(
                "{},{},{},{}",
                render(energy, fmt),
                render(force, fmt),
                render(a, fmt),
                render(area, fmt)
            );
        }
        Format::Json => println!(
            "{{\"energy\": {}, \"force_per_area\": {}, \"a\": {}, \"area\": {}}}",
            render(energy, fmt),
            render(force, fmt),
            render(a, fmt),
            render(area, fmt)
        ),
    }
    Ok(())
}
