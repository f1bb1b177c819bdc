//! Command-line front end. Exit codes: 0 success, 1 a `--check` assertion
//! failed, 2 usage or input error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::calibration::Calibration;
use crate::error::{Error, Result};
use crate::experiments::{
    self, calibrate, error_scan, write_cosine_csv, write_pair_csv, write_sum_csv, CalibrationSeeds, Context,
    Format, Parity,
};
use crate::expsum::{gram_block, quadratic, vdc_transform};
use crate::gram::GramCache;
use crate::zfun::{evaluate, z_at_gram, Method};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutFormat {
    Csv,
    Tsv,
}

#[derive(Debug, Parser)]
#[command(name = "hardyz", version, about = "Hardy's Z function at Gram points")]
struct Cli {
    /// Z evaluator: rs_main, rs_corrected, afe_smooth or reference.
    #[arg(long, global = true, default_value = "rs_corrected")]
    method: String,
    /// Correction order for rs_corrected (0..=2).
    #[arg(long, global = true, default_value_t = 1)]
    order: u8,
    /// Gram cache directory (default: $HARDYZ_CACHE_DIR, else in memory).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "csv")]
    out: OutFormat,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Gram-point residual tolerance.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tolerance: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Gram points g(x) for x = from, from+step, …, to.
    Gram {
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
        #[arg(long, default_value_t = 1.0)]
        step: f64,
    },
    /// Z(t) at each argument (Gram indices with --gram).
    Z {
        #[arg(required = true, allow_negative_numbers = true)]
        values: Vec<f64>,
        #[arg(long)]
        gram: bool,
    },
    /// Σ Z(g(2n)) or Σ Z(g(2n+1)) up to N.
    Sum {
        #[arg(long)]
        parity: String,
        #[arg(long = "N")]
        n: u64,
        /// Exit 1 if norm_new exceeds the calibrated cap.
        #[arg(long)]
        check: bool,
    },
    /// Σ Z(g(n)) Z(g(n+1)) and the fourth-moment statistic.
    Pairs {
        #[arg(long = "N")]
        n: u64,
        /// Exit 1 if |P/N + 2(γ+1)| > 0.1.
        #[arg(long)]
        check: bool,
    },
    /// Titchmarsh's cosine sum for each N.
    Cosine {
        #[arg(long = "N", value_delimiter = ',', required = true)]
        n: Vec<u64>,
        #[arg(long)]
        check: bool,
    },
    /// Gram sums over a grid of N, e.g. --grid 128,256,...,131072.
    Scan {
        #[arg(long, required = true)]
        grid: String,
        /// even, odd or both.
        #[arg(long, default_value = "both")]
        parity: String,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Exit 1 if a norm_new exceeds its cap or norm_old fails to
        /// decrease over the top three grid points.
        #[arg(long)]
        check: bool,
    },
    /// Stationary-phase transform on quadratic phases and Gram blocks.
    VdcDemo {
        #[arg(long, value_delimiter = ',', default_value = "5,7,10")]
        m: Vec<u32>,
        #[arg(long = "A", value_delimiter = ',', default_value = "100,1000,10000")]
        a: Vec<f64>,
    },
    /// Regenerate the calibration record.
    Calibrate {
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Expand a grid like `128,256,...,131072` (geometric after `...`).
pub fn parse_grid(spec: &str) -> Result<Vec<u64>> {
    let toks: Vec<&str> = spec.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let mut out: Vec<u64> = Vec::new();
    let mut i = 0;
    while i < toks.len() {
        if toks[i] == "..." {
            let end: u64 = toks
                .get(i + 1)
                .ok_or_else(|| Error::Domain("grid ends with '...'".into()))?
                .parse()
                .map_err(|_| Error::Domain(format!("bad grid entry '{}'", toks[i + 1])))?;
            let n = out.len();
            if n < 2 || out[n - 2] == 0 || out[n - 1] % out[n - 2] != 0 || out[n - 1] <= out[n - 2] {
                return Err(Error::Domain("'...' needs two preceding values with an integer ratio".into()));
            }
            let ratio = out[n - 1] / out[n - 2];
            let mut v = out[n - 1];
            while v.saturating_mul(ratio) < end {
                v *= ratio;
                out.push(v);
            }
            out.push(end);
            i += 2;
        } else {
            out.push(
                toks[i]
                    .parse()
                    .map_err(|_| Error::Domain(format!("bad grid entry '{}'", toks[i])))?,
            );
            i += 1;
        }
    }
    if out.is_empty() {
        return Err(Error::Domain("empty grid".into()));
    }
    Ok(out)
}

enum Outcome {
    Ok,
    CheckFailed(String),
}

fn stdout_writer() -> Box<dyn Write> {
    Box::new(BufWriter::new(io::stdout().lock()))
}

fn file_or_stdout(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    match path {
        Some(p) => Ok(Box::new(BufWriter::new(File::create(p).map_err(|e| Error::io(p, e))?))),
        None => Ok(stdout_writer()),
    }
}

fn flush(mut w: Box<dyn Write>) -> Result<()> {
    w.flush().map_err(|e| Error::io("<output>", e))
}

fn run(cli: Cli) -> Result<Outcome> {
    let method = Method::parse(&cli.method, cli.order)?;
    let fmt = match cli.out {
        OutFormat::Csv => Format::Csv,
        OutFormat::Tsv => Format::Tsv,
    };
    let sep = fmt.sep();
    let mut ctx = Context::from_env();
    if cli.cache_dir.is_some() {
        ctx.cache_dir = cli.cache_dir.clone();
    }
    ctx.tolerance = cli.tolerance;
    let cal = Calibration::committed();
    let io_err = |e| Error::io("<output>", e);

    match cli.command {
        Command::Gram { from, to, step } => {
            let cache = GramCache::generate(from, to, step, cli.tolerance)?;
            let mut w = stdout_writer();
            cache.write_csv(&mut w, sep.chars().next().unwrap_or(','))?;
            flush(w)?;
        }
        Command::Z { values, gram } => {
            let mut w = stdout_writer();
            writeln!(w, "{}", ["t", "z", "method", "est_error"].join(sep)).map_err(io_err)?;
            for v in values {
                let s = if gram {
                    if v.fract() != 0.0 {
                        return Err(Error::Domain(format!("Gram index must be an integer, got {v}")));
                    }
                    z_at_gram(v as i64, method, None)?
                } else {
                    evaluate(v, method)?
                };
                writeln!(w, "{}{sep}{}{sep}{}{sep}{:e}", s.t, s.z, s.method, s.est_error).map_err(io_err)?;
            }
            flush(w)?;
        }
        Command::Sum { parity, n, check } => {
            let parity = Parity::parse(&parity)?;
            let r = experiments::gram_sum(n, parity, method, &ctx)?;
            write_sum_csv(stdout_writer(), &[r], fmt, false)?;
            if check {
                let cap = match parity {
                    Parity::Even => cal.cap_norm_new_even,
                    Parity::Odd => cal.cap_norm_new_odd,
                };
                if r.norm_new > cap {
                    return Ok(Outcome::CheckFailed(format!("norm_new {} exceeds cap {cap}", r.norm_new)));
                }
            }
        }
        Command::Pairs { n, check } => {
            let r = experiments::pair_sum(n, method, &ctx)?;
            write_pair_csv(stdout_writer(), &[r], fmt)?;
            if check && r.rel_dev > 0.1 {
                return Ok(Outcome::CheckFailed(format!("pair-sum deviation {} exceeds 0.1", r.rel_dev)));
            }
        }
        Command::Cosine { n, check } => {
            let reports = n
                .iter()
                .map(|&n| experiments::titchmarsh_cosine_sum(n, &ctx))
                .collect::<Result<Vec<_>>>()?;
            write_cosine_csv(stdout_writer(), &reports, fmt)?;
            if check {
                if let Some(r) = reports.iter().find(|r| r.norm > cal.cap_cosine) {
                    return Ok(Outcome::CheckFailed(format!(
                        "cosine norm {} at N={} exceeds cap {}",
                        r.norm, r.n, cal.cap_cosine
                    )));
                }
            }
        }
        Command::Scan {
            grid,
            parity,
            output,
            check,
        } => {
            let grid = parse_grid(&grid)?;
            let parities = match parity.as_str() {
                "both" => vec![Parity::Even, Parity::Odd],
                p => vec![Parity::parse(p)?],
            };
            let reports = error_scan(&grid, &parities, method, &ctx)?;
            let w = file_or_stdout(&output)?;
            write_sum_csv(w, &reports, fmt, true)?;
            if check {
                for &p in &parities {
                    let rows: Vec<_> = reports.iter().filter(|r| r.parity == p).collect();
                    let cap = match p {
                        Parity::Even => cal.cap_norm_new_even,
                        Parity::Odd => cal.cap_norm_new_odd,
                    };
                    if let Some(r) = rows.iter().find(|r| r.norm_new > cap) {
                        return Ok(Outcome::CheckFailed(format!(
                            "{} norm_new {} at N={} exceeds cap {cap}",
                            p.tag(),
                            r.norm_new,
                            r.n
                        )));
                    }
                    let top = &rows[rows.len().saturating_sub(3)..];
                    if top.windows(2).any(|w| w[1].norm_old >= w[0].norm_old) {
                        return Ok(Outcome::CheckFailed(format!(
                            "{} norm_old does not decrease over the top grid points",
                            p.tag()
                        )));
                    }
                }
            }
        }
        Command::VdcDemo { m, a } => {
            let mut w = stdout_writer();
            let cols = [
                "problem", "a", "b", "saddles", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "residual", "r_bound", "ratio",
            ];
            writeln!(w, "{}", cols.join(sep)).map_err(io_err)?;
            let mut problems = Vec::new();
            for &scale in &a {
                problems.push((format!("quadratic_A{scale}"), quadratic(scale, 0.05 * scale, 3.7 * scale, 1.0)?));
            }
            for &mm in &m {
                problems.push((format!("gram_block_m{mm}"), gram_block(mm, 0)?));
            }
            for (name, p) in problems {
                let t = vdc_transform(&p)?;
                writeln!(
                    w,
                    "{}",
                    [
                        name,
                        p.a.to_string(),
                        p.b.to_string(),
                        t.saddle_terms.len().to_string(),
                        t.lhs_direct.re.to_string(),
                        t.lhs_direct.im.to_string(),
                        t.rhs_main.re.to_string(),
                        t.rhs_main.im.to_string(),
                        t.residual().to_string(),
                        t.r_bound.to_string(),
                        t.ratio().to_string(),
                    ]
                    .join(sep)
                )
                .map_err(io_err)?;
            }
            flush(w)?;
        }
        Command::Calibrate { output } => {
            let c = calibrate(CalibrationSeeds::default(), |line| eprintln!("{line}"))?;
            match output {
                Some(p) => c.save(&p)?,
                None => {
                    let mut w = stdout_writer();
                    w.write_all(c.to_kv().as_bytes()).map_err(io_err)?;
                    flush(w)?;
                }
            }
        }
    }
    Ok(Outcome::Ok)
}

/// Parse `argv` (including the program name) and run; returns the exit code.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let threads = cli.threads;
    let go = move || match run(cli) {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::CheckFailed(msg)) => {
            eprintln!("check failed: {msg}");
            1
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    match threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(go),
            Err(e) => {
                eprintln!("error: cannot start {n} worker threads: {e}");
                2
            }
        },
        None => go(),
    }
}
