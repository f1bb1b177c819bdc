//! Σ Z(g(2n)) and Σ Z(g(2n+1)) over a grid of N, with the three normalized errors.

use hardyz::experiments::{error_scan, write_sum_csv, Context, Format, Parity};
use hardyz::zfun::Method;

fn main() -> hardyz::Result<()> {
    let grid: Vec<u64> = (7..=16).map(|k| 1u64 << k).collect();
    let reports = error_scan(&grid, &[Parity::Even, Parity::Odd], Method::default(), &Context::from_env())?;
    write_sum_csv(std::io::stdout().lock(), &reports, Format::Csv, true)?;
    Ok(())
}
