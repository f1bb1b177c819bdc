//! Σ Z(g(n))Z(g(n+1)) against −2(γ+1)N, plus the fourth-moment statistic.

use hardyz::experiments::{pair_sum, write_pair_csv, Context, Format};
use hardyz::zfun::Method;

fn main() -> hardyz::Result<()> {
    let ctx = Context::from_env();
    let mut rows = Vec::new();
    for n in [1_000, 10_000, 100_000] {
        rows.push(pair_sum(n, Method::default(), &ctx)?);
    }
    write_pair_csv(std::io::stdout().lock(), &rows, Format::Csv)?;
    Ok(())
}
