//! Titchmarsh's cosine sum over Gram points.

use hardyz::experiments::{titchmarsh_cosine_sum, write_cosine_csv, Context, Format};

fn main() -> hardyz::Result<()> {
    let ctx = Context::from_env();
    let mut rows = Vec::new();
    for n in [100, 1_000, 10_000, 100_000] {
        rows.push(titchmarsh_cosine_sum(n, &ctx)?);
    }
    write_cosine_csv(std::io::stdout().lock(), &rows, Format::Csv)?;
    Ok(())
}
