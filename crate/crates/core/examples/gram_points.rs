//! Gram points g(n), the inverse map and a small on-disk cache.

use hardyz::gram::{gram_initial_guess, gram_inverse, gram_point, GramCache, DEFAULT_TOL};

fn main() -> hardyz::Result<()> {
    for n in -1..=10 {
        let g = gram_point(n as f64, DEFAULT_TOL)?;
        println!("g({n:>2}) = {:.12}  residual {:.1e}  seed {:.6}", g.t, g.residual, gram_initial_guess(n as f64));
    }
    let g = gram_point(1e6, DEFAULT_TOL)?;
    println!("g(1e6) = {:.9}, inverse {:.9}", g.t, gram_inverse(g.t)?);

    let cache = GramCache::generate(0.0, 1e5, 1.0, DEFAULT_TOL)?;
    let dir = std::env::temp_dir();
    let path = dir.join(GramCache::file_name(0.0, 1.0, DEFAULT_TOL));
    cache.save(&path)?;
    let back = GramCache::load(&path)?;
    println!("cached {} points to {}, reload identical: {}", back.len(), path.display(), back == cache);
    std::fs::remove_file(&path).ok();
    Ok(())
}
