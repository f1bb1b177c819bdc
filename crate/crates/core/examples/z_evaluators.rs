//! Every Z(t) evaluator side by side against the Euler-Maclaurin reference.

use hardyz::zfun::{afe_term_count, z_afe_smooth, z_at_gram, z_reference, z_rs_corrected, z_rs_main, Method};

fn main() -> hardyz::Result<()> {
    println!("{:>9} {:>20} {:>10} {:>10} {:>10} {:>10} {:>10}", "t", "reference", "rs_main", "rs_corr0", "rs_corr1", "rs_corr2", "afe");
    for t in [100.0, 1000.7, 5000.0, 9876.5, 19_000.0] {
        let r = z_reference(t)?.z;
        let d = |z: f64| z - r;
        println!(
            "{t:>9} {r:>20.15} {:>10.1e} {:>10.1e} {:>10.1e} {:>10.1e} {:>10.1e}",
            d(z_rs_main(t)?.z),
            d(z_rs_corrected(t, 0)?.z),
            d(z_rs_corrected(t, 1)?.z),
            d(z_rs_corrected(t, 2)?.z),
            d(z_afe_smooth(t)?.z)
        );
    }
    println!("afe terms at t=1e4: {}", afe_term_count(1e4));
    println!("Z(g(0)) = {:+.15}", z_at_gram(0, Method::Reference, None)?.z);
    for n in [2, 1000, 100_000] {
        let s = z_at_gram(n, Method::RsCorrected(2), None)?;
        println!("Z(g({n})) = {:+.12} (est. error {:.1e})", s.z, s.est_error);
    }
    Ok(())
}
