//! The smooth cutoff ρ, its partition identity and how flat it is at 1.

use hardyz::weight::SmoothWeight;

fn main() -> hardyz::Result<()> {
    let w = SmoothWeight::shared();
    println!("normalization {:.16}, phi(0) = {:.16}", w.normalization(), w.phi(0.0));
    for x in [0.4, 0.5, 0.75, 1.0, 1.25, 1.5, 1.9, 2.0, 3.0] {
        println!(
            "rho({x:<4}) = {:.15}   rho(x)+rho(1/x)-1 = {:+.1e}   rho' = {:+.6}",
            w.rho(x)?,
            w.rho(x)? + w.rho(1.0 / x)? - 1.0,
            w.rho_derivative(x, 1)
        );
    }
    let eps = [0.05, 0.1, 0.15, 0.2, 0.3, -0.05, -0.1, -0.2, -0.3];
    for (e, d) in w.rho_flatness_profile(&eps)? {
        println!("|rho(1{e:+})-1/2| = {d:.3e}   |eps|^5 = {:.3e}", e.abs().powi(5));
    }
    Ok(())
}
