//! θ(t) from the asymptotic expansion and from log Γ, with their error radii.

use hardyz::theta::{theta, theta_asym, theta_prime, theta_ref};

fn main() -> hardyz::Result<()> {
    println!("{:>10} {:>22} {:>10} {:>22} {:>10}", "t", "asymptotic", "radius", "log-gamma", "radius");
    for t in [6.0, 10.0, 50.0, 1e3, 1e5, 1e6] {
        let a = theta_asym(t)?;
        let r = theta_ref(t)?;
        assert!(a.overlaps(&r));
        println!("{t:>10} {:>22.15} {:>10.2e} {:>22.15} {:>10.2e}", a.value, a.radius, r.value, r.radius);
    }
    let t = 1e4;
    println!("theta({t}) = {}", theta(t)?);
    println!("theta'({t}) = {}", theta_prime(t)?);
    Ok(())
}
