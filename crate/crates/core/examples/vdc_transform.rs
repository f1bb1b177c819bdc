//! Stationary-phase transform of exponential sums: quadratic phases and
//! the Gram blocks S_m(M_j).

use hardyz::expsum::{gram_block, quadratic, vdc_transform};

fn main() -> hardyz::Result<()> {
    let mut problems = Vec::new();
    for a in [1e2, 1e3, 1e4] {
        problems.push((format!("quadratic A={a}"), quadratic(a, 0.05 * a, 3.7 * a, 1.0)?));
    }
    for m in [3, 4, 5, 7, 10] {
        problems.push((format!("gram block m={m}"), gram_block(m, 0)?));
    }
    for (name, p) in &problems {
        let out = vdc_transform(p)?;
        println!(
            "{name:<18} [{:.1}, {:.1}] saddles {:>3}  |lhs-rhs| {:.3e}  R {:.3e}  ratio {:.3}",
            p.a,
            p.b,
            out.saddle_terms.len(),
            out.residual(),
            out.r_bound,
            out.ratio()
        );
    }
    Ok(())
}
