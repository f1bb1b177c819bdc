//! Numerical traces of the first saddle weight W_m(1) and of the
//! alternating sum U(L).

use hardyz::expsum::{alternating_sum_u, proof_trace_w1};

fn main() -> hardyz::Result<()> {
    for m in [3, 5, 8, 10, 16, 32] {
        let t = proof_trace_w1(m)?;
        println!(
            "m={m:>2} x1={:.4} f(x1)-x1={:.4} |W|={:.6} closed form {:.6} rel err {:.2e}",
            t.x1,
            t.phase_offset,
            t.numeric.norm(),
            t.closed_form.norm(),
            t.rel_err
        );
    }
    for l in [100, 1000, 10_000, 100_000] {
        let u = alternating_sum_u(l)?;
        println!("L={l:>6} U={:+.6} asymptotic {:+.6} diff {:+.4}", u.u, u.asym, u.diff);
    }
    Ok(())
}
