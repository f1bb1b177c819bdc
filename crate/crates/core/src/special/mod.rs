//! Special-function primitives: enclosures, Bernoulli numbers, log Γ, ψ and
//! a reference ζ(1/2+it).

mod bernoulli;
mod bounded;
mod gamma;
mod zeta;

pub use bernoulli::{periodic_bound, BernoulliTable, DEFAULT_DEPTH};
pub use bounded::{Bounded, BoundedComplex, BoundedReal, Magnitude};
pub use gamma::{
    digamma, digamma_remainder_bound, log_gamma, DIGAMMA_SHIFT_MIN, LOG_GAMMA_SHIFT_MIN,
};
pub use zeta::{min_cutoff, zeta_euler_maclaurin, ZETA_T_CEILING};

/// Euler's constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
