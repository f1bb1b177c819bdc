//! Hardy's Z function sampled at Gram points.

pub mod calibration;
pub mod cli;
pub mod error;
pub mod expsum;
pub mod experiments;
pub mod gram;
pub mod quad;
pub mod special;
pub mod summation;
pub mod theta;
pub mod weight;
pub mod zfun;

mod dd;

pub use calibration::Calibration;
pub use error::{Error, Result};
