//! Certified computations for Tribonacci numbers among the X-coordinates of
//! Pell equations `X^2 - dY^2 = ±1`.

pub mod contfrac;
pub mod error;
pub mod factor;
pub mod lfl_bounds;
pub mod pell;
pub mod realnum;
pub mod reduction;
pub mod search;
mod serde_util;
pub mod tribonacci;

pub use error::{Error, Result};
pub use realnum::{CertifiedReal, PrecisionPolicy};
