//! Exact SU(3) and G2 torsion, warped G2-structures on `M6 x_f S1`, and the
//! Laplacian coflow on Lie-group coframes.

pub mod cli;
pub mod coframe;
pub mod error;
pub mod exterior;
pub mod flows;
pub mod g2warp;
pub mod linalg;
pub mod su3;
pub mod scalars;

pub use error::{Error, Result};
