//! Exact discrete Tchebichef transform (DTT), a multiplication-free 8-point
//! DTT approximation with fast algorithms, and a block-compression harness
//! for comparing the two with SSIM and SR-SIM.
//!
//! Module map:
//!
//! - [`tcheb`]: exact `N`-point DTT from its closed form and the 8-point
//!   factorization `T = F · T0`.
//! - [`approx`]: the scale-and-round approximation family, the exhaustive
//!   `alpha` search, the proposed kernel `T*` and its exact inverse `T1 · D1`.
//! - [`fastalg`]: addition-only fast algorithms for `T*` and `T1` and their
//!   instrumented operation counts.
//! - [`codec`]: 8×8 block transform, zigzag scan and coefficient retention.
//! - [`metrics`]: SSIM and SR-SIM.
//! - [`sweep`]: corpus sweeps, CSV output and the complexity report.

pub mod approx;
pub mod codec;
pub mod error;
pub mod fastalg;
pub mod image;
pub mod matrix;
pub mod metrics;
pub mod sweep;
pub mod tcheb;

pub use error::{Error, Result};
pub use image::GrayImage;
pub use matrix::{DiagonalScale, IntegerKernel, TransformMatrix};
