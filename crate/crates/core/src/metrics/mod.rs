//! Full-reference image quality metrics.

pub mod plane;
mod srsim;
mod ssim;

use std::fmt;
use std::str::FromStr;

pub use srsim::{gradient_magnitude, spectral_residual_saliency, sr_sim};
pub use ssim::{ssim, ssim_map};

use crate::error::{Error, Result};
use crate::image::GrayImage;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    Ssim,
    SrSim,
}

impl Metric {
    pub fn evaluate(self, reference: &GrayImage, test: &GrayImage) -> Result<f64> {
        match self {
            Metric::Ssim => ssim(reference, test),
            Metric::SrSim => sr_sim(reference, test),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Ssim => "ssim",
            Metric::SrSim => "srsim",
        })
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ssim" => Ok(Metric::Ssim),
            "srsim" | "sr-sim" | "sr_sim" => Ok(Metric::SrSim),
            other => Err(Error::InvalidParameter(format!("unknown metric {other:?}"))),
        }
    }
}

#[cfg(test)]
pub(crate) fn mse(a: &GrayImage, b: &GrayImage) -> f64 {
    let n = a.samples().len() as f64;
    a.samples()
        .iter()
        .zip(b.samples())
        .map(|(&x, &y)| (f64::from(x) - f64::from(y)).powi(2))
        .sum::<f64>()
        / n
}
