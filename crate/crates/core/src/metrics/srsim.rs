//! Spectral-residual-based similarity (SR-SIM).
//!
//! Both images are box-filtered and decimated by `F = max(1, round(min(h, w) / 256))`.
//! A visual saliency map is computed for each by the spectral residual method
//! and a gradient magnitude map with the Scharr operator. Pointwise saliency
//! and gradient similarities are combined and pooled, weighted by the larger
//! of the two saliencies.
//!
//! Constants of the reference implementation:
//!
//! | name              | value |
//! |-------------------|-------|
//! | saliency scale    | 0.25  |
//! | residual filter   | 3×3 mean, replicate border |
//! | post smoothing    | 10×10 Gaussian, σ = 3.8, zero border |
//! | `C1` (saliency)   | 0.40  |
//! | `C2` (gradient)   | 225   |
//! | gradient exponent | 0.50  |

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use super::plane::{Border, Kernel2d, Plane};
use crate::error::{Error, Result};
use crate::image::GrayImage;

pub const SALIENCY_SCALE: f64 = 0.25;
pub const RESIDUAL_FILTER: usize = 3;
pub const SMOOTHING_SIZE: usize = 10;
pub const SMOOTHING_SIGMA: f64 = 3.8;
pub const C1: f64 = 0.40;
pub const C2: f64 = 225.0;
pub const GRADIENT_EXPONENT: f64 = 0.50;

/// Amplitudes are floored here before taking the logarithm; the reference
/// would produce `-inf` (and then NaN) for spectra with exact zeros.
const AMPLITUDE_FLOOR: f64 = 1e-12;

fn fft2(data: &mut [Complex<f64>], width: usize, height: usize, inverse: bool) {
    let mut planner = FftPlanner::new();
    let (row_fft, col_fft) = if inverse {
        (
            planner.plan_fft_inverse(width),
            planner.plan_fft_inverse(height),
        )
    } else {
        (
            planner.plan_fft_forward(width),
            planner.plan_fft_forward(height),
        )
    };
    for row in data.chunks_mut(width) {
        row_fft.process(row);
    }
    let mut col = vec![Complex::new(0.0, 0.0); height];
    for x in 0..width {
        for y in 0..height {
            col[y] = data[y * width + x];
        }
        col_fft.process(&mut col);
        for y in 0..height {
            data[y * width + x] = col[y];
        }
    }
    if inverse {
        let norm = (width * height) as f64;
        for v in data.iter_mut() {
            *v /= norm;
        }
    }
}

/// Spectral residual saliency map, resampled to the size of `image`.
pub fn spectral_residual_saliency(image: &Plane) -> Plane {
    let small = image.rescale(SALIENCY_SCALE);
    let (w, h) = (small.width, small.height);

    let mut spectrum: Vec<Complex<f64>> =
        small.data.iter().map(|&v| Complex::new(v, 0.0)).collect();
    fft2(&mut spectrum, w, h, false);

    let log_amp = Plane::new(
        w,
        h,
        spectrum
            .iter()
            .map(|c| c.norm().max(AMPLITUDE_FLOOR).ln())
            .collect(),
    );
    let smoothed = log_amp.imfilter(&Kernel2d::average(RESIDUAL_FILTER), Border::Replicate);

    let mut field: Vec<Complex<f64>> = spectrum
        .iter()
        .zip(log_amp.data.iter().zip(&smoothed.data))
        .map(|(c, (la, sm))| Complex::from_polar((la - sm).exp(), c.arg()))
        .collect();
    fft2(&mut field, w, h, true);

    let raw = Plane::new(w, h, field.iter().map(|c| c.norm_sqr()).collect());
    let blurred = raw.imfilter(
        &Kernel2d::gaussian(SMOOTHING_SIZE, SMOOTHING_SIGMA),
        Border::Zero,
    );
    // A flat map carries no saliency information; weight all points equally.
    let normalized = blurred
        .mat2gray()
        .unwrap_or_else(|| Plane::new(w, h, vec![1.0; w * h]));
    normalized.resize(image.width, image.height)
}

/// Scharr gradient magnitude, `conv2(.., 'same')` alignment.
pub fn gradient_magnitude(image: &Plane) -> Plane {
    let dx = Kernel2d::new(
        3,
        3,
        [3.0, 0.0, -3.0, 10.0, 0.0, -10.0, 3.0, 0.0, -3.0]
            .map(|v| v / 16.0)
            .to_vec(),
    );
    let dy = Kernel2d::new(
        3,
        3,
        [3.0, 10.0, 3.0, 0.0, 0.0, 0.0, -3.0, -10.0, -3.0]
            .map(|v| v / 16.0)
            .to_vec(),
    );
    let gx = image.conv2_same(&dx);
    let gy = image.conv2_same(&dy);
    gx.zip_map(&gy, |a, b| (a * a + b * b).sqrt())
}

/// Box-filter and decimate so the shorter side is about 256 samples.
pub fn downsample_for_viewing(image: &Plane) -> Plane {
    let f = ((image.width.min(image.height) as f64 / 256.0).round() as usize).max(1);
    if f == 1 {
        return image.clone();
    }
    image.conv2_same(&Kernel2d::average(f)).subsample(f)
}

pub fn sr_sim(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    a.same_dimensions(b)?;
    if a.width() < 4 || a.height() < 4 {
        return Err(Error::InvalidParameter(
            "SR-SIM needs images of at least 4x4".into(),
        ));
    }
    let ya = downsample_for_viewing(&Plane::from_image(a));
    let yb = downsample_for_viewing(&Plane::from_image(b));

    let sa = spectral_residual_saliency(&ya);
    let sb = spectral_residual_saliency(&yb);
    let ga = gradient_magnitude(&ya);
    let gb = gradient_magnitude(&yb);

    let mut weighted = 0.0;
    let mut weights = 0.0;
    for y in 0..ya.height {
        let mut row_weighted = 0.0;
        let mut row_weights = 0.0;
        for x in 0..ya.width {
            let i = y * ya.width + x;
            let (s1, s2) = (sa.data[i], sb.data[i]);
            let (g1, g2) = (ga.data[i], gb.data[i]);
            let sal_sim = (2.0 * s1 * s2 + C1) / (s1 * s1 + s2 * s2 + C1);
            let grad_sim = (2.0 * g1 * g2 + C2) / (g1 * g1 + g2 * g2 + C2);
            let weight = s1.max(s2);
            row_weighted += sal_sim * grad_sim.powf(GRADIENT_EXPONENT) * weight;
            row_weights += weight;
        }
        weighted += row_weighted;
        weights += row_weights;
    }
    if weights <= 0.0 {
        return Err(Error::Domain("saliency maps vanish everywhere".into()));
    }
    Ok(weighted / weights)
}
