//! Mean structural similarity over an 11×11 Gaussian window.

use super::plane::{gaussian_window, Plane};
use crate::error::{Error, Result};
use crate::image::GrayImage;

pub const WINDOW: usize = 11;
pub const SIGMA: f64 = 1.5;
pub const K1: f64 = 0.01;
pub const K2: f64 = 0.03;
pub const DYNAMIC_RANGE: f64 = 255.0;

/// Per-pixel SSIM map over the valid region (no padding).
pub fn ssim_map(a: &GrayImage, b: &GrayImage) -> Result<Plane> {
    a.same_dimensions(b)?;
    if a.width() < WINDOW || a.height() < WINDOW {
        return Err(Error::InvalidParameter(format!(
            "SSIM needs images of at least {WINDOW}x{WINDOW}"
        )));
    }
    let w = gaussian_window(WINDOW, SIGMA);
    let c1 = (K1 * DYNAMIC_RANGE).powi(2);
    let c2 = (K2 * DYNAMIC_RANGE).powi(2);

    let x = Plane::from_image(a);
    let y = Plane::from_image(b);
    let mu_x = x.filter_valid_separable(&w);
    let mu_y = y.filter_valid_separable(&w);
    let xx = x.zip_map(&x, |p, q| p * q).filter_valid_separable(&w);
    let yy = y.zip_map(&y, |p, q| p * q).filter_valid_separable(&w);
    let xy = x.zip_map(&y, |p, q| p * q).filter_valid_separable(&w);

    let data = (0..mu_x.data.len())
        .map(|i| {
            let (mx, my) = (mu_x.data[i], mu_y.data[i]);
            let mxy = mx * my;
            let mxx = mx * mx;
            let myy = my * my;
            let sxx = xx.data[i] - mxx;
            let syy = yy.data[i] - myy;
            let sxy = xy.data[i] - mxy;
            ((2.0 * mxy + c1) * (2.0 * sxy + c2)) / ((mxx + myy + c1) * (sxx + syy + c2))
        })
        .collect();
    Ok(Plane::new(mu_x.width, mu_x.height, data))
}

/// Mean SSIM between two images of equal size.
pub fn ssim(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    let map = ssim_map(a, b)?;
    // Row sums first, then rows in order, so the result is reproducible.
    let total: f64 = map
        .data
        .chunks(map.width)
        .map(|row| row.iter().sum::<f64>())
        .sum();
    Ok(total / map.data.len() as f64)
}
