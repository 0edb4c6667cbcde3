//! Float raster plus the filtering and resampling primitives the metrics need.
//!
//! Border handling and kernel alignment follow the Matlab conventions the
//! reference metric implementations were written against: `conv2(.., 'same')`,
//! `imfilter` (correlation, zero or replicate padding), `fspecial` kernels and
//! bicubic `imresize` with antialiasing.

use crate::image::GrayImage;

#[derive(Debug, Clone, PartialEq)]
pub struct Plane {
    pub width: usize,
    pub height: usize,
    pub data: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Border {
    Zero,
    Replicate,
}

impl Plane {
    pub fn new(width: usize, height: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), width * height);
        Self {
            width,
            height,
            data,
        }
    }

    pub fn from_image(img: &GrayImage) -> Self {
        Self::new(img.width(), img.height(), img.to_f64())
    }

    #[inline]
    pub fn at(&self, x: usize, y: usize) -> f64 {
        self.data[y * self.width + x]
    }

    fn sample(&self, x: isize, y: isize, border: Border) -> f64 {
        let inside = x >= 0 && y >= 0 && (x as usize) < self.width && (y as usize) < self.height;
        match (inside, border) {
            (true, _) => self.at(x as usize, y as usize),
            (false, Border::Zero) => 0.0,
            (false, Border::Replicate) => {
                let cx = x.clamp(0, self.width as isize - 1) as usize;
                let cy = y.clamp(0, self.height as isize - 1) as usize;
                self.at(cx, cy)
            }
        }
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self::new(
            self.width,
            self.height,
            self.data.iter().map(|&v| f(v)).collect(),
        )
    }

    pub fn zip_map(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        assert_eq!((self.width, self.height), (other.width, other.height));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Self::new(self.width, self.height, data)
    }

    /// Same-size correlation with a `kh`×`kw` kernel anchored at `(ay, ax)`:
    /// `out[y][x] = Σ k[i][j] · in[y + i − ay][x + j − ax]`.
    fn correlate_anchored(&self, kernel: &Kernel2d, ay: usize, ax: usize, border: Border) -> Self {
        let mut out = vec![0.0; self.width * self.height];
        for y in 0..self.height {
            for x in 0..self.width {
                let mut acc = 0.0;
                for i in 0..kernel.height {
                    for j in 0..kernel.width {
                        let k = kernel.data[i * kernel.width + j];
                        if k != 0.0 {
                            let sy = y as isize + i as isize - ay as isize;
                            let sx = x as isize + j as isize - ax as isize;
                            acc += k * self.sample(sx, sy, border);
                        }
                    }
                }
                out[y * self.width + x] = acc;
            }
        }
        Self::new(self.width, self.height, out)
    }

    /// `imfilter(A, K, border)`: correlation anchored at `floor((size+1)/2)` (1-based).
    pub fn imfilter(&self, kernel: &Kernel2d, border: Border) -> Self {
        self.correlate_anchored(
            kernel,
            (kernel.height - 1) / 2,
            (kernel.width - 1) / 2,
            border,
        )
    }

    /// `conv2(A, K, 'same')` with zero padding.
    pub fn conv2_same(&self, kernel: &Kernel2d) -> Self {
        let flipped = kernel.flipped();
        // same[i] = Σ_k A[i + floor(m/2) − k] K[k] = correlation with flip(K)
        // anchored at m − 1 − floor(m/2).
        self.correlate_anchored(
            &flipped,
            kernel.height - 1 - kernel.height / 2,
            kernel.width - 1 - kernel.width / 2,
            Border::Zero,
        )
    }

    /// Separable `filter2(w ⊗ w, A, 'valid')` for a symmetric 1-D window `w`.
    pub fn filter_valid_separable(&self, w: &[f64]) -> Self {
        let m = w.len();
        assert!(self.width >= m && self.height >= m);
        let ow = self.width - m + 1;
        let oh = self.height - m + 1;
        let mut horiz = vec![0.0; ow * self.height];
        for y in 0..self.height {
            let row = &self.data[y * self.width..(y + 1) * self.width];
            for x in 0..ow {
                horiz[y * ow + x] = w.iter().zip(&row[x..x + m]).map(|(a, b)| a * b).sum();
            }
        }
        let mut out = vec![0.0; ow * oh];
        for (y, dst) in out.chunks_mut(ow).enumerate() {
            for (i, wi) in w.iter().enumerate() {
                let src = &horiz[(y + i) * ow..(y + i + 1) * ow];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d += wi * s;
                }
            }
        }
        Self::new(ow, oh, out)
    }

    /// Keeps every `step`-th sample in both directions, starting at 0.
    pub fn subsample(&self, step: usize) -> Self {
        let w = self.width.div_ceil(step);
        let h = self.height.div_ceil(step);
        let data = (0..h)
            .flat_map(|y| (0..w).map(move |x| (x, y)))
            .map(|(x, y)| self.at(x * step, y * step))
            .collect();
        Self::new(w, h, data)
    }

    /// `mat2gray`: affine map of `[min, max]` onto `[0, 1]`; `None` for a constant plane.
    pub fn mat2gray(&self) -> Option<Self> {
        let lo = self.data.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = self.data.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        (hi > lo).then(|| self.map(|v| (v - lo) / (hi - lo)))
    }

    /// Bicubic `imresize` to `out_width`×`out_height`, antialiased when shrinking.
    pub fn resize(&self, out_width: usize, out_height: usize) -> Self {
        let sx = out_width as f64 / self.width as f64;
        let sy = out_height as f64 / self.height as f64;
        self.resize_with_scale(out_width, out_height, sx, sy)
    }

    /// `imresize(A, scale)`: output size `ceil(scale · size)`.
    pub fn rescale(&self, scale: f64) -> Self {
        let w = (self.width as f64 * scale).ceil() as usize;
        let h = (self.height as f64 * scale).ceil() as usize;
        self.resize_with_scale(w, h, scale, scale)
    }

    fn resize_with_scale(&self, out_w: usize, out_h: usize, sx: f64, sy: f64) -> Self {
        let rows = contributions(self.height, out_h, sy);
        let cols = contributions(self.width, out_w, sx);
        // Vertical pass, then horizontal.
        let mut tmp = vec![0.0; self.width * out_h];
        for (oy, taps) in rows.iter().enumerate() {
            for x in 0..self.width {
                tmp[oy * self.width + x] = taps.iter().map(|&(i, wt)| wt * self.at(x, i)).sum();
            }
        }
        let mut out = vec![0.0; out_w * out_h];
        for y in 0..out_h {
            for (ox, taps) in cols.iter().enumerate() {
                out[y * out_w + ox] = taps
                    .iter()
                    .map(|&(i, wt)| wt * tmp[y * self.width + i])
                    .sum();
            }
        }
        Self::new(out_w, out_h, out)
    }
}

/// Keys cubic kernel with `a = -0.5`.
fn cubic(x: f64) -> f64 {
    let ax = x.abs();
    let ax2 = ax * ax;
    let ax3 = ax2 * ax;
    if ax <= 1.0 {
        1.5 * ax3 - 2.5 * ax2 + 1.0
    } else if ax <= 2.0 {
        -0.5 * ax3 + 2.5 * ax2 - 4.0 * ax + 2.0
    } else {
        0.0
    }
}

/// Per-output-sample `(input index, weight)` taps of a 1-D bicubic resize.
fn contributions(in_len: usize, out_len: usize, scale: f64) -> Vec<Vec<(usize, f64)>> {
    let antialias = scale < 1.0;
    let width = if antialias { 4.0 / scale } else { 4.0 };
    let kernel = |x: f64| {
        if antialias {
            scale * cubic(scale * x)
        } else {
            cubic(x)
        }
    };
    let taps = width.ceil() as isize + 2;
    let period = 2 * in_len as isize;
    (1..=out_len)
        .map(|u| {
            // 1-based positions throughout, as in the reference.
            let x = u as f64 / scale + 0.5 * (1.0 - 1.0 / scale);
            let left = (x - width / 2.0).floor() as isize;
            let raw: Vec<(isize, f64)> = (0..taps)
                .map(|p| {
                    let idx = left + p;
                    (idx, kernel(x - idx as f64))
                })
                .collect();
            let total: f64 = raw.iter().map(|(_, w)| w).sum();
            raw.into_iter()
                .filter(|(_, w)| *w != 0.0)
                .map(|(idx, w)| {
                    // Symmetric extension: 1..n, n..1, repeated.
                    let m = (idx - 1).rem_euclid(period);
                    let i = if m < in_len as isize {
                        m
                    } else {
                        period - 1 - m
                    };
                    (i as usize, w / total)
                })
                .collect()
        })
        .collect()
}

/// Dense 2-D filter kernel.
#[derive(Debug, Clone, PartialEq)]
pub struct Kernel2d {
    pub width: usize,
    pub height: usize,
    pub data: Vec<f64>,
}

impl Kernel2d {
    pub fn new(width: usize, height: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), width * height);
        Self {
            width,
            height,
            data,
        }
    }

    /// `fspecial('average', n)`.
    pub fn average(n: usize) -> Self {
        Self::new(n, n, vec![1.0 / (n * n) as f64; n * n])
    }

    /// `fspecial('gaussian', n, sigma)`.
    pub fn gaussian(n: usize, sigma: f64) -> Self {
        let w = gaussian_window(n, sigma);
        let data = w
            .iter()
            .flat_map(|a| w.iter().map(move |b| a * b))
            .collect();
        Self::new(n, n, data)
    }

    fn flipped(&self) -> Self {
        let mut data = self.data.clone();
        data.reverse();
        Self::new(self.width, self.height, data)
    }
}

/// Normalized 1-D Gaussian window of `n` taps centered between the ends.
///
/// The outer product of this window with itself equals `fspecial('gaussian')`
/// whenever no tap falls under `eps · max`, which holds for every size/sigma
/// pair used here.
pub fn gaussian_window(n: usize, sigma: f64) -> Vec<f64> {
    let c = (n as f64 - 1.0) / 2.0;
    let raw: Vec<f64> = (0..n)
        .map(|i| {
            let x = i as f64 - c;
            (-(x * x) / (2.0 * sigma * sigma)).exp()
        })
        .collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / total).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conv2_same_alignment_matches_reference() {
        // conv2([1 2 3], [1 1], 'same') = [3 5 3]
        let p = Plane::new(3, 1, vec![1.0, 2.0, 3.0]);
        let out = p.conv2_same(&Kernel2d::new(2, 1, vec![1.0, 1.0]));
        assert_eq!(out.data, vec![3.0, 5.0, 3.0]);
        // conv2([1 2 3], [1 0 0], 'same') = [2 3 0]
        let out = p.conv2_same(&Kernel2d::new(3, 1, vec![1.0, 0.0, 0.0]));
        assert_eq!(out.data, vec![2.0, 3.0, 0.0]);
    }

    #[test]
    fn imfilter_anchor_and_borders() {
        let p = Plane::new(4, 1, vec![1.0, 2.0, 3.0, 4.0]);
        // Even-length kernel anchored at index 1 (0-based): out[i] = A[i-1]·k0 + A[i]·k1 + ...
        let k = Kernel2d::new(4, 1, vec![1.0, 0.0, 0.0, 0.0]);
        assert_eq!(p.imfilter(&k, Border::Zero).data, vec![0.0, 1.0, 2.0, 3.0]);
        assert_eq!(
            p.imfilter(&k, Border::Replicate).data,
            vec![1.0, 1.0, 2.0, 3.0]
        );
        let avg = Kernel2d::average(3);
        let flat = Plane::new(3, 3, vec![5.0; 9]);
        for v in flat.imfilter(&avg, Border::Replicate).data {
            assert!((v - 5.0).abs() < 1e-12);
        }
    }

    #[test]
    fn gaussian_window_is_normalized_and_symmetric() {
        for (n, s) in [(11, 1.5), (10, 3.8)] {
            let w = gaussian_window(n, s);
            assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-15);
            for i in 0..n {
                assert!((w[i] - w[n - 1 - i]).abs() < 1e-18);
            }
            let k = Kernel2d::gaussian(n, s);
            assert!((k.data.iter().sum::<f64>() - 1.0).abs() < 1e-14);
            let min = k.data.iter().copied().fold(f64::INFINITY, f64::min);
            assert!(min > f64::EPSILON * k.data[n * n / 2]);
        }
    }

    #[test]
    fn separable_valid_filter_matches_direct() {
        let p = Plane::new(6, 5, (0..30).map(|v| (v * v % 17) as f64).collect());
        let w = gaussian_window(3, 0.8);
        let out = p.filter_valid_separable(&w);
        assert_eq!((out.width, out.height), (4, 3));
        for y in 0..3 {
            for x in 0..4 {
                let mut s = 0.0;
                for i in 0..3 {
                    for j in 0..3 {
                        s += w[i] * w[j] * p.at(x + j, y + i);
                    }
                }
                assert!((out.at(x, y) - s).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn resize_preserves_constants_and_sizes() {
        let p = Plane::new(16, 12, vec![42.0; 192]);
        let small = p.rescale(0.25);
        assert_eq!((small.width, small.height), (4, 3));
        assert!(small.data.iter().all(|v| (v - 42.0).abs() < 1e-12));
        let big = small.resize(16, 12);
        assert!(big.data.iter().all(|v| (v - 42.0).abs() < 1e-12));
    }

    #[test]
    fn resize_identity_scale() {
        let p = Plane::new(5, 4, (0..20).map(|v| v as f64).collect());
        let same = p.resize(5, 4);
        for (a, b) in p.data.iter().zip(&same.data) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn upsampling_a_ramp_is_linear_in_the_interior() {
        // Cubic convolution reproduces linear functions away from the borders.
        let p = Plane::new(8, 1, (0..8).map(|v| v as f64).collect());
        let up = p.resize(32, 1);
        for ox in 8..24 {
            let x = (ox as f64 + 1.0) / 4.0 + 0.5 * (1.0 - 0.25) - 1.0;
            assert!((up.at(ox, 0) - x).abs() < 1e-12, "ox={ox}");
        }
    }

    #[test]
    fn mat2gray_range() {
        let p = Plane::new(3, 1, vec![2.0, 4.0, 6.0]);
        assert_eq!(p.mat2gray().unwrap().data, vec![0.0, 0.5, 1.0]);
        assert!(Plane::new(2, 1, vec![1.0, 1.0]).mat2gray().is_none());
    }
}
