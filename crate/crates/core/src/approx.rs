//! Scale-and-round approximation of the 8-point DTT.
//!
//! The exact matrix is first companded by a column scaling `D0` that brings
//! every column to the same peak magnitude, then normalized so that peak is
//! one, multiplied by `alpha` and rounded. For `alpha` in `(0, 3/2)` every
//! entry rounds into `{-2, ..., 2}` and the interesting members of the family
//! are those that land in `{-1, 0, 1}`.

use num_rational::Ratio;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{DiagonalScale, IntegerKernel, TransformMatrix};
use crate::tcheb::dtt_matrix;

/// Upper end (exclusive) of the search space for `alpha`.
pub const ALPHA_MAX: f64 = 1.5;

/// Every column of `T · D0` peaks at exactly this magnitude.
pub const COMPANDED_PEAK: f64 = 0.5;

/// Grid point used to select the optimal interval.
pub const REFERENCE_ALPHA: f64 = 0.95;

pub const T_STAR_ROWS: [[i64; 8]; 8] = [
    [1, 1, 1, 1, 1, 1, 1, 1],
    [-1, -1, 0, 0, 0, 0, 1, 1],
    [1, 0, 0, -1, -1, 0, 0, 1],
    [-1, 1, 1, 0, 0, -1, -1, 1],
    [0, -1, 0, 1, 1, 0, -1, 0],
    [0, 1, -1, -1, 1, 1, -1, 0],
    [0, -1, 1, 0, 0, 1, -1, 0],
    [0, 0, -1, 1, -1, 1, 0, 0],
];

pub const T1_ROWS: [[i64; 8]; 8] = [
    [1, -3, 3, -2, 1, -1, -1, -1],
    [1, -2, -1, 2, -1, 1, -1, 1],
    [1, -1, -1, 1, -1, -2, 3, -2],
    [1, -1, -1, 1, 1, -2, -1, 3],
    [1, 1, -1, -1, 1, 2, -1, -3],
    [1, 1, -1, -1, -1, 2, 3, 2],
    [1, 2, -1, -2, -1, -1, -1, -1],
    [1, 3, 3, 2, 1, 1, -1, 1],
];

/// `D1 = diag(1 / D1_DENOM)`.
pub const D1_DENOM: [i64; 8] = [8, 10, 8, 10, 4, 10, 8, 10];

/// Round half away from zero (C `round`, Matlab `round`).
pub fn round_half_away(x: f64) -> f64 {
    x.round()
}

/// Companding scale `D0`.
pub fn d0_scaling() -> DiagonalScale {
    let a = (6.0f64 / 7.0).sqrt();
    let b = 154f64.sqrt() / 13.0;
    let c = 66f64.sqrt() / 9.0;
    let d = 858f64.sqrt() / 35.0;
    DiagonalScale::new(vec![a, b, c, d, d, c, b, a]).expect("D0 entries are positive")
}

/// `T · D0 / COMPANDED_PEAK`: the exact DTT with all column peaks at unit magnitude.
pub fn companded_dtt() -> TransformMatrix {
    let t = dtt_matrix(8).expect("order 8 is valid");
    let scale = DiagonalScale::new(
        d0_scaling()
            .values()
            .iter()
            .map(|d| d / COMPANDED_PEAK)
            .collect(),
    )
    .expect("positive");
    t.scale_cols(&scale).expect("orders agree")
}

fn round_family(companded: &TransformMatrix, alpha: f64) -> IntegerKernel {
    let n = companded.n();
    let entries = (0..n * n)
        .map(|i| round_half_away(alpha * companded.get(i / n, i % n)) as i64)
        .collect();
    IntegerKernel::from_row_major(n, entries).expect("square")
}

/// Member `alpha` of the approximation family.
pub fn approx_family(alpha: f64) -> Result<IntegerKernel> {
    if !(alpha > 0.0 && alpha < ALPHA_MAX) {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in (0, {ALPHA_MAX}), got {alpha}"
        )));
    }
    Ok(round_family(&companded_dtt(), alpha))
}

/// One admissible grid point of the search.
#[derive(Debug, Clone, PartialEq)]
pub struct AdmissibleAlpha {
    /// Position on the grid; `alpha = index · grid_step`.
    pub index: usize,
    pub alpha: f64,
    pub kernel: IntegerKernel,
}

/// A maximal run of consecutive admissible grid points sharing one kernel.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaInterval {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    pub kernel: IntegerKernel,
}

impl AlphaInterval {
    pub fn contains(&self, alpha: f64) -> bool {
        alpha >= self.lo && alpha <= self.hi
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlphaSearchResult {
    pub grid_step: f64,
    pub admissible: Vec<AdmissibleAlpha>,
    /// Run of identical kernels containing [`REFERENCE_ALPHA`], if admissible.
    pub optimal_interval: Option<(f64, f64)>,
}

impl AlphaSearchResult {
    /// All maximal runs of consecutive grid points mapping to one kernel, in grid order.
    pub fn intervals(&self) -> Vec<AlphaInterval> {
        let mut runs: Vec<(usize, usize, &AdmissibleAlpha)> = Vec::new();
        for point in &self.admissible {
            match runs.last_mut() {
                Some((_, last, first))
                    if point.index == *last + 1 && point.kernel == first.kernel =>
                {
                    *last = point.index;
                }
                _ => runs.push((point.index, point.index, point)),
            }
        }
        runs.into_iter()
            .map(|(lo, hi, first)| AlphaInterval {
                lo: lo as f64 * self.grid_step,
                hi: hi as f64 * self.grid_step,
                points: hi - lo + 1,
                kernel: first.kernel.clone(),
            })
            .collect()
    }

    pub fn optimal_run(&self) -> Option<AlphaInterval> {
        let tol = self.grid_step * 1e-6;
        self.intervals()
            .into_iter()
            .find(|r| REFERENCE_ALPHA >= r.lo - tol && REFERENCE_ALPHA <= r.hi + tol)
    }
}

fn is_admissible(kernel: &IntegerKernel) -> bool {
    kernel.max_abs() <= 1 && kernel.determinant() != 0
}

/// Exhaustive search over the grid `{k · grid_step} ∩ (0, 3/2)`.
///
/// A grid point is admissible when its kernel has entries in `{-1, 0, 1}`
/// and is nonsingular.
pub fn search_alpha(grid_step: f64) -> Result<AlphaSearchResult> {
    if !(grid_step.is_finite() && grid_step > 0.0 && grid_step < ALPHA_MAX) {
        return Err(Error::InvalidParameter(format!(
            "grid step must lie in (0, {ALPHA_MAX}), got {grid_step}"
        )));
    }
    let companded = companded_dtt();
    // Largest k with k · step strictly below 3/2, robust to 1.5/step being integral.
    let ratio = ALPHA_MAX / grid_step;
    let mut last = ratio.floor() as usize;
    if (last as f64) * grid_step >= ALPHA_MAX - grid_step * 1e-9 {
        last -= 1;
    }

    let admissible: Vec<AdmissibleAlpha> = (1..=last)
        .into_par_iter()
        .filter_map(|index| {
            let alpha = index as f64 * grid_step;
            let kernel = round_family(&companded, alpha);
            is_admissible(&kernel).then_some(AdmissibleAlpha {
                index,
                alpha,
                kernel,
            })
        })
        .collect();

    let mut result = AlphaSearchResult {
        grid_step,
        admissible,
        optimal_interval: None,
    };
    result.optimal_interval = result.optimal_run().map(|r| (r.lo, r.hi));
    Ok(result)
}

/// The proposed multiplierless kernel with its inverse and scalings.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxKernel {
    /// `T*`, entries in `{-1, 0, 1}`.
    pub forward: IntegerKernel,
    /// `T1`, entries in `{-3, ..., 3}`.
    pub inverse_int: IntegerKernel,
    /// `D1`, so that `T*⁻¹ = T1 · D1`.
    pub inverse_scale: DiagonalScale,
    /// `D*`, making `D* · T*` row-orthonormal.
    pub ortho_scale: DiagonalScale,
}

impl ApproxKernel {
    /// `D* · T*`.
    pub fn orthogonalized(&self) -> TransformMatrix {
        self.forward
            .to_real()
            .scale_rows(&self.ortho_scale)
            .expect("orders agree")
    }

    /// `T1 · D1`, the exact inverse of `T*`.
    pub fn inverse_matrix(&self) -> TransformMatrix {
        self.inverse_int
            .to_real()
            .scale_cols(&self.inverse_scale)
            .expect("orders agree")
    }

    /// `T1 · D1 · (D*)⁻¹`, the exact inverse of `D* · T*`.
    pub fn orthogonalized_inverse(&self) -> TransformMatrix {
        self.inverse_matrix()
            .scale_cols(&self.ortho_scale.inverse())
            .expect("orders agree")
    }
}

/// Both products `(T1·D1)·T*` and `T*·(T1·D1)` evaluated over the rationals.
pub fn rational_inverse_products() -> (Vec<Ratio<i64>>, Vec<Ratio<i64>>) {
    let inv: Vec<Ratio<i64>> = (0..64)
        .map(|i| Ratio::new(T1_ROWS[i / 8][i % 8], D1_DENOM[i % 8]))
        .collect();
    let fwd: Vec<Ratio<i64>> = (0..64)
        .map(|i| Ratio::from_integer(T_STAR_ROWS[i / 8][i % 8]))
        .collect();
    let product = |a: &[Ratio<i64>], b: &[Ratio<i64>]| -> Vec<Ratio<i64>> {
        (0..64)
            .map(|i| {
                let (r, c) = (i / 8, i % 8);
                (0..8).map(|k| a[r * 8 + k] * b[k * 8 + c]).sum()
            })
            .collect()
    };
    (product(&inv, &fwd), product(&fwd, &inv))
}

/// True when `(T1·D1)·T* = T*·(T1·D1) = I` holds exactly.
pub fn inverse_identity_holds() -> bool {
    let (left, right) = rational_inverse_products();
    let is_identity = |m: &[Ratio<i64>]| {
        m.iter().enumerate().all(|(i, v)| {
            let expected = if i / 8 == i % 8 { 1 } else { 0 };
            *v == Ratio::from_integer(expected)
        })
    };
    is_identity(&left) && is_identity(&right)
}

/// The published kernel. Panics if the hard-coded matrices do not invert each other.
pub fn proposed_kernel() -> ApproxKernel {
    assert!(
        inverse_identity_holds(),
        "T1·D1 is not the exact inverse of T*; check the kernel tables"
    );
    let forward = IntegerKernel::from_rows(&T_STAR_ROWS);
    let ortho_scale = orthogonal_scaling(&forward).expect("T* has no zero row");
    ApproxKernel {
        forward,
        inverse_int: IntegerKernel::from_rows(&T1_ROWS),
        inverse_scale: DiagonalScale::new(D1_DENOM.iter().map(|d| 1.0 / *d as f64).collect())
            .expect("positive"),
        ortho_scale,
    }
}

/// `d*_k = 1 / sqrt((K·Kᵀ)_kk)`.
pub fn orthogonal_scaling(kernel: &IntegerKernel) -> Result<DiagonalScale> {
    let norms = kernel.row_sq_norms();
    if let Some(k) = norms.iter().position(|&v| v == 0) {
        return Err(Error::Domain(format!("kernel row {k} is zero")));
    }
    DiagonalScale::new(norms.iter().map(|&v| 1.0 / (v as f64).sqrt()).collect())
}

/// Total energy error `π · ‖exact − approx‖²_F`.
pub fn total_energy_error(exact: &TransformMatrix, approx: &TransformMatrix) -> Result<f64> {
    Ok(std::f64::consts::PI * exact.frobenius_sq_diff(approx)?)
}

/// Energy errors of the forward and inverse approximations against the exact DTT.
pub fn proposed_energy_errors() -> (f64, f64) {
    let exact = dtt_matrix(8).expect("order 8 is valid");
    let kernel = proposed_kernel();
    let forward = total_energy_error(&exact, &kernel.orthogonalized()).expect("8x8");
    let inverse =
        total_energy_error(&exact.transpose(), &kernel.orthogonalized_inverse()).expect("8x8");
    (forward, inverse)
}
