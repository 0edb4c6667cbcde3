//! Exact discrete Tchebichef transform.
//!
//! Row `k` of the `N`-point matrix samples the order-`k` discrete Tchebichef
//! polynomial, normalized to unit length:
//!
//! ```text
//! t[k][n] = sqrt((2k+1) (N-k-1)! / (N+k)!) · (1-N)_k · 3F2(-k, -n, 1+k; 1, 1-N; 1)
//! ```
//!
//! The factorial ratio is evaluated as `1 / (N-k)_(2k+1)` so that no large
//! factorial is ever formed.

use crate::error::{Error, Result};
use crate::matrix::{DiagonalScale, IntegerKernel, TransformMatrix};

/// Integer part of the 8-point DTT: `T = F · T0`.
pub const T0_ROWS: [[i64; 8]; 8] = [
    [1, 1, 1, 1, 1, 1, 1, 1],
    [-7, -5, -3, -1, 1, 3, 5, 7],
    [7, 1, -3, -5, -5, -3, 1, 7],
    [-7, 5, 7, 3, -3, -7, -5, 7],
    [7, -13, -3, 9, 9, -3, -13, 7],
    [-7, 23, -17, -15, 15, 17, -23, 7],
    [1, -5, 9, -5, -5, 9, -5, 1],
    [-1, 7, -21, 35, -35, 21, -7, 1],
];

/// Squared reciprocals of the diagonal of `2F`, i.e. `F[k] = 1 / (2 sqrt(F_DENOM[k]))`.
const F_DENOM: [f64; 8] = [2.0, 42.0, 42.0, 66.0, 154.0, 546.0, 66.0, 858.0];

/// Rising factorial `a (a+1) ⋯ (a+k-1)`; 1 for `k = 0`.
pub fn ascending_factorial(a: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (a + f64::from(i)))
}

fn nonpositive_integer(x: f64) -> Option<u32> {
    (x <= 0.0 && x.fract() == 0.0 && x >= -(u32::MAX as f64)).then(|| (-x) as u32)
}

/// Terminating generalized hypergeometric series `3F2(a1, a2, a3; b1, b2; z)`.
///
/// The series must terminate through `a1` or `a2` being a non-positive
/// integer; the sum then runs up to `min(-a1, -a2)` over whichever of them
/// qualify. A denominator parameter reaching zero before that point is a
/// domain error, as is a series that does not terminate.
pub fn hypergeom_3f2_terminating(
    a1: f64,
    a2: f64,
    a3: f64,
    b1: f64,
    b2: f64,
    z: f64,
) -> Result<f64> {
    let last = match (nonpositive_integer(a1), nonpositive_integer(a2)) {
        (Some(m1), Some(m2)) => m1.min(m2),
        (Some(m), None) | (None, Some(m)) => m,
        (None, None) => {
            return Err(Error::Domain(format!(
                "3F2 with a1={a1}, a2={a2} does not terminate"
            )))
        }
    };
    for b in [b1, b2] {
        if let Some(m) = nonpositive_integer(b) {
            if m < last {
                return Err(Error::Domain(format!(
                    "3F2 denominator parameter {b} vanishes before termination"
                )));
            }
        }
    }

    // Term ratio t_{j+1}/t_j = (a1+j)(a2+j)(a3+j) z / ((b1+j)(b2+j)(j+1)).
    let mut term = 1.0;
    let mut sum = 1.0;
    for j in 0..last {
        let j = f64::from(j);
        term *= (a1 + j) * (a2 + j) * (a3 + j) * z / ((b1 + j) * (b2 + j) * (j + 1.0));
        sum += term;
    }
    Ok(sum)
}

/// Orthonormal `n`-point DTT matrix from its closed form.
pub fn dtt_matrix(n: usize) -> Result<TransformMatrix> {
    if n == 0 {
        return Err(Error::InvalidParameter("DTT order must be positive".into()));
    }
    let big_n = n as f64;
    let mut entries = Vec::with_capacity(n * n);
    for k in 0..n {
        let kf = k as f64;
        let ku = k as u32;
        let norm = ((2.0 * kf + 1.0) / ascending_factorial(big_n - kf, 2 * ku + 1)).sqrt();
        let lead = norm * ascending_factorial(1.0 - big_n, ku);
        for m in 0..n {
            let f = hypergeom_3f2_terminating(-kf, -(m as f64), 1.0 + kf, 1.0, 1.0 - big_n, 1.0)?;
            entries.push(lead * f);
        }
    }
    TransformMatrix::from_row_major(n, &entries)
}

/// The 8-point factorization `T = F · T0`.
pub fn exact_factorization_8() -> (DiagonalScale, IntegerKernel) {
    let f = F_DENOM.iter().map(|d| 0.5 / d.sqrt()).collect();
    (
        DiagonalScale::new(f).expect("F entries are positive"),
        IntegerKernel::from_rows(&T0_ROWS),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ascending_factorial_examples() {
        assert_eq!(ascending_factorial(3.0, 0), 1.0);
        assert_eq!(ascending_factorial(1.0, 4), 24.0);
        assert_eq!(ascending_factorial(-7.0, 2), 42.0);
        // Crosses zero: (-2)(-1)(0)
        assert_eq!(ascending_factorial(-2.0, 3), 0.0);
    }

    #[test]
    fn hypergeom_only_leading_term_when_a1_zero() {
        let v = hypergeom_3f2_terminating(0.0, 2.5, -1.25, 3.0, 0.5, 1.0).unwrap();
        assert_eq!(v, 1.0);
    }

    #[test]
    fn hypergeom_two_terms() {
        // 1 + (-1)(-1)(2) / ((1)(-7)) = 5/7
        let v = hypergeom_3f2_terminating(-1.0, -1.0, 2.0, 1.0, -7.0, 1.0).unwrap();
        assert!((v - 5.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn hypergeom_matches_direct_pochhammer_sum() {
        let (a1, a2, a3, b1, b2, z) = (-4.0, -6.0, 5.0, 1.0, -9.0, 1.0);
        let direct: f64 = (0..=4u32)
            .map(|j| {
                ascending_factorial(a1, j) * ascending_factorial(a2, j) * ascending_factorial(a3, j)
                    / (ascending_factorial(b1, j)
                        * ascending_factorial(b2, j)
                        * ascending_factorial(1.0, j))
                    * z
            })
            .sum();
        let v = hypergeom_3f2_terminating(a1, a2, a3, b1, b2, z).unwrap();
        assert!((v - direct).abs() < 1e-12 * direct.abs().max(1.0));
    }

    #[test]
    fn hypergeom_rejects_nonterminating() {
        assert!(matches!(
            hypergeom_3f2_terminating(0.5, 1.5, 1.0, 1.0, 2.0, 1.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn hypergeom_rejects_vanishing_denominator() {
        assert!(hypergeom_3f2_terminating(-5.0, -5.0, 1.0, 1.0, -2.0, 1.0).is_err());
        // b2 = -5 only vanishes at j = 6 > 5 terms, fine
        assert!(hypergeom_3f2_terminating(-5.0, -5.0, 1.0, 1.0, -5.0, 1.0).is_ok());
    }

    #[test]
    fn dtt_rejects_zero_order() {
        assert!(dtt_matrix(0).is_err());
    }

    #[test]
    fn dtt_order_two() {
        let t = dtt_matrix(2).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expected = [[h, h], [-h, h]];
        for (r, row) in expected.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                assert!((t.get(r, c) - v).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn dtt_8_first_row_is_constant() {
        let t = dtt_matrix(8).unwrap();
        for v in t.row(0) {
            assert!((v - 1.0 / (2.0 * 2f64.sqrt())).abs() < 1e-15);
        }
    }

    #[test]
    fn dtt_is_orthonormal_and_row0_constant() {
        for n in 1..=16 {
            let t = dtt_matrix(n).unwrap();
            let gram = t.matmul(&t.transpose()).unwrap();
            let err = gram.max_abs_diff(&TransformMatrix::identity(n)).unwrap();
            assert!(err <= 1e-10, "n={n} err={err}");
            for v in t.row(0) {
                assert!((v - 1.0 / (n as f64).sqrt()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn factorization_reproduces_dtt() {
        let (f, t0) = exact_factorization_8();
        assert_eq!(t0.row(1), &[-7, -5, -3, -1, 1, 3, 5, 7]);
        assert_eq!(t0.row(7), &[-1, 7, -21, 35, -35, 21, -7, 1]);
        assert_eq!(t0.max_abs(), 35);
        let rebuilt = t0.to_real().scale_rows(&f).unwrap();
        let err = rebuilt.max_abs_diff(&dtt_matrix(8).unwrap()).unwrap();
        assert!(err <= 1e-12, "err={err}");
    }

    #[test]
    fn t0_rows_alternate_symmetry() {
        let (_, t0) = exact_factorization_8();
        for k in 0..8 {
            let row = t0.row(k);
            for i in 0..8 {
                let mirrored = if k % 2 == 0 { row[7 - i] } else { -row[7 - i] };
                assert_eq!(row[i], mirrored, "row {k}");
            }
        }
    }
}
