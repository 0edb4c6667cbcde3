//! Multiplication-free fast algorithms for `T*` and `T1`.
//!
//! Both kernels have even rows (resp. columns) symmetric and odd ones
//! antisymmetric under index reversal, so each algorithm is a mirror
//! butterfly plus two 4-point sub-transforms. Negation is free; `×2` is a
//! single left shift and `×3` is a shift followed by an addition.
//!
//! The algorithms are generic over [`Arith`], which lets the same code run
//! on integers, floats, and the operation-counting [`Counted`] type.

use std::cell::Cell;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Arithmetic needed by the fast algorithms.
pub trait Arith: Copy + Add<Output = Self> + Sub<Output = Self> + Neg<Output = Self> {
    /// Multiplication by two, realized as a left shift.
    fn shl1(self) -> Self;
}

impl Arith for i32 {
    #[inline]
    fn shl1(self) -> Self {
        self << 1
    }
}

impl Arith for i64 {
    #[inline]
    fn shl1(self) -> Self {
        self << 1
    }
}

impl Arith for f64 {
    #[inline]
    fn shl1(self) -> Self {
        self * 2.0
    }
}

/// `X̂ = T* · x` with 20 additions.
pub fn forward_fast<T: Arith>(x: &[T; 8]) -> [T; 8] {
    // Mirror butterfly.
    let a0 = x[0] + x[7];
    let a1 = x[1] + x[6];
    let a2 = x[2] + x[5];
    let a3 = x[3] + x[4];
    let b0 = x[0] - x[7];
    let b1 = x[1] - x[6];
    let b2 = x[2] - x[5];
    let b3 = x[3] - x[4];

    // Even rows: [1 1 1 1], [1 0 0 -1], [0 -1 0 1], [0 -1 1 0].
    let s03 = a0 + a3;
    let s12 = a1 + a2;
    let y0 = s03 + s12;
    let y2 = a0 - a3;
    let y4 = a3 - a1;
    let y6 = a2 - a1;

    // Odd rows: [-1 -1 0 0], [-1 1 1 0], [0 1 -1 -1], [0 0 -1 1].
    let y1 = -(b0 + b1);
    let y3 = b1 + (b2 - b0);
    let y5 = b1 - (b2 + b3);
    let y7 = b3 - b2;

    [y0, y1, y2, y3, y4, y5, y6, y7]
}

/// `x = T1 · X` with 29 additions and 8 shifts.
///
/// The diagonal factors `D1` and `(D*)⁻¹` are not applied here.
pub fn inverse_fast<T: Arith>(c: &[T; 8]) -> [T; 8] {
    // Even part, columns 0, 2, 4, 6 of T1 (rows 0..3):
    //   [1  3  1 -1], [1 -1 -1 -1], [1 -1 -1  3], [1 -1  1 -1]
    let u = c[0] - c[2];
    let w = c[4] + c[6];
    let v = c[4] - c[6];
    let e1 = u - w;
    let e3 = u + v;
    let e0 = (c[0] + (c[2].shl1() + c[2])) + v;
    let e2 = (u - c[4]) + (c[6].shl1() + c[6]);

    // Odd part, columns 1, 3, 5, 7 of T1 (rows 0..3):
    //   [-3 -2 -1 -1], [-2  2  1  1], [-1  1 -2 -2], [-1  1 -2  3]
    let q = c[5] + c[7];
    let g = c[3] - c[1];
    let o0 = -(((c[1].shl1() + c[1]) + c[3].shl1()) + q);
    let o1 = g.shl1() + q;
    let o2 = g - q.shl1();
    let o3 = (g - c[5].shl1()) + (c[7].shl1() + c[7]);

    // Mirror butterfly.
    [
        e0 + o0,
        e1 + o1,
        e2 + o2,
        e3 + o3,
        e3 - o3,
        e2 - o2,
        e1 - o1,
        e0 - o0,
    ]
}

/// Arithmetic cost of a 1-D transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OpCount {
    pub multiplications: u64,
    /// Additions and subtractions combined.
    pub additions: u64,
    pub shifts: u64,
}

impl OpCount {
    pub const fn new(multiplications: u64, additions: u64, shifts: u64) -> Self {
        Self {
            multiplications,
            additions,
            shifts,
        }
    }

    pub fn total(&self) -> u64 {
        self.multiplications + self.additions + self.shifts
    }
}

impl fmt::Display for OpCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "mult={} add={} shift={}",
            self.multiplications, self.additions, self.shifts
        )
    }
}

thread_local! {
    static TALLY: Cell<OpCount> = const { Cell::new(OpCount::new(0, 0, 0)) };
}

fn bump(f: impl FnOnce(&mut OpCount)) {
    TALLY.with(|t| {
        let mut c = t.get();
        f(&mut c);
        t.set(c);
    });
}

/// Integer that records every operation applied to it in a thread-local tally.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Counted(pub i64);

impl Add for Counted {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        bump(|c| c.additions += 1);
        Counted(self.0 + rhs.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Sub for Counted {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        bump(|c| c.additions += 1);
        Counted(self.0 - rhs.0)
    }
}

impl Neg for Counted {
    type Output = Self;
    fn neg(self) -> Self {
        Counted(-self.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for Counted {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        bump(|c| c.multiplications += 1);
        Counted(self.0 * rhs.0)
    }
}

impl Arith for Counted {
    fn shl1(self) -> Self {
        bump(|c| c.shifts += 1);
        Counted(self.0 << 1)
    }
}

/// Runs `f` and returns its result together with the operations it performed.
pub fn tally<R>(f: impl FnOnce() -> R) -> (R, OpCount) {
    let saved = TALLY.with(|t| t.replace(OpCount::default()));
    let out = f();
    let counted = TALLY.with(|t| t.replace(saved));
    (out, counted)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    ForwardFast,
    InverseFast,
}

/// Operation count of `algorithm`, measured by running it on [`Counted`] input.
pub fn count_ops(algorithm: Algorithm) -> OpCount {
    count_ops_on(algorithm, &[1, 2, 3, 4, 5, 6, 7, 8])
}

/// Like [`count_ops`] with an explicit input vector.
pub fn count_ops_on(algorithm: Algorithm, input: &[i64; 8]) -> OpCount {
    let x = input.map(Counted);
    let (_, ops) = tally(|| match algorithm {
        Algorithm::ForwardFast => forward_fast(&x),
        Algorithm::InverseFast => inverse_fast(&x),
    });
    ops
}

/// Cost of the exact integer DTT fast algorithm (cited constant, not implemented).
pub const EXACT_DTT_COST: OpCount = OpCount::new(0, 44, 29);

/// Cost of the H.264/AVC 8-point integer transform (cited constant).
pub const H264_COST: OpCount = OpCount::new(0, 32, 14);

/// Percentage by which `ours` undercuts `baseline`; `None` for a zero baseline.
pub fn reduction_percent(ours: u64, baseline: u64) -> Option<f64> {
    (baseline != 0).then(|| 100.0 * (baseline as f64 - ours as f64) / baseline as f64)
}
