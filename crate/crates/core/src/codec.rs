//! JPEG-like block compression by zonal coefficient retention.
//!
//! Each 8×8 block is transformed in 2-D, scanned in zigzag order, truncated to
//! its first `r` coefficients, and transformed back. There is no quantization
//! table and no level shift.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::approx::{proposed_kernel, D1_DENOM};
use crate::error::{Error, Result};
use crate::fastalg::{forward_fast, inverse_fast};
use crate::image::GrayImage;
use crate::matrix::TransformMatrix;
use crate::tcheb::dtt_matrix;

pub const BLOCK: usize = 8;

/// 8×8 tile in either the pixel or the coefficient domain.
pub type Block8 = [[f64; BLOCK]; BLOCK];

/// Zigzag position `i` → natural (row-major) index `row·8 + col`.
pub const ZIGZAG: [usize; 64] = [
    0, 1, 8, 16, 9, 2, 3, 10, 17, 24, 32, 25, 18, 11, 4, 5, 12, 19, 26, 33, 40, 48, 41, 34, 27, 20,
    13, 6, 7, 14, 21, 28, 35, 42, 49, 56, 57, 50, 43, 36, 29, 22, 15, 23, 30, 37, 44, 51, 58, 59,
    52, 45, 38, 31, 39, 46, 53, 60, 61, 54, 47, 55, 62, 63,
];

/// Number of leading zigzag coefficients kept per block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RetentionSpec(u8);

impl RetentionSpec {
    pub fn new(r: usize) -> Result<Self> {
        if !(1..=64).contains(&r) {
            return Err(Error::InvalidParameter(format!(
                "retained coefficient count must be in 1..=64, got {r}"
            )));
        }
        Ok(Self(r as u8))
    }

    pub fn get(self) -> usize {
        usize::from(self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KernelId {
    ExactDtt,
    Proposed,
}

impl KernelId {
    pub const ALL: [KernelId; 2] = [KernelId::ExactDtt, KernelId::Proposed];

    pub fn as_str(self) -> &'static str {
        match self {
            KernelId::ExactDtt => "exact_dtt",
            KernelId::Proposed => "proposed",
        }
    }

    pub fn codec(self) -> Box<dyn BlockCodec> {
        match self {
            KernelId::ExactDtt => Box::new(MatrixCodec::exact_dtt()),
            KernelId::Proposed => Box::new(ProposedCodec::new()),
        }
    }
}

impl fmt::Display for KernelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for KernelId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact_dtt" | "exact" | "dtt" => Ok(KernelId::ExactDtt),
            "proposed" | "approx" => Ok(KernelId::Proposed),
            other => Err(Error::InvalidParameter(format!(
                "unsupported kernel id {other:?}"
            ))),
        }
    }
}

fn to_block(m: &TransformMatrix) -> Result<Block8> {
    if m.n() != BLOCK {
        return Err(Error::mismatch("8x8 kernel", format!("{0}x{0}", m.n())));
    }
    Ok(std::array::from_fn(|r| {
        std::array::from_fn(|c| m.get(r, c))
    }))
}

fn matmul(a: &Block8, b: &Block8) -> Block8 {
    std::array::from_fn(|r| std::array::from_fn(|c| (0..BLOCK).map(|k| a[r][k] * b[k][c]).sum()))
}

fn transpose(a: &Block8) -> Block8 {
    std::array::from_fn(|r| std::array::from_fn(|c| a[c][r]))
}

/// `M · A · Mᵀ`.
fn sandwich(m: &Block8, a: &Block8) -> Block8 {
    matmul(&matmul(m, a), &transpose(m))
}

/// `B = M · A · Mᵀ` for an 8×8 kernel `M`.
pub fn transform_block_2d(block: &Block8, kernel: &TransformMatrix) -> Result<Block8> {
    Ok(sandwich(&to_block(kernel)?, block))
}

/// Undoes [`transform_block_2d`]: `A = M⁻¹ · B · M⁻ᵀ`.
pub fn inverse_block_2d(coeffs: &Block8, kernel: &TransformMatrix) -> Result<Block8> {
    let inv = to_block(&kernel.inverse()?)?;
    Ok(sandwich(&inv, coeffs))
}

pub fn zigzag_scan(coeffs: &Block8) -> [f64; 64] {
    ZIGZAG.map(|i| coeffs[i / BLOCK][i % BLOCK])
}

pub fn zigzag_unscan(scanned: &[f64; 64]) -> Block8 {
    let mut out = [[0.0; BLOCK]; BLOCK];
    for (v, &i) in scanned.iter().zip(ZIGZAG.iter()) {
        out[i / BLOCK][i % BLOCK] = *v;
    }
    out
}

/// Keeps the first `r` scanned coefficients and zeroes the rest.
pub fn retain(scanned: &[f64; 64], spec: RetentionSpec) -> [f64; 64] {
    let mut out = *scanned;
    out[spec.get()..].fill(0.0);
    out
}

/// A forward/inverse 2-D block transform pair.
pub trait BlockCodec: Send + Sync {
    fn forward(&self, block: &Block8) -> Block8;
    fn inverse(&self, coeffs: &Block8) -> Block8;
}

/// Dense codec defined by a forward matrix and its inverse.
#[derive(Debug, Clone)]
pub struct MatrixCodec {
    forward: Block8,
    inverse: Block8,
}

impl MatrixCodec {
    pub fn new(forward: &TransformMatrix, inverse: &TransformMatrix) -> Result<Self> {
        Ok(Self {
            forward: to_block(forward)?,
            inverse: to_block(inverse)?,
        })
    }

    /// Computes the inverse numerically; rejects singular kernels.
    pub fn from_forward(forward: &TransformMatrix) -> Result<Self> {
        Self::new(forward, &forward.inverse()?)
    }

    pub fn exact_dtt() -> Self {
        let t = dtt_matrix(BLOCK).expect("order 8 is valid");
        Self::new(&t, &t.transpose()).expect("8x8")
    }
}

impl BlockCodec for MatrixCodec {
    fn forward(&self, block: &Block8) -> Block8 {
        sandwich(&self.forward, block)
    }

    fn inverse(&self, coeffs: &Block8) -> Block8 {
        sandwich(&self.inverse, coeffs)
    }
}

/// The approximation: `T*` forward through the fast algorithm, with every
/// diagonal factor folded into the inverse, which runs `T1 · D1` through the
/// fast inverse algorithm.
#[derive(Debug, Clone)]
pub struct ProposedCodec {
    d1: [f64; BLOCK],
}

impl ProposedCodec {
    pub fn new() -> Self {
        // Validates the kernel tables once.
        let _ = proposed_kernel();
        Self {
            d1: D1_DENOM.map(|d| 1.0 / d as f64),
        }
    }
}

impl Default for ProposedCodec {
    fn default() -> Self {
        Self::new()
    }
}

fn separable(block: &Block8, f: impl Fn(&[f64; BLOCK]) -> [f64; BLOCK]) -> Block8 {
    let rows: Block8 = std::array::from_fn(|r| f(&block[r]));
    let cols: Block8 = std::array::from_fn(|c| f(&std::array::from_fn(|r| rows[r][c])));
    transpose(&cols)
}

impl BlockCodec for ProposedCodec {
    fn forward(&self, block: &Block8) -> Block8 {
        separable(block, forward_fast)
    }

    fn inverse(&self, coeffs: &Block8) -> Block8 {
        let scaled: Block8 = std::array::from_fn(|r| {
            std::array::from_fn(|c| coeffs[r][c] * self.d1[r] * self.d1[c])
        });
        separable(&scaled, inverse_fast)
    }
}

fn clamp_round(v: f64) -> u8 {
    v.clamp(0.0, 255.0).round() as u8
}

/// Zigzag-scanned spectra of every block of an image under one codec.
///
/// Holding the spectra lets a sweep over `r` skip the forward transform.
pub struct ImageSpectrum<'a> {
    codec: &'a dyn BlockCodec,
    width: usize,
    height: usize,
    blocks_x: usize,
    blocks: Vec<[f64; 64]>,
}

impl<'a> ImageSpectrum<'a> {
    /// Pads `img` by edge replication to a multiple of 8 and transforms every block.
    pub fn analyze(img: &GrayImage, codec: &'a dyn BlockCodec) -> Self {
        let blocks_x = img.width().div_ceil(BLOCK);
        let blocks_y = img.height().div_ceil(BLOCK);
        let blocks = (0..blocks_x * blocks_y)
            .into_par_iter()
            .map(|b| {
                let (bx, by) = (b % blocks_x, b / blocks_x);
                let block: Block8 = std::array::from_fn(|r| {
                    std::array::from_fn(|c| {
                        let x = (bx * BLOCK + c).min(img.width() - 1);
                        let y = (by * BLOCK + r).min(img.height() - 1);
                        f64::from(img.get(x, y))
                    })
                });
                zigzag_scan(&codec.forward(&block))
            })
            .collect();
        Self {
            codec,
            width: img.width(),
            height: img.height(),
            blocks_x,
            blocks,
        }
    }

    /// Reconstructs every block from its first `r` coefficients, before rounding.
    pub fn reconstruct_blocks(&self, spec: RetentionSpec) -> Vec<Block8> {
        self.blocks
            .par_iter()
            .map(|s| self.codec.inverse(&zigzag_unscan(&retain(s, spec))))
            .collect()
    }

    pub fn reconstruct(&self, spec: RetentionSpec) -> GrayImage {
        let blocks = self.reconstruct_blocks(spec);
        GrayImage::from_fn(self.width, self.height, |x, y| {
            let b = &blocks[(y / BLOCK) * self.blocks_x + x / BLOCK];
            clamp_round(b[y % BLOCK][x % BLOCK])
        })
        .expect("dimensions come from a valid image")
    }
}

/// Forward 2-D → zigzag → retain(r) → unscan → inverse 2-D → clamp and round.
pub fn compress_image(img: &GrayImage, kernel: KernelId, spec: RetentionSpec) -> GrayImage {
    let codec = kernel.codec();
    ImageSpectrum::analyze(img, codec.as_ref()).reconstruct(spec)
}
