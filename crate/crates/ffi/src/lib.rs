//! C ABI over `adtt`.
//!
//! Every fallible function returns an [`AdttStatus`]. On failure a message is
//! stored per thread and can be read with [`adtt_last_error_message`]. Images
//! are opaque [`AdttImage`] handles owned by the caller and released with
//! [`adtt_image_free`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use adtt::codec::{compress_image, KernelId, RetentionSpec};
use adtt::fastalg::{forward_fast, inverse_fast};
use adtt::metrics::Metric;
use adtt::tcheb::dtt_matrix;
use adtt::{Error, GrayImage};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdttStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    Io = 4,
    Format = 5,
    Domain = 6,
    BufferTooSmall = 7,
    Internal = 8,
}

/// Values accepted by the `kernel` argument of [`adtt_compress`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdttKernel {
    ExactDtt = 0,
    Proposed = 1,
}

/// Values accepted by the `metric` argument of [`adtt_quality`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdttMetric {
    Ssim = 0,
    SrSim = 1,
}

/// Opaque 8-bit grayscale image.
pub struct AdttImage {
    inner: GrayImage,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<Vec<u8>>) {
    let mut bytes = msg.into();
    bytes.retain(|&b| b != 0);
    let text = CString::new(bytes).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn fail(status: AdttStatus, msg: impl Into<Vec<u8>>) -> AdttStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> AdttStatus {
    let status = match e {
        Error::InvalidParameter(_) | Error::Config(_) => AdttStatus::InvalidArgument,
        Error::DimensionMismatch { .. } => AdttStatus::DimensionMismatch,
        Error::Io { .. } => AdttStatus::Io,
        Error::Pgm(_) | Error::Corpus(_) => AdttStatus::Format,
        Error::Domain(_) | Error::Singular => AdttStatus::Domain,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> AdttStatus) -> AdttStatus {
    catch_unwind(AssertUnwindSafe(f))
        .unwrap_or_else(|_| fail(AdttStatus::Internal, "internal panic"))
}

fn kernel_id(kernel: u32) -> Option<KernelId> {
    match kernel {
        k if k == AdttKernel::ExactDtt as u32 => Some(KernelId::ExactDtt),
        k if k == AdttKernel::Proposed as u32 => Some(KernelId::Proposed),
        _ => None,
    }
}

fn metric_id(metric: u32) -> Option<Metric> {
    match metric {
        m if m == AdttMetric::Ssim as u32 => Some(Metric::Ssim),
        m if m == AdttMetric::SrSim as u32 => Some(Metric::SrSim),
        _ => None,
    }
}

unsafe fn path_arg<'a>(path: *const c_char) -> Result<&'a str, AdttStatus> {
    if path.is_null() {
        return Err(fail(AdttStatus::NullPointer, "path is null"));
    }
    CStr::from_ptr(path)
        .to_str()
        .map_err(|_| fail(AdttStatus::InvalidArgument, "path is not valid UTF-8"))
}

fn emit(out: *mut *mut AdttImage, img: GrayImage) -> AdttStatus {
    let handle = Box::into_raw(Box::new(AdttImage { inner: img }));
    // SAFETY: callers check `out` for null before producing the image.
    unsafe { *out = handle };
    AdttStatus::Ok
}

/// Copies the last error message of the calling thread into `buf` as a
/// NUL-terminated string, truncating to `len` bytes. Returns the length the
/// full message needs including the terminator, or 0 if there is none.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn adtt_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes_with_nul();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n - 1) = 0;
        }
        bytes.len()
    })
}

/// Creates an image from `width * height` row-major samples.
///
/// # Safety
/// `data` must point to `len` readable bytes; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn adtt_image_from_raw(
    width: usize,
    height: usize,
    data: *const u8,
    len: usize,
    out: *mut *mut AdttImage,
) -> AdttStatus {
    guard(|| {
        if data.is_null() || out.is_null() {
            return fail(AdttStatus::NullPointer, "data or out is null");
        }
        if width.checked_mul(height) != Some(len) {
            return fail(
                AdttStatus::DimensionMismatch,
                format!("{width}x{height} image does not have {len} samples"),
            );
        }
        let samples = std::slice::from_raw_parts(data, len).to_vec();
        match GrayImage::new(width, height, samples) {
            Ok(img) => emit(out, img),
            Err(e) => from_error(e),
        }
    })
}

/// Reads a binary (P5) PGM file.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn adtt_image_load_pgm(
    path: *const c_char,
    out: *mut *mut AdttImage,
) -> AdttStatus {
    guard(|| {
        if out.is_null() {
            return fail(AdttStatus::NullPointer, "out is null");
        }
        let path = match path_arg(path) {
            Ok(p) => p,
            Err(s) => return s,
        };
        match GrayImage::read_pgm(path) {
            Ok(img) => emit(out, img),
            Err(e) => from_error(e),
        }
    })
}

/// Writes an image as binary PGM.
///
/// # Safety
/// `img` must be a live handle; `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn adtt_image_save_pgm(
    img: *const AdttImage,
    path: *const c_char,
) -> AdttStatus {
    guard(|| {
        let Some(img) = img.as_ref() else {
            return fail(AdttStatus::NullPointer, "image is null");
        };
        let path = match path_arg(path) {
            Ok(p) => p,
            Err(s) => return s,
        };
        match img.inner.write_pgm(path) {
            Ok(()) => AdttStatus::Ok,
            Err(e) => from_error(e),
        }
    })
}

/// Releases an image. Null is ignored.
///
/// # Safety
/// `img` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn adtt_image_free(img: *mut AdttImage) {
    if !img.is_null() {
        drop(Box::from_raw(img));
    }
}

/// Width in pixels, 0 for a null handle.
///
/// # Safety
/// `img` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn adtt_image_width(img: *const AdttImage) -> usize {
    img.as_ref().map_or(0, |i| i.inner.width())
}

/// Height in pixels, 0 for a null handle.
///
/// # Safety
/// `img` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn adtt_image_height(img: *const AdttImage) -> usize {
    img.as_ref().map_or(0, |i| i.inner.height())
}

/// Row-major samples, valid until the handle is freed. Null for a null handle.
///
/// # Safety
/// `img` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn adtt_image_data(img: *const AdttImage) -> *const u8 {
    img.as_ref()
        .map_or(ptr::null(), |i| i.inner.samples().as_ptr())
}

unsafe fn apply8(input: *const i32, output: *mut i32, f: fn(&[i64; 8]) -> [i64; 8]) -> AdttStatus {
    guard(|| {
        if input.is_null() || output.is_null() {
            return fail(AdttStatus::NullPointer, "input or output is null");
        }
        let x: [i64; 8] = std::array::from_fn(|i| i64::from(*input.add(i)));
        let y = f(&x);
        let mut narrowed = [0i32; 8];
        for (dst, &v) in narrowed.iter_mut().zip(&y) {
            match i32::try_from(v) {
                Ok(v) => *dst = v,
                Err(_) => return fail(AdttStatus::InvalidArgument, "result overflows int32"),
            }
        }
        ptr::copy_nonoverlapping(narrowed.as_ptr(), output, 8);
        AdttStatus::Ok
    })
}

/// Multiplier-free forward transform of 8 samples.
///
/// # Safety
/// `input` and `output` must each point to 8 `int32_t`; they may alias.
#[no_mangle]
pub unsafe extern "C" fn adtt_forward_fast(input: *const i32, output: *mut i32) -> AdttStatus {
    apply8(input, output, forward_fast::<i64>)
}

/// Multiplier-free integer inverse of 8 coefficients, before the diagonal
/// inverse scale is applied.
///
/// # Safety
/// `input` and `output` must each point to 8 `int32_t`; they may alias.
#[no_mangle]
pub unsafe extern "C" fn adtt_inverse_fast(input: *const i32, output: *mut i32) -> AdttStatus {
    apply8(input, output, inverse_fast::<i64>)
}

/// Writes the `n x n` exact orthonormal DTT matrix row-major into `out`.
///
/// # Safety
/// `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn adtt_dtt_matrix(n: usize, out: *mut f64, len: usize) -> AdttStatus {
    guard(|| {
        if out.is_null() {
            return fail(AdttStatus::NullPointer, "out is null");
        }
        let Some(needed) = n.checked_mul(n) else {
            return fail(AdttStatus::InvalidArgument, "n is too large");
        };
        if len < needed {
            return fail(
                AdttStatus::BufferTooSmall,
                format!("need {needed} doubles, got {len}"),
            );
        }
        let t = match dtt_matrix(n) {
            Ok(t) => t,
            Err(e) => return from_error(e),
        };
        let dst = std::slice::from_raw_parts_mut(out, needed);
        for r in 0..n {
            for c in 0..n {
                dst[r * n + c] = t.get(r, c);
            }
        }
        AdttStatus::Ok
    })
}

/// Compresses `img` blockwise keeping the first `r` zigzag coefficients
/// (1..=64) and stores the reconstruction in a new handle.
///
/// # Safety
/// `img` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn adtt_compress(
    img: *const AdttImage,
    kernel: u32,
    r: u32,
    out: *mut *mut AdttImage,
) -> AdttStatus {
    guard(|| {
        let Some(img) = img.as_ref() else {
            return fail(AdttStatus::NullPointer, "image is null");
        };
        if out.is_null() {
            return fail(AdttStatus::NullPointer, "out is null");
        }
        let Some(kernel) = kernel_id(kernel) else {
            return fail(
                AdttStatus::InvalidArgument,
                format!("unknown kernel {kernel}"),
            );
        };
        let spec = match RetentionSpec::new(r as usize) {
            Ok(s) => s,
            Err(e) => return from_error(e),
        };
        emit(out, compress_image(&img.inner, kernel, spec))
    })
}

/// Full-reference quality score of `test` against `reference`.
///
/// # Safety
/// Both handles must be live; `score` must be writable.
#[no_mangle]
pub unsafe extern "C" fn adtt_quality(
    metric: u32,
    reference: *const AdttImage,
    test: *const AdttImage,
    score: *mut f64,
) -> AdttStatus {
    guard(|| {
        let (Some(a), Some(b)) = (reference.as_ref(), test.as_ref()) else {
            return fail(AdttStatus::NullPointer, "image is null");
        };
        if score.is_null() {
            return fail(AdttStatus::NullPointer, "score is null");
        }
        let Some(metric) = metric_id(metric) else {
            return fail(
                AdttStatus::InvalidArgument,
                format!("unknown metric {metric}"),
            );
        };
        match metric.evaluate(&a.inner, &b.inner) {
            Ok(v) => {
                *score = v;
                AdttStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}
