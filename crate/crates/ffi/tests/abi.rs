use std::ffi::{c_char, CString};
use std::path::PathBuf;
use std::ptr;

use adtt_ffi::*;

fn data(name: &str) -> CString {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/data")
        .join(name);
    CString::new(p.to_str().unwrap()).unwrap()
}

fn last_error() -> String {
    let mut buf = [0 as c_char; 256];
    let needed = unsafe { adtt_last_error_message(buf.as_mut_ptr(), buf.len()) };
    assert!(needed > 0);
    let bytes: Vec<u8> = buf
        .iter()
        .take_while(|&&c| c != 0)
        .map(|&c| c as u8)
        .collect();
    String::from_utf8(bytes).unwrap()
}

fn load(name: &str) -> *mut AdttImage {
    let mut img = ptr::null_mut();
    let status = unsafe { adtt_image_load_pgm(data(name).as_ptr(), &mut img) };
    assert_eq!(status, AdttStatus::Ok);
    img
}

#[test]
fn fast_transforms_roundtrip() {
    let x = [10, 20, 30, 40, 50, 60, 70, 80];
    let mut y = [0i32; 8];
    let mut z = [0i32; 8];
    unsafe {
        assert_eq!(
            adtt_forward_fast(x.as_ptr(), y.as_mut_ptr()),
            AdttStatus::Ok
        );
        assert_eq!(y[0], 360);
        let denom = [8, 10, 8, 10, 4, 10, 8, 10];
        let scaled: [i32; 8] = std::array::from_fn(|k| y[k] * (40 / denom[k]));
        assert_eq!(
            adtt_inverse_fast(scaled.as_ptr(), z.as_mut_ptr()),
            AdttStatus::Ok
        );
    }
    assert_eq!(z, x.map(|v| v * 40));
}

#[test]
fn fast_transform_reports_overflow() {
    let x = [i32::MAX; 8];
    let mut y = [0i32; 8];
    let status = unsafe { adtt_forward_fast(x.as_ptr(), y.as_mut_ptr()) };
    assert_eq!(status, AdttStatus::InvalidArgument);
    assert!(last_error().contains("overflow"));
    let status = unsafe { adtt_forward_fast(ptr::null(), y.as_mut_ptr()) };
    assert_eq!(status, AdttStatus::NullPointer);
}

#[test]
fn dtt_matrix_fills_buffer() {
    let mut m = [0.0f64; 64];
    unsafe {
        assert_eq!(adtt_dtt_matrix(8, m.as_mut_ptr(), 64), AdttStatus::Ok);
        assert_eq!(
            adtt_dtt_matrix(8, m.as_mut_ptr(), 63),
            AdttStatus::BufferTooSmall
        );
        assert_eq!(
            adtt_dtt_matrix(0, m.as_mut_ptr(), 64),
            AdttStatus::InvalidArgument
        );
    }
    assert!((m[0] - 8f64.sqrt().recip()).abs() < 1e-15);
}

#[test]
fn compress_and_score_through_handles() {
    let img = load("camera.pgm");
    unsafe {
        assert_eq!(adtt_image_width(img), 512);
        assert_eq!(adtt_image_height(img), 512);

        let mut rec = ptr::null_mut();
        let status = adtt_compress(img, AdttKernel::Proposed as u32, 64, &mut rec);
        assert_eq!(status, AdttStatus::Ok);
        let a = std::slice::from_raw_parts(adtt_image_data(img), 512 * 512);
        let b = std::slice::from_raw_parts(adtt_image_data(rec), 512 * 512);
        assert_eq!(a, b);
        adtt_image_free(rec);

        let status = adtt_compress(img, AdttKernel::ExactDtt as u32, 6, &mut rec);
        assert_eq!(status, AdttStatus::Ok);
        let mut score = 0.0;
        assert_eq!(
            adtt_quality(AdttMetric::Ssim as u32, img, rec, &mut score),
            AdttStatus::Ok
        );
        assert!(score > 0.3 && score < 1.0);
        assert_eq!(
            adtt_quality(AdttMetric::SrSim as u32, img, img, &mut score),
            AdttStatus::Ok
        );
        assert_eq!(score, 1.0);

        assert_eq!(
            adtt_compress(img, 7, 6, &mut rec),
            AdttStatus::InvalidArgument
        );
        assert_eq!(
            adtt_compress(img, 0, 65, &mut rec),
            AdttStatus::InvalidArgument
        );
        assert_eq!(
            adtt_quality(9, img, img, &mut score),
            AdttStatus::InvalidArgument
        );
        adtt_image_free(rec);
        adtt_image_free(img);
    }
}

#[test]
fn raw_images_and_files() {
    let samples: Vec<u8> = (0..=255).collect();
    let mut img = ptr::null_mut();
    unsafe {
        let status = adtt_image_from_raw(16, 16, samples.as_ptr(), 256, &mut img);
        assert_eq!(status, AdttStatus::Ok);
        let mut bad = ptr::null_mut();
        let status = adtt_image_from_raw(16, 15, samples.as_ptr(), 256, &mut bad);
        assert_eq!(status, AdttStatus::DimensionMismatch);
        assert!(bad.is_null());

        let dir = tempfile::tempdir().unwrap();
        let path = CString::new(dir.path().join("x.pgm").to_str().unwrap()).unwrap();
        assert_eq!(adtt_image_save_pgm(img, path.as_ptr()), AdttStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(
            adtt_image_load_pgm(path.as_ptr(), &mut back),
            AdttStatus::Ok
        );
        let b = std::slice::from_raw_parts(adtt_image_data(back), 256);
        assert_eq!(b, samples.as_slice());
        adtt_image_free(back);
        adtt_image_free(img);

        let missing = CString::new(dir.path().join("none.pgm").to_str().unwrap()).unwrap();
        assert_eq!(
            adtt_image_load_pgm(missing.as_ptr(), &mut back),
            AdttStatus::Io
        );
        assert!(last_error().contains("none.pgm"));

        assert_eq!(adtt_image_width(ptr::null()), 0);
        assert!(adtt_image_data(ptr::null()).is_null());
        adtt_image_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_abi() {
    let header =
        std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/adtt.h"))
            .unwrap();
    for needle in [
        "#ifndef ADTT_H",
        "typedef struct AdttImage AdttImage;",
        "ADTT_STATUS_OK = 0",
        "ADTT_KERNEL_PROPOSED = 1",
        "ADTT_METRIC_SR_SIM = 1",
        "enum AdttStatus adtt_forward_fast(const int32_t *input, int32_t *output);",
        "void adtt_image_free(struct AdttImage *img);",
        "size_t adtt_last_error_message(char *buf, size_t len);",
    ] {
        assert!(header.contains(needle), "missing {needle}");
    }
}

#[test]
fn header_compiles_as_c() {
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("probe.c");
    std::fs::write(
        &src,
        "#include \"adtt.h\"\n\
         int probe(void) {\n\
             int32_t x[8] = {0}, y[8];\n\
             AdttImage *img = NULL;\n\
             adtt_image_free(img);\n\
             return adtt_forward_fast(x, y) == ADTT_STATUS_OK;\n\
         }\n",
    )
    .unwrap();
    let Ok(status) = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&include)
        .arg(&src)
        .status()
    else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    assert!(status.success());
}
