//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line; run with
//! `cargo test -p adtt --test acceptance -- --nocapture --test-threads 1`
//! to see them in order.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use adtt::approx::{
    proposed_kernel, rational_inverse_products, search_alpha, total_energy_error, T1_ROWS,
    T_STAR_ROWS,
};
use adtt::codec::{compress_image, KernelId, RetentionSpec};
use adtt::fastalg::{
    count_ops, forward_fast, inverse_fast, reduction_percent, Algorithm, OpCount, EXACT_DTT_COST,
    H264_COST,
};
use adtt::metrics::{sr_sim, ssim};
use adtt::sweep::{load_corpus, summarize, sweep_images};
use adtt::tcheb::{dtt_matrix, exact_factorization_8};
use adtt::{GrayImage, IntegerKernel, TransformMatrix};

fn report(id: u32, name: &str, ok: bool, detail: String) {
    let status = if ok { "PASS" } else { "FAIL" };
    println!("[{status}] criterion {id:>2} {name}: {detail}");
    assert!(ok, "criterion {id} ({name}) failed: {detail}");
}

fn corpus() -> Vec<(String, GrayImage)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    load_corpus(&dir).expect("bundled corpus loads")
}

fn within(elapsed: Duration, limit: Duration) -> bool {
    elapsed < limit
}

#[test]
fn criterion_01_exact_dtt_orthogonality() {
    let start = Instant::now();
    let worst = (2..=16)
        .map(|n| {
            let t = dtt_matrix(n).unwrap();
            t.matmul(&t.transpose())
                .unwrap()
                .max_abs_diff(&TransformMatrix::identity(n))
                .unwrap()
        })
        .fold(0.0, f64::max);
    let elapsed = start.elapsed();
    report(
        1,
        "exact DTT orthogonality",
        worst <= 1e-10 && within(elapsed, Duration::from_secs(1)),
        format!("max |T·Tᵀ − I| over N=2..16 = {worst:.3e} (≤ 1e-10), {elapsed:?}"),
    );
}

#[test]
fn criterion_02_factorization() {
    let start = Instant::now();
    let (f, t0) = exact_factorization_8();
    let printed_t0 = IntegerKernel::from_rows(&[
        [1, 1, 1, 1, 1, 1, 1, 1],
        [-7, -5, -3, -1, 1, 3, 5, 7],
        [7, 1, -3, -5, -5, -3, 1, 7],
        [-7, 5, 7, 3, -3, -7, -5, 7],
        [7, -13, -3, 9, 9, -3, -13, 7],
        [-7, 23, -17, -15, 15, 17, -23, 7],
        [1, -5, 9, -5, -5, 9, -5, 1],
        [-1, 7, -21, 35, -35, 21, -7, 1],
    ]);
    let printed_f: Vec<f64> = [2.0, 42.0, 42.0, 66.0, 154.0, 546.0, 66.0, 858.0]
        .iter()
        .map(|d: &f64| 0.5 / d.sqrt())
        .collect();
    let err = t0
        .to_real()
        .scale_rows(&f)
        .unwrap()
        .max_abs_diff(&dtt_matrix(8).unwrap())
        .unwrap();
    let ok = t0 == printed_t0
        && f.values() == printed_f.as_slice()
        && err <= 1e-12
        && within(start.elapsed(), Duration::from_secs(1));
    report(
        2,
        "factorization T = F·T0",
        ok,
        format!("max |F·T0 − T| = {err:.3e} (≤ 1e-12)"),
    );
}

#[test]
fn criterion_03_alpha_search() {
    let start = Instant::now();
    let result = search_alpha(1e-3).unwrap();
    let elapsed = start.elapsed();
    let run = result.optimal_run();
    let t_star = IntegerKernel::from_rows(&T_STAR_ROWS);
    let (lo, hi) = result.optimal_interval.unwrap_or((f64::NAN, f64::NAN));
    let all_same = result
        .admissible
        .iter()
        .filter(|a| a.alpha >= lo - 1e-9 && a.alpha <= hi + 1e-9)
        .all(|a| a.kernel == t_star);
    let ok = (lo - 0.931).abs() < 1e-9
        && (hi - 0.957).abs() < 1e-9
        && run.is_some_and(|r| r.points == 27 && r.kernel == t_star)
        && all_same
        && within(elapsed, Duration::from_secs(5));
    report(
        3,
        "alpha search",
        ok,
        format!(
            "optimal interval [{lo:.3}, {hi:.3}], all kernels equal T*: {all_same}, {elapsed:?}"
        ),
    );
}

#[test]
fn criterion_04_inverse_identity() {
    let (left, right) = rational_inverse_products();
    let identity: Vec<Ratio<i64>> = (0..64)
        .map(|i| Ratio::from_integer(i64::from(i / 8 == i % 8)))
        .collect();
    report(
        4,
        "rational inverse identity",
        left == identity && right == identity,
        "(T1·D1)·T* = T*·(T1·D1) = I over the rationals".into(),
    );
}

#[test]
fn criterion_05_energy_errors() {
    let exact = dtt_matrix(8).unwrap();
    let k = proposed_kernel();
    let fwd = total_energy_error(&exact, &k.orthogonalized()).unwrap();
    let inv = total_energy_error(&exact.transpose(), &k.orthogonalized_inverse()).unwrap();
    report(
        5,
        "total energy errors",
        (fwd - 3.32).abs() <= 0.01 && (inv - 4.86).abs() <= 0.01,
        format!("forward {fwd:.4} (3.32 ± 0.01), inverse {inv:.4} (4.86 ± 0.01)"),
    );
}

fn dense(rows: &[[i64; 8]; 8], x: &[i64; 8]) -> [i64; 8] {
    std::array::from_fn(|r| (0..8).map(|c| rows[r][c] * x[c]).sum())
}

#[test]
fn criterion_06_fast_algorithm_oracle() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut inputs: Vec<[i64; 8]> = (0..10_000)
        .map(|_| std::array::from_fn(|_| rng.gen_range(-255..=255)))
        .collect();
    for k in 0..8 {
        let mut e = [0i64; 8];
        e[k] = 1;
        inputs.push(e);
    }
    let mismatches = inputs
        .iter()
        .filter(|x| {
            forward_fast(x) != dense(&T_STAR_ROWS, x) || inverse_fast(x) != dense(&T1_ROWS, x)
        })
        .count();
    let elapsed = start.elapsed();
    report(
        6,
        "fast algorithms equal dense products",
        mismatches == 0 && within(elapsed, Duration::from_secs(5)),
        format!(
            "{} vectors, {mismatches} mismatches, {elapsed:?}",
            inputs.len()
        ),
    );
}

#[test]
fn criterion_07_operation_counts() {
    let fwd = count_ops(Algorithm::ForwardFast);
    let inv = count_ops(Algorithm::InverseFast);
    let pct = |a, b| reduction_percent(a, b).unwrap();
    let r_fwd_exact = pct(fwd.additions, EXACT_DTT_COST.additions);
    let r_inv_exact = pct(inv.additions, EXACT_DTT_COST.additions);
    let r_fwd_h264 = pct(fwd.additions, H264_COST.additions);
    let r_inv_h264 = pct(inv.additions, H264_COST.additions);
    let r_inv_h264_shift = pct(inv.shifts, H264_COST.shifts);
    let round1 = |v: f64| (v * 10.0).round() / 10.0;
    let ok = fwd == OpCount::new(0, 20, 0)
        && inv == OpCount::new(0, 29, 8)
        && round1(r_fwd_exact) == 54.5
        && round1(r_inv_exact) == 34.1
        && round1(r_fwd_h264) == 37.5
        && round1(r_inv_h264) == 9.4
        && round1(r_inv_h264_shift) == 42.9
        && r_fwd_h264.round() == 38.0
        && r_inv_h264.round() == 9.0
        && r_inv_h264_shift.round() == 43.0;
    report(
        7,
        "operation counts",
        ok,
        format!(
            "forward [{fwd}], inverse [{inv}]; vs exact {r_fwd_exact:.1}%/{r_inv_exact:.1}%; \
             vs H.264 {r_fwd_h264:.1}%/{r_inv_h264:.1}% adds, {r_inv_h264_shift:.1}% shifts"
        ),
    );
}

#[test]
fn criterion_08_lossless_roundtrip() {
    let images = corpus();
    let start = Instant::now();
    let spec = RetentionSpec::new(64).unwrap();
    let mut failures = Vec::new();
    for (id, img) in &images {
        for kernel in KernelId::ALL {
            if compress_image(img, kernel, spec) != *img {
                failures.push(format!("{id}/{kernel}"));
            }
        }
    }
    let elapsed = start.elapsed();
    let big = images
        .iter()
        .filter(|(_, i)| i.width() == 512 && i.height() == 512)
        .count();
    report(
        8,
        "r = 64 reconstruction is pixel-exact",
        failures.is_empty() && big >= 3 && within(elapsed, Duration::from_secs(10)),
        format!(
            "{} images x 2 kernels, failures {failures:?}, {elapsed:?}",
            images.len()
        ),
    );
}

#[test]
fn criterion_09_quality_curve_proximity() {
    let images = corpus();
    assert!(images
        .iter()
        .all(|(_, i)| i.width() == 512 && i.height() == 512));
    let start = Instant::now();
    let records = sweep_images(&images, &KernelId::ALL, 1..=45).unwrap();
    let summary = summarize(&records);
    let elapsed = start.elapsed();

    let curve = |k: KernelId| -> Vec<(f64, f64)> {
        summary
            .iter()
            .filter(|s| s.kernel == k)
            .map(|s| (s.mean_ssim, s.mean_srsim))
            .collect()
    };
    let exact = curve(KernelId::ExactDtt);
    let approx = curve(KernelId::Proposed);
    assert_eq!((exact.len(), approx.len()), (45, 45));

    let gap_ssim = exact
        .iter()
        .zip(&approx)
        .map(|(e, a)| (e.0 - a.0).abs())
        .fold(0.0, f64::max);
    let gap_srsim = exact
        .iter()
        .zip(&approx)
        .map(|(e, a)| (e.1 - a.1).abs())
        .fold(0.0, f64::max);
    let worst_drop = |c: &[(f64, f64)], pick: fn(&(f64, f64)) -> f64| {
        c.windows(2)
            .map(|w| pick(&w[0]) - pick(&w[1]))
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let drops = [
        worst_drop(&exact, |p| p.0),
        worst_drop(&exact, |p| p.1),
        worst_drop(&approx, |p| p.0),
        worst_drop(&approx, |p| p.1),
    ];
    let monotone = drops.iter().all(|&d| d <= 1e-3);
    let ok = images.len() >= 3
        && gap_ssim <= 0.05
        && gap_srsim <= 0.05
        && monotone
        && within(elapsed, Duration::from_secs(600));
    report(
        9,
        "mean-quality curves of both kernels stay close",
        ok,
        format!(
            "{} images, r=1..45: max |ΔSSIM| = {gap_ssim:.4}, max |ΔSR-SIM| = {gap_srsim:.4} \
             (≤ 0.05); largest consecutive drops {drops:.5?} (≤ 1e-3); {elapsed:?}",
            images.len()
        ),
    );
}

#[test]
fn criterion_10_metric_sanity() {
    let images = corpus();
    let spec = RetentionSpec::new(6).unwrap();
    let mut worst_identity: f64 = 0.0;
    let mut worst_symmetry: f64 = 0.0;
    for (_, img) in &images {
        let other = compress_image(img, KernelId::Proposed, spec);
        worst_identity = worst_identity
            .max((ssim(img, img).unwrap() - 1.0).abs())
            .max((sr_sim(img, img).unwrap() - 1.0).abs());
        worst_symmetry = worst_symmetry
            .max((ssim(img, &other).unwrap() - ssim(&other, img).unwrap()).abs())
            .max((sr_sim(img, &other).unwrap() - sr_sim(&other, img).unwrap()).abs());
    }
    report(
        10,
        "metric identity and symmetry",
        worst_identity <= 1e-12 && worst_symmetry <= 1e-12,
        format!(
            "max |m(x,x) − 1| = {worst_identity:.1e}, max |m(a,b) − m(b,a)| = {worst_symmetry:.1e}"
        ),
    );
}

#[test]
fn criterion_11_excluded_hardware_and_video() {
    // Video-codec sweeps and FPGA figures are not reproduced; what they rest
    // on is the multiplier-free arithmetic checked by criteria 6 and 7.
    let fwd = count_ops(Algorithm::ForwardFast);
    let inv = count_ops(Algorithm::InverseFast);
    report(
        11,
        "excluded (x264 sweeps, FPGA results)",
        fwd.multiplications == 0 && inv.multiplications == 0,
        "not reproducible at desk scale; substituted by criteria 6-7".into(),
    );
}
