//! Acceptance suite: ten end-to-end criteria covering the worked examples,
//! the oracle cross-checks, the equivariance laws, the genericity witness,
//! planted-instance certification at scale, benchmark scaling, and the
//! negative paths (library errors and process exit codes).
//!
//! Each criterion prints one `criterion NN (...): PASS/FAIL` line; run with
//! `cargo test --test acceptance -- --nocapture` to see them.  A global
//! mutex serializes the criteria so the timed ones are not distorted by
//! concurrent work in this binary.

use std::panic::AssertUnwindSafe;
use std::process::Command;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ortho_cert_core::certify::{canonical_form, certify, find_signflip};
use ortho_cert_core::genbench::{
    bench_run, gen_instance, genericity_witness, random_dense_homogeneous, summarize,
    witness_diagonal_formula,
};
use ortho_cert_core::polyalg::{act_linear, act_signflip, parse_polynomial, Polynomial, SquareMatrix};
use ortho_cert_core::pwcov::{cov_oracle, pw_covariance};
use ortho_cert_core::spectra::pw_pca;
use ortho_cert_core::Error;

const CUBIC_F: &str = "-27*x1^3 + 27*x2^2*x3 - 9*x3";
const CUBIC_G: &str = "-12*x1^3 + 12*x1^2*x2 - 12*x1^2*x3 + 6*x1*x2^2 + 36*x1*x2*x3 \
                       - 33*x1*x3^2 + 9*x2^3 - 6*x2^2*x3 + 6*x2*x3^2 - 6*x3^3 \
                       + 3*x1 - 6*x2 - 6*x3";

static GATE: Mutex<()> = Mutex::new(());

/// Runs one criterion under the gate and prints its PASS/FAIL line.  The
/// body panics on failure and returns a short detail string on success.
fn criterion<F>(num: u32, name: &str, body: F)
where
    F: FnOnce() -> String,
{
    let _guard = GATE.lock().unwrap_or_else(|e| e.into_inner());
    match std::panic::catch_unwind(AssertUnwindSafe(body)) {
        Ok(detail) => {
            if detail.is_empty() {
                println!("criterion {:02} ({}): PASS", num, name);
            } else {
                println!("criterion {:02} ({}): PASS — {}", num, name, detail);
            }
        }
        Err(payload) => {
            println!("criterion {:02} ({}): FAIL", num, name);
            std::panic::resume_unwind(payload);
        }
    }
}

fn poly(text: &str, n: usize) -> Polynomial {
    parse_polynomial(text, n).unwrap()
}

fn thirds_matrix() -> SquareMatrix {
    SquareMatrix::from_rows(&[
        vec![2.0 / 3.0, -1.0 / 3.0, 2.0 / 3.0],
        vec![2.0 / 3.0, 2.0 / 3.0, -1.0 / 3.0],
        vec![-1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0],
    ])
    .unwrap()
}

fn rel_frobenius_diff(a: &SquareMatrix, b: &SquareMatrix) -> f64 {
    let mut diff = 0.0f64;
    let mut norm = 0.0f64;
    for i in 0..a.size() {
        for j in 0..a.size() {
            diff += (a.get(i, j) - b.get(i, j)).powi(2);
            norm += b.get(i, j).powi(2);
        }
    }
    (diff / norm.max(f64::MIN_POSITIVE)).sqrt()
}

fn column_sign_mismatch(a: &SquareMatrix, b: &SquareMatrix) -> f64 {
    let mut worst = 0.0f64;
    for j in 0..a.size() {
        let mut same = 0.0f64;
        let mut flipped = 0.0f64;
        for i in 0..a.size() {
            same = same.max((a.get(i, j) - b.get(i, j)).abs());
            flipped = flipped.max((a.get(i, j) + b.get(i, j)).abs());
        }
        worst = worst.max(same.min(flipped));
    }
    worst
}

/// Independent covariance oracle for two variables: periodic trapezoidal
/// quadrature on the unit circle, exact for trigonometric polynomials of
/// degree below the node count.
fn quadrature_cov_2d(f: &Polynomial, nodes: usize) -> SquareMatrix {
    assert_eq!(f.nvars(), 2);
    let mut c = SquareMatrix::zeros(2);
    let h = 2.0 * std::f64::consts::PI / nodes as f64;
    for k in 0..nodes {
        let theta = h * k as f64;
        let x = [theta.cos(), theta.sin()];
        let w = f.eval(&x).powi(2);
        for i in 0..2 {
            for j in 0..2 {
                c.add_to(i, j, w * x[i] * x[j] * h);
            }
        }
    }
    c
}

/// Times `op` as the best of three runs after one warmup.
fn best_of_three<T>(mut op: impl FnMut() -> T) -> (T, Duration) {
    op();
    let mut best = Duration::MAX;
    let mut value = None;
    for _ in 0..3 {
        let start = Instant::now();
        let out = op();
        let elapsed = start.elapsed();
        if elapsed < best {
            best = elapsed;
        }
        value = Some(out);
    }
    (value.unwrap(), best)
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ortho-cert"))
}

#[test]
fn criterion_01_cubic_covariance() {
    criterion(1, "worked-example covariance", || {
        let f = poly(CUBIC_F, 3);
        let fh = f.homogenize().unwrap();
        let (cov, elapsed) = best_of_three(|| pw_covariance(&fh).unwrap());
        let s = std::f64::consts::PI.powi(2) / 960.0;
        let expected = SquareMatrix::from_rows(&[
            vec![78489.0 * s, 0.0, -2916.0 * s, 0.0],
            vec![0.0, 20655.0 * s, 0.0, 0.0],
            vec![-2916.0 * s, 0.0, 16767.0 * s, 0.0],
            vec![0.0, 0.0, 0.0, 12879.0 * s],
        ])
        .unwrap();
        let dev = rel_frobenius_diff(cov.matrix(), &expected);
        assert!(dev <= 1e-10, "relative deviation {}", dev);
        assert!(
            elapsed < Duration::from_millis(10),
            "took {:?}",
            elapsed
        );
        format!("deviation {:.2e}, {:?}", dev, elapsed)
    });
}

#[test]
fn criterion_02_cubic_spectrum() {
    criterion(2, "worked-example spectrum", || {
        let f = poly(CUBIC_F, 3);
        let (pca, elapsed) = best_of_three(|| pw_pca(&f).unwrap());
        let expected = [808.346, 212.351, 170.966];
        for (l, e) in pca.lambda().iter().zip(expected) {
            assert!((l - e).abs() <= 5e-3, "lambda {} vs {}", l, e);
        }
        assert!(elapsed < Duration::from_millis(10), "took {:?}", elapsed);
        format!("lambda {:?}, {:?}", pca.lambda(), elapsed)
    });
}

#[test]
fn criterion_03_cubic_certificate() {
    criterion(3, "worked-example certificate", || {
        let f = poly(CUBIC_F, 3);
        let g = poly(CUBIC_G, 3);
        let cert = certify(&f, &g, 1e-6).unwrap();
        let dev = cert.r().max_abs_diff(&thirds_matrix());
        assert!(dev <= 1e-9, "certificate deviates by {}", dev);
        assert!(
            cert.residual_rel() <= 1e-10,
            "residual {}",
            cert.residual_rel()
        );

        // Uniqueness audit.  f is even in x2 and its middle principal axis
        // is exactly e2, so the canonical forms are fixed by the x2 flip:
        // exactly TWO sign vectors match, (+,+,+) and (+,-,+), not one.
        // The deterministic search returns the lexicographically first,
        // and among the passing vectors exactly one assembles to the
        // rational certificate above.
        let pca_f = pw_pca(&f).unwrap();
        let pca_g = pw_pca(&g).unwrap();
        let f_hat = canonical_form(&f, &pca_f).unwrap();
        let g_hat = canonical_form(&g, &pca_g).unwrap();
        let threshold = 1e-6 * f_hat.coeff_max().max(g_hat.coeff_max());
        let mut passing = Vec::new();
        for k in 0..8u8 {
            let sigma: Vec<i8> =
                (0..3).map(|i| if (k >> i) & 1 == 1 { -1 } else { 1 }).collect();
            let dev = act_signflip(&sigma, &f_hat)
                .unwrap()
                .sub(&g_hat)
                .unwrap()
                .coeff_max();
            if dev <= threshold {
                passing.push(sigma);
            }
        }
        passing.sort();
        assert_eq!(passing, vec![vec![1, -1, 1], vec![1, 1, 1]]);
        assert_eq!(
            find_signflip(&f_hat, &g_hat, 1e-6).unwrap().unwrap(),
            vec![1, 1, 1],
        );
        let matching_r = passing
            .iter()
            .filter(|sigma| {
                ortho_cert_core::certify::assemble_certificate(pca_f.axes(), sigma, pca_g.axes())
                    .unwrap()
                    .max_abs_diff(cert.r())
                    <= 1e-9
            })
            .count();
        assert_eq!(matching_r, 1);
        format!(
            "residual {:.3e}; x2-flip stabilizer gives 2 matching sign vectors, \
             lexicographic first returned",
            cert.residual_rel()
        )
    });
}

#[test]
fn criterion_04_quarter_turn_certificate() {
    criterion(4, "quarter-turn example", || {
        let f = poly("4*x1^2 - 2*x2^2", 2);
        let g = poly("x1^2 - 6*x1*x2 + x2^2", 2);
        let cert = certify(&f, &g, 1e-6).unwrap();
        assert!(cert.residual_rel() <= 1e-10, "residual {}", cert.residual_rel());
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let quarter = SquareMatrix::from_rows(&[vec![s, -s], vec![s, s]]).unwrap();
        let best = [[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]]
            .iter()
            .map(|signs| {
                let mut candidate = quarter.clone();
                candidate.scale_column(0, signs[0]);
                candidate.scale_column(1, signs[1]);
                cert.r().max_abs_diff(&candidate)
            })
            .fold(f64::INFINITY, f64::min);
        assert!(best <= 1e-9, "closest sign-adjusted rotation deviates by {}", best);
        format!("residual {:.3e}", cert.residual_rel())
    });
}

#[test]
fn criterion_05_moment_oracles() {
    criterion(5, "covariance vs integration oracles", || {
        let start = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(0xC5);
        let mut planar = 0usize;
        let mut worst_closed = 0.0f64;
        let mut worst_quad = 0.0f64;
        for _ in 0..100 {
            let n = rng.gen_range(2..=4);
            let d = rng.gen_range(1..=6);
            let f = random_dense_homogeneous(n, d, &mut rng);
            let fast = pw_covariance(&f).unwrap();
            let slow = cov_oracle(&f).unwrap();
            let dev = rel_frobenius_diff(fast.matrix(), slow.matrix());
            worst_closed = worst_closed.max(dev);
            assert!(dev <= 1e-9, "closed form vs moments: {} at n={} d={}", dev, n, d);
            if n == 2 {
                planar += 1;
                let quad = quadrature_cov_2d(&f, 4 * d as usize + 8);
                let dev = rel_frobenius_diff(fast.matrix(), &quad);
                worst_quad = worst_quad.max(dev);
                assert!(dev <= 1e-10, "quadrature: {} at d={}", dev, d);
            }
        }
        assert!(planar >= 10, "too few planar cases: {}", planar);
        let elapsed = start.elapsed();
        assert!(elapsed < Duration::from_secs(30), "took {:?}", elapsed);
        format!(
            "100 draws; worst closed-form dev {:.2e}, worst quadrature dev {:.2e} \
             ({} planar), {:?}",
            worst_closed, worst_quad, planar, elapsed
        )
    });
}

#[test]
fn criterion_06_equivariance() {
    criterion(6, "equivariance laws", || {
        let start = Instant::now();
        for i in 0..50u64 {
            let n = 2 + (i % 4) as usize;
            let d = 2 + ((i / 4) % 5) as u32;
            let inst = gen_instance(n, d, 0xC6_000 + i).unwrap();

            // Covariance conjugates.
            let cov_g = pw_covariance(&inst.g).unwrap();
            let cov_f = pw_covariance(&inst.f).unwrap();
            let transported = inst.r0.transpose().matmul(cov_f.matrix()).matmul(&inst.r0);
            let dev = rel_frobenius_diff(cov_g.matrix(), &transported);
            assert!(dev <= 1e-8, "covariance transport: {} at n={} d={}", dev, n, d);

            // Homogenization commutes with the block-extended action.
            let mut extended = SquareMatrix::zeros(n + 1);
            for r in 0..n {
                for c in 0..n {
                    extended.set(r, c, inst.r0.get(r, c));
                }
            }
            extended.set(n, n, 1.0);
            let lhs = inst.g.homogenize().unwrap();
            let rhs = act_linear(&extended, &inst.f.homogenize().unwrap()).unwrap();
            let scale = lhs.coeff_max().max(1.0);
            let dev = lhs.sub(&rhs).unwrap().coeff_max() / scale;
            assert!(dev <= 1e-10, "homogenization transport: {}", dev);

            // Spectrum is invariant; axes transport up to column signs.
            let pca_f = pw_pca(&inst.f).unwrap();
            let pca_g = pw_pca(&inst.g).unwrap();
            let scale = pca_f.lambda()[0].max(1.0);
            for (a, b) in pca_f.lambda().iter().zip(pca_g.lambda()) {
                assert!((a - b).abs() <= 1e-8 * scale, "spectrum moved: {} vs {}", a, b);
            }
            let axes = inst.r0.transpose().matmul(pca_f.axes());
            let dev = column_sign_mismatch(pca_g.axes(), &axes);
            assert!(dev <= 1e-7, "axis transport: {} at n={} d={}", dev, n, d);
        }
        let elapsed = start.elapsed();
        assert!(elapsed < Duration::from_secs(60), "took {:?}", elapsed);
        format!("50 planted pairs, {:?}", elapsed)
    });
}

#[test]
fn criterion_07_genericity_witness() {
    criterion(7, "genericity witness", || {
        let start = Instant::now();
        for n in 2..=6usize {
            for d in 3..=10u32 {
                let w = genericity_witness(n, d).unwrap().homogenize().unwrap();
                let cov = pw_covariance(&w).unwrap();
                let c = cov.matrix();
                let trace: f64 = c.diagonal().iter().sum();
                for i in 0..=n {
                    for j in 0..=n {
                        if i != j {
                            assert!(
                                c.get(i, j).abs() <= 1e-12 * trace,
                                "off-diagonal {} at n={} d={}",
                                c.get(i, j),
                                n,
                                d
                            );
                        }
                    }
                }
                let diag = c.diagonal();
                for i in 1..n {
                    assert!(
                        diag[i - 1] > diag[i],
                        "not strictly decreasing at n={} d={}",
                        n,
                        d
                    );
                }
                let formula = witness_diagonal_formula(n, d).unwrap();
                for i in 0..n {
                    let dev = (diag[i] - formula[i]).abs();
                    assert!(
                        dev <= 1e-9 * formula[0],
                        "formula deviates by {} at n={} d={} entry {}",
                        dev,
                        n,
                        d,
                        i
                    );
                }
            }
        }
        let elapsed = start.elapsed();
        assert!(elapsed < Duration::from_secs(30), "took {:?}", elapsed);
        format!("n in 2..=6, d in 3..=10, {:?}", elapsed)
    });
}

#[test]
fn criterion_08_planted_instances() {
    criterion(8, "planted instances certify", || {
        let start = Instant::now();
        let cells: Vec<(usize, u32)> = (3..=5usize)
            .flat_map(|n| (2..=10u32).map(move |d| (n, d)))
            .collect();
        let mut worst = 0.0f64;
        for i in 0..200u64 {
            let (n, d) = cells[(i as usize) % cells.len()];
            let inst = gen_instance(n, d, 0xC8_0000 + i).unwrap();
            let cert = certify(&inst.f, &inst.g, 1e-6).unwrap();
            worst = worst.max(cert.residual_rel());
            assert!(
                cert.residual_rel() <= 1e-6,
                "residual {} at n={} d={} i={}",
                cert.residual_rel(),
                n,
                d,
                i
            );
        }
        let elapsed = start.elapsed();
        assert!(elapsed < Duration::from_secs(600), "took {:?}", elapsed);
        format!("200 instances, worst residual {:.2e}, {:?}", worst, elapsed)
    });
}

#[test]
fn criterion_09_scaling_trend() {
    criterion(9, "benchmark scaling trend", || {
        let start = Instant::now();
        let expected_terms: &[(usize, u32, usize)] = &[
            (3, 7, 36),
            (3, 8, 45),
            (3, 9, 55),
            (3, 10, 66),
            (4, 7, 120),
            (4, 8, 165),
            (4, 9, 220),
            (4, 10, 286),
            (5, 7, 330),
            (5, 8, 495),
            (5, 9, 715),
            (5, 10, 1001),
        ];
        // Medians over 5 trials are stable because cost grows by integer
        // factors in d, but a descheduled core can still invert a pair;
        // allow one clean retry before judging.
        let mut verdict = None;
        for attempt in 0..2 {
            let records = bench_run(&[3, 4, 5], &[7, 8, 9, 10], 5, 0xC9).unwrap();
            let summaries = summarize(&records);
            assert_eq!(summaries.len(), expected_terms.len());
            for (s, &(n, d, terms)) in summaries.iter().zip(expected_terms) {
                assert_eq!((s.n, s.d), (n, d));
                assert_eq!(s.terms, terms, "term count at n={} d={}", n, d);
            }
            let top = summaries
                .iter()
                .find(|s| s.n == 5 && s.d == 10)
                .unwrap()
                .median_t_total;
            assert!(top < 60.0, "n=5 d=10 median {}s", top);
            let monotone = [3usize, 4, 5].iter().all(|&n| {
                summaries
                    .iter()
                    .filter(|s| s.n == n)
                    .collect::<Vec<_>>()
                    .windows(2)
                    .all(|w| w[1].median_t_total >= w[0].median_t_total)
            });
            if monotone {
                verdict = Some((top, attempt));
                break;
            }
        }
        let (top, attempt) = verdict.expect("median total time must be non-decreasing in d");
        let elapsed = start.elapsed();
        format!(
            "terms match the reference table; n=5 d=10 median {:.3}s; monotone on attempt {}; {:?}",
            top,
            attempt + 1,
            elapsed
        )
    });
}

#[test]
fn criterion_10_negative_paths() {
    criterion(10, "negative paths and exit codes", || {
        let f = poly(CUBIC_F, 3);
        assert!(matches!(
            certify(&f, &f.scale(2.0), 1e-6),
            Err(Error::SpectraMismatch { .. })
        ));
        let sphere = poly("x1^2 + x2^2 + x3^2", 3);
        assert!(matches!(
            certify(&sphere, &sphere, 1e-6),
            Err(Error::DegenerateSpectrum { .. })
        ));

        // The binary maps verdicts and failures onto documented exit codes.
        let dir = tempfile::tempdir().unwrap();
        let write = |name: &str, content: &str| {
            let path = dir.path().join(name);
            std::fs::write(&path, content).unwrap();
            path
        };
        let f_path = write("f.poly", CUBIC_F);
        let g_path = write("g.poly", CUBIC_G);
        let f2_path = write("f2.poly", "-54*x1^3 + 54*x2^2*x3 - 18*x3");
        let sphere_path = write("sphere.poly", "x1^2 + x2^2 + x3^2");
        let bad_path = write("bad.poly", "2*x1 $ 3");

        let run = |args: &[&str]| bin().args(args).output().unwrap().status.code().unwrap();
        let fs = f_path.to_str().unwrap();
        assert_eq!(run(&["certify", "--f", fs, "--g", g_path.to_str().unwrap()]), 0);
        assert_eq!(run(&["certify", "--f", fs, "--g", f2_path.to_str().unwrap()]), 2);
        assert_eq!(run(&["check", "--f", fs, "--g", f2_path.to_str().unwrap()]), 2);
        let sp = sphere_path.to_str().unwrap();
        assert_eq!(run(&["certify", "--f", sp, "--g", sp]), 3);
        assert_eq!(run(&["pwpca", "--input", bad_path.to_str().unwrap()]), 4);
        assert_eq!(run(&["pwpca", "--input", dir.path().join("absent.poly").to_str().unwrap()]), 4);
        String::new()
    });
}
