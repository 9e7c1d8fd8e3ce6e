//! Acceptance gate: nine end-to-end criteria covering oracle correctness,
//! learning-rule convergence, DOA recovery quality, learning-rate
//! behavior, snapshot and noise comparisons, algebraic identities, and
//! byte-level reproducibility. One test per criterion; each prints a
//! single PASS line on success (failures panic with context).

use std::process::Command;
use std::time::Instant;

use ndarray::{Array1, Array2, Axis};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use subspace_doa::{
    eigendecompose, gha_update, mca_update_multi, mca_update_single, mca_update_stabilized,
    median, preset, run_experiment, sample_covariance, synthesize_snapshots, train,
    ArrayGeometry, CovarianceMatrix, LearningConfig, NoiseSpec, SnapshotMatrix, SourceSpec,
    UpdateRule, WeightMatrix,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_complex_vec(rng: &mut ChaCha8Rng, m: usize) -> Array1<Complex64> {
    Array1::from_shape_fn(m, |_| c(rng.sample(StandardNormal), rng.sample(StandardNormal)))
}

/// Random Hermitian PSD matrix with exact conjugate symmetry: R = s·BBᴴ.
fn random_psd(seed: u64) -> CovarianceMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = 2 + (seed as usize) % 7;
    let scale = 10f64.powf(rng.gen_range(-1.0..1.0));
    let b = Array2::from_shape_fn((m, m), |_| {
        c(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let mut r = Array2::<Complex64>::zeros((m, m));
    for i in 0..m {
        for j in 0..m {
            let mut sum = Complex64::new(0.0, 0.0);
            for k in 0..m {
                sum += b[[i, k]] * b[[j, k]].conj();
            }
            r[[i, j]] = sum * scale;
        }
    }
    CovarianceMatrix::new(r).expect("BB^H is Hermitian by construction")
}

/// Stationary stream x(n) = V·(√λ ⊙ g(n)) with a seeded random eigenbasis
/// V and unit-variance complex Gaussian g, so the population covariance is
/// V·diag(λ)·Vᴴ exactly.
fn seeded_stream(seed: u64, eigenvalues: &[f64], num_snapshots: usize) -> SnapshotMatrix {
    let m = eigenvalues.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut h = Array2::<Complex64>::zeros((m, m));
    for i in 0..m {
        h[[i, i]] = c(rng.sample(StandardNormal), 0.0);
        for j in (i + 1)..m {
            let z = c(rng.sample(StandardNormal), rng.sample(StandardNormal));
            h[[i, j]] = z;
            h[[j, i]] = z.conj();
        }
    }
    let basis = eigendecompose(&CovarianceMatrix::new(h).unwrap())
        .unwrap()
        .eigenvectors()
        .clone();
    let root_two = 2f64.sqrt();
    let mut data = Array2::<Complex64>::zeros((m, num_snapshots));
    for n in 0..num_snapshots {
        for (k, &lambda) in eigenvalues.iter().enumerate() {
            let g = c(rng.sample(StandardNormal), rng.sample(StandardNormal)) / root_two;
            let amp = g * lambda.sqrt();
            for i in 0..m {
                data[[i, n]] += basis[[i, k]] * amp;
            }
        }
    }
    SnapshotMatrix::from_array(data).unwrap()
}

/// Learning config shared by the stream-convergence criteria.
fn stream_learning(eta: f64) -> LearningConfig {
    LearningConfig {
        eta,
        beta: 1.0,
        max_epochs: 10, // 10 epochs x 500 snapshots = the 5000-presentation budget
        convergence_tol: 0.02,
        seed: 0,
        divergence_norm_cap: 1e3,
    }
}

/// Runs the 20-stream protocol for one rule and returns the success count.
fn stream_success_count(rule: UpdateRule) -> usize {
    // Ascending spectrum: the smallest eigenvalue is 2.5x separated from
    // the next, and the largest 2.5x from the runner-up.
    let eigenvalues = [0.08, 0.20, 0.48, 1.20];
    let mut successes = 0;
    for trial in 0..20u64 {
        let snapshots = seeded_stream(1000 + trial, &eigenvalues, 500);
        let oracle = eigendecompose(&sample_covariance(&snapshots)).unwrap();
        let mut config = stream_learning(0.05);
        config.seed = 5000 + trial;
        let (_, trace) = train(&snapshots, rule, &config, 1, &oracle).expect("stable rates");
        let converged = trace
            .last()
            .map_or(false, |rec| rec.direction_error.iter().all(|&e| e < 0.02));
        if converged {
            successes += 1;
        }
    }
    successes
}

fn study_geometry() -> ArrayGeometry {
    ArrayGeometry {
        num_sensors: 8,
        spacing_wavelengths: 0.5,
    }
}

fn study_sources() -> Vec<SourceSpec> {
    vec![
        SourceSpec {
            doa_deg: 60.0,
            normalized_freq: 0.35,
            amplitude: 1.0,
        },
        SourceSpec {
            doa_deg: 100.0,
            normalized_freq: 0.36,
            amplitude: 1.0,
        },
    ]
}

#[test]
fn acceptance_1_oracle_correctness() {
    let start = Instant::now();
    for seed in 0..200u64 {
        let cov = random_psd(seed);
        let m = cov.dim();
        let eig = eigendecompose(&cov).unwrap();
        let values = eig.eigenvalues();
        let vectors = eig.eigenvectors();

        let mut recon = Array2::<Complex64>::zeros((m, m));
        for k in 0..m {
            for i in 0..m {
                for j in 0..m {
                    recon[[i, j]] += vectors[[i, k]] * vectors[[j, k]].conj() * values[k];
                }
            }
        }
        let mut diff_sq = 0.0;
        let mut norm_sq = 0.0;
        for i in 0..m {
            for j in 0..m {
                diff_sq += (recon[[i, j]] - cov.data()[[i, j]]).norm_sqr();
                norm_sq += cov.data()[[i, j]].norm_sqr();
            }
        }
        let fro = norm_sq.sqrt();
        assert!(
            diff_sq.sqrt() <= 1e-9 * fro.max(1.0),
            "seed {seed}: reconstruction error {} vs bound {}",
            diff_sq.sqrt(),
            1e-9 * fro.max(1.0)
        );

        for k in 0..m {
            let v = eig.eigenvector(k);
            let mut residual_sq = 0.0;
            for i in 0..m {
                let mut rv = Complex64::new(0.0, 0.0);
                for j in 0..m {
                    rv += cov.data()[[i, j]] * v[j];
                }
                residual_sq += (rv - v[i] * values[k]).norm_sqr();
            }
            assert!(
                residual_sq.sqrt() <= 1e-8,
                "seed {seed}, pair {k}: residual {}",
                residual_sq.sqrt()
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}, budget 5 s");
    println!("ACCEPTANCE 1 (oracle correctness, 200 seeded PSD matrices): PASS in {elapsed:?}");
}

#[test]
fn acceptance_2_mca_convergence_on_seeded_streams() {
    let start = Instant::now();
    let successes = stream_success_count(UpdateRule::McaStabilized);
    let elapsed = start.elapsed();
    assert!(
        successes >= 19,
        "stabilized minor-subspace rule converged in only {successes}/20 streams"
    );
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}, budget 30 s");
    println!(
        "ACCEPTANCE 2 (minor-eigenvector convergence within 5000 presentations): PASS \
         {successes}/20 in {elapsed:?}"
    );
}

#[test]
fn acceptance_3_gha_convergence_on_seeded_streams() {
    let start = Instant::now();
    let successes = stream_success_count(UpdateRule::Gha);
    let elapsed = start.elapsed();
    assert!(
        successes >= 19,
        "Hebbian rule converged in only {successes}/20 streams"
    );
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}, budget 30 s");
    println!(
        "ACCEPTANCE 3 (principal-eigenvector convergence within 5000 presentations): PASS \
         {successes}/20 in {elapsed:?}"
    );
}

#[test]
fn acceptance_4_doa_recovery_on_the_reference_setup() {
    let start = Instant::now();
    let tmp = tempfile::tempdir().unwrap();
    let mut config = preset("fig5").unwrap().remove(0);
    config.output_dir = tmp.path().join("fig5").display().to_string();
    let report = run_experiment(&config).unwrap();
    let med = report.aggregates[0].median_rmse_deg;
    let elapsed = start.elapsed();
    assert_eq!(report.trials.len(), 20);
    assert!(
        med <= 2.0,
        "median angle RMSE {med} deg exceeds the 2.0 deg bound"
    );
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}, budget 60 s");
    println!(
        "ACCEPTANCE 4 (median angle RMSE over 20 trials, 8 sensors / L=5 / sigma=0.009): \
         PASS {med:.3} deg <= 2.0 deg in {elapsed:?}"
    );
}

#[test]
fn acceptance_5_learning_rate_ordering_and_divergence() {
    // (a) Common seeded stream, neither rate diverges: the faster rate
    // reaches direction_error < 0.1 in no more presentations.
    let noise = NoiseSpec {
        sigma: 0.0,
        seed: 12345,
    };
    let snapshots = synthesize_snapshots(&study_geometry(), &study_sources(), 5, &noise).unwrap();
    let oracle = eigendecompose(&sample_covariance(&snapshots)).unwrap();
    let mut iterations_to_threshold = Vec::new();
    for eta in [0.1, 0.01] {
        let config = LearningConfig {
            eta,
            beta: 1.0,
            max_epochs: 2000,
            convergence_tol: 0.1, // early-stops exactly at the threshold
            seed: 99,
            divergence_norm_cap: 1e3,
        };
        let (_, trace) = train(&snapshots, UpdateRule::McaStabilized, &config, 6, &oracle)
            .expect("neither rate diverges on this stream");
        let last = trace.last().expect("nonempty trace");
        assert!(
            last.direction_error.iter().all(|&e| e < 0.1),
            "eta={eta} did not reach the 0.1 threshold within budget"
        );
        iterations_to_threshold.push(trace.len());
    }
    let (fast, slow) = (iterations_to_threshold[0], iterations_to_threshold[1]);
    assert!(
        fast <= slow,
        "eta=0.1 took {fast} presentations vs {slow} for eta=0.01"
    );

    // (b) Crafted high-variance stream: peak ||x||^2 = 48, so eta=0.9
    // trips the norm cap while eta=0.01 stays stable.
    let loud_geom = ArrayGeometry {
        num_sensors: 3,
        spacing_wavelengths: 0.5,
    };
    let loud_source = vec![SourceSpec {
        doa_deg: 90.0,
        normalized_freq: 0.25,
        amplitude: 4.0,
    }];
    let silent = NoiseSpec {
        sigma: 0.0,
        seed: 7,
    };
    let loud = synthesize_snapshots(&loud_geom, &loud_source, 4, &silent).unwrap();
    let loud_oracle = eigendecompose(&sample_covariance(&loud)).unwrap();
    let mut config = LearningConfig {
        eta: 0.9,
        beta: 1.0,
        max_epochs: 50,
        convergence_tol: 1e-9,
        seed: 3,
        divergence_norm_cap: 1e3,
    };
    let diverged = train(&loud, UpdateRule::McaSingle, &config, 1, &loud_oracle);
    assert!(
        matches!(diverged, Err(subspace_doa::Error::Divergence { .. })),
        "eta=0.9 should diverge on the crafted stream, got {diverged:?}"
    );
    config.eta = 0.01;
    let stable = train(&loud, UpdateRule::McaSingle, &config, 1, &loud_oracle);
    assert!(stable.is_ok(), "eta=0.01 should stay stable: {stable:?}");

    println!(
        "ACCEPTANCE 5 (learning-rate ordering {fast} <= {slow} presentations to 0.1; \
         eta=0.9 diverges, eta=0.01 does not): PASS"
    );
}

#[test]
fn acceptance_6_more_snapshots_do_not_hurt() {
    let tmp = tempfile::tempdir().unwrap();
    let mut medians = std::collections::BTreeMap::new();
    for alias in ["fig4", "fig5", "fig6", "fig7"] {
        let mut config = preset(alias).unwrap().remove(0);
        config.output_dir = tmp.path().join(alias).display().to_string();
        let report = run_experiment(&config).unwrap();
        assert_eq!(report.trials.len(), 20);
        medians.insert(alias, report.aggregates[0].median_rmse_deg);
    }
    let (mca_l2, mca_l5) = (medians["fig4"], medians["fig5"]);
    let (pca_l2, pca_l5) = (medians["fig6"], medians["fig7"]);
    assert!(
        mca_l5 <= mca_l2,
        "minor-subspace spectrum: median at L=5 ({mca_l5}) worse than L=2 ({mca_l2})"
    );
    assert!(
        pca_l5 <= pca_l2,
        "signal-subspace spectrum: median at L=5 ({pca_l5}) worse than L=2 ({pca_l2})"
    );
    println!(
        "ACCEPTANCE 6 (median RMSE, L=5 vs L=2): PASS mca {mca_l5:.3} <= {mca_l2:.3}, \
         pca {pca_l5:.3} <= {pca_l2:.3}"
    );
}

#[test]
fn acceptance_7_mca_matches_or_beats_pca_at_equal_budget() {
    let tmp = tempfile::tempdir().unwrap();
    let mut configs = preset("fig8-9-noise-compare").unwrap();
    for config in &mut configs {
        config.output_dir = tmp.path().join("fig89").display().to_string();
    }
    let pca_report = run_experiment(&configs[0]).unwrap();
    let mca_report = run_experiment(&configs[1]).unwrap();
    let pca: Vec<f64> = pca_report
        .trials
        .iter()
        .map(|t| t.angle_rmse_deg)
        .collect();
    let mca: Vec<f64> = mca_report
        .trials
        .iter()
        .map(|t| t.angle_rmse_deg)
        .collect();

    // The full comparison table is part of the deliverable either way.
    println!("trial |  pca rmse (deg) |  mca rmse (deg)");
    for (i, (p, m)) in pca.iter().zip(&mca).enumerate() {
        println!("{i:>5} | {p:>15.6} | {m:>15.6}");
    }
    let pca_med = median(&pca);
    let mca_med = median(&mca);
    println!("median| {pca_med:>15.6} | {mca_med:>15.6}");

    assert!(
        mca_med <= pca_med,
        "minor-subspace median {mca_med} exceeds signal-subspace median {pca_med}"
    );
    println!(
        "ACCEPTANCE 7 (equal 15000-presentation budget at sigma=0.009): PASS \
         mca median {mca_med:.3} <= pca median {pca_med:.3}"
    );
}

#[test]
fn acceptance_8_algebraic_identities() {
    // Bitwise single/multi equivalence on 1000 random inputs.
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE5508);
    for case in 0..1000 {
        let m = 2 + case % 5;
        let w = random_complex_vec(&mut rng, m);
        let x = random_complex_vec(&mut rng, m);
        let eta = rng.gen_range(1e-3..0.999);
        let single = mca_update_single(w.view(), x.view(), eta).unwrap();
        let bank = WeightMatrix::from_rows(w.clone().insert_axis(Axis(0))).unwrap();
        let multi = mca_update_multi(&bank, x.view(), eta).unwrap();
        for i in 0..m {
            let a = multi.rows()[[0, i]];
            let b = single[i];
            assert_eq!(
                (a.re.to_bits(), a.im.to_bits()),
                (b.re.to_bits(), b.im.to_bits()),
                "case {case}, component {i}: multi {a} vs single {b}"
            );
        }
    }

    // Hand-computed update examples, each to 1e-12.
    let close = |actual: Complex64, expected: Complex64, what: &str| {
        assert!(
            (actual - expected).norm() <= 1e-12,
            "{what}: {actual} vs {expected}"
        );
    };

    // Hebbian: unit eigenvector input is a fixed point.
    let w = WeightMatrix::from_rows(
        Array1::from(vec![c(1.0, 0.0), c(0.0, 0.0)]).insert_axis(Axis(0)),
    )
    .unwrap();
    let x = Array1::from(vec![c(1.0, 0.0), c(0.0, 0.0)]);
    let out = gha_update(&w, x.view(), 0.1).unwrap();
    close(out.rows()[[0, 0]], c(1.0, 0.0), "hebbian fixed point [0]");
    close(out.rows()[[0, 1]], c(0.0, 0.0), "hebbian fixed point [1]");

    // Hebbian: short weight grows toward unit norm.
    let w = WeightMatrix::from_rows(
        Array1::from(vec![c(0.5, 0.0), c(0.0, 0.0)]).insert_axis(Axis(0)),
    )
    .unwrap();
    let out = gha_update(&w, x.view(), 0.1).unwrap();
    close(out.rows()[[0, 0]], c(0.5375, 0.0), "hebbian growth [0]");

    // Hebbian: orthogonal input leaves weights unchanged.
    let y_perp = Array1::from(vec![c(0.0, 0.0), c(1.0, 0.0)]);
    let out = gha_update(&w, y_perp.view(), 0.1).unwrap();
    close(out.rows()[[0, 0]], c(0.5, 0.0), "hebbian orthogonal noop");

    // Anti-Hebbian single: orthogonal input is a no-op.
    let w1 = Array1::from(vec![c(1.0, 0.0), c(0.0, 0.0)]);
    let out = mca_update_single(w1.view(), y_perp.view(), 0.1).unwrap();
    close(out[0], c(1.0, 0.0), "single orthogonal noop [0]");

    // Anti-Hebbian single: aligned input shrinks the weight.
    let out = mca_update_single(w1.view(), x.view(), 0.1).unwrap();
    close(out[0], c(0.8, 0.0), "single shrink [0]");
    close(out[1], c(0.0, 0.0), "single shrink [1]");

    // Stabilized: unit norm and zero output is a fixed point.
    let out = mca_update_stabilized(w1.view(), y_perp.view(), 0.1, 1.0).unwrap();
    close(out[0], c(1.0, 0.0), "stabilized fixed point [0]");

    // Stabilized: oversized weight is pulled toward unit norm.
    let w2 = Array1::from(vec![c(2.0, 0.0), c(0.0, 0.0)]);
    let out = mca_update_stabilized(w2.view(), y_perp.view(), 0.1, 1.0).unwrap();
    close(out[0], c(1.4, 0.0), "stabilized norm pull [0]");

    // Multi: all rows orthogonal to the input is a no-op.
    let bank = WeightMatrix::from_rows(
        Array1::from(vec![c(1.0, 0.0), c(0.0, 0.0)]).insert_axis(Axis(0)),
    )
    .unwrap();
    let out = mca_update_multi(&bank, y_perp.view(), 0.1).unwrap();
    close(out.rows()[[0, 0]], c(1.0, 0.0), "multi orthogonal noop [0]");

    // Multi with one row equals the single rule on the shrink example.
    let out = mca_update_multi(&bank, x.view(), 0.1).unwrap();
    close(out.rows()[[0, 0]], c(0.8, 0.0), "multi l=1 shrink [0]");

    println!(
        "ACCEPTANCE 8 (1000 bitwise single/multi equivalences and all hand examples): PASS"
    );
}

#[test]
fn acceptance_9_byte_identical_cli_reruns() {
    let tmp = tempfile::tempdir().unwrap();
    let out_dir = tmp.path().join("determinism");
    let run = || {
        let status = Command::new(env!("CARGO_BIN_EXE_subspace-doa"))
            .args(["run", "--preset", "fig5", "--seed", "42", "--out"])
            .arg(&out_dir)
            .output()
            .expect("binary should spawn");
        assert!(
            status.status.success(),
            "run failed: {}",
            String::from_utf8_lossy(&status.stderr)
        );
    };
    let files = ["spectrum.csv", "trace.csv", "report.json", "config.json"];

    run();
    let first: Vec<Vec<u8>> = files
        .iter()
        .map(|f| std::fs::read(out_dir.join(f)).unwrap())
        .collect();
    run();
    for (name, before) in files.iter().zip(&first) {
        let after = std::fs::read(out_dir.join(name)).unwrap();
        assert!(!after.is_empty(), "{name} is empty");
        assert_eq!(
            before, &after,
            "{name} differs between identical invocations"
        );
    }
    println!("ACCEPTANCE 9 (byte-identical artifacts across reruns): PASS");
}
