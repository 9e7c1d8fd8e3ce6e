//! Rayon pool versus single-threaded execution for the two data-parallel
//! hot paths: scanning a pseudo-spectrum over a dense grid, and running a
//! batch of independent trials.
//!
//! With the default `parallel` feature both variants run the identical
//! code, once on the global rayon pool and once inside a one-thread pool
//! (outputs are bit-identical; only wall time differs). With
//! `--no-default-features` only the sequential path exists.

use criterion::{criterion_group, criterion_main, Criterion};

use subspace_doa::{
    eigendecompose, mca_spectrum, run_experiment, sample_covariance, synthesize_snapshots,
    ArrayGeometry, ExperimentConfig, GridSpec, LearningConfig, NoiseSpec, SourceSpec, UpdateRule,
};
use subspace_doa::spectrum::NoiseSubspace;

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

/// A noise subspace from the closed-form decomposition of a synthesized
/// covariance, plus a grid fine enough to give the pool real work.
fn spectrum_inputs() -> (ArrayGeometry, NoiseSubspace, GridSpec) {
    let geom = ArrayGeometry {
        num_sensors: 8,
        spacing_wavelengths: 0.5,
    };
    let noise = NoiseSpec {
        sigma: 0.01,
        seed: 1,
    };
    let snapshots = synthesize_snapshots(&geom, &study_sources(), 64, &noise).unwrap();
    let oracle = eigendecompose(&sample_covariance(&snapshots)).unwrap();
    let basis = NoiseSubspace::from_orthonormal(oracle.minor_subspace(6).unwrap()).unwrap();
    let grid = GridSpec {
        start_deg: 0.0,
        stop_deg: 180.0,
        step_deg: 0.01,
    };
    (geom, basis, grid)
}

/// A shortened multi-trial experiment (the per-trial pipeline is the unit
/// of parallelism).
fn trial_batch_config() -> ExperimentConfig {
    ExperimentConfig {
        geometry: ArrayGeometry {
            num_sensors: 8,
            spacing_wavelengths: 0.5,
        },
        sources: study_sources(),
        num_snapshots: 5,
        noise: NoiseSpec {
            sigma: 0.009,
            seed: 42,
        },
        rule: UpdateRule::McaStabilized,
        learning: LearningConfig {
            eta: 0.05,
            beta: 1.0,
            max_epochs: 50,
            convergence_tol: 1e-9,
            seed: 0,
            divergence_norm_cap: 1e3,
        },
        grid: GridSpec {
            start_deg: 0.0,
            stop_deg: 180.0,
            step_deg: 0.5,
        },
        num_trials: 16,
        output_dir: std::env::temp_dir()
            .join("subspace-doa-bench")
            .display()
            .to_string(),
    }
}

fn bench_spectrum(c: &mut Criterion) {
    let (geom, basis, grid) = spectrum_inputs();
    let mut group = c.benchmark_group("mca_spectrum_18001_angles");
    #[cfg(feature = "parallel")]
    {
        group.bench_function("rayon_pool", |b| {
            b.iter(|| mca_spectrum(&geom, &basis, &grid).unwrap())
        });
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        group.bench_function("one_thread_pool", |b| {
            b.iter(|| pool.install(|| mca_spectrum(&geom, &basis, &grid).unwrap()))
        });
    }
    #[cfg(not(feature = "parallel"))]
    group.bench_function("sequential", |b| {
        b.iter(|| mca_spectrum(&geom, &basis, &grid).unwrap())
    });
    group.finish();
}

fn bench_trials(c: &mut Criterion) {
    let config = trial_batch_config();
    let mut group = c.benchmark_group("sixteen_trials_fifty_epochs");
    group.sample_size(20);
    #[cfg(feature = "parallel")]
    {
        group.bench_function("rayon_pool", |b| b.iter(|| run_experiment(&config).unwrap()));
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        group.bench_function("one_thread_pool", |b| {
            b.iter(|| pool.install(|| run_experiment(&config).unwrap()))
        });
    }
    #[cfg(not(feature = "parallel"))]
    group.bench_function("sequential", |b| b.iter(|| run_experiment(&config).unwrap()));
    group.finish();
}

criterion_group!(benches, bench_spectrum, bench_trials);
criterion_main!(benches);
