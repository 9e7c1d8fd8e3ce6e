//! Adaptive subspace learning for direction-of-arrival estimation on a
//! uniform linear array.
//!
//! The crate simulates narrowband far-field sources impinging on a sensor
//! array, trains single-layer complex-valued neural learning rules on the
//! raw snapshots — a Hebbian rule that grows the principal (signal)
//! subspace and three anti-Hebbian rules that grow the minor (noise)
//! subspace — and scans MUSIC-style pseudo-spectra over a steering-vector
//! grid to estimate the arrival angles. A closed-form cyclic-Jacobi
//! eigendecomposition of the sample covariance serves as the reference the
//! learned subspaces are scored against.
//!
//! # Modules
//!
//! * [`array_signal`] — geometry, steering vectors, snapshot synthesis,
//!   and the sample covariance.
//! * [`eigen`] — Hermitian eigendecomposition (the scoring oracle).
//! * [`learning`] — the four online update rules and the training loop.
//! * [`spectrum`] — pseudo-spectra, peak picking, and angle RMSE scoring.
//! * [`experiment`] — presets, seeded multi-trial runs, and CSV/JSON
//!   artifact emission; the `subspace-doa` binary is a thin CLI over it.
//!
//! # Determinism
//!
//! Every random draw is made with an explicitly seeded ChaCha8 generator,
//! and per-trial seeds derive from a master seed by indexed SplitMix64
//! mixing ([`experiment::child_seed`]), so every result in this crate —
//! including the emitted artifacts — is bit-reproducible. The optional
//! `parallel` feature (on by default) runs trials and spectrum scans on a
//! rayon pool without changing any output bit.

pub mod array_signal;
pub mod eigen;
mod error;
pub mod experiment;
pub mod learning;
mod parallel;
pub mod spectrum;

pub use array_signal::{
    sample_covariance, steering_vector, synthesize_snapshots, ArrayGeometry, CovarianceMatrix,
    NoiseSpec, SnapshotMatrix, SourceSpec, HERMITIAN_TOL,
};
pub use eigen::{eigendecompose, EigenDecomposition};
pub use error::{Error, Result};
pub use experiment::{
    child_seed, emit_outputs, median, merge_reports, preset, run_experiment, ExperimentConfig,
    ExperimentReport, RunAggregate, SpectrumMethod, TrialData, TrialRecord,
};
pub use learning::{
    direction_error, gha_update, mca_update_multi, mca_update_single, mca_update_stabilized,
    train, ConvergenceTrace, LearningConfig, TraceRecord, UpdateRule, WeightMatrix,
};
pub use spectrum::{
    angle_rmse, find_peaks, mca_spectrum, noise_subspace_from_weights, pca_spectrum, GridSpec,
    NoiseSubspace, PeakSet, SpectrumGrid, EPS_CLAMP, MISS_PENALTY_DEG,
};
