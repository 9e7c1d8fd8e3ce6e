//! Online neural subspace learning rules.
//!
//! Four single-layer rules estimate covariance eigenstructure directly from
//! streamed snapshots, without ever forming the covariance matrix:
//!
//! * [`gha_update`] — generalized Hebbian PCA: neurons converge to the
//!   principal eigenvectors (largest eigenvalues first).
//! * [`mca_update_single`] — anti-Hebbian minor-component rule for one
//!   neuron, converging toward the smallest-eigenvalue direction.
//! * [`mca_update_stabilized`] — the minor-component rule with a penalty
//!   term pulling the weight norm toward 1, curing the norm instability of
//!   the raw rule.
//! * [`mca_update_multi`] — multi-neuron minor rule whose lower-triangular
//!   competitive sum plays the role GHA's deflation plays for PCA.
//!
//! Every rule reads the neuron output as the complex inner product
//! `y_j = w_j^H x` and applies conjugate-linear update terms, which reduces
//! exactly to the familiar real-valued forms on real data. [`train`] drives
//! any rule over a snapshot matrix epoch by epoch and records a
//! per-presentation [`ConvergenceTrace`] measured against a batch
//! eigendecomposition oracle.

use ndarray::{Array1, Array2, ArrayView1};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::array_signal::SnapshotMatrix;
use crate::eigen::EigenDecomposition;
use crate::error::{Error, Result};

/// Which learning rule [`train`] applies per presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UpdateRule {
    /// Generalized Hebbian algorithm (principal components).
    Gha,
    /// Single-neuron minor-component rule.
    McaSingle,
    /// Single-neuron minor-component rule with norm stabilization.
    McaStabilized,
    /// Multi-neuron minor-component rule with competitive deflation.
    McaMulti,
}

impl UpdateRule {
    /// True for the rules that estimate the minor (noise) subspace.
    pub fn seeks_minor_subspace(self) -> bool {
        !matches!(self, UpdateRule::Gha)
    }

    /// Stable lowercase identifier, matching the serialized form.
    pub fn slug(self) -> &'static str {
        match self {
            UpdateRule::Gha => "gha",
            UpdateRule::McaSingle => "mca-single",
            UpdateRule::McaStabilized => "mca-stabilized",
            UpdateRule::McaMulti => "mca-multi",
        }
    }
}

/// Hyperparameters for [`train`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LearningConfig {
    /// Learning rate, in (0, 1).
    pub eta: f64,
    /// Norm-stabilization constant for the stabilized rule, >= 0
    /// (0 disables stabilization).
    pub beta: f64,
    /// Number of passes over the snapshot columns; 0 performs no updates.
    pub max_epochs: usize,
    /// Early-stop threshold on direction error, > 0.
    pub convergence_tol: f64,
    /// Seed for random weight initialization.
    pub seed: u64,
    /// Weight-norm bound beyond which training aborts as diverged, > 1.
    pub divergence_norm_cap: f64,
}

impl Default for LearningConfig {
    fn default() -> Self {
        Self {
            eta: 0.01,
            beta: 1.0,
            max_epochs: 5000,
            convergence_tol: 0.02,
            seed: 0,
            divergence_norm_cap: 1e3,
        }
    }
}

impl LearningConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.eta.is_finite() || self.eta <= 0.0 || self.eta >= 1.0 {
            return Err(Error::Domain(format!(
                "learning rate must lie strictly inside (0, 1), got {}",
                self.eta
            )));
        }
        if !self.beta.is_finite() || self.beta < 0.0 {
            return Err(Error::Domain(format!(
                "stabilization constant must be finite and >= 0, got {}",
                self.beta
            )));
        }
        if !self.convergence_tol.is_finite() || self.convergence_tol <= 0.0 {
            return Err(Error::Domain(format!(
                "convergence tolerance must be positive, got {}",
                self.convergence_tol
            )));
        }
        if !self.divergence_norm_cap.is_finite() || self.divergence_norm_cap <= 1.0 {
            return Err(Error::Domain(format!(
                "divergence norm cap must be finite and > 1, got {}",
                self.divergence_norm_cap
            )));
        }
        Ok(())
    }
}

/// l x m bank of neuron weight vectors; row j is neuron j's weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMatrix {
    rows: Array2<Complex64>,
}

impl WeightMatrix {
    /// Wraps an l x m matrix of neuron rows; requires 1 <= l <= m and
    /// finite entries.
    pub fn from_rows(rows: Array2<Complex64>) -> Result<Self> {
        if rows.nrows() == 0 || rows.ncols() == 0 {
            return Err(Error::Dimension("weight matrix must be nonempty".into()));
        }
        if rows.nrows() > rows.ncols() {
            return Err(Error::Dimension(format!(
                "cannot have more neurons ({}) than input dimensions ({})",
                rows.nrows(),
                rows.ncols()
            )));
        }
        if rows.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Domain("weight matrix has non-finite entries".into()));
        }
        Ok(Self { rows })
    }

    /// Seeded random initializer: each row is i.i.d. complex Gaussian,
    /// redrawn in the (practically impossible) case it is numerically zero,
    /// then normalized to unit norm.
    pub fn random_unit(num_neurons: usize, dim: usize, seed: u64) -> Result<Self> {
        if num_neurons == 0 || num_neurons > dim {
            return Err(Error::Dimension(format!(
                "neuron count must lie in 1..={dim}, got {num_neurons}"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rows = Array2::<Complex64>::zeros((num_neurons, dim));
        for j in 0..num_neurons {
            loop {
                let mut norm_sq = 0.0;
                for i in 0..dim {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    rows[(j, i)] = Complex64::new(re, im);
                    norm_sq += rows[(j, i)].norm_sqr();
                }
                if norm_sq >= 1e-24 {
                    let inv = 1.0 / norm_sq.sqrt();
                    for i in 0..dim {
                        rows[(j, i)] = rows[(j, i)] * inv;
                    }
                    break;
                }
            }
        }
        Ok(Self { rows })
    }

    pub fn num_neurons(&self) -> usize {
        self.rows.nrows()
    }

    pub fn dim(&self) -> usize {
        self.rows.ncols()
    }

    pub fn rows(&self) -> &Array2<Complex64> {
        &self.rows
    }

    pub fn row(&self, j: usize) -> ArrayView1<'_, Complex64> {
        self.rows.row(j)
    }

    /// Euclidean norm of each neuron row.
    pub fn row_norms(&self) -> Vec<f64> {
        (0..self.num_neurons())
            .map(|j| self.row(j).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
            .collect()
    }
}

/// Metrics recorded after one snapshot presentation.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    /// 1-based count of presentations applied so far.
    pub iteration: usize,
    /// Per-neuron misalignment from the reference subspace, in [0, 1].
    pub direction_error: Vec<f64>,
    /// Per-neuron |norm - 1|.
    pub norm_dev: Vec<f64>,
}

/// Per-presentation history of a [`train`] run; one record per presentation
/// actually executed.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConvergenceTrace {
    records: Vec<TraceRecord>,
}

impl ConvergenceTrace {
    pub fn records(&self) -> &[TraceRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn last(&self) -> Option<&TraceRecord> {
        self.records.last()
    }
}

/// Phase-invariant misalignment of `w` from the span of `basis`'s columns:
/// 1 - ||B^H w/||w|| ||, clamped to [0, 1].
///
/// `basis` must be m x l with orthonormal columns, 1 <= l <= m. For a single
/// column v this is exactly 1 - |<w/||w||, v>|; for wider bases it measures
/// distance from the subspace rather than from any individual eigenvector,
/// which is the meaningful quantity when reference eigenvalues are close or
/// repeated.
pub fn direction_error(w: ArrayView1<'_, Complex64>, basis: &Array2<Complex64>) -> Result<f64> {
    let m = w.len();
    if basis.nrows() != m {
        return Err(Error::Dimension(format!(
            "basis has {} rows but weight vector has length {m}",
            basis.nrows()
        )));
    }
    if basis.ncols() == 0 || basis.ncols() > m {
        return Err(Error::Dimension(format!(
            "basis column count must lie in 1..={m}, got {}",
            basis.ncols()
        )));
    }
    let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if !norm.is_finite() || norm == 0.0 {
        return Err(Error::Domain(format!(
            "direction error undefined for weight vector with norm {norm}"
        )));
    }
    let mut projected_sq = 0.0;
    for k in 0..basis.ncols() {
        let mut dot = Complex64::new(0.0, 0.0);
        for i in 0..m {
            dot += basis[(i, k)].conj() * w[i];
        }
        projected_sq += (dot / norm).norm_sqr();
    }
    Ok((1.0 - projected_sq.sqrt()).clamp(0.0, 1.0))
}

fn check_eta(eta: f64) -> Result<()> {
    if !eta.is_finite() || eta <= 0.0 || eta >= 1.0 {
        return Err(Error::Domain(format!(
            "learning rate must lie strictly inside (0, 1), got {eta}"
        )));
    }
    Ok(())
}

fn check_input_dim(dim: usize, x: ArrayView1<'_, Complex64>) -> Result<()> {
    if x.len() != dim {
        return Err(Error::Dimension(format!(
            "input has length {} but weights have dimension {dim}",
            x.len()
        )));
    }
    Ok(())
}

/// Neuron output y = w^H x, accumulated in index order so every rule sees
/// the identical floating-point value for identical inputs.
fn neuron_output(w: ArrayView1<'_, Complex64>, x: ArrayView1<'_, Complex64>) -> Complex64 {
    let mut y = Complex64::new(0.0, 0.0);
    for i in 0..w.len() {
        y += w[i].conj() * x[i];
    }
    y
}

/// Shared elementwise step of the minor-component rules:
/// w_i - eta * conj(y) * (x_i + acc_i). Factored out so the single-neuron
/// and multi-neuron rules run the same operation sequence bit for bit.
#[inline]
fn mca_step(w_i: Complex64, x_i: Complex64, acc_i: Complex64, y: Complex64, eta: f64) -> Complex64 {
    w_i - (y.conj() * (x_i + acc_i)) * eta
}

/// Generalized Hebbian update: for each neuron j,
/// w_j <- w_j + eta * conj(y_j) * (x - sum_{k<=j} y_k w_k),
/// all outputs and sums taken at the pre-update weights.
pub fn gha_update(
    w: &WeightMatrix,
    x: ArrayView1<'_, Complex64>,
    eta: f64,
) -> Result<WeightMatrix> {
    check_eta(eta)?;
    check_input_dim(w.dim(), x)?;
    let (l, m) = (w.num_neurons(), w.dim());
    let y: Vec<Complex64> = (0..l).map(|j| neuron_output(w.row(j), x)).collect();
    let mut acc = vec![Complex64::new(0.0, 0.0); m];
    let mut rows = Array2::<Complex64>::zeros((l, m));
    for j in 0..l {
        for i in 0..m {
            acc[i] += y[j] * w.rows[(j, i)];
        }
        for i in 0..m {
            rows[(j, i)] = w.rows[(j, i)] + (y[j].conj() * (x[i] - acc[i])) * eta;
        }
    }
    Ok(WeightMatrix { rows })
}

/// Single-neuron minor-component update:
/// w <- w - eta * conj(y) * (x + y w), with y = w^H x.
pub fn mca_update_single(
    w: ArrayView1<'_, Complex64>,
    x: ArrayView1<'_, Complex64>,
    eta: f64,
) -> Result<Array1<Complex64>> {
    check_eta(eta)?;
    check_input_dim(w.len(), x)?;
    let y = neuron_output(w, x);
    let mut new = Array1::<Complex64>::zeros(w.len());
    for i in 0..w.len() {
        let acc = y * w[i];
        new[i] = mca_step(w[i], x[i], acc, y, eta);
    }
    Ok(new)
}

/// Stabilized single-neuron minor-component update:
/// w <- w - eta * (conj(y) x - |y|^2 w) - eta * beta * (||w||^2 - 1) w.
///
/// The beta term pulls the norm toward 1; the raw minor rule's norm dynamics
/// are unstable without it.
pub fn mca_update_stabilized(
    w: ArrayView1<'_, Complex64>,
    x: ArrayView1<'_, Complex64>,
    eta: f64,
    beta: f64,
) -> Result<Array1<Complex64>> {
    check_eta(eta)?;
    if !beta.is_finite() || beta < 0.0 {
        return Err(Error::Domain(format!(
            "stabilization constant must be finite and >= 0, got {beta}"
        )));
    }
    check_input_dim(w.len(), x)?;
    let y = neuron_output(w, x);
    let y_sq = y.norm_sqr();
    let norm_sq = w.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let pull = eta * beta * (norm_sq - 1.0);
    let mut new = Array1::<Complex64>::zeros(w.len());
    for i in 0..w.len() {
        new[i] = w[i] - (y.conj() * x[i] - w[i] * y_sq) * eta - w[i] * pull;
    }
    Ok(new)
}

/// Multi-neuron minor-component update: for each neuron j,
/// w_j <- w_j - eta * conj(y_j) * (x + sum_{k<=j} y_k w_k),
/// all outputs and sums taken at the pre-update weights. With one neuron the
/// k = j term reduces this to exactly [`mca_update_single`].
pub fn mca_update_multi(
    w: &WeightMatrix,
    x: ArrayView1<'_, Complex64>,
    eta: f64,
) -> Result<WeightMatrix> {
    check_eta(eta)?;
    check_input_dim(w.dim(), x)?;
    let (l, m) = (w.num_neurons(), w.dim());
    let y: Vec<Complex64> = (0..l).map(|j| neuron_output(w.row(j), x)).collect();
    // Seed the competitive sum with row 0's own term as one product, the
    // same operation the single-neuron rule performs, so the l = 1 case is
    // bit-identical to mca_update_single rather than merely algebraically
    // equal.
    let mut acc: Vec<Complex64> = (0..m).map(|i| y[0] * w.rows[(0, i)]).collect();
    let mut rows = Array2::<Complex64>::zeros((l, m));
    for j in 0..l {
        if j > 0 {
            for i in 0..m {
                acc[i] += y[j] * w.rows[(j, i)];
            }
        }
        for i in 0..m {
            rows[(j, i)] = mca_step(w.rows[(j, i)], x[i], acc[i], y[j], eta);
        }
    }
    Ok(WeightMatrix { rows })
}

fn apply_rule(
    w: &WeightMatrix,
    x: ArrayView1<'_, Complex64>,
    rule: UpdateRule,
    config: &LearningConfig,
) -> Result<WeightMatrix> {
    match rule {
        UpdateRule::Gha => gha_update(w, x, config.eta),
        UpdateRule::McaMulti => mca_update_multi(w, x, config.eta),
        UpdateRule::McaSingle | UpdateRule::McaStabilized => {
            let (l, m) = (w.num_neurons(), w.dim());
            let mut rows = Array2::<Complex64>::zeros((l, m));
            for j in 0..l {
                let new = match rule {
                    UpdateRule::McaSingle => mca_update_single(w.row(j), x, config.eta)?,
                    _ => mca_update_stabilized(w.row(j), x, config.eta, config.beta)?,
                };
                rows.row_mut(j).assign(&new);
            }
            Ok(WeightMatrix { rows })
        }
    }
}

/// Trains `num_neurons` neurons with `rule` by cycling the snapshot columns
/// in order for `config.max_epochs` epochs.
///
/// Weights start as seeded random unit-norm rows. After every presentation
/// the per-neuron direction error against the oracle reference subspace
/// (minor subspace for the MCA rules, principal subspace for GHA) and the
/// norm deviation are appended to the trace; training stops early once
/// every neuron's direction error falls below `config.convergence_tol`.
/// The final weights are returned as-is, unnormalized.
///
/// Fails with [`Error::Divergence`] as soon as any neuron's norm exceeds
/// `config.divergence_norm_cap` or stops being finite.
pub fn train(
    snapshots: &SnapshotMatrix,
    rule: UpdateRule,
    config: &LearningConfig,
    num_neurons: usize,
    oracle: &EigenDecomposition,
) -> Result<(WeightMatrix, ConvergenceTrace)> {
    config.validate()?;
    let m = snapshots.num_sensors();
    if oracle.dim() != m {
        return Err(Error::Dimension(format!(
            "oracle dimension {} does not match sensor count {m}",
            oracle.dim()
        )));
    }
    if num_neurons == 0 || num_neurons > m {
        return Err(Error::Dimension(format!(
            "neuron count must lie in 1..={m}, got {num_neurons}"
        )));
    }
    let basis = if rule.seeks_minor_subspace() {
        oracle.minor_subspace(num_neurons)?
    } else {
        oracle.principal_subspace(num_neurons)?
    };

    let mut w = WeightMatrix::random_unit(num_neurons, m, config.seed)?;
    let mut records = Vec::new();
    let mut iteration = 0usize;
    'epochs: for _ in 0..config.max_epochs {
        for n in 0..snapshots.num_snapshots() {
            let x = snapshots.data().column(n);
            w = apply_rule(&w, x, rule, config)?;
            iteration += 1;

            let norms = w.row_norms();
            for (j, &norm) in norms.iter().enumerate() {
                if !norm.is_finite() || norm > config.divergence_norm_cap {
                    return Err(Error::Divergence {
                        iteration,
                        neuron: j,
                        norm,
                    });
                }
            }

            let mut errs = Vec::with_capacity(num_neurons);
            let mut devs = Vec::with_capacity(num_neurons);
            for j in 0..num_neurons {
                errs.push(direction_error(w.row(j), &basis)?);
                devs.push((norms[j] - 1.0).abs());
            }
            let converged = errs.iter().all(|e| *e < config.convergence_tol);
            records.push(TraceRecord {
                iteration,
                direction_error: errs,
                norm_dev: devs,
            });
            if converged {
                break 'epochs;
            }
        }
    }
    Ok((w, ConvergenceTrace { records }))
}
