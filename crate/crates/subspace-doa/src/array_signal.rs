//! Narrowband signal model for a uniform linear array.
//!
//! A plane wave hitting an m-sensor line array with inter-element spacing
//! expressed in carrier wavelengths produces a progressive phase shift per
//! sensor, captured by [`steering_vector`]. [`synthesize_snapshots`] builds a
//! complex snapshot matrix from a set of narrowband sources (real cosine
//! envelopes riding on the steering phases) plus circular complex Gaussian
//! sensor noise, and [`sample_covariance`] reduces snapshots to the Hermitian
//! sample covariance used by both the batch eigensolver and the online
//! learning rules.

use ndarray::{Array1, Array2};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Uniform linear array: sensor count and inter-element spacing in
/// wavelengths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArrayGeometry {
    pub num_sensors: usize,
    pub spacing_wavelengths: f64,
}

impl ArrayGeometry {
    pub fn new(num_sensors: usize, spacing_wavelengths: f64) -> Result<Self> {
        let geom = Self {
            num_sensors,
            spacing_wavelengths,
        };
        geom.validate()?;
        Ok(geom)
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_sensors < 2 {
            return Err(Error::Domain(format!(
                "array needs at least 2 sensors, got {}",
                self.num_sensors
            )));
        }
        if !(self.spacing_wavelengths > 0.0) || !self.spacing_wavelengths.is_finite() {
            return Err(Error::Domain(format!(
                "sensor spacing must be a positive finite number of wavelengths, got {}",
                self.spacing_wavelengths
            )));
        }
        Ok(())
    }
}

/// One narrowband source: arrival angle in degrees (0..=180 measured from
/// the array line), normalized temporal frequency in cycles/sample, and a
/// positive envelope amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SourceSpec {
    pub doa_deg: f64,
    pub normalized_freq: f64,
    pub amplitude: f64,
}

impl SourceSpec {
    pub fn new(doa_deg: f64, normalized_freq: f64, amplitude: f64) -> Result<Self> {
        let src = Self {
            doa_deg,
            normalized_freq,
            amplitude,
        };
        src.validate()?;
        Ok(src)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.doa_deg.is_finite() || !(0.0..=180.0).contains(&self.doa_deg) {
            return Err(Error::Domain(format!(
                "arrival angle must lie in [0, 180] degrees, got {}",
                self.doa_deg
            )));
        }
        if !self.normalized_freq.is_finite()
            || self.normalized_freq <= 0.0
            || self.normalized_freq > 0.5
        {
            return Err(Error::Domain(format!(
                "normalized frequency must lie in (0, 0.5], got {}",
                self.normalized_freq
            )));
        }
        if !(self.amplitude > 0.0) || !self.amplitude.is_finite() {
            return Err(Error::Domain(format!(
                "amplitude must be positive and finite, got {}",
                self.amplitude
            )));
        }
        Ok(())
    }
}

/// Sensor-noise model: per-component (real and imaginary) standard deviation
/// of the additive circular complex Gaussian noise, and the RNG seed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub sigma: f64,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn new(sigma: f64, seed: u64) -> Result<Self> {
        let noise = Self { sigma, seed };
        noise.validate()?;
        Ok(noise)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.sigma.is_finite() || self.sigma < 0.0 {
            return Err(Error::Domain(format!(
                "noise sigma must be finite and >= 0, got {}",
                self.sigma
            )));
        }
        Ok(())
    }
}

/// Complex m x L snapshot matrix; column n is the array output at sample n.
#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotMatrix {
    data: Array2<Complex64>,
}

impl SnapshotMatrix {
    /// Wraps an m x L complex matrix, rejecting empty or non-finite data.
    pub fn from_array(data: Array2<Complex64>) -> Result<Self> {
        if data.nrows() < 2 {
            return Err(Error::Dimension(format!(
                "snapshot matrix needs at least 2 sensor rows, got {}",
                data.nrows()
            )));
        }
        if data.ncols() == 0 {
            return Err(Error::Dimension(
                "snapshot matrix needs at least one column".into(),
            ));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Domain("snapshot matrix has non-finite entries".into()));
        }
        Ok(Self { data })
    }

    pub fn num_sensors(&self) -> usize {
        self.data.nrows()
    }

    pub fn num_snapshots(&self) -> usize {
        self.data.ncols()
    }

    pub fn data(&self) -> &Array2<Complex64> {
        &self.data
    }

    /// Owned copy of snapshot column `n`.
    pub fn snapshot(&self, n: usize) -> Array1<Complex64> {
        self.data.column(n).to_owned()
    }
}

/// Hermitian m x m sample covariance.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    data: Array2<Complex64>,
}

/// Largest allowed deviation |R[i][j] - conj(R[j][i])| for covariance input.
pub const HERMITIAN_TOL: f64 = 1e-12;

impl CovarianceMatrix {
    /// Wraps a square complex matrix, verifying it is Hermitian within
    /// [`HERMITIAN_TOL`] and finite.
    pub fn new(data: Array2<Complex64>) -> Result<Self> {
        if data.nrows() != data.ncols() {
            return Err(Error::Dimension(format!(
                "covariance must be square, got {}x{}",
                data.nrows(),
                data.ncols()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Domain("covariance has non-finite entries".into()));
        }
        for i in 0..data.nrows() {
            for j in i..data.ncols() {
                let dev = (data[(i, j)] - data[(j, i)].conj()).norm();
                if dev > HERMITIAN_TOL {
                    return Err(Error::NotHermitian {
                        row: i,
                        col: j,
                        deviation: dev,
                    });
                }
            }
        }
        Ok(Self { data })
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn data(&self) -> &Array2<Complex64> {
        &self.data
    }
}

/// Unit-modulus steering vector for an arrival angle in degrees.
///
/// Element i (0-based) is exp(-j 2 pi spacing i sin(theta)); element 0 is
/// always 1. Angles outside [0, 180] are rejected.
pub fn steering_vector(geom: &ArrayGeometry, doa_deg: f64) -> Result<Array1<Complex64>> {
    geom.validate()?;
    if !doa_deg.is_finite() || !(0.0..=180.0).contains(&doa_deg) {
        return Err(Error::Domain(format!(
            "arrival angle must lie in [0, 180] degrees, got {doa_deg}"
        )));
    }
    let phase_step = -2.0 * PI * geom.spacing_wavelengths * doa_deg.to_radians().sin();
    Ok(Array1::from_iter(
        (0..geom.num_sensors).map(|i| Complex64::from_polar(1.0, phase_step * i as f64)),
    ))
}

/// Simulates `num_snapshots` array outputs for the given sources and noise.
///
/// Column n (0-based) is sum_i amplitude_i cos(2 pi f_i n) c(theta_i) plus
/// i.i.d. complex Gaussian noise with standard deviation `noise.sigma` in
/// each of the real and imaginary parts. The noise stream is drawn from a
/// ChaCha8 generator seeded with `noise.seed`, so output is bit-identical
/// for identical inputs. Requires fewer sources than sensors.
pub fn synthesize_snapshots(
    geom: &ArrayGeometry,
    sources: &[SourceSpec],
    num_snapshots: usize,
    noise: &NoiseSpec,
) -> Result<SnapshotMatrix> {
    geom.validate()?;
    noise.validate()?;
    if sources.is_empty() {
        return Err(Error::Domain("at least one source is required".into()));
    }
    for src in sources {
        src.validate()?;
    }
    if sources.len() >= geom.num_sensors {
        return Err(Error::Domain(format!(
            "need fewer sources than sensors: {} sources, {} sensors",
            sources.len(),
            geom.num_sensors
        )));
    }
    if num_snapshots == 0 {
        return Err(Error::Domain("need at least one snapshot".into()));
    }

    let m = geom.num_sensors;
    let steering: Vec<Array1<Complex64>> = sources
        .iter()
        .map(|src| steering_vector(geom, src.doa_deg))
        .collect::<Result<_>>()?;

    let mut data = Array2::<Complex64>::zeros((m, num_snapshots));
    for n in 0..num_snapshots {
        for (src, c) in sources.iter().zip(&steering) {
            let envelope = src.amplitude * (2.0 * PI * src.normalized_freq * n as f64).cos();
            for i in 0..m {
                data[(i, n)] += c[i] * envelope;
            }
        }
    }

    // Noise draw order is fixed (column-major, real part before imaginary
    // part) so a given seed always yields the same snapshot matrix.
    let mut rng = ChaCha8Rng::seed_from_u64(noise.seed);
    for n in 0..num_snapshots {
        for i in 0..m {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            data[(i, n)] += Complex64::new(noise.sigma * re, noise.sigma * im);
        }
    }

    SnapshotMatrix::from_array(data)
}

/// Sample covariance R = (1/L) sum_n x(n) x(n)^H.
///
/// The result is symmetrized entry-by-entry, so it is exactly Hermitian and
/// its diagonal is exactly real.
pub fn sample_covariance(snapshots: &SnapshotMatrix) -> CovarianceMatrix {
    let x = snapshots.data();
    let m = x.nrows();
    let l = x.ncols() as f64;
    let xh = x.t().mapv(|z| z.conj());
    let mut r = x.dot(&xh);
    r.mapv_inplace(|z| z / l);
    for i in 0..m {
        r[(i, i)] = Complex64::new(r[(i, i)].re, 0.0);
        for j in (i + 1)..m {
            let h = (r[(i, j)] + r[(j, i)].conj()) * 0.5;
            r[(i, j)] = h;
            r[(j, i)] = h.conj();
        }
    }
    CovarianceMatrix::new(r).expect("symmetrized covariance is Hermitian by construction")
}
