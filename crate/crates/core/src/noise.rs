//! Measurement noise and noise-level estimation.
//!
//! Noise is drawn from ChaCha20 (`rand_chacha`) seeded with
//! `seed_from_u64(seed)`, mapped to normals by `rand_distr::Normal`, one draw
//! per node in row-major order. The stream is part of the output contract:
//! the same field, epsilon and seed always produce the same noisy data.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::RealField;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    /// Standard deviation of the per-node perturbation.
    pub epsilon: f64,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn new(epsilon: f64, seed: u64) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "noise standard deviation must be >= 0, got {epsilon}"
            )));
        }
        Ok(NoiseSpec { epsilon, seed })
    }
}

/// `y_delta(x_i) = y(x_i) + e_i` with `e_i ~ N(0, epsilon^2)` i.i.d.
pub fn add_noise(y: &RealField, spec: NoiseSpec) -> Result<RealField> {
    let spec = NoiseSpec::new(spec.epsilon, spec.seed)?;
    if spec.epsilon == 0.0 {
        return Ok(y.clone());
    }
    let normal = Normal::new(0.0, spec.epsilon)
        .map_err(|e| Error::InvalidConfig(format!("noise distribution: {e}")))?;
    let mut rng = ChaCha20Rng::seed_from_u64(spec.seed);
    let values = y
        .values
        .iter()
        .map(|v| v + normal.sample(&mut rng))
        .collect();
    RealField::new(y.spec.clone(), values)
}

/// Composite Simpson rule over uniformly spaced samples.
///
/// `values.len() - 1` must be even.
pub fn simpson(values: &[f64], h: f64) -> Result<f64> {
    let intervals = values.len().saturating_sub(1);
    if intervals == 0 || !intervals.is_multiple_of(2) {
        return Err(Error::OddIntervalCount { axis: 0, intervals });
    }
    let mut odd = 0.0;
    let mut even = 0.0;
    for (i, v) in values[1..intervals].iter().enumerate() {
        if i % 2 == 0 {
            odd += v;
        } else {
            even += v;
        }
    }
    Ok(h / 3.0 * (values[0] + 4.0 * odd + 2.0 * even + values[intervals]))
}

/// Simpson weights for `n` periodic samples: the closing node coincides with
/// the first one, so the sequence spans the full box with `n` intervals.
fn periodic_simpson_weights(n: usize, h: f64, axis: usize) -> Result<Vec<f64>> {
    if !n.is_multiple_of(2) {
        return Err(Error::OddIntervalCount { axis, intervals: n });
    }
    Ok((0..n)
        .map(|i| {
            if i % 2 == 0 {
                2.0 * h / 3.0
            } else {
                4.0 * h / 3.0
            }
        })
        .collect())
}

/// Simpson integral of a field over its whole box, treating the samples as
/// one period. Needs an even sample count on every axis.
pub fn simpson_integral(field: &RealField) -> Result<f64> {
    let spec = &field.spec;
    let weights = (0..spec.dim())
        .map(|k| periodic_simpson_weights(spec.samples[k], spec.spacing(k), k))
        .collect::<Result<Vec<_>>>()?;
    let mut idx = vec![0usize; spec.dim()];
    let mut total = 0.0;
    for (flat, v) in field.values.iter().enumerate() {
        spec.unravel(flat, &mut idx);
        let w: f64 = idx
            .iter()
            .enumerate()
            .map(|(k, &i)| weights[k][i])
            .product();
        total += w * v;
    }
    Ok(total)
}

/// `delta = sqrt(\int |y - y_delta|^2)`, integrated with Simpson's rule.
pub fn estimate_noise_level(y: &RealField, y_delta: &RealField) -> Result<f64> {
    let diff = y.sub(y_delta)?;
    let squared = RealField {
        spec: diff.spec,
        values: diff.values.iter().map(|v| v * v).collect(),
    };
    Ok(simpson_integral(&squared)?.max(0.0).sqrt())
}
