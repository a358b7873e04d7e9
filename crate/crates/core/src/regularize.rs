//! Regularized inversion of the data-to-source map.
//!
//! The unstable multiplier `Lambda(xi)` is damped by `1 + mu^2 |xi|^2`:
//!
//! ```text
//! f_hat_{delta,mu}(xi) = Lambda(xi) / (1 + mu^2 |xi|^2) * y_hat_delta(xi)
//! ```
//!
//! `mu` comes from one of three a-priori rules, each of the form
//! `mu^2 = r^{2/(p+2)}` with `r = delta / C`, `delta`, or `delta / delta_M`.

use log::warn;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{frequency_lattice, GridSpec};
use crate::model::{lattice_lambda, ModelParams};
use crate::spectral::{forward_transform, inverse_transform, RealField};

/// How `mu` is derived from the noise level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum ChoiceRule {
    /// `mu^2 = (delta / C)^{2/(p+2)}` with `C` bounding the source's `H^p` norm.
    KnownC { c: f64 },
    /// `mu^2 = delta^{2/(p+2)}`.
    PlainDelta,
    /// `mu^2 = (delta / delta_M)^{2/(p+2)}` with `delta_M` the largest admissible noise.
    MaxNoise { delta_max: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegConfig {
    /// Assumed Sobolev smoothness of the source.
    pub p: f64,
    pub rule: ChoiceRule,
    pub mu_override: Option<f64>,
}

impl RegConfig {
    pub fn new(p: f64, rule: ChoiceRule) -> Result<Self> {
        let config = RegConfig {
            p,
            rule,
            mu_override: None,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn with_mu_override(mut self, mu: Option<f64>) -> Result<Self> {
        self.mu_override = mu;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p.is_finite() && self.p > 0.0) {
            return Err(Error::InvalidRegConfig(format!(
                "smoothness p must be finite and positive, got {}",
                self.p
            )));
        }
        match self.rule {
            ChoiceRule::KnownC { c } if !(c.is_finite() && c > 0.0) => {
                return Err(Error::InvalidRegConfig(format!(
                    "norm bound C must be positive, got {c}"
                )))
            }
            ChoiceRule::MaxNoise { delta_max } if !(delta_max.is_finite() && delta_max > 0.0) => {
                return Err(Error::InvalidRegConfig(format!(
                    "maximum noise level must be positive, got {delta_max}"
                )))
            }
            _ => {}
        }
        if let Some(mu) = self.mu_override {
            if !(mu.is_finite() && mu > 0.0) {
                return Err(Error::InvalidRegConfig(format!(
                    "mu override must be positive, got {mu}"
                )));
            }
        }
        Ok(())
    }
}

pub fn choose_mu(config: &RegConfig, delta: f64) -> Result<f64> {
    config.validate()?;
    if let Some(mu) = config.mu_override {
        return Ok(mu);
    }
    if !(delta.is_finite() && delta > 0.0) {
        return Err(Error::NonPositiveDelta(delta));
    }
    let ratio = match config.rule {
        ChoiceRule::KnownC { c } => {
            if delta > c {
                warn!("noise level {delta} exceeds the norm bound C = {c}");
            }
            delta / c
        }
        ChoiceRule::PlainDelta => delta,
        ChoiceRule::MaxNoise { delta_max } => {
            if delta > delta_max {
                return Err(Error::DeltaExceedsDeltaM { delta, delta_max });
            }
            delta / delta_max
        }
    };
    let mu = ratio.powf(1.0 / (config.p + 2.0));
    if mu >= 1.0 {
        warn!("chosen mu = {mu} is outside (0, 1), where the error bounds hold");
    }
    Ok(mu)
}

/// `M = max{1/t0 + sqrt(n) |beta|_inf / (2 nu t0), nu + alpha^2 + sqrt(n) |beta|_inf / 2}`.
pub fn bound_m(params: &ModelParams, n: usize) -> f64 {
    let adv = (n as f64).sqrt() * params.beta_max_abs();
    let first = 1.0 / params.t0 + adv / (2.0 * params.nu * params.t0);
    let second = params.nu + params.alpha2 + adv / 2.0;
    first.max(second)
}

/// Constant of the Hölder bound. `c_norm` must bound the source's `H^p` norm.
pub fn bound_k(params: &ModelParams, config: &RegConfig, n: usize, c_norm: f64) -> f64 {
    let m = bound_m(params, n);
    match config.rule {
        ChoiceRule::MaxNoise { delta_max } => {
            c_norm + 2.0 * delta_max.powf(4.0 / (config.p + 2.0)) * m
        }
        ChoiceRule::KnownC { .. } | ChoiceRule::PlainDelta => c_norm + 2.0 * m,
    }
}

/// Ingredients of the error bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundParts {
    pub m: f64,
    /// Bound on `|f|_{H^p}`.
    pub c_norm: f64,
}

/// `2 delta^{p/(p+2)} C^{2/(p+2)} [M + max{1, (delta/C)^{(2-p)/(p+2)}} / 2]`.
pub fn known_c_bound(p: f64, delta: f64, c: f64, m: f64) -> f64 {
    let q = p + 2.0;
    let inner = m + 0.5 * 1f64.max((delta / c).powf((2.0 - p) / q));
    2.0 * delta.powf(p / q) * c.powf(2.0 / q) * inner
}

/// `K max{r^{2/(p+2)}, r^{p/(p+2)}}`.
pub fn holder_bound(k: f64, p: f64, ratio: f64) -> f64 {
    let q = p + 2.0;
    k * ratio.powf(2.0 / q).max(ratio.powf(p / q))
}

/// Error bound that matches the rule in force.
pub fn theoretical_bound(
    config: &RegConfig,
    delta: f64,
    n: usize,
    params: &ModelParams,
    c_norm: f64,
) -> f64 {
    let parts = BoundParts {
        m: bound_m(params, n),
        c_norm,
    };
    theoretical_bound_from_parts(config, delta, parts)
}

pub fn theoretical_bound_from_parts(config: &RegConfig, delta: f64, parts: BoundParts) -> f64 {
    if delta <= 0.0 {
        return 0.0;
    }
    let p = config.p;
    match config.rule {
        ChoiceRule::KnownC { c } => known_c_bound(p, delta, c, parts.m),
        ChoiceRule::PlainDelta => holder_bound(parts.c_norm + 2.0 * parts.m, p, delta),
        ChoiceRule::MaxNoise { delta_max } => {
            let k = parts.c_norm + 2.0 * delta_max.powf(4.0 / (p + 2.0)) * parts.m;
            holder_bound(k, p, delta / delta_max)
        }
    }
}

/// `Lambda(xi) / (1 + mu^2 |xi|^2)` on every lattice tuple.
pub fn regularized_multiplier(
    spec: &GridSpec,
    params: &ModelParams,
    mu: f64,
) -> Result<Vec<Complex64>> {
    if !(mu.is_finite() && mu > 0.0) {
        return Err(Error::InvalidRegConfig(format!(
            "mu must be positive, got {mu}"
        )));
    }
    let lambda = lattice_lambda(spec, params)?;
    let norms = frequency_lattice(spec)?.norms_squared();
    Ok(lambda
        .into_iter()
        .zip(norms)
        .map(|(l, n2)| l / (1.0 + mu * mu * n2))
        .collect())
}

pub fn regularized_invert(y_delta: &RealField, params: &ModelParams, mu: f64) -> Result<RealField> {
    let multiplier = regularized_multiplier(&y_delta.spec, params, mu)?;
    if mu < 1.0 {
        let cap = 2.0 * bound_m(params, y_delta.spec.dim()) / (mu * mu);
        debug_assert!(
            multiplier.iter().all(|m| m.norm() <= cap * (1.0 + 1e-9)),
            "regularized multiplier exceeds 2M/mu^2"
        );
    }
    let hat = forward_transform(y_delta)?.multiply(&multiplier)?;
    inverse_transform(&hat)
}

pub fn unregularized_invert(y_delta: &RealField, params: &ModelParams) -> Result<RealField> {
    let lambda = lattice_lambda(&y_delta.spec, params)?;
    let hat = forward_transform(y_delta)?.multiply(&lambda)?;
    inverse_transform(&hat)
}
