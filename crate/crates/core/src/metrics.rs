//! Discrete norms and the per-noise-level error report.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::frequency_lattice;
use crate::spectral::{forward_transform, RealField};

/// Rectangle-rule `L^2` norm, `sqrt(h^n sum f_i^2)`.
pub fn l2_norm(f: &RealField) -> f64 {
    (f.spec.cell_volume() * f.values.iter().map(|v| v * v).sum::<f64>()).sqrt()
}

/// Truncated Sobolev norm, `sqrt(dxi^n sum |coeff_j|^2 (1 + |xi_j|^2)^p)`.
pub fn hp_norm(f: &RealField, p: f64) -> Result<f64> {
    if !(p.is_finite() && p >= 0.0) {
        return Err(Error::InvalidRegConfig(format!(
            "Sobolev exponent must be finite and >= 0, got {p}"
        )));
    }
    let hat = forward_transform(f)?;
    let norms = frequency_lattice(&f.spec)?.norms_squared();
    let weight: f64 = (0..f.spec.dim())
        .map(|k| f.spec.frequency_step(k))
        .product();
    let sum: f64 = hat
        .coeffs
        .iter()
        .zip(&norms)
        .map(|(c, n2)| c.norm_sqr() * (1.0 + n2).powf(p))
        .sum();
    Ok((weight * sum).sqrt())
}

/// One row of an error table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub epsilon: f64,
    pub delta: f64,
    pub mu: f64,
    pub abs_unreg: f64,
    pub abs_reg: f64,
    pub rel_unreg: f64,
    pub rel_reg: f64,
    pub theoretical_bound: f64,
}

impl ErrorReport {
    pub const CSV_HEADER: &'static str =
        "epsilon,delta,mu,abs_unreg,abs_reg,rel_unreg,rel_reg,theoretical_bound";

    pub fn csv_row(&self) -> String {
        format!(
            "{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e}",
            self.epsilon,
            self.delta,
            self.mu,
            self.abs_unreg,
            self.abs_reg,
            self.rel_unreg,
            self.rel_reg,
            self.theoretical_bound
        )
    }
}

/// Run context that is not derived from the fields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportContext {
    pub epsilon: f64,
    pub delta: f64,
    pub mu: f64,
    pub theoretical_bound: f64,
}

pub fn error_report(
    f: &RealField,
    f_unreg: &RealField,
    f_reg: &RealField,
    ctx: ReportContext,
) -> Result<ErrorReport> {
    let abs_unreg = l2_norm(&f.sub(f_unreg)?);
    let abs_reg = l2_norm(&f.sub(f_reg)?);
    let norm = l2_norm(f);
    let rel = |abs: f64| {
        if norm > 0.0 {
            abs / norm
        } else {
            f64::INFINITY
        }
    };
    Ok(ErrorReport {
        epsilon: ctx.epsilon,
        delta: ctx.delta,
        mu: ctx.mu,
        abs_unreg,
        abs_reg,
        rel_unreg: rel(abs_unreg),
        rel_reg: rel(abs_reg),
        theoretical_bound: ctx.theoretical_bound,
    })
}
