//! Benchmark sources with their default boxes and model parameters.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::model::ModelParams;
use crate::spectral::RealField;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceId {
    /// Alternating unit steps on [-20, 20].
    Square1d,
    /// Unit hat on [-1, 1].
    Triangle1d,
    /// `cos(x1/20) cos(x2/20)` on [-40, 40]^2.
    Cosine2d,
    /// `10 - |x1| - |x2|` on the diamond `|x1| + |x2| <= 10`.
    Pyramid2d,
    /// `sin((x1 + x2 + x3)/20)` on [-2 pi, 2 pi]^3.
    Sine3d,
}

impl SourceId {
    pub const ALL: [SourceId; 5] = [
        SourceId::Square1d,
        SourceId::Triangle1d,
        SourceId::Cosine2d,
        SourceId::Pyramid2d,
        SourceId::Sine3d,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SourceId::Square1d => "square1d",
            SourceId::Triangle1d => "triangle1d",
            SourceId::Cosine2d => "cosine2d",
            SourceId::Pyramid2d => "pyramid2d",
            SourceId::Sine3d => "sine3d",
        }
    }

    pub fn dim(self) -> usize {
        match self {
            SourceId::Square1d | SourceId::Triangle1d => 1,
            SourceId::Cosine2d | SourceId::Pyramid2d => 2,
            SourceId::Sine3d => 3,
        }
    }

    /// Half-width of the truncation box, the same on every axis.
    pub fn box_half_width(self) -> f64 {
        match self {
            SourceId::Square1d => 40.0,
            SourceId::Triangle1d => 8.0,
            SourceId::Cosine2d => 80.0,
            SourceId::Pyramid2d => 20.0,
            SourceId::Sine3d => 4.0 * PI,
        }
    }

    /// Half-width of the support (an axis-aligned bound for the diamond).
    pub fn support_half_width(self) -> f64 {
        match self {
            SourceId::Square1d => 20.0,
            SourceId::Triangle1d => 1.0,
            SourceId::Cosine2d => 40.0,
            SourceId::Pyramid2d => 10.0,
            SourceId::Sine3d => 2.0 * PI,
        }
    }

    pub fn default_samples(self) -> usize {
        match self.dim() {
            1 => 1024,
            2 => 256,
            _ => 64,
        }
    }

    pub fn default_grid(self) -> GridSpec {
        self.grid_with_samples(self.default_samples())
    }

    pub fn grid_with_samples(self, samples: usize) -> GridSpec {
        let w = self.box_half_width();
        GridSpec {
            lower: vec![-w; self.dim()],
            upper: vec![w; self.dim()],
            samples: vec![samples; self.dim()],
        }
    }

    /// Model parameters and smoothness exponent from the example text.
    pub fn default_params(self) -> (ModelParams, f64) {
        let (alpha2, beta, nu, t0, p) = match self {
            SourceId::Square1d => (2e-5, vec![1e-5], 1.0, 5.0, 1.0),
            SourceId::Triangle1d => (2.0, vec![0.0], 1.0, 0.2, 2.0),
            SourceId::Cosine2d => (0.2, vec![0.0, 0.0], 0.999, 1.0, 1.0),
            SourceId::Pyramid2d => (1.0, vec![0.0, 0.0], 1.0, 0.4, 0.6),
            SourceId::Sine3d => (0.4, vec![1.0, -0.5, -0.5], 0.997, 3.0, 3.0),
        };
        (
            ModelParams {
                alpha2,
                beta,
                nu,
                t0,
            },
            p,
        )
    }

    /// Pointwise value; half-open intervals exactly as in the definitions.
    pub fn evaluate(self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        Ok(match self {
            SourceId::Square1d => square(x[0]),
            SourceId::Triangle1d => triangle(x[0]),
            SourceId::Cosine2d => {
                let inside = x.iter().all(|v| (-40.0..=40.0).contains(v));
                if inside {
                    (x[0] / 20.0).cos() * (x[1] / 20.0).cos()
                } else {
                    0.0
                }
            }
            SourceId::Pyramid2d => pyramid(x[0], x[1]),
            SourceId::Sine3d => {
                let r = 2.0 * PI;
                if x.iter().all(|v| (-r..=r).contains(v)) {
                    ((x[0] + x[1] + x[2]) / 20.0).sin()
                } else {
                    0.0
                }
            }
        })
    }
}

fn square(x: f64) -> f64 {
    if (-20.0..-10.0).contains(&x) {
        -1.0
    } else if (-10.0..0.0).contains(&x) {
        1.0
    } else if (0.0..10.0).contains(&x) {
        -1.0
    } else if (10.0..=20.0).contains(&x) {
        1.0
    } else {
        0.0
    }
}

fn triangle(x: f64) -> f64 {
    if (-1.0..0.0).contains(&x) {
        x + 1.0
    } else if (0.0..=1.0).contains(&x) {
        1.0 - x
    } else {
        0.0
    }
}

fn pyramid(x1: f64, x2: f64) -> f64 {
    let left = (-10.0..=0.0).contains(&x1);
    // The last branch reads "10 <= x1 <= 10" in print; the mirror image of
    // the left half is 0 <= x1 <= 10.
    let right = (0.0..=10.0).contains(&x1);
    if left && (0.0..=10.0 + x1).contains(&x2) {
        10.0 + x1 - x2
    } else if left && (-10.0 - x1..=0.0).contains(&x2) {
        10.0 + x1 + x2
    } else if right && (0.0..=10.0 - x1).contains(&x2) {
        10.0 - x1 - x2
    } else if right && (-10.0 + x1..=0.0).contains(&x2) {
        10.0 - x1 + x2
    } else {
        0.0
    }
}

impl fmt::Display for SourceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SourceId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SourceId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown source id `{s}`")))
    }
}

/// Pointwise evaluator of a custom source.
pub type SourceFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A user-supplied pointwise source.
#[derive(Clone)]
pub struct CustomSource {
    pub dim: usize,
    pub eval: SourceFn,
}

impl fmt::Debug for CustomSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomSource")
            .field("dim", &self.dim)
            .finish()
    }
}

#[derive(Debug, Clone)]
pub enum SourceSpec {
    Builtin(SourceId),
    Custom(CustomSource),
}

impl SourceSpec {
    pub fn dim(&self) -> usize {
        match self {
            SourceSpec::Builtin(id) => id.dim(),
            SourceSpec::Custom(c) => c.dim,
        }
    }
}

pub fn evaluate_source(spec: &SourceSpec, x: &[f64]) -> Result<f64> {
    match spec {
        SourceSpec::Builtin(id) => id.evaluate(x),
        SourceSpec::Custom(c) => {
            if x.len() != c.dim {
                return Err(Error::DimensionMismatch {
                    expected: c.dim,
                    found: x.len(),
                });
            }
            Ok((c.eval)(x))
        }
    }
}

pub fn sample_source_spec(spec: &SourceSpec, grid: &GridSpec) -> Result<RealField> {
    if grid.dim() != spec.dim() {
        return Err(Error::DimensionMismatch {
            expected: spec.dim(),
            found: grid.dim(),
        });
    }
    RealField::from_fn(grid.clone(), |x| evaluate_source(spec, x).unwrap_or(0.0))
}

pub fn sample_source(id: SourceId, grid: &GridSpec) -> Result<RealField> {
    sample_source_spec(&SourceSpec::Builtin(id), grid)
}
