//! Uniform cell-centered sampling grids on truncated boxes, and the angular
//! frequency lattices that go with them.
//!
//! Node `i` on axis `k` sits at `lower[k] + (i + 1/2) * h[k]` with
//! `h[k] = (upper[k] - lower[k]) / samples[k]`. Multi-indices are laid out
//! row-major: the last axis varies fastest.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Box bounds and per-axis sample counts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub samples: Vec<usize>,
}

impl GridSpec {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>, samples: Vec<usize>) -> Result<Self> {
        let spec = GridSpec {
            lower,
            upper,
            samples,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Same box and resolution on every axis.
    pub fn cube(dim: usize, lower: f64, upper: f64, samples: usize) -> Result<Self> {
        GridSpec::new(vec![lower; dim], vec![upper; dim], vec![samples; dim])
    }

    pub fn validate(&self) -> Result<()> {
        let dim = self.lower.len();
        if dim == 0 {
            return Err(Error::InvalidSpec("grid needs at least one axis".into()));
        }
        if self.upper.len() != dim || self.samples.len() != dim {
            return Err(Error::InvalidSpec(format!(
                "axis count disagrees: lower {}, upper {}, samples {}",
                dim,
                self.upper.len(),
                self.samples.len()
            )));
        }
        for k in 0..dim {
            let (a, b, n) = (self.lower[k], self.upper[k], self.samples[k]);
            if !a.is_finite() || !b.is_finite() || b <= a {
                return Err(Error::InvalidSpec(format!(
                    "axis {k}: need finite lower < upper, got [{a}, {b}]"
                )));
            }
            if n < 2 {
                return Err(Error::InvalidSpec(format!(
                    "axis {k}: need at least 2 samples, got {n}"
                )));
            }
            if (b - a) / n as f64 <= 0.0 {
                return Err(Error::InvalidSpec(format!("axis {k}: spacing underflows")));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.samples.len()
    }

    pub fn len(&self) -> usize {
        self.samples.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        (self.upper[axis] - self.lower[axis]) / self.samples[axis] as f64
    }

    pub fn spacings(&self) -> Vec<f64> {
        (0..self.dim()).map(|k| self.spacing(k)).collect()
    }

    /// Product of the spacings, the quadrature weight of one cell.
    pub fn cell_volume(&self) -> f64 {
        (0..self.dim()).map(|k| self.spacing(k)).product()
    }

    pub fn volume(&self) -> f64 {
        (0..self.dim())
            .map(|k| self.upper[k] - self.lower[k])
            .product()
    }

    /// Coordinate of node `i` along `axis`, from the index formula.
    pub fn node(&self, axis: usize, i: usize) -> f64 {
        self.lower[axis] + (i as f64 + 0.5) * self.spacing(axis)
    }

    /// Row-major strides.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dim()];
        for k in (0..self.dim().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.samples[k + 1];
        }
        strides
    }

    /// Splits a flat index into per-axis indices.
    pub fn unravel(&self, mut flat: usize, out: &mut [usize]) {
        for k in (0..self.dim()).rev() {
            out[k] = flat % self.samples[k];
            flat /= self.samples[k];
        }
    }

    /// Frequency spacing `2 pi / (N h)` on `axis`.
    pub fn frequency_step(&self, axis: usize) -> f64 {
        2.0 * PI / (self.upper[axis] - self.lower[axis])
    }
}

/// A validated grid with its node coordinates per axis.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub spec: GridSpec,
    pub spacing: Vec<f64>,
    pub axes: Vec<Vec<f64>>,
}

impl Grid {
    pub fn len(&self) -> usize {
        self.spec.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spec.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.spec.dim()
    }

    /// Coordinates of the node with the given flat index.
    pub fn point(&self, flat: usize, out: &mut [f64]) {
        let mut idx = flat;
        for k in (0..self.dim()).rev() {
            let n = self.spec.samples[k];
            out[k] = self.axes[k][idx % n];
            idx /= n;
        }
    }

    /// All node coordinates in row-major order.
    pub fn points(&self) -> Vec<Vec<f64>> {
        let mut buf = vec![0.0; self.dim()];
        (0..self.len())
            .map(|i| {
                self.point(i, &mut buf);
                buf.clone()
            })
            .collect()
    }
}

pub fn make_grid(spec: &GridSpec) -> Result<Grid> {
    spec.validate()?;
    let axes = (0..spec.dim())
        .map(|k| (0..spec.samples[k]).map(|i| spec.node(k, i)).collect())
        .collect();
    Ok(Grid {
        spec: spec.clone(),
        spacing: spec.spacings(),
        axes,
    })
}

/// Per-axis angular frequencies in DFT order (nonnegative first).
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyLattice {
    pub freqs: Vec<Vec<f64>>,
    /// Index of the unpaired Nyquist frequency on even axes.
    pub nyquist: Vec<Option<usize>>,
}

/// Signed wavenumber index of DFT bin `m` on an axis of `n` points.
pub fn signed_index(m: usize, n: usize) -> i64 {
    if m < n.div_ceil(2) {
        m as i64
    } else {
        m as i64 - n as i64
    }
}

pub fn frequency_lattice(spec: &GridSpec) -> Result<FrequencyLattice> {
    spec.validate()?;
    let freqs = (0..spec.dim())
        .map(|k| {
            let n = spec.samples[k];
            let step = 2.0 * PI / (n as f64 * spec.spacing(k));
            (0..n).map(|m| step * signed_index(m, n) as f64).collect()
        })
        .collect();
    let nyquist = spec
        .samples
        .iter()
        .map(|&n| (n % 2 == 0).then_some(n / 2))
        .collect();
    Ok(FrequencyLattice { freqs, nyquist })
}

impl FrequencyLattice {
    pub fn dim(&self) -> usize {
        self.freqs.len()
    }

    pub fn len(&self) -> usize {
        self.freqs.iter().map(Vec::len).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Visits every frequency tuple in row-major order.
    ///
    /// The callback receives the full wavevector and the wavevector used for
    /// odd-order derivatives, which has its Nyquist components set to zero.
    /// That second vector keeps first-derivative symbols Hermitian on even
    /// lattices, so real fields stay real under advection.
    pub fn for_each(&self, mut visit: impl FnMut(usize, &[f64], &[f64])) {
        let dim = self.dim();
        let sizes: Vec<usize> = self.freqs.iter().map(Vec::len).collect();
        let mut idx = vec![0usize; dim];
        let mut xi = vec![0.0; dim];
        let mut odd = vec![0.0; dim];
        for flat in 0..self.len() {
            let mut rem = flat;
            for k in (0..dim).rev() {
                idx[k] = rem % sizes[k];
                rem /= sizes[k];
                xi[k] = self.freqs[k][idx[k]];
                odd[k] = if self.nyquist[k] == Some(idx[k]) {
                    0.0
                } else {
                    xi[k]
                };
            }
            visit(flat, &xi, &odd);
        }
    }

    /// Squared norm of every frequency tuple, row-major.
    pub fn norms_squared(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.len()];
        self.for_each(|i, xi, _| out[i] = xi.iter().map(|v| v * v).sum());
        out
    }

    /// Product of the per-axis frequency spacings.
    pub fn cell_volume(&self) -> f64 {
        self.freqs
            .iter()
            .map(|axis| {
                if axis.len() > 1 {
                    axis[1] - axis[0]
                } else {
                    0.0
                }
            })
            .product()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn cell_centered_nodes_1d() {
        let grid = make_grid(&GridSpec::cube(1, -1.0, 1.0, 4).unwrap()).unwrap();
        assert_eq!(grid.axes[0], vec![-0.75, -0.25, 0.25, 0.75]);
        assert_eq!(grid.spacing[0], 0.5);

        let grid = make_grid(&GridSpec::cube(1, 0.0, 1.0, 2).unwrap()).unwrap();
        assert_eq!(grid.axes[0], vec![0.25, 0.75]);
    }

    #[test]
    fn row_major_2d() {
        let grid = make_grid(&GridSpec::cube(2, 0.0, 1.0, 2).unwrap()).unwrap();
        let pts = grid.points();
        assert_eq!(
            pts,
            vec![
                vec![0.25, 0.25],
                vec![0.25, 0.75],
                vec![0.75, 0.25],
                vec![0.75, 0.75]
            ]
        );
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(GridSpec::new(vec![1.0], vec![1.0], vec![4]).is_err());
        assert!(GridSpec::new(vec![0.0], vec![1.0], vec![1]).is_err());
        assert!(GridSpec::new(vec![0.0, 0.0], vec![1.0], vec![4, 4]).is_err());
        assert!(GridSpec::new(vec![], vec![], vec![]).is_err());
        assert!(GridSpec::new(vec![f64::NAN], vec![1.0], vec![4]).is_err());
    }

    #[test]
    fn lattice_dft_order() {
        let spec = GridSpec::cube(1, 0.0, 2.0 * PI, 4).unwrap();
        let lat = frequency_lattice(&spec).unwrap();
        let expected = [0.0, 1.0, -2.0, -1.0];
        for (got, want) in lat.freqs[0].iter().zip(expected) {
            assert_relative_eq!(*got, want, epsilon = 1e-14);
        }
        assert_eq!(lat.nyquist[0], Some(2));
    }

    #[test]
    fn two_point_lattice_is_zero_and_nyquist() {
        let spec = GridSpec::cube(1, -3.0, 5.0, 2).unwrap();
        let h = spec.spacing(0);
        let lat = frequency_lattice(&spec).unwrap();
        assert_eq!(lat.freqs[0][0], 0.0);
        assert_relative_eq!(lat.freqs[0][1], -PI / h, epsilon = 1e-14);
    }

    #[test]
    fn odd_lattice_has_no_nyquist() {
        let spec = GridSpec::cube(1, 0.0, 1.0, 5).unwrap();
        let lat = frequency_lattice(&spec).unwrap();
        assert_eq!(lat.nyquist[0], None);
        let idx: Vec<i64> = (0..5).map(|m| signed_index(m, 5)).collect();
        assert_eq!(idx, vec![0, 1, 2, -2, -1]);
    }

    #[test]
    fn odd_derivative_wavevector_drops_nyquist() {
        let spec = GridSpec::cube(2, 0.0, 1.0, 4).unwrap();
        let lat = frequency_lattice(&spec).unwrap();
        let mut seen = 0;
        lat.for_each(|_, xi, odd| {
            for k in 0..2 {
                if xi[k] < 0.0 && (xi[k] + 4.0 * PI).abs() < 1e-12 {
                    assert_eq!(odd[k], 0.0);
                    seen += 1;
                } else {
                    assert_eq!(odd[k], xi[k]);
                }
            }
        });
        assert_eq!(seen, 8);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn spec_strategy() -> impl Strategy<Value = GridSpec> {
            (1usize..=3)
                .prop_flat_map(|dim| {
                    (
                        prop::collection::vec(-50.0f64..50.0, dim),
                        prop::collection::vec(0.1f64..40.0, dim),
                        prop::collection::vec(2usize..12, dim),
                    )
                })
                .prop_map(|(lower, width, samples)| {
                    let upper = lower.iter().zip(&width).map(|(a, w)| a + w).collect();
                    GridSpec::new(lower, upper, samples).unwrap()
                })
        }

        proptest! {
            #[test]
            fn node_and_frequency_counts_agree(spec in spec_strategy()) {
                let grid = make_grid(&spec).unwrap();
                let lat = frequency_lattice(&spec).unwrap();
                prop_assert_eq!(grid.points().len(), spec.len());
                prop_assert_eq!(lat.len(), spec.len());
                for axis in &lat.freqs {
                    prop_assert_eq!(axis.iter().filter(|v| **v == 0.0).count(), 1);
                }
            }

            #[test]
            fn lattice_symmetric_except_nyquist(spec in spec_strategy()) {
                let lat = frequency_lattice(&spec).unwrap();
                for (k, axis) in lat.freqs.iter().enumerate() {
                    let step = spec.frequency_step(k);
                    for (m, &xi) in axis.iter().enumerate() {
                        if lat.nyquist[k] == Some(m) {
                            continue;
                        }
                        let has_neg = axis.iter().any(|v| (v + xi).abs() <= 1e-9 * step);
                        prop_assert!(has_neg);
                    }
                }
            }

            #[test]
            fn spacing_times_count_is_width(spec in spec_strategy()) {
                for k in 0..spec.dim() {
                    let width = spec.upper[k] - spec.lower[k];
                    let h = spec.spacing(k);
                    prop_assert!((h * spec.samples[k] as f64 - width).abs() <= 4.0 * f64::EPSILON * width.abs().max(1.0));
                    let last = spec.node(k, spec.samples[k] - 1);
                    prop_assert!((last - (spec.upper[k] - 0.5 * h)).abs() <= 1e-12 * width.max(1.0) + 1e-12 * spec.upper[k].abs());
                }
            }
        }
    }
}
