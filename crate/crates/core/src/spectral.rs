//! Discrete stand-in for the continuous Fourier transform on `R^n`.
//!
//! Coefficients are scaled so that they approximate
//! `(2 pi)^{-n/2} \int e^{-i xi . x} g(x) dx` by a Riemann sum over the box:
//!
//! ```text
//! coeff(xi_j) = (2 pi)^{-n/2} h^n sum_i exp(-i xi_j . x_i) g(x_i)
//! ```
//!
//! The sum is evaluated with an FFT along every axis; the offset of the
//! first cell center from the origin turns into a per-axis phase factor.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

use crate::error::{Error, Result};
use crate::grid::{frequency_lattice, make_grid, GridSpec};

/// Largest grid accepted by [`naive_dft`].
pub const NAIVE_DFT_LIMIT: usize = 4096;

/// Relative size of imaginary residue tolerated when a real result is requested.
pub const REAL_TOLERANCE: f64 = 1e-8;

/// Real samples on the nodes of a grid, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RealField {
    pub spec: GridSpec,
    pub values: Vec<f64>,
}

impl RealField {
    pub fn new(spec: GridSpec, values: Vec<f64>) -> Result<Self> {
        spec.validate()?;
        if values.len() != spec.len() {
            return Err(Error::InvalidSpec(format!(
                "field has {} values for {} nodes",
                values.len(),
                spec.len()
            )));
        }
        check_finite(values.iter().copied())?;
        Ok(RealField { spec, values })
    }

    pub fn zeros(spec: GridSpec) -> Self {
        let values = vec![0.0; spec.len()];
        RealField { spec, values }
    }

    /// Samples `f` at every node.
    pub fn from_fn(spec: GridSpec, mut f: impl FnMut(&[f64]) -> f64) -> Result<Self> {
        let grid = make_grid(&spec)?;
        let mut x = vec![0.0; spec.dim()];
        let values = (0..spec.len())
            .map(|i| {
                grid.point(i, &mut x);
                f(&x)
            })
            .collect();
        RealField::new(spec, values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn ensure_same_grid(&self, other: &RealField) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }

    pub fn sub(&self, other: &RealField) -> Result<RealField> {
        self.ensure_same_grid(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a - b)
            .collect();
        Ok(RealField {
            spec: self.spec.clone(),
            values,
        })
    }
}

/// Approximate continuous Fourier coefficients on the frequency lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    pub spec: GridSpec,
    pub coeffs: Vec<Complex64>,
}

impl SpectralField {
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient-wise product with a multiplier sampled on the lattice.
    pub fn multiply(&self, multiplier: &[Complex64]) -> Result<SpectralField> {
        if multiplier.len() != self.coeffs.len() {
            return Err(Error::GridMismatch);
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(multiplier)
            .map(|(c, m)| c * m)
            .collect();
        Ok(SpectralField {
            spec: self.spec.clone(),
            coeffs,
        })
    }

    /// `dxi^n sum |coeff|^2`, the frequency-side half of Parseval's identity.
    pub fn energy(&self) -> f64 {
        let weight = frequency_weight(&self.spec);
        weight * self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>()
    }
}

fn check_finite(values: impl Iterator<Item = f64>) -> Result<()> {
    for (index, v) in values.enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFinite { index });
        }
    }
    Ok(())
}

pub(crate) fn frequency_weight(spec: &GridSpec) -> f64 {
    (0..spec.dim()).map(|k| spec.frequency_step(k)).product()
}

/// Per-axis factors `h / sqrt(2 pi) * exp(-i xi_m (lower + h/2))`.
fn axis_phases(spec: &GridSpec) -> Result<Vec<Vec<Complex64>>> {
    let lattice = frequency_lattice(spec)?;
    Ok((0..spec.dim())
        .map(|k| {
            let h = spec.spacing(k);
            let x0 = spec.node(k, 0);
            let scale = h / (2.0 * PI).sqrt();
            lattice.freqs[k]
                .iter()
                .map(|&xi| Complex64::from_polar(scale, -xi * x0))
                .collect()
        })
        .collect())
}

fn phase_product(spec: &GridSpec, phases: &[Vec<Complex64>]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(1.0, 0.0); spec.len()];
    let mut idx = vec![0usize; spec.dim()];
    for (flat, slot) in out.iter_mut().enumerate() {
        spec.unravel(flat, &mut idx);
        for (k, &i) in idx.iter().enumerate() {
            *slot *= phases[k][i];
        }
    }
    out
}

/// Unnormalized FFT along every axis of a row-major array.
fn fft_nd(data: &mut [Complex64], shape: &[usize], direction: FftDirection) {
    let mut planner = FftPlanner::<f64>::new();
    let len: usize = shape.iter().product();
    let mut stride = len;
    for &n in shape {
        stride /= n;
        let plan: Arc<dyn Fft<f64>> = planner.plan_fft(n, direction);
        let mut scratch = vec![Complex64::new(0.0, 0.0); plan.get_inplace_scratch_len()];
        if stride == 1 {
            for line in data.chunks_exact_mut(n) {
                plan.process_with_scratch(line, &mut scratch);
            }
            continue;
        }
        let mut line = vec![Complex64::new(0.0, 0.0); n];
        let block = n * stride;
        for outer in (0..len).step_by(block) {
            for inner in 0..stride {
                let start = outer + inner;
                for (j, slot) in line.iter_mut().enumerate() {
                    *slot = data[start + j * stride];
                }
                plan.process_with_scratch(&mut line, &mut scratch);
                for (j, v) in line.iter().enumerate() {
                    data[start + j * stride] = *v;
                }
            }
        }
    }
}

pub fn forward_transform(field: &RealField) -> Result<SpectralField> {
    check_finite(field.values.iter().copied())?;
    let spec = &field.spec;
    let mut data: Vec<Complex64> = field
        .values
        .iter()
        .map(|&v| Complex64::new(v, 0.0))
        .collect();
    fft_nd(&mut data, &spec.samples, FftDirection::Forward);
    let phases = phase_product(spec, &axis_phases(spec)?);
    for (c, p) in data.iter_mut().zip(&phases) {
        *c *= p;
    }
    Ok(SpectralField {
        spec: spec.clone(),
        coeffs: data,
    })
}

/// Exact discrete inverse of [`forward_transform`], keeping the complex values.
pub fn inverse_transform_complex(field: &SpectralField) -> Result<Vec<Complex64>> {
    check_finite(field.coeffs.iter().flat_map(|c| [c.re, c.im]))?;
    let spec = &field.spec;
    let phases = phase_product(spec, &axis_phases(spec)?);
    let mut data: Vec<Complex64> = field
        .coeffs
        .iter()
        .zip(&phases)
        .map(|(c, p)| c / p)
        .collect();
    fft_nd(&mut data, &spec.samples, FftDirection::Inverse);
    let norm = 1.0 / spec.len() as f64;
    for v in &mut data {
        *v *= norm;
    }
    Ok(data)
}

/// Inverse transform to a real field.
///
/// Fails when the imaginary residue exceeds [`REAL_TOLERANCE`] times the
/// largest real part; otherwise the residue is dropped.
pub fn inverse_transform(field: &SpectralField) -> Result<RealField> {
    let data = inverse_transform_complex(field)?;
    let max_re = data.iter().fold(0.0f64, |m, c| m.max(c.re.abs()));
    let max_im = data.iter().fold(0.0f64, |m, c| m.max(c.im.abs()));
    if max_im > REAL_TOLERANCE * max_re {
        return Err(Error::SymmetryViolation { max_im, max_re });
    }
    Ok(RealField {
        spec: field.spec.clone(),
        values: data.into_iter().map(|c| c.re).collect(),
    })
}

/// Direct O(N^2) evaluation of the forward Riemann sum. Used as an oracle.
pub fn naive_dft(field: &RealField) -> Result<SpectralField> {
    let spec = &field.spec;
    let len = spec.len();
    if len > NAIVE_DFT_LIMIT {
        return Err(Error::GridTooLarge {
            len,
            limit: NAIVE_DFT_LIMIT,
        });
    }
    check_finite(field.values.iter().copied())?;
    let grid = make_grid(spec)?;
    let lattice = frequency_lattice(spec)?;
    let points = grid.points();
    let scale = spec.cell_volume() * (2.0 * PI).powf(-(spec.dim() as f64) / 2.0);
    let mut coeffs = vec![Complex64::new(0.0, 0.0); len];
    lattice.for_each(|j, xi, _| {
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, &v) in points.iter().zip(&field.values) {
            let phase: f64 = xi.iter().zip(x).map(|(a, b)| a * b).sum();
            acc += Complex64::from_polar(v, -phase);
        }
        coeffs[j] = acc * scale;
    });
    Ok(SpectralField {
        spec: spec.clone(),
        coeffs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::signed_index;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_field(spec: GridSpec, seed: u64) -> RealField {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = (0..spec.len())
            .map(|_| rng.random_range(-1.0..1.0))
            .collect();
        RealField::new(spec, values).unwrap()
    }

    fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn zero_in_zero_out() {
        let spec = GridSpec::cube(2, -1.0, 1.0, 8).unwrap();
        let f = RealField::zeros(spec);
        let fw = forward_transform(&f).unwrap();
        assert!(fw.coeffs.iter().all(|c| c.norm() == 0.0));
        let back = inverse_transform(&fw).unwrap();
        assert!(back.values.iter().all(|v| *v == 0.0));
        assert!(naive_dft(&f)
            .unwrap()
            .coeffs
            .iter()
            .all(|c| c.norm() == 0.0));
    }

    #[test]
    fn constant_zero_frequency() {
        let l = 3.0;
        let spec = GridSpec::cube(1, -l, l, 64).unwrap();
        let f = RealField::from_fn(spec, |_| 1.0).unwrap();
        let fw = forward_transform(&f).unwrap();
        assert_relative_eq!(
            fw.coeffs[0].re,
            2.0 * l / (2.0 * PI).sqrt(),
            epsilon = 1e-12
        );
        assert!(fw.coeffs[0].im.abs() < 1e-12);
        for c in &fw.coeffs[1..] {
            assert!(c.norm() < 1e-12);
        }
        let naive = naive_dft(&f).unwrap();
        for c in &naive.coeffs[1..] {
            assert!(c.norm() < 1e-12);
        }
    }

    #[test]
    fn indicator_matches_closed_form() {
        // (2 pi)^{-1/2} \int_{-10}^{10} e^{-i xi x} dx = (2 pi)^{-1/2} 2 sin(10 xi) / xi
        let spec = GridSpec::cube(1, -20.0, 20.0, 1024).unwrap();
        let f = RealField::from_fn(spec.clone(), |x| {
            if (-10.0..=10.0).contains(&x[0]) {
                1.0
            } else {
                0.0
            }
        })
        .unwrap();
        let fw = forward_transform(&f).unwrap();
        let lat = frequency_lattice(&spec).unwrap();
        let h = spec.spacing(0);
        for (m, &xi) in lat.freqs[0].iter().enumerate().skip(1).take(40) {
            let exact = 2.0 * (10.0 * xi).sin() / xi / (2.0 * PI).sqrt();
            // Breakpoints fall on cell faces, so the sum is a midpoint rule.
            let tol = h * h * xi * xi * 2.0 + 1e-12;
            assert!(
                (fw.coeffs[m].re - exact).abs() <= tol,
                "xi={xi}: {} vs {exact}",
                fw.coeffs[m].re
            );
            assert!(fw.coeffs[m].im.abs() < 1e-10);
        }
    }

    #[test]
    fn round_trip_random() {
        for dim in 1..=3 {
            let n = [64, 32, 16][dim - 1];
            let spec = GridSpec::cube(dim, -2.5, 4.0, n).unwrap();
            let f = random_field(spec, dim as u64);
            let back = inverse_transform(&forward_transform(&f).unwrap()).unwrap();
            let err = f
                .values
                .iter()
                .zip(&back.values)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            assert!(err <= 1e-12 * f.max_abs(), "dim {dim}: {err}");
        }
    }

    #[test]
    fn single_coefficient_is_plane_wave() {
        let spec = GridSpec::new(vec![-1.0, 0.5], vec![2.0, 3.0], vec![8, 6]).unwrap();
        let lat = frequency_lattice(&spec).unwrap();
        let target = (3usize, 4usize);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); spec.len()];
        coeffs[target.0 * 6 + target.1] = Complex64::new(1.0, 0.0);
        let field = SpectralField {
            spec: spec.clone(),
            coeffs,
        };
        let values = inverse_transform_complex(&field).unwrap();
        let xi = [lat.freqs[0][target.0], lat.freqs[1][target.1]];
        // Inverse Riemann sum: (2 pi)^{-n/2} dxi^n e^{i xi . x}.
        let amp = frequency_weight(&spec) / (2.0 * PI);
        let grid = make_grid(&spec).unwrap();
        for (i, x) in grid.points().iter().enumerate() {
            let want = Complex64::from_polar(amp, xi[0] * x[0] + xi[1] * x[1]);
            assert!((values[i] - want).norm() < 1e-13);
        }
        assert_eq!(signed_index(3, 8), 3);
    }

    #[test]
    fn complex_residue_is_rejected() {
        let spec = GridSpec::cube(1, 0.0, 1.0, 8).unwrap();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); 8];
        coeffs[1] = Complex64::new(1.0, 0.0);
        let err = inverse_transform(&SpectralField { spec, coeffs }).unwrap_err();
        assert!(matches!(err, Error::SymmetryViolation { .. }));
    }

    #[test]
    fn non_finite_rejected() {
        let spec = GridSpec::cube(1, 0.0, 1.0, 4).unwrap();
        assert!(RealField::new(spec.clone(), vec![0.0, f64::NAN, 0.0, 0.0]).is_err());
        let f = RealField {
            spec,
            values: vec![0.0, f64::INFINITY, 0.0, 0.0],
        };
        assert_eq!(
            forward_transform(&f).unwrap_err(),
            Error::NonFinite { index: 1 }
        );
    }

    #[test]
    fn naive_guard() {
        let spec = GridSpec::cube(2, 0.0, 1.0, 128).unwrap();
        let f = RealField::zeros(spec);
        assert!(matches!(naive_dft(&f), Err(Error::GridTooLarge { .. })));
    }

    #[test]
    fn fft_agrees_with_naive_sum() {
        let shapes: [&[usize]; 5] = [&[32], &[17], &[16, 12], &[9, 8], &[8, 6, 5]];
        for (s, shape) in shapes.iter().enumerate() {
            let dim = shape.len();
            let lower: Vec<f64> = (0..dim).map(|k| -3.0 + k as f64).collect();
            let upper: Vec<f64> = (0..dim).map(|k| 2.0 + 0.5 * k as f64).collect();
            let spec = GridSpec::new(lower, upper, shape.to_vec()).unwrap();
            let f = random_field(spec, 100 + s as u64);
            let fast = forward_transform(&f).unwrap();
            let slow = naive_dft(&f).unwrap();
            assert!(max_abs_diff(&fast.coeffs, &slow.coeffs) < 1e-10);
        }
    }

    #[test]
    fn hermitian_symmetry_for_real_input() {
        let spec = GridSpec::new(vec![-2.0, 0.0], vec![1.0, 4.0], vec![10, 7]).unwrap();
        let f = random_field(spec.clone(), 7);
        let fw = forward_transform(&f).unwrap();
        let (n0, n1) = (10, 7);
        for a in 0..n0 {
            for b in 0..n1 {
                if a == n0 / 2 {
                    continue;
                }
                let c = fw.coeffs[a * n1 + b];
                let partner = fw.coeffs[((n0 - a) % n0) * n1 + (n1 - b) % n1];
                assert!((c - partner.conj()).norm() < 1e-12);
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn field_strategy() -> impl Strategy<Value = (RealField, RealField)> {
            (1usize..=3, 2usize..10)
                .prop_flat_map(|(dim, n)| {
                    let len = n.pow(dim as u32);
                    (
                        Just((dim, n)),
                        prop::collection::vec(-10.0f64..10.0, len),
                        prop::collection::vec(-10.0f64..10.0, len),
                    )
                })
                .prop_map(|((dim, n), a, b)| {
                    let spec = GridSpec::cube(dim, -1.5, 2.0, n).unwrap();
                    (
                        RealField::new(spec.clone(), a).unwrap(),
                        RealField::new(spec, b).unwrap(),
                    )
                })
        }

        proptest! {
            #[test]
            fn parseval((f, _g) in field_strategy()) {
                let lhs = f.spec.cell_volume() * f.values.iter().map(|v| v * v).sum::<f64>();
                let rhs = forward_transform(&f).unwrap().energy();
                prop_assert!((lhs - rhs).abs() <= 1e-10 * lhs.max(1e-300));
            }

            #[test]
            fn linearity((f, g) in field_strategy(), a in -3.0f64..3.0, b in -3.0f64..3.0) {
                let combo = RealField::new(
                    f.spec.clone(),
                    f.values.iter().zip(&g.values).map(|(x, y)| a * x + b * y).collect(),
                ).unwrap();
                let lhs = forward_transform(&combo).unwrap();
                let ff = forward_transform(&f).unwrap();
                let gg = forward_transform(&g).unwrap();
                let scale = lhs.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max).max(1e-300);
                for i in 0..lhs.len() {
                    let rhs = ff.coeffs[i] * a + gg.coeffs[i] * b;
                    prop_assert!((lhs.coeffs[i] - rhs).norm() <= 1e-12 * scale);
                }
            }

            #[test]
            fn round_trip((f, _g) in field_strategy()) {
                let back = inverse_transform(&forward_transform(&f).unwrap()).unwrap();
                let err = f.values.iter().zip(&back.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                prop_assert!(err <= 1e-12 * f.max_abs().max(1e-300));
            }
        }
    }
}
