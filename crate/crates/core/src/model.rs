//! The forward problem
//!
//! ```text
//! u_t = alpha^2 Lap u - beta . grad u - nu u + f,   u(x, 0) = 0,   y = u(., t0)
//! ```
//!
//! In frequency space every mode obeys `u_t = -z(xi) u + f`, with
//! `z(xi) = alpha^2 |xi|^2 + i beta . xi + nu`, so the data-to-source map is
//! the multiplier `Lambda(xi) = z / (1 - exp(-z t0))`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{frequency_lattice, GridSpec};
use crate::spectral::{forward_transform, inverse_transform, RealField, SpectralField};

/// Above this value of `Re(z) t` the decaying exponential is flushed to zero.
const EXP_FLUSH: f64 = 700.0;

/// Coefficients of the parabolic equation and the observation time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub alpha2: f64,
    pub beta: Vec<f64>,
    pub nu: f64,
    pub t0: f64,
}

impl ModelParams {
    pub fn new(alpha2: f64, beta: Vec<f64>, nu: f64, t0: f64) -> Result<Self> {
        let params = ModelParams {
            alpha2,
            beta,
            nu,
            t0,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidParams(format!(
                    "{name} must be positive, got {v}"
                )))
            }
        };
        positive("alpha2", self.alpha2)?;
        positive("nu", self.nu)?;
        positive("t0", self.t0)?;
        if self.beta.iter().any(|b| !b.is_finite()) {
            return Err(Error::InvalidParams("beta must be finite".into()));
        }
        Ok(())
    }

    /// Validates and checks that `beta` has one entry per grid axis.
    pub fn validate_for(&self, dim: usize) -> Result<()> {
        self.validate()?;
        if self.beta.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: self.beta.len(),
            });
        }
        Ok(())
    }

    pub fn beta_max_abs(&self) -> f64 {
        self.beta.iter().fold(0.0, |m, b| m.max(b.abs()))
    }
}

/// `z` from its ingredients: `alpha^2 |xi|^2 + nu` and `beta . xi`.
pub fn symbol_from_parts(norm_sq: f64, beta_dot_xi: f64, params: &ModelParams) -> Complex64 {
    Complex64::new(params.alpha2 * norm_sq + params.nu, beta_dot_xi)
}

pub fn symbol_z(xi: &[f64], params: &ModelParams) -> Complex64 {
    let norm_sq: f64 = xi.iter().map(|v| v * v).sum();
    let dot: f64 = xi.iter().zip(&params.beta).map(|(a, b)| a * b).sum();
    symbol_from_parts(norm_sq, dot, params)
}

/// `exp(-z t)`, flushed to zero once it is far below double precision.
fn decay(z: Complex64, t: f64) -> Complex64 {
    let re = z.re * t;
    if re > EXP_FLUSH {
        Complex64::new(0.0, 0.0)
    } else {
        Complex64::from_polar((-re).exp(), -z.im * t)
    }
}

/// `(1 - exp(-z t)) / z`, the map from source to solution at time `t`.
pub fn forward_multiplier(z: Complex64, t: f64) -> Complex64 {
    (Complex64::new(1.0, 0.0) - decay(z, t)) / z
}

/// `z / (1 - exp(-z t0))`, the exact inverse of [`forward_multiplier`] at `t0`.
pub fn lambda_from_symbol(z: Complex64, t0: f64) -> Complex64 {
    z / (Complex64::new(1.0, 0.0) - decay(z, t0))
}

pub fn lambda_multiplier(xi: &[f64], params: &ModelParams) -> Complex64 {
    lambda_from_symbol(symbol_z(xi, params), params.t0)
}

/// The symbol on every lattice tuple, row-major.
///
/// The advective part uses the odd-derivative wavevector, which drops the
/// unpaired Nyquist component on even axes; the diffusive part uses the
/// full wavevector.
pub fn lattice_symbol(spec: &GridSpec, params: &ModelParams) -> Result<Vec<Complex64>> {
    params.validate_for(spec.dim())?;
    let lattice = frequency_lattice(spec)?;
    let mut out = vec![Complex64::new(0.0, 0.0); lattice.len()];
    lattice.for_each(|i, xi, odd| {
        let norm_sq: f64 = xi.iter().map(|v| v * v).sum();
        let dot: f64 = odd.iter().zip(&params.beta).map(|(a, b)| a * b).sum();
        out[i] = symbol_from_parts(norm_sq, dot, params);
    });
    Ok(out)
}

pub fn lattice_lambda(spec: &GridSpec, params: &ModelParams) -> Result<Vec<Complex64>> {
    Ok(lattice_symbol(spec, params)?
        .into_iter()
        .map(|z| lambda_from_symbol(z, params.t0))
        .collect())
}

pub fn forward_hat(f_hat: &SpectralField, t: f64, params: &ModelParams) -> Result<SpectralField> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::InvalidParams(format!(
            "time must be positive, got {t}"
        )));
    }
    let multiplier: Vec<Complex64> = lattice_symbol(&f_hat.spec, params)?
        .into_iter()
        .map(|z| forward_multiplier(z, t))
        .collect();
    f_hat.multiply(&multiplier)
}

/// Noiseless data `y = u(., t0)` generated by the spectral forward map.
pub fn synthesize_observation(f: &RealField, params: &ModelParams) -> Result<RealField> {
    let f_hat = forward_transform(f)?;
    inverse_transform(&forward_hat(&f_hat, params.t0, params)?)
}

/// Crank-Nicolson time stepping with second-order central differences on the
/// periodic box, from `u = 0` to `t0`. Independent of the spectral path.
pub fn timestep_oracle(f: &RealField, params: &ModelParams, steps: usize) -> Result<RealField> {
    let spec = &f.spec;
    params.validate_for(spec.dim())?;
    if steps == 0 {
        return Err(Error::InvalidParams("need at least one time step".into()));
    }
    let dt = params.t0 / steps as f64;
    let stencil = Stencil::new(spec, params);
    let mut u = vec![0.0; spec.len()];
    let mut rhs = vec![0.0; spec.len()];
    let mut lu = vec![0.0; spec.len()];

    let cyclic = (spec.dim() == 1 && spec.samples[0] >= 3).then(|| {
        let (lo, up) = stencil.neighbours[0];
        CyclicSolver::new(
            spec.samples[0],
            -0.5 * dt * lo,
            1.0 - 0.5 * dt * stencil.centre,
            -0.5 * dt * up,
        )
    });

    for _ in 0..steps {
        stencil.apply(&u, &mut lu);
        for i in 0..u.len() {
            rhs[i] = u[i] + 0.5 * dt * lu[i] + dt * f.values[i];
        }
        match &cyclic {
            Some(solver) => solver.solve(&rhs, &mut u)?,
            None => stencil.jacobi_solve(dt, &rhs, &mut u)?,
        }
    }
    RealField::new(spec.clone(), u)
}

/// Periodic finite-difference discretization of the spatial operator.
struct Stencil {
    samples: Vec<usize>,
    strides: Vec<usize>,
    /// Weights on the (minus, plus) neighbour along each axis.
    neighbours: Vec<(f64, f64)>,
    centre: f64,
}

impl Stencil {
    fn new(spec: &GridSpec, params: &ModelParams) -> Self {
        let mut centre = -params.nu;
        let neighbours = (0..spec.dim())
            .map(|k| {
                let h = spec.spacing(k);
                let diff = params.alpha2 / (h * h);
                let adv = params.beta[k] / (2.0 * h);
                centre -= 2.0 * diff;
                (diff + adv, diff - adv)
            })
            .collect();
        Stencil {
            samples: spec.samples.clone(),
            strides: spec.strides(),
            neighbours,
            centre,
        }
    }

    fn for_neighbours(&self, flat: usize, mut visit: impl FnMut(usize, f64)) {
        for (k, &(lo, up)) in self.neighbours.iter().enumerate() {
            let n = self.samples[k];
            let s = self.strides[k];
            let i = (flat / s) % n;
            let minus = if i == 0 { flat + (n - 1) * s } else { flat - s };
            let plus = if i + 1 == n {
                flat - (n - 1) * s
            } else {
                flat + s
            };
            visit(minus, lo);
            visit(plus, up);
        }
    }

    fn apply(&self, u: &[f64], out: &mut [f64]) {
        for (flat, slot) in out.iter_mut().enumerate() {
            let mut acc = self.centre * u[flat];
            self.for_neighbours(flat, |j, w| acc += w * u[j]);
            *slot = acc;
        }
    }

    /// Solves `(I - dt/2 L) u = rhs` by Jacobi iteration, warm-started from `u`.
    fn jacobi_solve(&self, dt: f64, rhs: &[f64], u: &mut Vec<f64>) -> Result<()> {
        const MAX_ITER: usize = 20_000;
        let diag = 1.0 - 0.5 * dt * self.centre;
        let mut next = vec![0.0; u.len()];
        for _ in 0..MAX_ITER {
            let mut change = 0.0f64;
            let mut scale = 0.0f64;
            for (flat, slot) in next.iter_mut().enumerate() {
                let mut off = 0.0;
                self.for_neighbours(flat, |j, w| off -= 0.5 * dt * w * u[j]);
                *slot = (rhs[flat] - off) / diag;
                change = change.max((*slot - u[flat]).abs());
                scale = scale.max(slot.abs());
            }
            std::mem::swap(u, &mut next);
            if !change.is_finite() {
                break;
            }
            if change <= 1e-14 * scale.max(f64::MIN_POSITIVE) {
                return Ok(());
            }
        }
        Err(Error::SingularSystem(
            "Jacobi iteration did not converge".into(),
        ))
    }
}

/// Periodic tridiagonal system with constant bands, solved by the
/// Sherman-Morrison correction of the Thomas algorithm.
struct CyclicSolver {
    lower: f64,
    upper: f64,
    gamma: f64,
    diag: Vec<f64>,
    z: Vec<f64>,
}

impl CyclicSolver {
    fn new(n: usize, lower: f64, diag: f64, upper: f64) -> Self {
        // Corners: A[0][n-1] = lower, A[n-1][0] = upper.
        let gamma = -diag;
        let mut d = vec![diag; n];
        d[0] = diag - gamma;
        d[n - 1] = diag - lower * upper / gamma;
        let mut solver = CyclicSolver {
            lower,
            upper,
            gamma,
            diag: d,
            z: vec![0.0; n],
        };
        let mut u = vec![0.0; n];
        u[0] = gamma;
        u[n - 1] = upper;
        let mut z = vec![0.0; n];
        solver.thomas(&u, &mut z);
        solver.z = z;
        solver
    }

    fn thomas(&self, rhs: &[f64], out: &mut [f64]) {
        let n = rhs.len();
        let mut c_prime = vec![0.0; n];
        let mut denom = self.diag[0];
        out[0] = rhs[0] / denom;
        for i in 1..n {
            c_prime[i - 1] = self.upper / denom;
            denom = self.diag[i] - self.lower * c_prime[i - 1];
            out[i] = (rhs[i] - self.lower * out[i - 1]) / denom;
        }
        for i in (0..n - 1).rev() {
            out[i] -= c_prime[i] * out[i + 1];
        }
    }

    fn solve(&self, rhs: &[f64], out: &mut [f64]) -> Result<()> {
        let n = rhs.len();
        self.thomas(rhs, out);
        let lower_corner = self.lower;
        let num = out[0] + lower_corner * out[n - 1] / self.gamma;
        let den = 1.0 + self.z[0] + lower_corner * self.z[n - 1] / self.gamma;
        if den == 0.0 || !den.is_finite() {
            return Err(Error::SingularSystem("cyclic correction vanished".into()));
        }
        let fact = num / den;
        for (o, z) in out.iter_mut().zip(&self.z) {
            *o -= fact * z;
        }
        if out.iter().any(|v| !v.is_finite()) {
            return Err(Error::SingularSystem("non-finite solution".into()));
        }
        Ok(())
    }
}
