//! The Duhamel map
//! `N u(t) = e^{it Phi} f - i int_0^t e^{i(t - tau) Phi} F_p(u(tau)) dtau`
//! on uniform time nodes.
//!
//! In frequency space `N u(t_j) = e^{i t_j Phi} (f^ - i S_j)` with
//! `S_j = int_0^{t_j} e^{-i tau Phi} F_p(u(tau))^ dtau`, so the propagator
//! factors are exact and only `S_j` is approximated, by the composite
//! trapezoid rule accumulated node by node.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::fourier::{forward_transform, forward_transform_owned, inverse_transform_owned};
use crate::grid::{Field, Spectrum};
use crate::norms::{mixed_space_norm, time_norm};
use crate::propagator::Propagator;
use crate::scalar::Real;
use crate::symbol::Symbol;

use super::nonlinearity::{evaluate_nonlinearity, NonlinearSpec};

pub const MIN_NODES: usize = 9;
/// Iterates whose sup norm exceeds this multiple of `||f||_inf` are treated
/// as blowing up.
pub const BLOWUP_FACTOR: f64 = 1e6;

/// `count` uniform nodes on `[0, horizon]`.
pub fn uniform_nodes<T: Real>(horizon: T, count: usize) -> Result<Vec<T>> {
    if count < MIN_NODES {
        return Err(Error::InsufficientData(format!(
            "{count} time nodes, need at least {MIN_NODES}"
        )));
    }
    if !(horizon > T::zero()) || !horizon.is_finite() {
        return Err(Error::InvalidData(format!("horizon {horizon} must be positive")));
    }
    let last = T::from_usize_lossy(count - 1);
    let mut out: Vec<T> = (0..count).map(|j| horizon * T::from_usize_lossy(j) / last).collect();
    out[count - 1] = horizon;
    Ok(out)
}

fn check_nodes<T: Real>(times: &[T]) -> Result<T> {
    if times.len() < MIN_NODES {
        return Err(Error::InsufficientData(format!(
            "{} time nodes, need at least {MIN_NODES}",
            times.len()
        )));
    }
    if !times[0].is_zero() {
        return Err(Error::InvalidData("time nodes must start at 0".into()));
    }
    let dt = times[1] - times[0];
    if !(dt > T::zero()) {
        return Err(Error::InvalidData("time nodes must increase".into()));
    }
    let slack = T::lit(1e-9) * dt;
    for (j, &t) in times.iter().enumerate() {
        if (t - dt * T::from_usize_lossy(j)).abs() > slack * T::from_usize_lossy(j.max(1)) {
            return Err(Error::InvalidData(format!("time node {j} breaks uniform spacing")));
        }
    }
    Ok(dt)
}

/// Space-time norm `||<nabla_y>^s u||_{L^q_t L^r_x L^{r~}_y}` on the nodes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvolutionNorm<T> {
    pub q: T,
    pub r: T,
    pub r_tilde: T,
    pub s: T,
}

impl<T: Real> EvolutionNorm<T> {
    /// The full norm, with the `y` Bessel potential.
    pub fn measure(&self, u: &[Field<T>], times: &[T]) -> Result<T> {
        let mut samples = Vec::with_capacity(u.len());
        for (field, &t) in u.iter().zip(times) {
            let spec = forward_transform(field);
            samples.push((t, self.spatial_from_spectrum(spec)?));
        }
        time_norm(&samples, self.q)
    }

    /// The distance `||u - v||_{L^q_t L^r_x L^{r~}_y}`, without derivatives.
    pub fn distance(&self, u: &[Field<T>], v: &[Field<T>], times: &[T]) -> Result<T> {
        if u.len() != v.len() || u.len() != times.len() {
            return Err(Error::DimensionMismatch {
                expected: times.len(),
                got: u.len().min(v.len()),
            });
        }
        let mut samples = Vec::with_capacity(u.len());
        for ((a, b), &t) in u.iter().zip(v).zip(times) {
            samples.push((t, mixed_space_norm(&a.sub(b)?, self.r, self.r_tilde)?));
        }
        time_norm(&samples, self.q)
    }

    fn spatial_from_spectrum(&self, spec: Spectrum<T>) -> Result<T> {
        let weighted = if self.s.is_zero() {
            spec
        } else {
            let dx = spec.grid().x_axes();
            let half_s = self.s / T::lit(2.0);
            spec.multiply(|zeta| {
                let eta2 = zeta[dx..].iter().fold(T::zero(), |acc, &z| acc + z * z);
                Complex::new((T::one() + eta2).powf(half_s), T::zero())
            })
        };
        mixed_space_norm(&inverse_transform_owned(weighted), self.r, self.r_tilde)
    }
}

/// A Duhamel map with fixed data, symbol, nonlinearity and nodes.
#[derive(Clone, Debug)]
pub struct Duhamel<T: Real> {
    prop: Propagator<T>,
    f_hat: Spectrum<T>,
    spec: NonlinearSpec<T>,
    times: Vec<T>,
    dt: T,
    guard: T,
}

impl<T: Real> Duhamel<T> {
    pub fn new(f: &Field<T>, symbol: &Symbol<T>, spec: &NonlinearSpec<T>, times: &[T]) -> Result<Self> {
        let dt = check_nodes(times)?;
        Ok(Self {
            prop: Propagator::new(f.grid(), symbol)?,
            f_hat: forward_transform(f),
            spec: *spec,
            times: times.to_vec(),
            dt,
            guard: T::lit(BLOWUP_FACTOR) * f.max_abs(),
        })
    }

    pub fn times(&self) -> &[T] {
        &self.times
    }

    /// `e^{it Phi} f` at every node.
    pub fn linear_flow(&self) -> Result<Vec<Field<T>>> {
        self.run(None, 0, None).map(|(u, _)| u)
    }

    /// `N u` at every node. `step` labels a divergence error.
    pub fn apply(&self, u: &[Field<T>], step: usize) -> Result<Vec<Field<T>>> {
        self.run(Some(u), step, None).map(|(out, _)| out)
    }

    /// `N u` together with its evolution norm, sharing the transforms.
    pub fn apply_measured(
        &self,
        u: Option<&[Field<T>]>,
        step: usize,
        norm: &EvolutionNorm<T>,
    ) -> Result<(Vec<Field<T>>, T)> {
        let (out, samples) = self.run(u, step, Some(norm))?;
        Ok((out, time_norm(&samples, norm.q)?))
    }

    fn run(
        &self,
        u: Option<&[Field<T>]>,
        step: usize,
        norm: Option<&EvolutionNorm<T>>,
    ) -> Result<(Vec<Field<T>>, Vec<(T, T)>)> {
        let forcing = match u {
            Some(u) if !self.spec.lambda().is_zero() => {
                if u.len() != self.times.len() {
                    return Err(Error::DimensionMismatch {
                        expected: self.times.len(),
                        got: u.len(),
                    });
                }
                for field in u {
                    self.prop.grid().check_same(field.grid())?;
                }
                Some(u)
            }
            _ => None,
        };
        let zero = Complex::new(T::zero(), T::zero());
        let len = self.f_hat.coefficients().len();
        let mut acc = vec![zero; len];
        let mut prev: Option<Vec<Complex<T>>> = None;
        let half_dt = self.dt / T::lit(2.0);
        let mut out = Vec::with_capacity(self.times.len());
        let mut samples = Vec::new();
        for (j, &t) in self.times.iter().enumerate() {
            if let Some(u) = forcing {
                let mut g = forward_transform_owned(evaluate_nonlinearity(&u[j], &self.spec)).into_coefficients();
                self.prop.evolve_in_place(&mut g, -t);
                if let Some(p) = &prev {
                    for ((a, x), y) in acc.iter_mut().zip(p).zip(&g) {
                        *a += (x + y) * half_dt;
                    }
                }
                prev = Some(g);
            }
            let minus_i = Complex::new(T::zero(), -T::one());
            let mut coeffs: Vec<Complex<T>> = self
                .f_hat
                .coefficients()
                .iter()
                .zip(&acc)
                .map(|(&c, &s)| c + minus_i * s)
                .collect();
            self.prop.evolve_in_place(&mut coeffs, t);
            let spec = Spectrum::from_parts(self.f_hat.grid().clone(), coeffs);
            if let Some(norm) = norm {
                samples.push((t, norm.spatial_from_spectrum(spec.clone())?));
            }
            let field = inverse_transform_owned(spec);
            self.guard_field(&field, step, j)?;
            out.push(field);
        }
        Ok((out, samples))
    }

    fn guard_field(&self, field: &Field<T>, step: usize, node: usize) -> Result<()> {
        let sup = field.max_abs();
        if !sup.is_finite() {
            return Err(Error::Divergence {
                step,
                reason: format!("non-finite value at time node {node}"),
            });
        }
        if sup > self.guard {
            return Err(Error::Divergence {
                step,
                reason: format!(
                    "sup norm {:e} exceeds {BLOWUP_FACTOR:e} times the data sup at time node {node}",
                    sup.to_f64_lossy()
                ),
            });
        }
        Ok(())
    }
}

/// One application of the Duhamel map to the node values `u`.
pub fn duhamel_map<T: Real>(
    u: &[Field<T>],
    f: &Field<T>,
    symbol: &Symbol<T>,
    spec: &NonlinearSpec<T>,
    times: &[T],
) -> Result<Vec<Field<T>>> {
    Duhamel::new(f, symbol, spec, times)?.apply(u, 0)
}
