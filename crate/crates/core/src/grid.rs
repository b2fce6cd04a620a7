//! Periodized sampling lattice and the complex fields that live on it.
//!
//! The box is `[-L, L)^d` with `n` points per axis, stored row-major with
//! axis 0 slowest. The first `d - k` axes form the x-block and the last `k`
//! axes the y-block, so every y-slice of a field is one contiguous run of
//! `n^k` values.
//!
//! Normalization: the forward transform carries `1/n^d` and the inverse
//! carries `1`, so the discrete Parseval identity reads
//! `h^d * sum |f|^2 = (2L)^d * sum |F|^2`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone)]
struct Plans<T: Real> {
    forward: Arc<dyn Fft<T>>,
    inverse: Arc<dyn Fft<T>>,
}

/// Uniform lattice on `[-L, L)^d` with an `(x, y)` split of the axes.
///
/// FFT plans are built once and shared by clones; `rustfft` plans are
/// immutable and every transform allocates its own scratch, so concurrent
/// transforms of distinct fields are safe.
#[derive(Clone)]
pub struct GridSpec<T: Real> {
    dim: usize,
    split: usize,
    half_length: T,
    points: usize,
    plans: Plans<T>,
}

impl<T: Real> fmt::Debug for GridSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GridSpec")
            .field("dim", &self.dim)
            .field("split", &self.split)
            .field("half_length", &self.half_length)
            .field("points", &self.points)
            .finish()
    }
}

impl<T: Real> PartialEq for GridSpec<T> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.split == other.split
            && self.half_length == other.half_length
            && self.points == other.points
    }
}

impl<T: Real> GridSpec<T> {
    pub fn new(dim: usize, split: usize, half_length: T, points: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidGrid("dimension must be positive".into()));
        }
        if split == 0 || split > dim {
            return Err(Error::InvalidGrid(format!(
                "split k = {split} must satisfy 1 <= k <= d = {dim}"
            )));
        }
        if points < 8 || !points.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "point count {points} must be a power of two >= 8"
            )));
        }
        if !(half_length > T::zero() && half_length.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "half-length {half_length} must be positive and finite"
            )));
        }
        if points.checked_pow(dim as u32).is_none() {
            return Err(Error::InvalidGrid("n^d overflows".into()));
        }
        let mut planner = FftPlanner::new();
        let plans = Plans {
            forward: planner.plan_fft_forward(points),
            inverse: planner.plan_fft_inverse(points),
        };
        Ok(Self {
            dim,
            split,
            half_length,
            points,
            plans,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of y-axes `k`.
    pub fn split(&self) -> usize {
        self.split
    }

    pub fn x_axes(&self) -> usize {
        self.dim - self.split
    }

    pub fn half_length(&self) -> T {
        self.half_length
    }

    pub fn points(&self) -> usize {
        self.points
    }

    /// Total number of lattice sites `n^d`.
    pub fn len(&self) -> usize {
        self.points.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of values in one y-slice, `n^k`.
    pub fn y_len(&self) -> usize {
        self.points.pow(self.split as u32)
    }

    pub fn spacing(&self) -> T {
        T::lit(2.0) * self.half_length / T::from_usize_lossy(self.points)
    }

    /// Spacing of the frequency lattice, `pi / L`.
    pub fn frequency_step(&self) -> T {
        T::PI() / self.half_length
    }

    /// Largest per-axis frequency magnitude, `pi n / (2 L)`.
    pub fn nyquist(&self) -> T {
        self.frequency_step() * T::from_usize_lossy(self.points / 2)
    }

    /// Largest frequency magnitude anywhere on the lattice.
    pub fn max_frequency(&self) -> T {
        self.nyquist() * T::from_usize_lossy(self.dim).sqrt()
    }

    /// Physical coordinate of index `i` along any axis, `-L + i h`.
    pub fn coordinate(&self, i: usize) -> T {
        -self.half_length + T::from_usize_lossy(i) * self.spacing()
    }

    /// Signed mode number of FFT index `i`: `i` below `n/2`, `i - n` above.
    pub fn mode(&self, i: usize) -> i64 {
        let n = self.points as i64;
        let i = i as i64;
        if i < n / 2 {
            i
        } else {
            i - n
        }
    }

    pub fn axis_frequency(&self, i: usize) -> T {
        T::lit(self.mode(i) as f64) * self.frequency_step()
    }

    /// Index of the lattice site holding `X = 0`.
    pub fn origin_index(&self) -> usize {
        self.points / 2
    }

    /// Writes the per-axis indices of flat index `flat` into `out`.
    pub fn unflatten(&self, mut flat: usize, out: &mut [usize]) {
        debug_assert_eq!(out.len(), self.dim);
        for slot in out.iter_mut().rev() {
            *slot = flat % self.points;
            flat /= self.points;
        }
    }

    pub fn flatten(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.points + i)
    }

    /// Lattice frequency vector at flat FFT index `flat`.
    pub fn frequency_at(&self, flat: usize, out: &mut [T]) {
        let mut idx = vec![0; self.dim];
        self.unflatten(flat, &mut idx);
        for (o, &i) in out.iter_mut().zip(&idx) {
            *o = self.axis_frequency(i);
        }
    }

    /// Physical position at flat index `flat`.
    pub fn position_at(&self, flat: usize, out: &mut [T]) {
        let mut idx = vec![0; self.dim];
        self.unflatten(flat, &mut idx);
        for (o, &i) in out.iter_mut().zip(&idx) {
            *o = self.coordinate(i);
        }
    }

    /// Calls `visit(flat, zeta)` for every lattice frequency in storage order.
    pub fn for_each_frequency(&self, mut visit: impl FnMut(usize, &[T])) {
        let axis: Vec<T> = (0..self.points).map(|i| self.axis_frequency(i)).collect();
        self.for_each_tuple(&axis, &mut visit);
    }

    /// Calls `visit(flat, x)` for every lattice position in storage order.
    pub fn for_each_position(&self, mut visit: impl FnMut(usize, &[T])) {
        let axis: Vec<T> = (0..self.points).map(|i| self.coordinate(i)).collect();
        self.for_each_tuple(&axis, &mut visit);
    }

    fn for_each_tuple(&self, axis: &[T], visit: &mut impl FnMut(usize, &[T])) {
        let mut idx = vec![0usize; self.dim];
        let mut point: Vec<T> = vec![axis[0]; self.dim];
        for flat in 0..self.len() {
            visit(flat, &point);
            // odometer increment, last axis fastest
            for a in (0..self.dim).rev() {
                idx[a] += 1;
                if idx[a] < self.points {
                    point[a] = axis[idx[a]];
                    break;
                }
                idx[a] = 0;
                point[a] = axis[0];
            }
        }
    }

    /// Cell volume `h^d`.
    pub fn cell_volume(&self) -> T {
        self.spacing().powi(self.dim as i32)
    }

    /// Box volume `(2L)^d`.
    pub fn box_volume(&self) -> T {
        (T::lit(2.0) * self.half_length).powi(self.dim as i32)
    }

    /// Same lattice with half-length `L'` (and hence spacing scaled by `L'/L`).
    pub fn with_half_length(&self, half_length: T) -> Result<Self> {
        if !(half_length > T::zero() && half_length.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "half-length {half_length} must be positive and finite"
            )));
        }
        Ok(Self {
            half_length,
            ..self.clone()
        })
    }

    /// Same lattice with a different `(x, y)` split.
    pub fn with_split(&self, split: usize) -> Result<Self> {
        if split == 0 || split > self.dim {
            return Err(Error::InvalidGrid(format!(
                "split k = {split} must satisfy 1 <= k <= d = {}",
                self.dim
            )));
        }
        Ok(Self { split, ..self.clone() })
    }

    /// Lattice on the x-block alone (`d - k` axes, same `L` and `n`). The
    /// block grid treats all of its axes as its own y-block.
    pub fn x_block(&self) -> Result<Self> {
        let dx = self.x_axes();
        if dx == 0 {
            return Err(Error::InvalidGrid("x-block is empty (k = d)".into()));
        }
        Ok(Self {
            dim: dx,
            split: dx,
            ..self.clone()
        })
    }

    pub(crate) fn forward_plan(&self) -> &Arc<dyn Fft<T>> {
        &self.plans.forward
    }

    pub(crate) fn inverse_plan(&self) -> &Arc<dyn Fft<T>> {
        &self.plans.inverse
    }

    pub(crate) fn check_same(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        if self.points != other.points {
            return Err(Error::DimensionMismatch {
                expected: self.points,
                got: other.points,
            });
        }
        if self != other {
            return Err(Error::InvalidGrid(format!("grids differ: {self:?} vs {other:?}")));
        }
        Ok(())
    }
}

fn check_values<T: Real>(grid: &GridSpec<T>, values: &[Complex<T>]) -> Result<()> {
    if values.len() != grid.len() {
        return Err(Error::DimensionMismatch {
            expected: grid.len(),
            got: values.len(),
        });
    }
    if let Some(pos) = values.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::InvalidData(format!("non-finite value at index {pos}")));
    }
    Ok(())
}

/// Complex state sampled on a [`GridSpec`] in physical space.
#[derive(Clone, Debug, PartialEq)]
pub struct Field<T: Real> {
    grid: GridSpec<T>,
    values: Vec<Complex<T>>,
}

impl<T: Real> Field<T> {
    pub fn new(grid: GridSpec<T>, values: Vec<Complex<T>>) -> Result<Self> {
        check_values(&grid, &values)?;
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: GridSpec<T>) -> Self {
        let values = vec![Complex::new(T::zero(), T::zero()); grid.len()];
        Self { grid, values }
    }

    /// Samples `f(X)` at every lattice position.
    pub fn from_fn(grid: GridSpec<T>, mut f: impl FnMut(&[T]) -> Complex<T>) -> Result<Self> {
        let mut values = Vec::with_capacity(grid.len());
        grid.for_each_position(|_, x| values.push(f(x)));
        Self::new(grid, values)
    }

    /// Internal constructor for values already known to be consistent.
    pub(crate) fn from_parts(grid: GridSpec<T>, values: Vec<Complex<T>>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        Self { grid, values }
    }

    pub fn grid(&self) -> &GridSpec<T> {
        &self.grid
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex<T>> {
        self.values
    }

    /// Same values on a different grid with an identical site count.
    pub fn regrid(self, grid: GridSpec<T>) -> Result<Self> {
        if grid.len() != self.values.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                got: self.values.len(),
            });
        }
        Ok(Self {
            grid,
            values: self.values,
        })
    }

    /// Riemann-sum `L^2` norm, `(h^d sum |f|^2)^{1/2}`.
    pub fn l2_norm(&self) -> T {
        let sum = self.values.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr());
        (sum * self.grid.cell_volume()).sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    pub fn scale(&self, factor: T) -> Self {
        let values = self.values.iter().map(|z| z * factor).collect();
        Self::from_parts(self.grid.clone(), values)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.grid.check_same(&other.grid)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Ok(Self::from_parts(self.grid.clone(), values))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.grid.check_same(&other.grid)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(Self::from_parts(self.grid.clone(), values))
    }

    /// Maximum pointwise distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        self.grid.check_same(&other.grid)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .fold(T::zero(), |acc, (a, b)| acc.max((a - b).norm())))
    }
}

/// Discrete Fourier coefficients of a field, in FFT storage order.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum<T: Real> {
    grid: GridSpec<T>,
    coefficients: Vec<Complex<T>>,
}

impl<T: Real> Spectrum<T> {
    pub fn new(grid: GridSpec<T>, coefficients: Vec<Complex<T>>) -> Result<Self> {
        check_values(&grid, &coefficients)?;
        Ok(Self { grid, coefficients })
    }

    /// Builds coefficients from a function of the lattice frequency.
    pub fn from_fn(grid: GridSpec<T>, mut f: impl FnMut(&[T]) -> Complex<T>) -> Result<Self> {
        let mut coefficients = Vec::with_capacity(grid.len());
        grid.for_each_frequency(|_, zeta| coefficients.push(f(zeta)));
        Self::new(grid, coefficients)
    }

    pub(crate) fn from_parts(grid: GridSpec<T>, coefficients: Vec<Complex<T>>) -> Self {
        debug_assert_eq!(coefficients.len(), grid.len());
        Self { grid, coefficients }
    }

    pub fn grid(&self) -> &GridSpec<T> {
        &self.grid
    }

    pub fn coefficients(&self) -> &[Complex<T>] {
        &self.coefficients
    }

    pub fn coefficients_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.coefficients
    }

    pub fn into_coefficients(self) -> Vec<Complex<T>> {
        self.coefficients
    }

    /// `L^2` norm of the underlying field via Parseval.
    pub fn l2_norm(&self) -> T {
        let sum = self.coefficients.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr());
        (sum * self.grid.box_volume()).sqrt()
    }

    /// Multiplies every coefficient by `m(zeta)`.
    pub fn multiply(&self, mut m: impl FnMut(&[T]) -> Complex<T>) -> Self {
        let mut out = self.coefficients.clone();
        self.grid.for_each_frequency(|flat, zeta| out[flat] *= m(zeta));
        Self::from_parts(self.grid.clone(), out)
    }

    /// Multiplies by a real weight table laid out in storage order.
    pub fn multiply_table(&self, table: &[T]) -> Result<Self> {
        if table.len() != self.coefficients.len() {
            return Err(Error::DimensionMismatch {
                expected: self.coefficients.len(),
                got: table.len(),
            });
        }
        let out = self.coefficients.iter().zip(table).map(|(c, &w)| c * w).collect();
        Ok(Self::from_parts(self.grid.clone(), out))
    }
}
