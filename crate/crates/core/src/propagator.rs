//! The unitary flow `e^{it Phi(D)}`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::fourier::{forward_transform, inverse_transform};
use crate::grid::{Field, GridSpec, Spectrum};
use crate::scalar::Real;
use crate::symbol::Symbol;

/// A symbol tabulated on one grid's frequency lattice.
#[derive(Clone, Debug)]
pub struct Propagator<T: Real> {
    grid: GridSpec<T>,
    symbol: Symbol<T>,
    table: Vec<T>,
}

impl<T: Real> Propagator<T> {
    pub fn new(grid: &GridSpec<T>, symbol: &Symbol<T>) -> Result<Self> {
        let mut table = Vec::with_capacity(grid.len());
        let mut bad = None;
        grid.for_each_frequency(|_, zeta| {
            let v = symbol.eval(zeta);
            if !v.is_finite() && bad.is_none() {
                bad = Some((zeta.iter().map(|z| z.to_f64_lossy()).collect(), v.to_f64_lossy()));
            }
            table.push(v);
        });
        if let Some((frequency, value)) = bad {
            return Err(Error::SymbolEvaluation { frequency, value });
        }
        Ok(Self {
            grid: grid.clone(),
            symbol: symbol.clone(),
            table,
        })
    }

    pub fn grid(&self) -> &GridSpec<T> {
        &self.grid
    }

    pub fn symbol(&self) -> &Symbol<T> {
        &self.symbol
    }

    /// `Phi` at every lattice frequency, storage order.
    pub fn table(&self) -> &[T] {
        &self.table
    }

    /// Multiplies the coefficients in place by `e^{it Phi}`.
    pub fn evolve_in_place(&self, coefficients: &mut [Complex<T>], t: T) {
        for (c, &phi) in coefficients.iter_mut().zip(&self.table) {
            let (s, co) = (t * phi).sin_cos();
            *c *= Complex::new(co, s);
        }
    }

    pub fn apply_spectrum(&self, spectrum: &Spectrum<T>, t: T) -> Result<Spectrum<T>> {
        self.grid.check_same(spectrum.grid())?;
        let mut out = spectrum.clone();
        self.evolve_in_place(out.coefficients_mut(), t);
        Ok(out)
    }

    pub fn apply(&self, f: &Field<T>, t: T) -> Result<Field<T>> {
        self.grid.check_same(f.grid())?;
        if !t.is_finite() {
            return Err(Error::InvalidData(format!("time {t} is not finite")));
        }
        let spec = self.apply_spectrum(&forward_transform(f), t)?;
        Ok(inverse_transform(&spec))
    }
}

/// One-shot `e^{it Phi(D)} f`. Build a [`Propagator`] when applying the same
/// symbol repeatedly.
pub fn apply_propagator<T: Real>(f: &Field<T>, symbol: &Symbol<T>, t: T) -> Result<Field<T>> {
    Propagator::new(f.grid(), symbol)?.apply(f, t)
}
