//! Power nonlinearities `F_p(u)`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::grid::Field;
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NonlinearForm {
    /// `lambda |u|^{p-1} u`, gauge invariant.
    Preserving,
    /// `lambda |u|^p`.
    Plain,
}

/// `F_p` with growth exponent `p > 1` and sign `lambda`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NonlinearSpec<T> {
    p: T,
    form: NonlinearForm,
    lambda: T,
}

impl<T: Real> NonlinearSpec<T> {
    /// `lambda` must be `+1` or `-1`.
    pub fn new(p: T, form: NonlinearForm, lambda: T) -> Result<Self> {
        if !(p > T::one()) || !p.is_finite() {
            return Err(Error::InvalidExponents(format!(
                "growth exponent p = {p} must exceed 1"
            )));
        }
        if lambda.abs() != T::one() {
            return Err(Error::InvalidData(format!("lambda = {lambda} must be +1 or -1")));
        }
        Ok(Self { p, form, lambda })
    }

    /// The identically vanishing nonlinearity (`lambda = 0`), under which the
    /// Duhamel map reduces to the linear flow.
    pub fn vanishing(p: T, form: NonlinearForm) -> Result<Self> {
        let mut spec = Self::new(p, form, T::one())?;
        spec.lambda = T::zero();
        Ok(spec)
    }

    pub fn p(&self) -> T {
        self.p
    }

    pub fn form(&self) -> NonlinearForm {
        self.form
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    #[inline]
    pub fn eval(&self, u: Complex<T>) -> Complex<T> {
        let a = u.norm();
        if a.is_zero() || self.lambda.is_zero() {
            return Complex::new(T::zero(), T::zero());
        }
        match self.form {
            NonlinearForm::Preserving => u * (self.lambda * a.powf(self.p - T::one())),
            NonlinearForm::Plain => Complex::new(self.lambda * a.powf(self.p), T::zero()),
        }
    }

    /// `|F_p'(u)|`, the size of the complex derivative used in chain-rule
    /// comparisons: `p |u|^{p-1}` for both forms.
    #[inline]
    pub fn derivative_size(&self, u: Complex<T>) -> T {
        self.lambda.abs() * self.p * u.norm().powf(self.p - T::one())
    }
}

/// Pointwise `F_p(u)` in physical space.
pub fn evaluate_nonlinearity<T: Real>(u: &Field<T>, spec: &NonlinearSpec<T>) -> Field<T> {
    let values = u.values().iter().map(|&z| spec.eval(z)).collect();
    Field::from_parts(u.grid().clone(), values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridSpec;

    #[test]
    fn construction_rules() {
        assert!(NonlinearSpec::new(1.0, NonlinearForm::Plain, 1.0).is_err());
        assert!(NonlinearSpec::new(3.0, NonlinearForm::Plain, 0.5).is_err());
        assert!(NonlinearSpec::new(3.0, NonlinearForm::Plain, -1.0).is_ok());
        assert_eq!(
            NonlinearSpec::vanishing(3.0, NonlinearForm::Plain).unwrap().lambda(),
            0.0
        );
    }

    #[test]
    fn zero_maps_to_zero() {
        let g = GridSpec::<f64>::new(1, 1, 4.0, 16).unwrap();
        for form in [NonlinearForm::Preserving, NonlinearForm::Plain] {
            let s = NonlinearSpec::new(2.5, form, 1.0).unwrap();
            let out = evaluate_nonlinearity(&Field::zeros(g.clone()), &s);
            assert_eq!(out.max_abs(), 0.0);
        }
    }

    #[test]
    fn modulus_is_power() {
        let u = Complex::new(0.3f64, -1.2);
        for form in [NonlinearForm::Preserving, NonlinearForm::Plain] {
            for lambda in [1.0, -1.0] {
                let s = NonlinearSpec::new(3.0, form, lambda).unwrap();
                assert!((s.eval(u).norm() - u.norm().powi(3)).abs() < 1e-14);
            }
        }
        let s = NonlinearSpec::new(3.0, NonlinearForm::Preserving, -1.0).unwrap();
        let w = s.eval(u) / u;
        assert!(w.im.abs() < 1e-15 && w.re < 0.0);
    }
}
