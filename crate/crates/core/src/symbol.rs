//! Homogeneous Fourier multipliers `Phi(xi, eta)`.

use std::fmt;
use std::sync::Arc;

use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq)]
pub enum SymbolKind {
    /// `|zeta|^m`, `m != 1`.
    FractionalPower,
    /// `|zeta|`.
    Wave,
    /// `(|xi|^2 + |eta|^2)^2`.
    Biharmonic,
    Custom(String),
}

type Evaluator<T> = Arc<dyn Fn(&[T]) -> T + Send + Sync>;

/// Symbol of a dispersive multiplier with its declared Hessian rank data.
///
/// `Phi(0)` is defined as `0`: homogeneous symbols of positive degree extend
/// continuously to the origin.
#[derive(Clone)]
pub struct Symbol<T: Real> {
    kind: SymbolKind,
    degree: T,
    hessian_rank: usize,
    eval: Evaluator<T>,
}

impl<T: Real> fmt::Debug for Symbol<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Symbol")
            .field("kind", &self.kind)
            .field("degree", &self.degree)
            .field("hessian_rank", &self.hessian_rank)
            .finish()
    }
}

fn norm_sqr<T: Real>(zeta: &[T]) -> T {
    zeta.iter().fold(T::zero(), |acc, &z| acc + z * z)
}

impl<T: Real> Symbol<T> {
    /// `|zeta|^m` in dimension `dim`; rank `d` unless `m = 1`, where the
    /// radial direction is flat and the rank drops to `d - 1`.
    pub fn fractional_power(degree: T, dim: usize) -> Self {
        if degree == T::one() {
            return Self::wave(dim);
        }
        let half = degree / T::lit(2.0);
        Self {
            kind: SymbolKind::FractionalPower,
            degree,
            hessian_rank: dim,
            eval: Arc::new(move |z: &[T]| norm_sqr(z).powf(half)),
        }
    }

    pub fn schrodinger(dim: usize) -> Self {
        let mut s = Self::fractional_power(T::lit(2.0), dim);
        s.eval = Arc::new(|z: &[T]| norm_sqr(z));
        s
    }

    pub fn wave(dim: usize) -> Self {
        Self {
            kind: SymbolKind::Wave,
            degree: T::one(),
            hessian_rank: dim.saturating_sub(1),
            eval: Arc::new(|z: &[T]| norm_sqr(z).sqrt()),
        }
    }

    pub fn biharmonic(dim: usize) -> Self {
        Self {
            kind: SymbolKind::Biharmonic,
            degree: T::lit(4.0),
            hessian_rank: dim,
            eval: Arc::new(|z: &[T]| {
                let r2 = norm_sqr(z);
                r2 * r2
            }),
        }
    }

    pub fn custom(
        name: impl Into<String>,
        degree: T,
        hessian_rank: usize,
        eval: impl Fn(&[T]) -> T + Send + Sync + 'static,
    ) -> Self {
        Self {
            kind: SymbolKind::Custom(name.into()),
            degree,
            hessian_rank,
            eval: Arc::new(eval),
        }
    }

    pub fn kind(&self) -> &SymbolKind {
        &self.kind
    }

    pub fn degree(&self) -> T {
        self.degree
    }

    /// Declared lower bound `M` on the Hessian rank away from the origin.
    pub fn hessian_rank(&self) -> usize {
        self.hessian_rank
    }

    /// Declared rank with `eta` frozen: `M - k`.
    pub fn frozen_rank(&self, split: usize) -> usize {
        self.hessian_rank.saturating_sub(split)
    }

    /// Upper bound on `|grad Phi|` over the annulus `1/2 <= |zeta| <= 2`,
    /// taken as `m 2^{m-1}` (exact for `|zeta|^m`).
    pub fn speed_bound(&self) -> T {
        self.degree * T::lit(2.0).powf(self.degree - T::one())
    }

    pub fn eval(&self, zeta: &[T]) -> T {
        if zeta.iter().all(|z| z.is_zero()) {
            return T::zero();
        }
        (self.eval)(zeta)
    }

    /// Worst relative homogeneity defect `|Phi(l z) - l^m Phi(z)| / |l^m Phi(z)|`
    /// over the given unit vectors and `l in {1/2, 2}`.
    pub fn homogeneity_defect(&self, unit_points: &[Vec<T>]) -> T {
        let mut worst = T::zero();
        for z in unit_points {
            let base = self.eval(z);
            for lambda in [T::lit(0.5), T::lit(2.0)] {
                let scaled: Vec<T> = z.iter().map(|&c| c * lambda).collect();
                let expect = lambda.powf(self.degree) * base;
                let err = (self.eval(&scaled) - expect).abs() / expect.abs().max(T::min_positive_value());
                worst = worst.max(err);
            }
        }
        worst
    }

    /// `(min, max)` of `|Phi|` over the given unit vectors.
    pub fn sphere_bounds(&self, unit_points: &[Vec<T>]) -> (T, T) {
        unit_points.iter().fold((T::infinity(), T::zero()), |(lo, hi), z| {
            let v = self.eval(z).abs();
            (lo.min(v), hi.max(v))
        })
    }
}
