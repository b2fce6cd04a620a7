//! Numerical laboratory for dispersive propagators `e^{it Phi(D)}`.
//!
//! The crate is layered bottom-up:
//!
//! * [`grid`], [`fourier`], [`propagator`], [`littlewood_paley`]: periodic
//!   lattices, discrete transforms, multiplier flows and dyadic projections.
//! * [`norms`], [`admissibility`]: mixed `L^r_x L^{r_tilde}_y` norms and the
//!   exponent arithmetic of anisotropic Strichartz estimates.
//! * [`kernel`]: frequency-localized kernels, decay fits and Hessian probes.
//! * [`strichartz`]: Strichartz quotients of wave packets.
//! * [`solver`]: Duhamel map and Picard iteration for power nonlinearities.
//! * [`dunkl`]: Bessel functions and radial Dunkl kernels.
//!
//! Floating-point code is generic over [`Real`] (`f32`, `f64`); exponent
//! bookkeeping is generic over [`Exact`], which also covers
//! `num_rational::Ratio<i64>`.
//!
//! # Conventions
//!
//! A grid with half-length `L` and `n` points per axis samples `x_j = -L + j h`,
//! `h = 2L/n`, with frequencies `zeta = (pi/L) * mode` in FFT order. The
//! forward transform carries `1/n^d` and the inverse carries `1`, so
//! `h^d sum |f|^2 = (2L)^d sum |F|^2`.

// Negated comparisons are how NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod admissibility;
pub mod dunkl;
pub mod error;
pub mod fourier;
pub mod grid;
pub mod kernel;
pub mod littlewood_paley;
pub mod norms;
pub mod propagator;
pub mod scalar;
pub mod solver;
pub mod sphere;
pub mod strichartz;
pub mod symbol;

pub use error::{Error, Result};
pub use grid::{Field, GridSpec, Spectrum};
pub use num_complex::Complex;
pub use scalar::{Exact, Real};
pub use symbol::{Symbol, SymbolKind};

pub type Grid64 = GridSpec<f64>;
pub type Grid32 = GridSpec<f32>;
pub type Field64 = Field<f64>;
pub type Field32 = Field<f32>;
pub type Spectrum64 = Spectrum<f64>;
pub type Symbol64 = Symbol<f64>;
