//! Discrete mixed Lebesgue and Sobolev norms on the `(x, y)` split.
//!
//! Exponent `infinity` is realized as a lattice maximum, which is a lower
//! bound for the continuum supremum.

use crate::error::{Error, Result};
use crate::fourier::{forward_transform, inverse_transform};
use crate::grid::{Field, Spectrum};
use crate::scalar::Real;

/// Riemann-sum `l^p` norm of non-negative values with cell weight `w`.
/// Values are normalized by their maximum first so large exponents do not
/// overflow.
fn weighted_lp<T: Real>(values: impl Iterator<Item = T> + Clone, p: T, w: T) -> T {
    let peak = values.clone().fold(T::zero(), T::max);
    if p.is_infinite() || peak.is_zero() {
        return peak;
    }
    let sum = values.fold(T::zero(), |acc, v| acc + (v / peak).powf(p));
    peak * (sum * w).powf(p.recip())
}

fn check_exponent<T: Real>(p: T, name: &str) -> Result<()> {
    if p >= T::one() {
        Ok(())
    } else {
        Err(Error::InvalidExponents(format!("{name} = {p} must be >= 1")))
    }
}

/// `||f||_{L^r_x L^{r_tilde}_y}` with the grid's own split: inner norm over
/// the last `k` axes, outer over the first `d - k`.
pub fn mixed_space_norm<T: Real>(f: &Field<T>, r: T, r_tilde: T) -> Result<T> {
    check_exponent(r, "r")?;
    check_exponent(r_tilde, "r_tilde")?;
    let grid = f.grid();
    let h = grid.spacing();
    let wy = h.powi(grid.split() as i32);
    let wx = h.powi(grid.x_axes() as i32);
    let inner: Vec<T> = f
        .values()
        .chunks(grid.y_len())
        .map(|slice| weighted_lp(slice.iter().map(|z| z.norm()), r_tilde, wy))
        .collect();
    Ok(weighted_lp(inner.iter().copied(), r, wx))
}

/// Plain `L^p` norm over all axes.
pub fn lebesgue_norm<T: Real>(f: &Field<T>, p: T) -> Result<T> {
    check_exponent(p, "p")?;
    Ok(weighted_lp(
        f.values().iter().map(|z| z.norm()),
        p,
        f.grid().cell_volume(),
    ))
}

fn radius<T: Real>(zeta: &[T]) -> T {
    zeta.iter().fold(T::zero(), |acc, &z| acc + z * z).sqrt()
}

/// Homogeneous `H-dot^s` norm from coefficients; the zero mode is excluded.
pub fn hdot_norm_spectrum<T: Real>(spectrum: &Spectrum<T>, s: T) -> T {
    let grid = spectrum.grid();
    let mut sum = T::zero();
    let c = spectrum.coefficients();
    grid.for_each_frequency(|flat, zeta| {
        let rho = radius(zeta);
        if rho > T::zero() {
            sum += rho.powf(T::lit(2.0) * s) * c[flat].norm_sqr();
        }
    });
    (sum * grid.box_volume()).sqrt()
}

/// `||f||_{H-dot^s} = || |zeta|^s f-hat ||_{l^2}`, zero mode excluded.
pub fn hdot_norm<T: Real>(f: &Field<T>, s: T) -> T {
    hdot_norm_spectrum(&forward_transform(f), s)
}

/// Applies the inhomogeneous multiplier `(1 + |eta|^2)^{s/2}` acting on the
/// y-block frequencies only.
pub fn bessel_potential_y<T: Real>(f: &Field<T>, s: T) -> Field<T> {
    if s.is_zero() {
        return f.clone();
    }
    let dx = f.grid().x_axes();
    let spec = forward_transform(f).multiply(|zeta| {
        let eta2 = zeta[dx..].iter().fold(T::zero(), |acc, &z| acc + z * z);
        num_complex::Complex::new((T::one() + eta2).powf(s / T::lit(2.0)), T::zero())
    });
    inverse_transform(&spec)
}

/// `||f||_{L^p_x H^s_y} = || <nabla_y>^s f ||_{L^p_x L^2_y}`.
pub fn mixed_sobolev_norm<T: Real>(f: &Field<T>, s: T, p: T) -> Result<T> {
    mixed_space_norm(&bessel_potential_y(f, s), p, T::lit(2.0))
}

/// `||f||_{L^r_x W^{s, r_tilde}_y}` realized as
/// `|| <nabla_y>^s f ||_{L^r_x L^{r_tilde}_y}`.
pub fn mixed_bessel_norm<T: Real>(f: &Field<T>, s: T, r: T, r_tilde: T) -> Result<T> {
    mixed_space_norm(&bessel_potential_y(f, s), r, r_tilde)
}

/// `L^q` norm in time of sampled values: composite trapezoid of `value^q`
/// for finite `q`, maximum for `q = infinity`.
pub fn time_norm<T: Real>(samples: &[(T, T)], q: T) -> Result<T> {
    check_exponent(q, "q")?;
    if samples.windows(2).any(|w| !(w[1].0 > w[0].0)) {
        return Err(Error::InvalidData("sample times must increase strictly".into()));
    }
    if q.is_infinite() {
        return samples
            .iter()
            .map(|&(_, v)| v.abs())
            .reduce(T::max)
            .ok_or_else(|| Error::InsufficientData("no samples".into()));
    }
    if samples.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "{} sample(s); the trapezoid rule needs at least 2",
            samples.len()
        )));
    }
    let peak = samples.iter().fold(T::zero(), |acc, &(_, v)| acc.max(v.abs()));
    if peak.is_zero() {
        return Ok(T::zero());
    }
    let half = T::lit(0.5);
    let integral = samples.windows(2).fold(T::zero(), |acc, w| {
        let a = (w[0].1.abs() / peak).powf(q);
        let b = (w[1].1.abs() / peak).powf(q);
        acc + half * (w[1].0 - w[0].0) * (a + b)
    });
    Ok(peak * integral.powf(q.recip()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridSpec;
    use approx::assert_relative_eq;
    use num_complex::Complex;

    fn gaussian(grid: GridSpec<f64>) -> Field<f64> {
        Field::from_fn(grid, |x| {
            let r2: f64 = x.iter().map(|c| c * c).sum();
            Complex::new((-r2 / 2.0).exp(), 0.0)
        })
        .unwrap()
    }

    #[test]
    fn collapse_of_the_split() {
        let g = GridSpec::new(3, 1, 6.0, 16).unwrap();
        let f = gaussian(g);
        for r in [1.0, 2.0, 3.5, 6.0] {
            assert_relative_eq!(
                mixed_space_norm(&f, r, r).unwrap(),
                lebesgue_norm(&f, r).unwrap(),
                max_relative = 1e-12
            );
        }
        assert_relative_eq!(
            mixed_space_norm(&f, f64::INFINITY, f64::INFINITY).unwrap(),
            1.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn separable_fields_factor() {
        let g = GridSpec::new(2, 1, 6.0, 32).unwrap();
        let a = |x: f64| (-x * x).exp() * (1.0 + 0.5 * x.sin());
        let b = |y: f64| 1.0 / (1.0 + y * y);
        let f = Field::from_fn(g.clone(), |x| Complex::new(a(x[0]) * b(x[1]), 0.0)).unwrap();
        let (r, rt) = (3.0, 1.5);
        let h = g.spacing();
        let norm1 = |vals: Vec<f64>, p: f64| (vals.iter().map(|v| v.abs().powf(p)).sum::<f64>() * h).powf(1.0 / p);
        let xs: Vec<f64> = (0..32).map(|i| a(g.coordinate(i))).collect();
        let ys: Vec<f64> = (0..32).map(|i| b(g.coordinate(i))).collect();
        assert_relative_eq!(
            mixed_space_norm(&f, r, rt).unwrap(),
            norm1(xs, r) * norm1(ys, rt),
            max_relative = 1e-10
        );
    }

    #[test]
    fn l2_matches_plancherel() {
        let g = GridSpec::new(2, 1, 6.0, 32).unwrap();
        let f = gaussian(g);
        let spec = forward_transform(&f);
        assert_relative_eq!(
            mixed_space_norm(&f, 2.0, 2.0).unwrap(),
            spec.l2_norm(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn hdot_of_single_mode() {
        let g = GridSpec::<f64>::new(2, 1, std::f64::consts::PI, 16).unwrap();
        // frequency step is 1, so mode (2, 0) sits at |zeta| = 2
        let f = Field::from_fn(g.clone(), |x| Complex::from_polar(0.7, 2.0 * x[0])).unwrap();
        let l2 = f.l2_norm();
        for s in [-1.5, 0.0, 0.5, 2.0] {
            assert_relative_eq!(hdot_norm(&f, s), 2f64.powf(s) * l2, max_relative = 1e-12);
        }
    }

    #[test]
    fn hdot_zero_is_l2_without_mean() {
        let g = GridSpec::<f64>::new(1, 1, 5.0, 64).unwrap();
        let f = Field::from_fn(g, |x| Complex::new((0.6 * std::f64::consts::PI * x[0]).sin(), 0.0)).unwrap();
        assert_relative_eq!(hdot_norm(&f, 0.0), f.l2_norm(), max_relative = 1e-12);
    }

    #[test]
    fn time_norm_cases() {
        let c = 1.7;
        let samples: Vec<(f64, f64)> = (0..=10).map(|i| (0.3 * i as f64, c)).collect();
        assert_relative_eq!(
            time_norm(&samples, 4.0).unwrap(),
            c * 3f64.powf(0.25),
            max_relative = 1e-13
        );
        let ramp: Vec<(f64, f64)> = (0..5).map(|i| (i as f64, (i as f64 - 2.0).abs())).collect();
        assert_eq!(time_norm(&ramp, f64::INFINITY).unwrap(), 2.0);
        assert!(matches!(time_norm(&[(0.0, 1.0)], 2.0), Err(Error::InsufficientData(_))));
        assert!(time_norm(&[(0.0, 1.0), (0.0, 1.0)], 2.0).is_err());
    }

    #[test]
    fn linear_ramp_time_norm() {
        let samples: Vec<(f64, f64)> = (0..=1000)
            .map(|i| {
                let t = i as f64 / 1000.0;
                (t, t)
            })
            .collect();
        let got = time_norm(&samples, 2.0).unwrap();
        assert_relative_eq!(got, 1.0 / 3f64.sqrt(), max_relative = 1e-4);
    }

    #[test]
    fn bessel_potential_only_sees_eta() {
        let g = GridSpec::<f64>::new(2, 1, std::f64::consts::PI, 16).unwrap();
        // pure x-oscillation: eta = 0 so the multiplier is 1
        let f = Field::from_fn(g.clone(), |x| Complex::from_polar(1.0, 3.0 * x[0])).unwrap();
        let out = bessel_potential_y(&f, 1.0);
        assert!(out.max_abs_diff(&f).unwrap() < 1e-12);
        // pure y-oscillation at |eta| = 3: factor sqrt(10)
        let f = Field::from_fn(g, |x| Complex::from_polar(1.0, 3.0 * x[1])).unwrap();
        let out = bessel_potential_y(&f, 1.0);
        assert_relative_eq!(out.max_abs(), 10f64.sqrt(), max_relative = 1e-12);
    }
}
