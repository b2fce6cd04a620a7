//! Numerical Hessian rank probes for symbols.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::sphere::sphere_points;
use crate::symbol::Symbol;

/// Base finite-difference step relative to `|zeta|`. The Hessian is the
/// Richardson combination of steps `h` and `2h`, which removes the `O(h^2)`
/// term; at `h = 1e-3` the residual error is near `1e-10`, while a plain
/// central difference at `1e-4` carries round-off of order `eps / h^2`,
/// about the rank threshold itself.
pub const RELATIVE_STEP: f64 = 1e-3;
/// Singular values below `RANK_THRESHOLD * sigma_max` count as zero.
pub const RANK_THRESHOLD: f64 = 1e-8;
/// Relative disagreement between step `h` and `2h` Hessians that triggers a
/// smoothness warning; smooth symbols sit near `h^2`.
pub const CONSISTENCY_TOLERANCE: f64 = 1e-3;
pub const DEFAULT_POINTS: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub enum ProbeMode {
    /// Hessian in all `d` variables on the unit sphere.
    Full,
    /// Hessian in `xi` only, with the last `eta.len()` variables frozen.
    Frozen { eta: Vec<f64> },
}

#[derive(Clone, Debug)]
pub struct RankProbe {
    /// Differentiation variables at each probe point.
    pub points: Vec<Vec<f64>>,
    /// Singular values per point, sorted descending.
    pub singular_values: Vec<Vec<f64>>,
    pub ranks: Vec<usize>,
    pub min_rank: usize,
    pub declared: usize,
    /// Points whose measured rank is below the declared rank.
    pub violations: usize,
    pub smoothness_warning: bool,
    /// Worst relative step-`h` versus step-`2h` disagreement.
    pub max_inconsistency: f64,
}

/// Richardson-extrapolated Hessian `(4 H_h - H_{2h}) / 3`.
pub fn extrapolated_hessian(
    f: &dyn Fn(&[f64]) -> f64,
    z: &[f64],
    h: f64,
) -> (DMatrix<f64>, DMatrix<f64>, DMatrix<f64>) {
    let fine = numeric_hessian(f, z, h);
    let coarse = numeric_hessian(f, z, 2.0 * h);
    let combined = (&fine * 4.0 - &coarse) / 3.0;
    (combined, fine, coarse)
}

/// Central-difference Hessian with step `h`.
pub fn numeric_hessian(f: &dyn Fn(&[f64]) -> f64, z: &[f64], h: f64) -> DMatrix<f64> {
    let n = z.len();
    let mut p = z.to_vec();
    let mut eval = |shift: &[(usize, f64)]| {
        for &(i, s) in shift {
            p[i] += s;
        }
        let v = f(&p);
        p.copy_from_slice(z);
        v
    };
    let f0 = eval(&[]);
    let mut hm = DMatrix::zeros(n, n);
    for i in 0..n {
        let fp = eval(&[(i, h)]);
        let fm = eval(&[(i, -h)]);
        hm[(i, i)] = (fp - 2.0 * f0 + fm) / (h * h);
        for j in 0..i {
            let v = (eval(&[(i, h), (j, h)]) - eval(&[(i, h), (j, -h)]) - eval(&[(i, -h), (j, h)])
                + eval(&[(i, -h), (j, -h)]))
                / (4.0 * h * h);
            hm[(i, j)] = v;
            hm[(j, i)] = v;
        }
    }
    hm
}

/// Singular values, descending, and the numerical rank.
pub fn numeric_rank(m: &DMatrix<f64>) -> (Vec<f64>, usize) {
    let mut sv: Vec<f64> = m.clone().singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let top = sv.first().copied().unwrap_or(0.0);
    let rank = sv.iter().filter(|&&s| s > RANK_THRESHOLD * top).count();
    (sv, rank)
}

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |acc, v| acc.max(v.abs()))
}

/// Default probe points: the unit sphere in the differentiation variables
/// for [`ProbeMode::Full`]; radii spread over `[1/2, 3/2]` for frozen `eta`.
pub fn default_points(dim: usize, mode: &ProbeMode, count: usize) -> Vec<Vec<f64>> {
    match mode {
        ProbeMode::Full => sphere_points(dim, count),
        ProbeMode::Frozen { eta } => {
            let dx = dim - eta.len();
            sphere_points::<f64>(dx, count)
                .into_iter()
                .enumerate()
                .map(|(i, w)| {
                    let rho = 0.5 + i as f64 / (count.max(2) - 1) as f64;
                    w.into_iter().map(|c| c * rho).collect()
                })
                .collect()
        }
    }
}

/// Probes the Hessian rank at [`DEFAULT_POINTS`] quasi-uniform points.
pub fn probe_hessian_rank(symbol: &Symbol<f64>, dim: usize, mode: &ProbeMode) -> Result<RankProbe> {
    let points = default_points(dim, mode, DEFAULT_POINTS);
    probe_hessian_rank_at(symbol, dim, mode, &points)
}

/// Probes the Hessian rank at caller-supplied points (differentiation
/// variables only).
pub fn probe_hessian_rank_at(
    symbol: &Symbol<f64>,
    dim: usize,
    mode: &ProbeMode,
    points: &[Vec<f64>],
) -> Result<RankProbe> {
    let eta: &[f64] = match mode {
        ProbeMode::Full => &[],
        ProbeMode::Frozen { eta } => {
            if eta.is_empty() || eta.len() >= dim {
                return Err(Error::DimensionMismatch {
                    expected: dim - 1,
                    got: eta.len(),
                });
            }
            let r = eta.iter().map(|v| v * v).sum::<f64>().sqrt();
            if r > 2.0 {
                return Err(Error::FrozenFrequency(r));
            }
            eta
        }
    };
    let nvars = dim - eta.len();
    let declared = match mode {
        ProbeMode::Full => symbol.hessian_rank(),
        ProbeMode::Frozen { eta } => symbol.frozen_rank(eta.len()),
    };
    let f = |xi: &[f64]| {
        let mut z = xi.to_vec();
        z.extend_from_slice(eta);
        symbol.eval(&z)
    };
    let mut probe = RankProbe {
        points: Vec::with_capacity(points.len()),
        singular_values: Vec::with_capacity(points.len()),
        ranks: Vec::with_capacity(points.len()),
        min_rank: usize::MAX,
        declared,
        violations: 0,
        smoothness_warning: false,
        max_inconsistency: 0.0,
    };
    for p in points {
        if p.len() != nvars {
            return Err(Error::DimensionMismatch {
                expected: nvars,
                got: p.len(),
            });
        }
        let scale = p.iter().chain(eta).map(|v| v * v).sum::<f64>().sqrt();
        let h = RELATIVE_STEP * scale;
        let (hess, fine, coarse) = extrapolated_hessian(&f, p, h);
        let inconsistency = max_abs(&(&fine - &coarse)) / max_abs(&fine).max(f64::MIN_POSITIVE);
        probe.max_inconsistency = probe.max_inconsistency.max(inconsistency);
        let (sv, rank) = numeric_rank(&hess);
        probe.min_rank = probe.min_rank.min(rank);
        if rank < declared {
            probe.violations += 1;
        }
        probe.points.push(p.clone());
        probe.singular_values.push(sv);
        probe.ranks.push(rank);
    }
    probe.smoothness_warning = probe.max_inconsistency > CONSISTENCY_TOLERANCE;
    if probe.points.is_empty() {
        probe.min_rank = 0;
    }
    Ok(probe)
}

/// Exact Hessian of `(|xi|^2 + |eta|^2)^2`: `4 |z|^2 I + 8 z z^T`.
pub fn biharmonic_hessian(z: &[f64]) -> DMatrix<f64> {
    let n = z.len();
    let r2: f64 = z.iter().map(|v| v * v).sum();
    DMatrix::from_fn(n, n, |i, j| 8.0 * z[i] * z[j] + if i == j { 4.0 * r2 } else { 0.0 })
}
