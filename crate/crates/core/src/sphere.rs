//! Deterministic quasi-uniform point sets on the unit sphere `S^{d-1}`.

use crate::scalar::Real;

const PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let mut inv = 1.0 / base as f64;
    let mut out = 0.0;
    let step = inv;
    while i > 0 {
        out += (i % base) as f64 * inv;
        i /= base;
        inv *= step;
    }
    out
}

/// `count` points on the unit sphere in `R^dim`.
///
/// `dim = 1` alternates `+1, -1`; `dim = 2` uses equally spaced angles;
/// `dim = 3` a Fibonacci lattice; higher dimensions normalize Halton points
/// pushed through a Box-Muller map.
pub fn sphere_points<T: Real>(dim: usize, count: usize) -> Vec<Vec<T>> {
    let tau = 2.0 * std::f64::consts::PI;
    let raw: Vec<Vec<f64>> = match dim {
        0 => Vec::new(),
        1 => (0..count).map(|i| vec![if i % 2 == 0 { 1.0 } else { -1.0 }]).collect(),
        2 => (0..count)
            .map(|i| {
                let a = tau * (i as f64 + 0.5) / count as f64;
                vec![a.cos(), a.sin()]
            })
            .collect(),
        3 => {
            let golden = (1.0 + 5f64.sqrt()) / 2.0;
            (0..count)
                .map(|i| {
                    let z = 1.0 - 2.0 * (i as f64 + 0.5) / count as f64;
                    let rho = (1.0 - z * z).max(0.0).sqrt();
                    let a = tau * i as f64 / golden;
                    vec![rho * a.cos(), rho * a.sin(), z]
                })
                .collect()
        }
        _ => (1..=count as u64)
            .map(|i| {
                let mut v = Vec::with_capacity(dim);
                let mut axis = 0;
                while v.len() < dim {
                    let u1 = radical_inverse(i, PRIMES[axis % PRIMES.len()]).max(1e-12);
                    let u2 = radical_inverse(i, PRIMES[(axis + 1) % PRIMES.len()]);
                    let r = (-2.0 * u1.ln()).sqrt();
                    v.push(r * (tau * u2).cos());
                    if v.len() < dim {
                        v.push(r * (tau * u2).sin());
                    }
                    axis += 2;
                }
                let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
                v.into_iter().map(|c| c / n).collect()
            })
            .collect(),
    };
    raw.into_iter().map(|p| p.into_iter().map(T::lit).collect()).collect()
}
