//! Panelized Gauss-Legendre quadrature for smooth complex integrands.

use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;

/// Nodes per panel.
pub const PANEL_NODES: usize = 16;

fn reference() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = NonZeroUsize::new(PANEL_NODES).expect("nonzero");
        GaussLegendre::new(n).as_node_weight_pairs().to_vec()
    })
}

/// `int_a^b f` with `panels` equal panels of [`PANEL_NODES`] points.
pub fn panel_integrate(a: f64, b: f64, panels: usize, mut f: impl FnMut(f64) -> Complex64) -> Complex64 {
    let rule = reference();
    let width = (b - a) / panels as f64;
    let half = width / 2.0;
    let mut total = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * width;
        let mut acc = Complex64::new(0.0, 0.0);
        for &(x, w) in rule {
            acc += f(mid + half * x) * w;
        }
        total += acc * half;
    }
    total
}
