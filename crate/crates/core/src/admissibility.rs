//! Admissibility and scaling arithmetic for anisotropic Strichartz exponents.
//!
//! Exponents are stored as reciprocals so that `q = infinity` is the ordinary
//! value `1/q = 0` and every relation below is affine. All routines are
//! generic over [`Exact`]; with `Ratio<i64>` the verdicts are exact.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Exact;

/// Weight structure entering the two coefficients of the conditions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Geometry<E> {
    /// Euclidean symbol with declared Hessian rank `M`.
    Euclidean { rank: usize },
    /// Product Dunkl weight with homogeneity degrees `gamma1` (x-block) and
    /// `gamma2` (y-block).
    Dunkl { gamma1: E, gamma2: E },
}

/// Ambient data shared by all selections: dimension `d`, symbol degree `m`
/// and the weight geometry.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Context<E> {
    pub dim: usize,
    pub degree: E,
    pub geometry: Geometry<E>,
}

impl<E: Exact> Context<E> {
    pub fn euclidean(dim: usize, degree: E, rank: usize) -> Self {
        Self {
            dim,
            degree,
            geometry: Geometry::Euclidean { rank },
        }
    }

    pub fn dunkl(dim: usize, degree: E, gamma1: E, gamma2: E) -> Self {
        Self {
            dim,
            degree,
            geometry: Geometry::Dunkl { gamma1, gamma2 },
        }
    }

    /// Coefficients `(a, b)` of `a (1/2 - 1/r) + b (1/2 - 1/r_tilde)` in the
    /// admissibility inequality.
    pub fn admissibility_coefficients(&self, k: usize) -> (E, E) {
        let (d, k) = (E::int(self.dim as i64), E::int(k as i64));
        match self.geometry {
            Geometry::Euclidean { rank } => (E::int(rank as i64) - k, k),
            Geometry::Dunkl { gamma1, gamma2 } => {
                let two = E::int(2);
                (d + two * gamma1 - k, k + two * gamma2)
            }
        }
    }

    /// Coefficients of the same form in the scaling identity.
    pub fn scaling_coefficients(&self, k: usize) -> (E, E) {
        match self.geometry {
            Geometry::Euclidean { .. } => (E::int(self.dim as i64) - E::int(k as i64), E::int(k as i64)),
            Geometry::Dunkl { .. } => self.admissibility_coefficients(k),
        }
    }
}

/// Reciprocal exponents `(1/q, 1/r, 1/r_tilde)`, regularity `s` and split `k`.
///
/// Construction enforces `2 < q <= inf` and `2 <= r_tilde <= r < inf`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExponentSelection<E> {
    inv_q: E,
    inv_r: E,
    inv_rt: E,
    s: E,
    k: usize,
}

impl<E: Exact> ExponentSelection<E> {
    pub fn new(inv_q: E, inv_r: E, inv_rt: E, s: E, k: usize) -> Result<Self> {
        let half = E::half();
        let zero = E::zero();
        if !(inv_q >= zero && inv_q < half) {
            return Err(Error::InvalidExponents(format!(
                "1/q = {} must lie in [0, 1/2)",
                inv_q.approx()
            )));
        }
        if !(inv_r > zero && inv_r <= inv_rt && inv_rt <= half) {
            return Err(Error::InvalidExponents(format!(
                "need 0 < 1/r <= 1/r_tilde <= 1/2, got 1/r = {}, 1/r_tilde = {}",
                inv_r.approx(),
                inv_rt.approx()
            )));
        }
        if k == 0 {
            return Err(Error::InvalidExponents("split k must be positive".into()));
        }
        Ok(Self {
            inv_q,
            inv_r,
            inv_rt,
            s,
            k,
        })
    }

    pub fn inv_q(&self) -> E {
        self.inv_q
    }

    pub fn inv_r(&self) -> E {
        self.inv_r
    }

    pub fn inv_r_tilde(&self) -> E {
        self.inv_rt
    }

    pub fn s(&self) -> E {
        self.s
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `(q, r, r_tilde)` as floats, `q = inf` when `1/q = 0`.
    pub fn exponents_f64(&self) -> (f64, f64, f64) {
        let inv = |v: E| 1.0 / v.approx();
        (inv(self.inv_q), inv(self.inv_r), inv(self.inv_rt))
    }
}

impl<E: Exact> fmt::Display for ExponentSelection<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (q, r, rt) = self.exponents_f64();
        write!(f, "(q={q}, r={r}, r~={rt}, s={}, k={})", self.s.approx(), self.k)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Strict,
    Boundary,
    Rejected(String),
}

impl Verdict {
    pub fn is_admissible(&self) -> bool {
        !matches!(self, Verdict::Rejected(_))
    }
}

/// Outcome of the admissibility inequality `2/q <= rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Admissibility<E> {
    pub lhs: E,
    pub rhs: E,
    /// `rhs - lhs`; non-negative iff admissible.
    pub residual: E,
    pub verdict: Verdict,
}

fn check_split<E: Exact>(ctx: &Context<E>, k: usize) -> Option<String> {
    if k > ctx.dim {
        return Some(format!("split k = {k} exceeds dimension {}", ctx.dim));
    }
    if let Geometry::Euclidean { rank } = ctx.geometry {
        if k > rank {
            return Some(format!("split k = {k} exceeds Hessian rank {rank}"));
        }
    }
    None
}

/// Evaluates `2/q <= a (1/2 - 1/r) + b (1/2 - 1/r_tilde)`.
pub fn check_admissible<E: Exact>(ctx: &Context<E>, sel: &ExponentSelection<E>) -> Admissibility<E> {
    let (a, b) = ctx.admissibility_coefficients(sel.k);
    let half = E::half();
    let lhs = E::int(2) * sel.inv_q;
    let rhs = a * (half - sel.inv_r) + b * (half - sel.inv_rt);
    let residual = rhs - lhs;
    let verdict = if let Some(reason) = check_split(ctx, sel.k) {
        Verdict::Rejected(reason)
    } else if residual.abs() <= E::equality_slack() {
        Verdict::Boundary
    } else if residual > E::zero() {
        Verdict::Strict
    } else {
        Verdict::Rejected(format!("2/q = {} exceeds {}", lhs.approx(), rhs.approx()))
    };
    Admissibility {
        lhs,
        rhs,
        residual,
        verdict,
    }
}

/// `m/q + s - a (1/2 - 1/r) - b (1/2 - 1/r_tilde)`, zero on the scaling line.
pub fn scaling_residual<E: Exact>(ctx: &Context<E>, sel: &ExponentSelection<E>) -> E {
    let (a, b) = ctx.scaling_coefficients(sel.k);
    let half = E::half();
    ctx.degree * sel.inv_q + sel.s - a * (half - sel.inv_r) - b * (half - sel.inv_rt)
}

/// Selection with some entries left open for [`solve_scaling`].
///
/// Exactly one of `inv_q`, `inv_r`, `inv_rt`, `s` is `None`, or both `inv_r`
/// and `inv_rt` are `None`, which solves on the diagonal `r = r_tilde`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PartialSelection<E> {
    pub inv_q: Option<E>,
    pub inv_r: Option<E>,
    pub inv_rt: Option<E>,
    pub s: Option<E>,
    pub k: usize,
}

/// Completes a selection from the scaling identity and validates bounds.
pub fn solve_scaling<E: Exact>(ctx: &Context<E>, partial: &PartialSelection<E>) -> Result<ExponentSelection<E>> {
    let (a, b) = ctx.scaling_coefficients(partial.k);
    let m = ctx.degree;
    let half = E::half();
    let zero = E::zero();
    let open = [
        partial.inv_q.is_none(),
        partial.inv_r.is_none(),
        partial.inv_rt.is_none(),
        partial.s.is_none(),
    ];
    let (inv_q, inv_r, inv_rt, s) = match open {
        [true, false, false, false] => {
            if m == zero {
                return Err(Error::DegenerateEquation("q"));
            }
            let (r, rt, s) = (partial.inv_r.unwrap(), partial.inv_rt.unwrap(), partial.s.unwrap());
            ((a * (half - r) + b * (half - rt) - s) / m, r, rt, s)
        }
        [false, true, false, false] => {
            if a == zero {
                return Err(Error::DegenerateEquation("r"));
            }
            let (q, rt, s) = (partial.inv_q.unwrap(), partial.inv_rt.unwrap(), partial.s.unwrap());
            (q, half - (m * q + s - b * (half - rt)) / a, rt, s)
        }
        [false, false, true, false] => {
            if b == zero {
                return Err(Error::DegenerateEquation("r_tilde"));
            }
            let (q, r, s) = (partial.inv_q.unwrap(), partial.inv_r.unwrap(), partial.s.unwrap());
            (q, r, half - (m * q + s - a * (half - r)) / b, s)
        }
        [false, true, true, false] => {
            if a + b == zero {
                return Err(Error::DegenerateEquation("r = r_tilde"));
            }
            let (q, s) = (partial.inv_q.unwrap(), partial.s.unwrap());
            let r = half - (m * q + s) / (a + b);
            (q, r, r, s)
        }
        [false, false, false, true] => {
            let (q, r, rt) = (partial.inv_q.unwrap(), partial.inv_r.unwrap(), partial.inv_rt.unwrap());
            (q, r, rt, a * (half - r) + b * (half - rt) - m * q)
        }
        _ => {
            return Err(Error::InvalidExponents(
                "exactly one of q, r, r_tilde (or the diagonal r = r_tilde), s must be unknown".into(),
            ))
        }
    };
    ExponentSelection::new(inv_q, inv_r, inv_rt, s, partial.k)
        .map_err(|e| Error::InvalidExponents(format!("scaling solution infeasible: {e}")))
}

/// Which power of `m` divides the upper end of the epsilon window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum WindowVariant {
    /// `(d-2)/m^2 (1 + 2m/(d-2) - p)`.
    #[default]
    Quadratic,
    /// `(d-2)/m (1 + 2m/(d-2) - p)`.
    Linear,
}

/// Exponents `(q1, r1, r_tilde1)` and the time gain `beta1` for the Picard
/// argument with `k = 2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PicardExponents<E> {
    pub window: (E, E),
    pub epsilon: E,
    pub inv_q1: E,
    pub inv_r1: E,
    pub inv_rt1: E,
    pub beta1: E,
    /// `1/q1` from the closed-form expression
    /// `(d-2)/(2m) - (d-2)/(m(p+1)) + m eps/(2(p+1))`.
    pub closed_form_inv_q1: E,
    pub closed_form_beta1: E,
    /// `closed_form_inv_q1 - inv_q1`; vanishes only at `m = 2`.
    pub discrepancy: E,
}

impl<E: Exact> PicardExponents<E> {
    /// `m/q1 + (d-2)/r1 + 2/r_tilde1 - d/2`.
    pub fn identity_residual(&self, dim: usize, degree: E) -> E {
        let d = E::int(dim as i64);
        degree * self.inv_q1 + (d - E::int(2)) * self.inv_r1 + E::int(2) * self.inv_rt1 - d / E::int(2)
    }

    /// The selection `(q1, r1, r_tilde1, s)` with split 2.
    pub fn selection(&self, s: E) -> Result<ExponentSelection<E>> {
        ExponentSelection::new(self.inv_q1, self.inv_r1, self.inv_rt1, s, 2)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PicardOutcome<E> {
    Feasible(PicardExponents<E>),
    Infeasible { window: (E, E), reason: String },
}

/// Hypothesis on the degree: `m > 2` strictly, or the relaxed `m >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DegreeHypothesis {
    #[default]
    Strict,
    Relaxed,
}

/// Picks `eps` at the window midpoint and derives the Picard exponents.
///
/// `1/q1` is taken from the identity `m/q1 + (d-2)/r1 + 2/r_tilde1 = d/2`;
/// the closed-form value is carried alongside for comparison.
pub fn picard_exponents<E: Exact>(
    dim: usize,
    degree: E,
    s: E,
    p: E,
    variant: WindowVariant,
    hypothesis: DegreeHypothesis,
) -> Result<PicardOutcome<E>> {
    let (zero, one, two) = (E::zero(), E::one(), E::int(2));
    let d = E::int(dim as i64);
    let m = degree;
    if dim < 3 {
        return Err(Error::InvalidExponents(format!("dimension {dim} < 3")));
    }
    let degree_ok = match hypothesis {
        DegreeHypothesis::Strict => m > two,
        DegreeHypothesis::Relaxed => m >= two,
    };
    if !degree_ok {
        return Err(Error::InvalidExponents(format!(
            "degree m = {} outside the {:?} hypothesis",
            m.approx(),
            hypothesis
        )));
    }
    if !(s > zero && s <= one) {
        return Err(Error::InvalidExponents(format!("s = {} not in (0, 1]", s.approx())));
    }
    let p_max = one + two * m / (d - two * s);
    if !(p > one && p < p_max) {
        return Err(Error::InvalidExponents(format!(
            "p = {} not in (1, {})",
            p.approx(),
            p_max.approx()
        )));
    }

    let dm2 = d - two;
    let lower = (one - s) * (p - one) / two;
    let scale = match variant {
        WindowVariant::Quadratic => dm2 / (m * m),
        WindowVariant::Linear => dm2 / m,
    };
    let bound_a = scale * (one + two * m / dm2 - p);
    let bound_b = (p - one) / two;
    let upper = if bound_a < bound_b { bound_a } else { bound_b };
    let window = (lower, upper);
    if !(upper > lower) {
        return Ok(PicardOutcome::Infeasible {
            window,
            reason: format!("empty window ({}, {})", lower.approx(), upper.approx()),
        });
    }

    let eps = (lower + upper) / two;
    let p1 = p + one;
    let inv_r1 = one / p1;
    let inv_rt1 = E::half() - eps / p1;
    let inv_q1 = (d / two - dm2 * inv_r1 - two * inv_rt1) / m;
    let closed_form_inv_q1 = dm2 / (two * m) - dm2 / (m * p1) + m * eps / (two * p1);
    let beta1 = one - p1 * inv_q1;
    let out = PicardExponents {
        window,
        epsilon: eps,
        inv_q1,
        inv_r1,
        inv_rt1,
        beta1,
        closed_form_inv_q1,
        closed_form_beta1: one - p1 * closed_form_inv_q1,
        discrepancy: closed_form_inv_q1 - inv_q1,
    };
    if !(beta1 > zero) {
        return Ok(PicardOutcome::Infeasible {
            window,
            reason: format!("beta1 = {} is not positive", beta1.approx()),
        });
    }
    if !(inv_q1 > zero) {
        return Ok(PicardOutcome::Infeasible {
            window,
            reason: format!("1/q1 = {} is not positive", inv_q1.approx()),
        });
    }
    Ok(PicardOutcome::Feasible(out))
}

/// One point of the reciprocal-exponent lattice.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegionPoint<E> {
    pub inv_q: E,
    pub inv_r: E,
    pub inv_rt: E,
}

/// All lattice points `(i/res, j/res, l/res)` with `0 <= 1/q < 1/2`,
/// `0 < 1/r <= 1/r_tilde <= 1/2` that satisfy the admissibility inequality.
/// `res` must be even so that `1/2` lies on the lattice.
pub fn admissible_region<E: Exact>(ctx: &Context<E>, k: usize, res: u32) -> Vec<RegionPoint<E>> {
    let half = (res / 2) as i64;
    let step = |i: i64| E::int(i) / E::int(res as i64);
    let mut out = Vec::new();
    for iq in 0..half {
        for ir in 1..=half {
            for irt in ir..=half {
                let sel = ExponentSelection {
                    inv_q: step(iq),
                    inv_r: step(ir),
                    inv_rt: step(irt),
                    s: E::zero(),
                    k,
                };
                if check_admissible(ctx, &sel).verdict.is_admissible() {
                    out.push(RegionPoint {
                        inv_q: sel.inv_q,
                        inv_r: sel.inv_r,
                        inv_rt: sel.inv_rt,
                    });
                }
            }
        }
    }
    out
}

/// Classical Strichartz condition `2/q <= d (1/2 - 1/r)` on the diagonal.
pub fn classical_diagonal_condition<E: Exact>(dim: usize, inv_q: E, inv_r: E) -> bool {
    E::int(2) * inv_q <= E::int(dim as i64) * (E::half() - inv_r)
}
