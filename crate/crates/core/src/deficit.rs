//! Constants and lower bounds of the quantitative isoperimetric inequality,
//! and the near-threshold example where a small deficit coexists with a large
//! asymmetry.

use crate::interval_sets::QuantileSet;
use crate::measures::Measure;
use crate::numeric::golden_max;
use crate::Error;

/// Grid step used when minimizing `J''`.
pub const SECOND_DERIVATIVE_GRID: f64 = 1e-4;

/// Shrink factor applied to the grid estimate of the doubling constant.
pub const EPSILON_SHRINK: f64 = 0.99;

/// Largest doubling constant fed into `c'`.
pub const EPSILON_CAP: f64 = 0.99;

/// Largest `ε ≥ 0` with `J(x) ≥ (2+ε) J(x/2)` on a grid of `(0, 1/2]`.
pub fn nabla2_epsilon(m: &Measure) -> f64 {
    let mut xs: Vec<f64> = (1..=1000).map(|i| 0.5 * i as f64 / 1000.0).collect();
    xs.extend((0..=90).map(|k| 10f64.powf(-12.0 + k as f64 / 10.0)));
    let inf = xs
        .into_iter()
        .map(|x| m.j(x) / m.j(0.5 * x) - 2.0)
        .fold(f64::INFINITY, f64::min);
    inf.max(0.0)
}

/// `M(p) = inf J''` over `[p/2, 1/2]`.
pub fn min_second_derivative(m: &Measure, p: f64) -> f64 {
    let lo = (0.5 * p).max(1e-12);
    let hi = 0.5;
    if lo >= hi {
        return m.j_second_half();
    }
    let steps = ((hi - lo) / SECOND_DERIVATIVE_GRID).ceil().max(1.0) as usize;
    let h = (hi - lo) / steps as f64;
    let mut best = (hi, m.j_second_half());
    for i in 0..steps {
        let t = lo + h * i as f64;
        let v = m.j_second(t);
        if v < best.1 {
            best = (t, v);
        }
    }
    let a = (best.0 - h).max(lo);
    let b = (best.0 + h).min(hi);
    let (_, neg) = golden_max(|t| -m.j_second(t), a, b, 1e-12);
    best.1.min(-neg)
}

/// Terms of the general constant, for reporting.
#[derive(Clone, Debug, PartialEq)]
pub struct DeficitConstants {
    pub p: f64,
    /// `c(p)`.
    pub c: f64,
    /// The five terms `8J'(p/2)`, `M(p)`, `16J'(1/6)`, `8[J(1/2)-2J(1/4)]`, `4M(q)`.
    pub terms: [f64; 5],
    pub m_p: f64,
    pub epsilon: f64,
    /// `c'` when the origin-free hypotheses hold.
    pub c_prime: Option<f64>,
}

/// `c(p)` of the general bound.
pub fn constant_c(m: &Measure, p: f64) -> Result<f64, Error> {
    deficit_constants(m, p).map(|d| d.c)
}

pub fn deficit_constants(m: &Measure, p: f64) -> Result<DeficitConstants, Error> {
    if !(p > 0.0 && p <= 0.5) {
        return Err(Error::Domain(format!("p must lie in (0, 1/2], got {p}")));
    }
    let m_p = min_second_derivative(m, p);
    if !(m_p > 0.0) {
        return Err(Error::Precondition(format!("inf J'' on [p/2, 1/2] is {m_p:e} for {m}")));
    }
    let gap = m.j(0.5) - 2.0 * m.j(0.25);
    let q = gap / m.j_prime_half();
    let m_q = min_second_derivative(m, q.min(1.0));
    let terms = [8.0 * m.j_prime(0.5 * p), m_p, 16.0 * m.j_prime(1.0 / 6.0), 8.0 * gap, 4.0 * m_q];
    let c = terms.iter().copied().fold(f64::INFINITY, f64::min) / 32.0;
    if !(c > 0.0) {
        return Err(Error::Precondition(format!("non-positive constant c={c:e} for {m}")));
    }
    let hyp = origin_free_hypotheses(m);
    let c_prime = hyp.hold().then(|| c_prime_with_epsilon(m, capped_epsilon(hyp.epsilon)));
    Ok(DeficitConstants { p, c, terms, m_p, epsilon: hyp.epsilon, c_prime })
}

/// Numerical checks behind the origin-free bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OriginFreeHypotheses {
    pub epsilon: f64,
    pub j_prime_concave: bool,
    pub j_prime_vanishes_at_zero: bool,
}

impl OriginFreeHypotheses {
    pub fn hold(&self) -> bool {
        self.epsilon > 0.0 && self.j_prime_concave && self.j_prime_vanishes_at_zero
    }
}

pub fn origin_free_hypotheses(m: &Measure) -> OriginFreeHypotheses {
    let h = 1e-3;
    let vals: Vec<f64> = (1..500).map(|i| m.j_prime(i as f64 * h)).collect();
    let scale = vals.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let j_prime_concave = vals.windows(3).all(|w| w[0] - 2.0 * w[1] + w[2] <= 1e-9 * scale);
    let j_prime_vanishes_at_zero = m.j_prime(1e-12) <= 0.05 * m.j_prime(0.25);
    OriginFreeHypotheses { epsilon: nabla2_epsilon(m), j_prime_concave, j_prime_vanishes_at_zero }
}

/// Doubling constant actually used: shrunk by 1% and capped below 1.
pub fn capped_epsilon(epsilon: f64) -> f64 {
    (EPSILON_SHRINK * epsilon).min(EPSILON_CAP)
}

/// `ε J''(1/2⁻) / 32` for a given `ε`.
pub fn c_prime_with_epsilon(m: &Measure, epsilon: f64) -> f64 {
    epsilon * m.j_second_half() / 32.0
}

/// `c'` with the capped doubling constant; fails if the hypotheses do not hold.
pub fn constant_c_prime(m: &Measure) -> Result<f64, Error> {
    let hyp = origin_free_hypotheses(m);
    if !hyp.hold() {
        return Err(Error::Precondition(format!("origin-free hypotheses fail for {m}: {hyp:?}")));
    }
    Ok(c_prime_with_epsilon(m, capped_epsilon(hyp.epsilon)))
}

/// Lower bound on `δ(E)` for a set of measure `p` and asymmetry `λ`.
///
/// `p > 1/2` is folded to `1 - p`. With `origin_free` the bound `c' λ²` for sets
/// avoiding the origin is returned instead.
pub fn deficit_lower_bound(m: &Measure, p: f64, lambda: f64, origin_free: bool) -> Result<f64, Error> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("p must lie in [0,1], got {p}")));
    }
    let q = p.min(1.0 - p);
    if !(lambda >= 0.0 && lambda <= 2.0 * q + 1e-12) {
        return Err(Error::Domain(format!("lambda={lambda} outside [0, {}]", 2.0 * q)));
    }
    if origin_free {
        let cp = constant_c_prime(m)?;
        return Ok(cp * lambda * lambda);
    }
    if lambda == 0.0 {
        return Ok(0.0);
    }
    let c = constant_c(m, q)?;
    Ok(c * ((1.0 - lambda).powi(2) + (1.0 - 2.0 * q)) * lambda * lambda)
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnomalousExample {
    pub set: QuantileSet,
    pub deficit: f64,
    /// Asymmetry of the constructed set.
    pub asymmetry: f64,
    /// The family parameter `1 - ε` used to build it.
    pub nominal_lambda: f64,
    /// Leading-order deficit `2J'(1/4)η + J''(1/4)ε²/4`.
    pub expansion: f64,
}

/// The E3-type interval with `p = 1/2 - η` and parameter `λ = 1 - ε`.
pub fn anomalous_example(m: &Measure, eta: f64, eps: f64) -> Result<AnomalousExample, Error> {
    if !(eta > 0.0 && eta < 0.5 && eps > 0.0 && eps < 0.5) {
        return Err(Error::Domain(format!("eta, eps must lie in (0,1/2), got {eta}, {eps}")));
    }
    let a = 0.25 + 0.5 * (eta - eps);
    let b = 0.75 - 0.5 * (eta + eps);
    if !(a >= 0.0 && a < b && b <= 1.0) {
        return Err(Error::Domain(format!("eta={eta}, eps={eps} give an empty interval")));
    }
    let set = QuantileSet::new(vec![a, b])?;
    let expansion = 2.0 * m.j_prime(0.25) * eta + 0.25 * m.j_second(0.25) * eps * eps;
    Ok(AnomalousExample {
        deficit: set.deficit(m),
        asymmetry: set.asymmetry(),
        nominal_lambda: 1.0 - eps,
        expansion,
        set,
    })
}
