//! Functions of one real variable under a symmetric measure: level sets,
//! rearrangements, weak Lorentz quasi-norms, and the weak Cheeger inequality
//! in its plain and quantitative forms.
//!
//! Everything is evaluated on continuous piecewise-linear functions, where
//! level sets are finite unions of intervals whose endpoints are found by
//! linear interpolation and mapped through the CDF.

use std::fmt;
use std::str::FromStr;

use crate::extremals::isoperimetric_profile;
use crate::interval_sets::{reference_set, QuantileSet, ReferenceShape};
use crate::measures::Measure;
use crate::numeric::{bisect, golden_max, integrate_pieces, scan_then_golden_max};
use crate::Error;

/// Slack allowed when checking that a function has median zero.
pub const MEDIAN_TOL: f64 = 1e-10;
/// Absolute slack before a functional inequality counts as violated.
pub const VIOLATION_TOL: f64 = 1e-10;
/// Largest support measure for which the symmetric rearrangement is defined.
const SUPPORT_LIMIT: f64 = 0.5 + 1e-12;

/// Continuous piecewise-linear function, constant beyond its extreme breakpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseFunction {
    xs: Vec<f64>,
    vs: Vec<f64>,
}

/// One linear piece, possibly an unbounded constant tail.
#[derive(Clone, Copy, Debug)]
struct Piece {
    a: f64,
    b: f64,
    va: f64,
    vb: f64,
}

impl Piece {
    fn is_flat(&self) -> bool {
        self.va == self.vb
    }

    fn slope(&self) -> f64 {
        if self.is_flat() {
            0.0
        } else {
            (self.vb - self.va) / (self.b - self.a)
        }
    }

    /// Sub-interval where the piece exceeds `h`.
    fn above(&self, h: f64) -> Option<(f64, f64)> {
        match (self.va > h, self.vb > h) {
            (true, true) => Some((self.a, self.b)),
            (false, false) => None,
            (true, false) => Some((self.a, self.crossing(h))),
            (false, true) => Some((self.crossing(h), self.b)),
        }
    }

    fn crossing(&self, h: f64) -> f64 {
        let x = self.a + (h - self.va) / (self.vb - self.va) * (self.b - self.a);
        x.clamp(self.a, self.b)
    }

    /// `∫ |v| dμ` over the piece.
    fn abs_integral(&self, m: &Measure) -> f64 {
        if self.is_flat() {
            return self.va.abs() * m.mass(self.a, self.b);
        }
        let k = self.slope();
        let c = self.va - k * self.a;
        let linear = |a: f64, b: f64| (c * m.mass(a, b) + k * m.first_moment(a, b)).abs();
        if self.va.signum() * self.vb.signum() < 0.0 {
            let z = self.crossing(0.0);
            linear(self.a, z) + linear(z, self.b)
        } else {
            linear(self.a, self.b)
        }
    }
}

impl PiecewiseFunction {
    /// Breakpoints must be finite and strictly increasing; values finite.
    pub fn new(xs: Vec<f64>, vs: Vec<f64>) -> Result<Self, Error> {
        if xs.is_empty() || xs.len() != vs.len() {
            return Err(Error::InvalidParameter(format!(
                "need matching non-empty breakpoints and values, got {} and {}",
                xs.len(),
                vs.len()
            )));
        }
        if xs.iter().chain(vs.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("breakpoints and values must be finite".into()));
        }
        if xs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter("breakpoints must be strictly increasing".into()));
        }
        Ok(Self { xs, vs })
    }

    pub fn constant(c: f64) -> Self {
        Self { xs: vec![0.0], vs: vec![c] }
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.xs
    }

    pub fn values(&self) -> &[f64] {
        &self.vs
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return self.vs[0];
        }
        if x >= self.xs[n - 1] {
            return self.vs[n - 1];
        }
        let i = self.xs.partition_point(|&b| b <= x) - 1;
        let (a, b) = (self.xs[i], self.xs[i + 1]);
        self.vs[i] + (self.vs[i + 1] - self.vs[i]) * (x - a) / (b - a)
    }

    fn pieces(&self) -> Vec<Piece> {
        let n = self.xs.len();
        let mut out = Vec::with_capacity(n + 1);
        out.push(Piece { a: f64::NEG_INFINITY, b: self.xs[0], va: self.vs[0], vb: self.vs[0] });
        for i in 0..n - 1 {
            out.push(Piece { a: self.xs[i], b: self.xs[i + 1], va: self.vs[i], vb: self.vs[i + 1] });
        }
        out.push(Piece { a: self.xs[n - 1], b: f64::INFINITY, va: self.vs[n - 1], vb: self.vs[n - 1] });
        out
    }

    fn map_values(&self, f: impl Fn(f64) -> f64) -> Self {
        Self { xs: self.xs.clone(), vs: self.vs.iter().map(|&v| f(v)).collect() }
    }

    /// `c·u`.
    pub fn scale(&self, c: f64) -> Self {
        self.map_values(|v| c * v)
    }

    /// `u + c`.
    pub fn shift(&self, c: f64) -> Self {
        self.map_values(|v| v + c)
    }

    /// Same function with a breakpoint added wherever a segment crosses zero.
    pub fn with_zero_crossings(&self) -> Self {
        let mut xs = vec![self.xs[0]];
        let mut vs = vec![self.vs[0]];
        for i in 0..self.xs.len() - 1 {
            let (va, vb) = (self.vs[i], self.vs[i + 1]);
            if va.signum() * vb.signum() < 0.0 && va != 0.0 && vb != 0.0 {
                let p = Piece { a: self.xs[i], b: self.xs[i + 1], va, vb };
                let z = p.crossing(0.0);
                if z > self.xs[i] && z < self.xs[i + 1] {
                    xs.push(z);
                    vs.push(0.0);
                }
            }
            xs.push(self.xs[i + 1]);
            vs.push(vb);
        }
        Self { xs, vs }
    }

    pub fn abs(&self) -> Self {
        self.with_zero_crossings().map_values(f64::abs)
    }

    /// `u⁺ = max(u, 0)`.
    pub fn positive_part(&self) -> Self {
        self.with_zero_crossings().map_values(|v| v.max(0.0))
    }

    /// `u⁻ = max(-u, 0)`.
    pub fn negative_part(&self) -> Self {
        self.with_zero_crossings().map_values(|v| (-v).max(0.0))
    }

    /// `u - v` on the merged breakpoints.
    pub fn sub(&self, other: &PiecewiseFunction) -> Self {
        let mut xs: Vec<f64> = self.xs.iter().chain(other.xs.iter()).copied().collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        let vs = xs.iter().map(|&x| self.eval(x) - other.eval(x)).collect();
        Self { xs, vs }
    }

    pub fn min_value(&self) -> f64 {
        self.vs.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.vs.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// `Osc(u) = sup u - inf u`, attained at breakpoints.
    pub fn oscillation(&self) -> f64 {
        self.max_value() - self.min_value()
    }

    /// Sorted distinct breakpoint values.
    pub fn levels(&self) -> Vec<f64> {
        let mut l = self.vs.clone();
        l.sort_by(f64::total_cmp);
        l.dedup();
        l
    }

    /// Real intervals (unmerged) on which `u > h`.
    pub fn level_intervals(&self, h: f64) -> Vec<(f64, f64)> {
        self.pieces().iter().filter_map(|p| p.above(h)).filter(|(a, b)| a < b).collect()
    }

    /// `E_h^u = {u > h}` in quantile coordinates.
    pub fn level_set(&self, m: &Measure, h: f64) -> QuantileSet {
        let q: Vec<(f64, f64)> =
            self.level_intervals(h).into_iter().map(|(a, b)| (m.cdf(a), m.cdf(b))).collect();
        QuantileSet::from_intervals(q).expect("CDF images of ordered intervals are valid")
    }

    /// `μ_u(h) = μ({u > h})`.
    pub fn distribution_function(&self, m: &Measure, h: f64) -> f64 {
        self.level_intervals(h).into_iter().map(|(a, b)| m.mass(a, b)).sum::<f64>().min(1.0)
    }

    /// `μ({u ≥ h})`: the left limit of the distribution function at `h`.
    pub fn measure_at_least(&self, m: &Measure, h: f64) -> f64 {
        let plateau: f64 = self
            .pieces()
            .iter()
            .filter(|p| p.is_flat() && p.va == h)
            .map(|p| m.mass(p.a, p.b))
            .sum();
        (self.distribution_function(m, h) + plateau).min(1.0)
    }

    /// `μ({u ≠ 0})`.
    pub fn support_measure(&self, m: &Measure) -> f64 {
        self.abs().distribution_function(m, 0.0)
    }

    /// `∫|u'| dμ`, exact per segment as `|slope|·μ(segment)`.
    pub fn grad_integral(&self, m: &Measure) -> f64 {
        self.pieces().iter().map(|p| p.slope().abs() * m.mass(p.a, p.b)).sum()
    }

    /// `∫|u| dμ`, exact per segment through the measure's first moments.
    pub fn abs_integral(&self, m: &Measure) -> f64 {
        self.pieces().iter().map(|p| p.abs_integral(m)).sum()
    }

    /// Perimeter of `{u > h}`.
    pub fn level_perimeter(&self, m: &Measure, h: f64) -> f64 {
        self.level_set(m, h).perimeter(m)
    }

    /// `∫ P(E_h^u) dh` by quadrature over the level range. Between consecutive
    /// breakpoint values the integrand is the density summed over transversal
    /// crossings, which is smooth.
    pub fn coarea_integral(&self, m: &Measure) -> f64 {
        let pieces = self.pieces();
        let crossings = |h: f64| -> f64 {
            pieces
                .iter()
                .filter(|p| !p.is_flat() && (p.va - h) * (p.vb - h) < 0.0)
                .map(|p| m.density(p.crossing(h)))
                .sum()
        };
        // The density has a corner at the origin, so u(0) is a kink of the integrand too.
        let mut breaks = self.levels();
        breaks.push(self.eval(0.0));
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
        integrate_pieces(crossings, &breaks, 1e-13)
    }

    /// Smallest `h` with `μ(u > h) ≤ 1/2`; this is a μ-median.
    pub fn median(&self, m: &Measure) -> f64 {
        let (lo, hi) = (self.min_value(), self.max_value());
        if self.distribution_function(m, lo) <= 0.5 {
            return lo;
        }
        let mut a = lo;
        let mut b = hi;
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mid == a || mid == b {
                break;
            }
            if self.distribution_function(m, mid) <= 0.5 {
                b = mid;
            } else {
                a = mid;
            }
        }
        b
    }

    /// Both `μ(u > 0)` and `μ(u < 0)` are at most 1/2.
    pub fn has_median_zero(&self, m: &Measure) -> bool {
        self.distribution_function(m, 0.0) <= 0.5 + MEDIAN_TOL
            && self.scale(-1.0).distribution_function(m, 0.0) <= 0.5 + MEDIAN_TOL
    }

    /// `u` vanishes on a neighbourhood of the origin.
    pub fn vanishes_near_origin(&self) -> bool {
        self.pieces()
            .iter()
            .filter(|p| p.a <= 0.0 && 0.0 <= p.b)
            .all(|p| p.va == 0.0 && p.vb == 0.0)
    }
}

impl fmt::Display for PiecewiseFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, v)) in self.xs.iter().zip(&self.vs).enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}:{v}")?;
        }
        Ok(())
    }
}

/// Parses `x:v,x:v,...`.
impl FromStr for PiecewiseFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut xs = Vec::new();
        let mut vs = Vec::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (x, v) = item
                .split_once(':')
                .ok_or_else(|| Error::InvalidParameter(format!("expected x:v, got {item:?}")))?;
            let parse = |t: &str| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::InvalidParameter(format!("bad number {t:?}: {e}")))
            };
            xs.push(parse(x)?);
            vs.push(parse(v)?);
        }
        Self::new(xs, vs)
    }
}

/// Free-function form of [`PiecewiseFunction::distribution_function`].
pub fn distribution_function(u: &PiecewiseFunction, m: &Measure, h: f64) -> f64 {
    u.distribution_function(m, h)
}

fn require_nonnegative(u: &PiecewiseFunction) -> Result<(), Error> {
    if u.min_value() < 0.0 {
        return Err(Error::Domain(format!("function takes negative value {}", u.min_value())));
    }
    Ok(())
}

/// `u*(s) = sup{h ≥ 0 : μ_u(h) > s}` without domain checks; 0 once `s` reaches the support.
fn rearranged_value(u: &PiecewiseFunction, m: &Measure, s: f64) -> f64 {
    let top = u.max_value();
    if s <= 0.0 {
        return top;
    }
    if u.distribution_function(m, 0.0) <= s {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0, top);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if u.distribution_function(m, mid) > s {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Decreasing rearrangement `u*(s)` for `u ≥ 0` and `s ∈ (0, μ(supp u))`.
pub fn decreasing_rearrangement(u: &PiecewiseFunction, m: &Measure, s: f64) -> Result<f64, Error> {
    require_nonnegative(u)?;
    let support = u.distribution_function(m, 0.0);
    if !(s > 0.0 && s < support) {
        return Err(Error::Domain(format!("s = {s} outside (0, {support})")));
    }
    Ok(rearranged_value(u, m, s))
}

/// `u^#(x) = u*(2F(-|x|))`: the symmetric rearrangement whose level sets are
/// complements of symmetric intervals. Needs `u ≥ 0` and `μ(supp u) ≤ 1/2`.
pub fn sharp_rearrangement(u: &PiecewiseFunction, m: &Measure, x: f64) -> Result<f64, Error> {
    require_nonnegative(u)?;
    let support = u.distribution_function(m, 0.0);
    if support > SUPPORT_LIMIT {
        return Err(Error::Precondition(format!("support measure {support} exceeds 1/2")));
    }
    Ok(rearranged_value(u, m, 2.0 * m.cdf(-x.abs())))
}

/// `μ(E △ E^#)` where `E^#` is the complement of the symmetric interval with
/// the same measure as `E`, whatever that measure is.
pub fn sharp_asymmetry(set: &QuantileSet) -> f64 {
    set.symmetric_difference_measure(&reference_set(set.measure(), ReferenceShape::ComplementOfInterval))
}

/// `sup_h g(μ(|u| > h))·h` over `h > 0`, assuming `g` is non-decreasing.
/// Each band between consecutive breakpoint values is scanned and refined,
/// and the left limits at the band tops are included.
fn level_supremum(u: &PiecewiseFunction, m: &Measure, g: impl Fn(f64) -> f64) -> f64 {
    let w = u.abs();
    let mut levels = w.levels();
    if levels[0] > 0.0 {
        levels.insert(0, 0.0);
    }
    let objective = |h: f64| h * g(w.distribution_function(m, h));
    let mut best: f64 = 0.0;
    for band in levels.windows(2) {
        let (lo, hi) = (band[0], band[1]);
        best = best.max(scan_then_golden_max(objective, lo, hi, 24).1);
        best = best.max(hi * g(w.measure_at_least(m, hi)));
    }
    best
}

/// `‖u‖_{p,∞} = sup_{t>0} t·μ(|u| > t)^{1/p}` for any exponent `p > 0`.
pub fn weak_lorentz_norm(u: &PiecewiseFunction, m: &Measure, p: f64) -> Result<f64, Error> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::InvalidParameter(format!("exponent must be positive, got {p}")));
    }
    Ok(level_supremum(u, m, |mu| mu.powf(1.0 / p)))
}

/// Both sides of `sup_{0<t<1/2} |u|*(t)·I(t) ≤ ∫|u'| dμ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EmbeddingCheck {
    pub lhs: f64,
    pub rhs: f64,
}

impl EmbeddingCheck {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs + VIOLATION_TOL
    }
}

/// The profile embedding, written over levels as `sup_h h·I(min(μ(|u|>h), 1/2))`.
pub fn embedding_check(u: &PiecewiseFunction, m: &Measure) -> EmbeddingCheck {
    let lhs = level_supremum(u, m, |mu| isoperimetric_profile(m, mu.min(0.5)));
    EmbeddingCheck { lhs, rhs: u.grad_integral(m) }
}

/// `β(s) = sup_{s≤t≤1/2} (t - s)/I(t)`; zero for `s ≥ 1/2`.
pub fn cheeger_beta(m: &Measure, s: f64) -> Result<f64, Error> {
    if !(s > 0.0) {
        return Err(Error::Domain(format!("β needs s > 0, got {s}")));
    }
    if s >= 0.5 {
        return Ok(0.0);
    }
    let objective = |t: f64| (t - s) / isoperimetric_profile(m, t);
    Ok(scan_then_golden_max(objective, s, 0.5, 48).1.max(0.0))
}

/// Profile recovered from the rate: `sup_{0<s≤t} (t - s)/β(s)`, extended
/// symmetrically about 1/2.
pub fn profile_from_beta(m: &Measure, t: f64) -> Result<f64, Error> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::Domain(format!("t = {t} outside (0, 1)")));
    }
    let t = t.min(1.0 - t);
    let s_min = 1e-12 * t;
    let objective = |s: f64| {
        let b = cheeger_beta(m, s).unwrap_or(f64::INFINITY);
        if b > 0.0 {
            (t - s) / b
        } else {
            0.0
        }
    };
    Ok(scan_then_golden_max(objective, s_min, t, 48).1.max(0.0))
}

/// `β` tabulated on a grid of `s` values.
#[derive(Clone, Debug, PartialEq)]
pub struct CheegerRate {
    pub s: Vec<f64>,
    pub beta: Vec<f64>,
}

impl CheegerRate {
    pub fn new(m: &Measure, s_grid: &[f64]) -> Result<Self, Error> {
        let beta = s_grid.iter().map(|&s| cheeger_beta(m, s)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self { s: s_grid.to_vec(), beta })
    }

    /// Non-increasing along increasing `s`, up to a relative rounding slack.
    pub fn is_non_increasing(&self) -> bool {
        let mut pairs: Vec<(f64, f64)> = self.s.iter().copied().zip(self.beta.iter().copied()).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        pairs.windows(2).all(|w| w[1].1 <= w[0].1 * (1.0 + 1e-12) + 1e-15)
    }
}

/// One `s` value of a Cheeger check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheegerRow {
    pub s: f64,
    pub beta: f64,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`; negative means the inequality fails.
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheegerReport {
    pub rows: Vec<CheegerRow>,
    pub min_margin: f64,
    /// Rows with margin below `-VIOLATION_TOL`.
    pub violations: usize,
    /// Factor the function was divided by before evaluation (1 for the plain form).
    pub normalization: f64,
    /// `∫||u| - u^#| dμ` of the normalized function, quantitative form only.
    pub distance: Option<f64>,
}

impl CheegerReport {
    fn from_rows(rows: Vec<CheegerRow>, normalization: f64, distance: Option<f64>) -> Self {
        let min_margin = rows.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min);
        let violations = rows.iter().filter(|r| r.margin < -VIOLATION_TOL).count();
        Self { rows, min_margin, violations, normalization, distance }
    }

    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

fn require_median_zero(u: &PiecewiseFunction, m: &Measure) -> Result<(), Error> {
    if !u.has_median_zero(m) {
        return Err(Error::Precondition(format!("median is {}, not 0", u.median(m))));
    }
    Ok(())
}

/// `∫|u| dμ ≤ β(s)∫|u'| dμ + s·Osc(u)` for each `s` of the grid.
pub fn check_weak_cheeger(u: &PiecewiseFunction, m: &Measure, s_grid: &[f64]) -> Result<CheegerReport, Error> {
    check_weak_cheeger_with(u, m, &CheegerRate::new(m, s_grid)?)
}

/// As [`check_weak_cheeger`] with `β` already tabulated.
pub fn check_weak_cheeger_with(u: &PiecewiseFunction, m: &Measure, rate: &CheegerRate) -> Result<CheegerReport, Error> {
    require_median_zero(u, m)?;
    let l1 = u.abs_integral(m);
    let grad = u.grad_integral(m);
    let osc = u.oscillation();
    let rows = rate
        .s
        .iter()
        .zip(&rate.beta)
        .map(|(&s, &beta)| {
            let rhs = beta * grad + s * osc;
            CheegerRow { s, beta, lhs: l1, rhs, margin: rhs - l1 }
        })
        .collect();
    Ok(CheegerReport::from_rows(rows, 1.0, None))
}

/// `∫||u| - u^#| dμ = ∫_0^∞ μ(E_h △ E_h^#) dh` with `E_h = {|u| > h}`.
pub fn rearrangement_distance(u: &PiecewiseFunction, m: &Measure) -> f64 {
    let w = u.abs();
    let mut levels = w.levels();
    if levels[0] > 0.0 {
        levels.insert(0, 0.0);
    }
    integrate_pieces(|h| sharp_asymmetry(&w.level_set(m, h)), &levels, 1e-12)
}

/// `β(s)Ψ(∫||u|-u^#|) + ∫|u| ≤ β(s)∫|u'| + 2s·Osc(u)` with `Ψ(x) = c'x²/2`.
///
/// The inequality is not homogeneous, so it is evaluated on `u/Osc(u)`.
/// Requires median 0 and `u = 0` near the origin.
pub fn check_quantitative_cheeger(
    u: &PiecewiseFunction,
    m: &Measure,
    s_grid: &[f64],
    c_prime: f64,
) -> Result<CheegerReport, Error> {
    check_quantitative_cheeger_with(u, m, &CheegerRate::new(m, s_grid)?, c_prime)
}

pub fn check_quantitative_cheeger_with(
    u: &PiecewiseFunction,
    m: &Measure,
    rate: &CheegerRate,
    c_prime: f64,
) -> Result<CheegerReport, Error> {
    if !(c_prime >= 0.0 && c_prime.is_finite()) {
        return Err(Error::InvalidParameter(format!("c' must be a non-negative number, got {c_prime}")));
    }
    require_median_zero(u, m)?;
    if !u.vanishes_near_origin() {
        return Err(Error::Precondition("the origin lies in the support".into()));
    }
    let osc = u.oscillation();
    let (v, norm) = if osc > 0.0 { (u.scale(1.0 / osc), osc) } else { (u.clone(), 1.0) };
    let distance = rearrangement_distance(&v, m);
    let psi = 0.5 * c_prime * distance * distance;
    let l1 = v.abs_integral(m);
    let grad = v.grad_integral(m);
    let osc_v = v.oscillation();
    let rows = rate
        .s
        .iter()
        .zip(&rate.beta)
        .map(|(&s, &beta)| {
            let lhs = beta * psi + l1;
            let rhs = beta * grad + 2.0 * s * osc_v;
            CheegerRow { s, beta, lhs, rhs, margin: rhs - lhs }
        })
        .collect();
    Ok(CheegerReport::from_rows(rows, norm, Some(distance)))
}

/// Both sides of `λ(E_h^{u⁺}) + λ(E_h^{u⁻}) ≥ λ(E_h^{|u|})`, asymmetries taken
/// against complements of symmetric intervals. Returns `(lhs, rhs)`.
pub fn asymmetry_split(u: &PiecewiseFunction, m: &Measure, h: f64) -> Result<(f64, f64), Error> {
    if !(h > 0.0) {
        return Err(Error::Domain(format!("level must be positive, got {h}")));
    }
    require_median_zero(u, m)?;
    let lhs = sharp_asymmetry(&u.positive_part().level_set(m, h))
        + sharp_asymmetry(&u.negative_part().level_set(m, h));
    let rhs = sharp_asymmetry(&u.abs().level_set(m, h));
    Ok((lhs, rhs))
}

/// Both sides of `Ψ(∫|u - v| dμ) ≤ ∫_0^1 Ψ(μ(E_h^u △ E_h^v)) dh` for convex `Ψ`
/// and `0 ≤ u, v ≤ 1`. Returns `(lhs, rhs)`.
pub fn level_set_distance_bound(
    u: &PiecewiseFunction,
    v: &PiecewiseFunction,
    m: &Measure,
    psi: impl Fn(f64) -> f64,
) -> Result<(f64, f64), Error> {
    for f in [u, v] {
        if f.min_value() < 0.0 || f.max_value() > 1.0 {
            return Err(Error::Domain("functions must take values in [0, 1]".into()));
        }
    }
    let lhs = psi(u.sub(v).abs_integral(m));
    let mut breaks: Vec<f64> = u.levels().into_iter().chain(v.levels()).chain([0.0, 1.0]).collect();
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let rhs = integrate_pieces(
        |h| psi(u.level_set(m, h).symmetric_difference_measure(&v.level_set(m, h))),
        &breaks,
        1e-12,
    );
    Ok((lhs, rhs))
}

/// Closed form of `β` for the generalized Cauchy measure with index `α`:
/// `s^{-1/α}/(α+1)^{1+1/α}` while `(α+1)s ≤ 1/2`, else `(1/2 - s)/I(1/2)`.
pub fn cauchy_beta(alpha: f64, s: f64) -> f64 {
    if s >= 0.5 {
        return 0.0;
    }
    if (alpha + 1.0) * s <= 0.5 {
        s.powf(-1.0 / alpha) / (alpha + 1.0).powf(1.0 + 1.0 / alpha)
    } else {
        (0.5 - s) / (alpha * 0.5f64.powf(1.0 + 1.0 / alpha))
    }
}

/// Real point where the symmetric rearrangement drops to level `h`, found by
/// bisection on `(-∞, 0]`; the level set `{u^# > h}` is `(-∞, x) ∪ (-x, ∞)`.
pub fn sharp_level_boundary(u: &PiecewiseFunction, m: &Measure, h: f64) -> Result<f64, Error> {
    require_nonnegative(u)?;
    let support = u.distribution_function(m, 0.0);
    if support > SUPPORT_LIMIT {
        return Err(Error::Precondition(format!("support measure {support} exceeds 1/2")));
    }
    // Quantile coordinate q = F(x); u^# > h iff u*(2q) > h, which is monotone in q.
    let above = |q: f64| rearranged_value(u, m, 2.0 * q) - h;
    if above(0.0) <= 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    let q = bisect(|q| if above(q) > 0.0 { 1.0 } else { -1.0 }, 0.0, 0.5, 1e-15);
    Ok(m.quantile(q))
}

/// Maximizer and value of `t ↦ (t - s)/I(t)` on `[s, 1/2]`.
pub fn cheeger_beta_argmax(m: &Measure, s: f64) -> Option<(f64, f64)> {
    if !(s > 0.0 && s < 0.5) {
        return None;
    }
    Some(golden_max(|t| (t - s) / isoperimetric_profile(m, t), s, 0.5, 1e-13))
}
