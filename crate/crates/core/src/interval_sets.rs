//! Finite unions of intervals in quantile coordinates.

use crate::measures::Measure;
use crate::Error;

/// Endpoints closer than this are merged.
pub const MERGE_TOL: f64 = 1e-12;

/// Tolerance used to decide that a set has measure exactly 1/2.
pub const HALF_TOL: f64 = 1e-12;

/// A finite union of open intervals `∪ (t₂ᵢ₋₁, t₂ᵢ)` of `[0, 1]`.
///
/// Quantiles 0 and 1 stand for `-∞` and `+∞` on the real line.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct QuantileSet {
    endpoints: Vec<f64>,
}

/// The two optimal shapes at a given measure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReferenceShape {
    /// `(-∞, -β) ∪ (β, ∞)`, quantile endpoints `[0, p/2, 1-p/2, 1]`.
    ComplementOfInterval,
    /// `(-α, α)`, quantile endpoints `[(1-p)/2, (1+p)/2]`.
    SymmetricInterval,
}

impl QuantileSet {
    pub fn empty() -> Self {
        Self { endpoints: Vec::new() }
    }

    pub fn full() -> Self {
        Self { endpoints: vec![0.0, 1.0] }
    }

    /// Builds a set from a flat endpoint list. The list must be non-decreasing,
    /// of even length and inside `[0, 1]`; near-coincident endpoints are merged.
    pub fn new(endpoints: Vec<f64>) -> Result<Self, Error> {
        if !endpoints.len().is_multiple_of(2) {
            return Err(Error::InvalidSet(format!("odd endpoint count {}", endpoints.len())));
        }
        for w in endpoints.windows(2) {
            if !(w[0] <= w[1]) {
                return Err(Error::InvalidSet(format!("endpoints out of order: {} > {}", w[0], w[1])));
            }
        }
        if let (Some(&a), Some(&b)) = (endpoints.first(), endpoints.last()) {
            if !(a >= 0.0 && b <= 1.0) {
                return Err(Error::InvalidSet(format!("endpoints outside [0,1]: {a}, {b}")));
            }
        }
        let pairs: Vec<(f64, f64)> = endpoints.chunks(2).map(|c| (c[0], c[1])).collect();
        Ok(Self::normalized(pairs))
    }

    /// Union of arbitrary (possibly overlapping, unordered) intervals of `[0, 1]`.
    pub fn from_intervals<I: IntoIterator<Item = (f64, f64)>>(intervals: I) -> Result<Self, Error> {
        let mut pairs: Vec<(f64, f64)> = Vec::new();
        for (a, b) in intervals {
            if a.is_nan() || b.is_nan() || a > b {
                return Err(Error::InvalidSet(format!("bad interval ({a}, {b})")));
            }
            if a < -MERGE_TOL || b > 1.0 + MERGE_TOL {
                return Err(Error::InvalidSet(format!("interval ({a}, {b}) outside [0,1]")));
            }
            pairs.push((a.max(0.0), b.min(1.0)));
        }
        pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
        Ok(Self::normalized(pairs))
    }

    /// Pushes real-line intervals forward through the distribution function.
    pub fn from_real_intervals(m: &Measure, intervals: &[(f64, f64)]) -> Result<Self, Error> {
        Self::from_intervals(intervals.iter().map(|&(a, b)| (m.cdf(a), m.cdf(b))))
    }

    // Merges overlapping or touching intervals and drops degenerate ones.
    fn normalized(sorted: Vec<(f64, f64)>) -> Self {
        let mut out: Vec<(f64, f64)> = Vec::with_capacity(sorted.len());
        for (a, b) in sorted {
            if b - a < MERGE_TOL {
                continue;
            }
            match out.last_mut() {
                Some(last) if a - last.1 < MERGE_TOL => last.1 = last.1.max(b),
                _ => out.push((a, b)),
            }
        }
        let mut endpoints = Vec::with_capacity(2 * out.len());
        for (a, b) in out {
            let a = if a < MERGE_TOL { 0.0 } else { a };
            let b = if b > 1.0 - MERGE_TOL { 1.0 } else { b };
            endpoints.push(a);
            endpoints.push(b);
        }
        Self { endpoints }
    }

    pub fn endpoints(&self) -> &[f64] {
        &self.endpoints
    }

    pub fn intervals(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.endpoints.chunks(2).map(|c| (c[0], c[1]))
    }

    pub fn component_count(&self) -> usize {
        self.endpoints.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.endpoints.is_empty()
    }

    pub fn measure(&self) -> f64 {
        self.intervals().map(|(a, b)| b - a).sum()
    }

    /// `Σ J(tⱼ)` over all endpoints.
    pub fn perimeter(&self, m: &Measure) -> f64 {
        self.endpoints.iter().map(|&t| m.j(t)).sum()
    }

    pub fn complement(&self) -> Self {
        let mut pts = Vec::with_capacity(self.endpoints.len() + 2);
        pts.push(0.0);
        pts.extend_from_slice(&self.endpoints);
        pts.push(1.0);
        let pairs = pts.chunks(2).map(|c| (c[0], c[1])).collect();
        Self::normalized(pairs)
    }

    /// Image under `x ↦ -x`, i.e. `t ↦ 1 - t`.
    pub fn mirror(&self) -> Self {
        let pairs = self.endpoints.rchunks(2).map(|c| (1.0 - c[1], 1.0 - c[0])).collect();
        Self::normalized(pairs)
    }

    /// Quantile `t` lies in the open set.
    pub fn contains(&self, t: f64) -> bool {
        self.intervals().any(|(a, b)| a < t && t < b)
    }

    /// The origin (quantile 1/2) is interior to a component.
    pub fn contains_origin(&self) -> bool {
        self.contains(0.5)
    }

    /// Lebesgue measure of `self △ other`.
    pub fn symmetric_difference_measure(&self, other: &QuantileSet) -> f64 {
        let mut events: Vec<f64> = self.endpoints.iter().chain(other.endpoints.iter()).copied().collect();
        events.sort_by(f64::total_cmp);
        events.dedup();
        let mut total = 0.0;
        for w in events.windows(2) {
            let mid = 0.5 * (w[0] + w[1]);
            if self.contains(mid) != other.contains(mid) {
                total += w[1] - w[0];
            }
        }
        total
    }

    /// `λ(E)`: distance to the optimal shape of the same measure.
    pub fn asymmetry(&self) -> f64 {
        let p = self.measure();
        let to = |shape| self.symmetric_difference_measure(&reference_set(p, shape));
        if (p - 0.5).abs() <= HALF_TOL {
            to(ReferenceShape::ComplementOfInterval).min(to(ReferenceShape::SymmetricInterval))
        } else if p < 0.5 {
            to(ReferenceShape::ComplementOfInterval)
        } else {
            to(ReferenceShape::SymmetricInterval)
        }
    }

    /// `δ(E) = P(E) - P(E_ref)` with the optimal shape of the same measure.
    pub fn deficit(&self, m: &Measure) -> f64 {
        let p = self.measure();
        let shape = if p <= 0.5 + HALF_TOL {
            ReferenceShape::ComplementOfInterval
        } else {
            ReferenceShape::SymmetricInterval
        };
        self.perimeter(m) - reference_set(p, shape).perimeter(m)
    }
}

/// The optimal set of measure `p` of the given shape.
pub fn reference_set(p: f64, shape: ReferenceShape) -> QuantileSet {
    let p = p.clamp(0.0, 1.0);
    match shape {
        ReferenceShape::ComplementOfInterval => {
            QuantileSet::normalized(vec![(0.0, 0.5 * p), (1.0 - 0.5 * p, 1.0)])
        }
        ReferenceShape::SymmetricInterval => {
            QuantileSet::normalized(vec![(0.5 * (1.0 - p), 0.5 * (1.0 + p))])
        }
    }
}

/// Real-line break points attached to a mass `p`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReferencePoints {
    pub p: f64,
    /// `-F⁻¹((1-p)/2)`: half-width of the symmetric interval of measure `p`.
    pub alpha_p: f64,
    /// `-F⁻¹(p/2)`: inner radius of the complement of an interval of measure `p`.
    pub beta_p: f64,
    /// `-F⁻¹(p)`: the half-line `(-∞, -σ)` has measure `p`.
    pub sigma_p: f64,
    pub alpha_quantile: f64,
    pub beta_quantile: f64,
    pub sigma_quantile: f64,
}

pub fn reference_points(m: &Measure, p: f64) -> ReferencePoints {
    let aq = 0.5 * (1.0 - p);
    let bq = 0.5 * p;
    ReferencePoints {
        p,
        alpha_p: -m.quantile(aq),
        beta_p: -m.quantile(bq),
        sigma_p: -m.quantile(p),
        alpha_quantile: aq,
        beta_quantile: bq,
        sigma_quantile: p,
    }
}
