//! Closed-form extremal sets: the function ψ_p, the threshold p₀, the
//! isoperimetric profile, the candidate families E1..E7 and the (p, λ) map of
//! which candidate has the smallest perimeter.

use std::fmt;

use rayon::prelude::*;

use crate::interval_sets::QuantileSet;
use crate::measures::Measure;
use crate::numeric::bisect;
use crate::Error;

const RANGE_TOL: f64 = 1e-12;

/// Relative tolerance under which two candidate perimeters count as tied.
pub const TIE_RTOL: f64 = 1e-12;

/// `ψ_p(t) = J(t) + J(p+t)`: perimeter of the interval `(F⁻¹(t), F⁻¹(t+p))`.
pub fn psi(m: &Measure, p: f64, t: f64) -> Result<f64, Error> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("p must lie in (0,1), got {p}")));
    }
    if !(t >= -RANGE_TOL && t <= 1.0 - p + RANGE_TOL) {
        return Err(Error::Domain(format!("t={t} outside [0, 1-p] for p={p}")));
    }
    let t = t.clamp(0.0, 1.0 - p);
    Ok(m.j(t) + m.j(p + t))
}

/// The unique `p₀ ∈ (0, 1/2)` with `J(1-p₀) = 2 J((1-p₀)/2)`.
pub fn find_p0(m: &Measure) -> Result<f64, Error> {
    let g = |p: f64| m.j(1.0 - p) - 2.0 * m.j(0.5 * (1.0 - p));
    let lo = 1e-9;
    let hi = 0.5;
    let (glo, ghi) = (g(lo), g(hi));
    if !(glo < 0.0 && ghi > 1e-14) {
        return Err(Error::Numerical(format!(
            "no sign change of the half-line/interval balance on (0,1/2) for {m} (g(0+)={glo:e}, g(1/2)={ghi:e})"
        )));
    }
    Ok(bisect(g, lo, hi, 1e-13))
}

/// `I(p) = 2 J(min(p, 1-p) / 2)`.
pub fn isoperimetric_profile(m: &Measure, p: f64) -> f64 {
    let p = p.clamp(0.0, 1.0);
    2.0 * m.j(0.5 * p.min(1.0 - p))
}

/// Which single interval of a given measure has least perimeter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntervalShape {
    SymmetricInterval,
    HalfLine,
    Tie,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntervalMinimizer {
    pub shape: IntervalShape,
    pub perimeter: f64,
    pub interval_perimeter: f64,
    pub half_line_perimeter: f64,
}

/// Compares the symmetric interval and the half-line of measure `p`.
pub fn interval_minimizer(m: &Measure, p: f64) -> Result<IntervalMinimizer, Error> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("p must lie in (0,1), got {p}")));
    }
    let sym = 2.0 * m.j(0.5 * (1.0 - p));
    let half = m.j(p);
    let shape = if (sym - half).abs() <= 1e-10 {
        IntervalShape::Tie
    } else if sym < half {
        IntervalShape::SymmetricInterval
    } else {
        IntervalShape::HalfLine
    };
    Ok(IntervalMinimizer {
        shape,
        perimeter: sym.min(half),
        interval_perimeter: sym,
        half_line_perimeter: half,
    })
}

/// Candidate families. Variants with a `Bar` suffix are mirror images.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    E1,
    E2,
    E3,
    E4,
    E5,
    E6,
    E7,
    E2Bar,
    E3Bar,
    E5Bar,
    E6Bar,
    E7Bar,
}

impl Family {
    pub const ALL: [Family; 12] = [
        Family::E1,
        Family::E2,
        Family::E3,
        Family::E4,
        Family::E5,
        Family::E6,
        Family::E7,
        Family::E2Bar,
        Family::E3Bar,
        Family::E5Bar,
        Family::E6Bar,
        Family::E7Bar,
    ];

    /// The four families that compete in the minimum.
    pub const MAIN: [Family; 4] = [Family::E1, Family::E2, Family::E3, Family::E4];

    pub fn base(self) -> Family {
        match self {
            Family::E2Bar => Family::E2,
            Family::E3Bar => Family::E3,
            Family::E5Bar => Family::E5,
            Family::E6Bar => Family::E6,
            Family::E7Bar => Family::E7,
            f => f,
        }
    }

    pub fn is_mirrored(self) -> bool {
        self != self.base()
    }

    pub fn takes_parameter(self) -> bool {
        matches!(self.base(), Family::E6 | Family::E7)
    }

    /// Admissible range of the free parameter, as printed for the family.
    pub fn parameter_range(self, p: f64, lambda: f64) -> Option<(f64, f64)> {
        let (lo, hi) = match (self.base(), lambda <= p) {
            (Family::E6, true) => (0.0, p),
            (Family::E6, false) => (lambda - p, 2.0 * p - lambda),
            (Family::E7, true) => (0.0, lambda),
            (Family::E7, false) => (lambda - p, p),
            _ => return None,
        };
        (lo <= hi + RANGE_TOL).then_some((lo, hi.max(lo)))
    }

    /// Whether `(p, λ)` lies in the family's validity range.
    pub fn admits(self, p: f64, lambda: f64) -> bool {
        let in_triangle = (-RANGE_TOL..=0.5 + RANGE_TOL).contains(&p)
            && lambda >= -RANGE_TOL
            && lambda <= 2.0 * p + RANGE_TOL;
        if !in_triangle {
            return false;
        }
        match self.base() {
            Family::E1 | Family::E4 | Family::E6 | Family::E7 => true,
            Family::E2 => lambda <= p + RANGE_TOL,
            Family::E3 | Family::E5 => lambda >= p - RANGE_TOL,
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::E1 => "E1",
            Family::E2 => "E2",
            Family::E3 => "E3",
            Family::E4 => "E4",
            Family::E5 => "E5",
            Family::E6 => "E6",
            Family::E7 => "E7",
            Family::E2Bar => "E2bar",
            Family::E3Bar => "E3bar",
            Family::E5Bar => "E5bar",
            Family::E6Bar => "E6bar",
            Family::E7Bar => "E7bar",
        };
        f.write_str(s)
    }
}

/// A member of a candidate family with prescribed measure `p` and asymmetry `λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct CandidateSet {
    pub family: Family,
    pub p: f64,
    pub lambda: f64,
    pub t: Option<f64>,
    pub set: QuantileSet,
}

fn quantile_endpoints(family: Family, p: f64, l: f64, t: f64) -> Vec<f64> {
    match family.base() {
        Family::E1 => vec![l / 4.0, p / 2.0 + l / 4.0, 1.0 - p / 2.0 - l / 4.0, 1.0 - l / 4.0],
        Family::E2 => vec![0.0, (p + l) / 2.0, 1.0 - (p - l) / 2.0, 1.0],
        Family::E3 => vec![(l - p) / 2.0, (l + p) / 2.0],
        Family::E4 => vec![
            0.0,
            p / 2.0 - l / 4.0,
            0.5 - l / 4.0,
            0.5 + l / 4.0,
            1.0 - p / 2.0 + l / 4.0,
            1.0,
        ],
        Family::E5 => vec![0.0, p - l / 2.0, 0.5 - l / 4.0, 0.5 + l / 4.0],
        Family::E6 => vec![(p - t) / 2.0, p / 2.0 + l / 4.0, 1.0 - p / 2.0 - l / 4.0, 1.0 + (p - l - t) / 2.0],
        Family::E7 => vec![(l - t) / 2.0, (p + l) / 2.0, 1.0 - (p - t) / 2.0, 1.0],
        _ => unreachable!(),
    }
}

/// Realizes a candidate set. `t` is required for E6/E7 and ignored otherwise.
pub fn candidate(family: Family, p: f64, lambda: f64, t: Option<f64>) -> Result<CandidateSet, Error> {
    if !family.admits(p, lambda) {
        return Err(Error::Domain(format!("{family} not defined at p={p}, lambda={lambda}")));
    }
    let p = p.clamp(0.0, 0.5);
    let lambda = lambda.clamp(0.0, 2.0 * p);
    let tv = if family.takes_parameter() {
        let tv = t.ok_or_else(|| Error::Domain(format!("{family} needs a parameter t")))?;
        let (lo, hi) = family
            .parameter_range(p, lambda)
            .ok_or_else(|| Error::Domain(format!("{family} has an empty parameter range here")))?;
        if !(tv >= lo - RANGE_TOL && tv <= hi + RANGE_TOL) {
            return Err(Error::Domain(format!("{family}: t={tv} outside [{lo}, {hi}]")));
        }
        tv.clamp(lo, hi)
    } else {
        0.0
    };
    let mut pts = quantile_endpoints(family, p, lambda, tv);
    for w in pts.windows(2) {
        if w[1] < w[0] - RANGE_TOL {
            return Err(Error::Domain(format!("{family}: endpoints out of order at p={p}, lambda={lambda}, t={tv}")));
        }
    }
    if pts.iter().any(|&x| !(-RANGE_TOL..=1.0 + RANGE_TOL).contains(&x)) {
        return Err(Error::Domain(format!("{family}: endpoints leave [0,1] at p={p}, lambda={lambda}, t={tv}")));
    }
    for x in pts.iter_mut() {
        *x = x.clamp(0.0, 1.0);
    }
    for i in 1..pts.len() {
        if pts[i] < pts[i - 1] {
            pts[i] = pts[i - 1];
        }
    }
    let mut set = QuantileSet::new(pts)?;
    if family.is_mirrored() {
        set = set.mirror();
    }
    Ok(CandidateSet { family, p, lambda, t: family.takes_parameter().then_some(tv), set })
}

/// Perimeter of a candidate from the family's closed form.
pub fn closed_form_perimeter(m: &Measure, family: Family, p: f64, l: f64, t: Option<f64>) -> f64 {
    let j = |x: f64| m.j(x);
    let t = t.unwrap_or(0.0);
    match family.base() {
        Family::E1 => 2.0 * j(l / 4.0) + 2.0 * j(p / 2.0 + l / 4.0),
        Family::E2 => j((p + l) / 2.0) + j((p - l) / 2.0),
        Family::E3 => j((l - p) / 2.0) + j((l + p) / 2.0),
        Family::E4 => 2.0 * j(p / 2.0 - l / 4.0) + 2.0 * j(0.5 - l / 4.0),
        Family::E5 => j(p - l / 2.0) + 2.0 * j(0.5 - l / 4.0),
        Family::E6 => j((p - t) / 2.0) + 2.0 * j(p / 2.0 + l / 4.0) + j((l + t - p) / 2.0),
        Family::E7 => j((l - t) / 2.0) + j((p + l) / 2.0) + j((p - t) / 2.0),
        _ => unreachable!(),
    }
}

impl CandidateSet {
    pub fn perimeter(&self, m: &Measure) -> f64 {
        self.set.perimeter(m)
    }

    pub fn closed_form_perimeter(&self, m: &Measure) -> f64 {
        closed_form_perimeter(m, self.family, self.p, self.lambda, self.t)
    }
}

/// `num` evenly spaced admissible values of the E6/E7 parameter for which the
/// family realizes a valid set.
pub fn parameter_sweep(family: Family, p: f64, lambda: f64, num: usize) -> Vec<f64> {
    let Some((lo, hi)) = family.parameter_range(p, lambda) else {
        return Vec::new();
    };
    let num = num.max(1);
    (0..num)
        .map(|i| if num == 1 { lo } else { lo + (hi - lo) * i as f64 / (num - 1) as f64 })
        .filter(|&t| candidate(family, p, lambda, Some(t)).is_ok())
        .collect()
}

/// Families competing at `(p, λ)`.
pub fn candidate_menu(p: f64, lambda: f64, origin_free: bool) -> Vec<Family> {
    use Family::*;
    let side = if lambda <= p { E2 } else { E3 };
    if !origin_free {
        vec![E1, side, E4]
    } else if lambda <= p {
        vec![E1, E2]
    } else if lambda <= 1.0 - p {
        vec![E1, E3]
    } else {
        vec![E1]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinCandidate {
    pub family: Family,
    pub perimeter: f64,
    /// Another family in the menu attains the same perimeter.
    pub tie: bool,
    pub values: Vec<(Family, f64)>,
}

fn tied(a: f64, b: f64) -> bool {
    (a - b).abs() <= TIE_RTOL * a.abs().max(b.abs()) + 1e-15
}

/// Smallest closed-form candidate perimeter at `(p, λ)`; ties go to the lowest family.
pub fn min_candidate(m: &Measure, p: f64, lambda: f64, origin_free: bool) -> Result<MinCandidate, Error> {
    if !((0.0..=0.5 + RANGE_TOL).contains(&p) && lambda >= -RANGE_TOL && lambda <= 2.0 * p + RANGE_TOL) {
        return Err(Error::Domain(format!("(p,lambda)=({p},{lambda}) outside 0<=lambda<=2p<=1")));
    }
    let values: Vec<(Family, f64)> = candidate_menu(p, lambda, origin_free)
        .into_iter()
        .map(|f| (f, closed_form_perimeter(m, f, p, lambda, None)))
        .collect();
    let mut best = values[0];
    for &(f, v) in &values[1..] {
        if v < best.1 && !tied(v, best.1) {
            best = (f, v);
        }
    }
    let tie = values.iter().filter(|(_, v)| tied(*v, best.1)).count() > 1;
    Ok(MinCandidate { family: best.0, perimeter: best.1, tie, values })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegionCell {
    pub p: f64,
    pub lambda: f64,
    /// `P(E1)..P(E4)`; `None` where the family is outside its range or menu.
    pub perimeters: [Option<f64>; 4],
    /// `None` for points outside the triangle `λ ≤ 2p`.
    pub winner: Option<Family>,
    pub tie: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegionMap {
    pub grid_n: usize,
    pub origin_free: bool,
    /// Node `(i, j)` is `cells[i * (grid_n + 1) + j]` with `p = i/(2n)`, `λ = j/n`.
    pub cells: Vec<RegionCell>,
    /// `(p₁, p₂)` refined by bisection on the triangle's edges.
    pub corners: Option<(f64, f64)>,
    /// `(p₁, p₂)` read off the labels along the triangle's top edge.
    pub grid_corners: Option<(f64, f64)>,
    /// Samples `(p, λ₀(p))` for `p ∈ [p₁, p₂]`.
    pub lambda0: Vec<(f64, f64)>,
    /// Samples `(λ, p₀(λ))` for `λ ∈ [1-p₂, 1]`.
    pub p0: Vec<(f64, f64)>,
    /// Samples `(p, λ)` of the E1/E2 switch for `λ ≤ p`.
    pub e1_e2: Vec<(f64, f64)>,
}

impl RegionMap {
    pub fn cell(&self, i: usize, j: usize) -> &RegionCell {
        &self.cells[i * (self.grid_n + 1) + j]
    }
}

/// `P(E4) - P(E3)` at `(p, λ)`.
fn e4_minus_e3(m: &Measure, p: f64, l: f64) -> f64 {
    closed_form_perimeter(m, Family::E4, p, l, None) - closed_form_perimeter(m, Family::E3, p, l, None)
}

fn e1_minus_e2(m: &Measure, p: f64, l: f64) -> f64 {
    closed_form_perimeter(m, Family::E1, p, l, None) - closed_form_perimeter(m, Family::E2, p, l, None)
}

const CURVE_TOL: f64 = 1e-13;

/// `λ₀(p)`: where E4 overtakes E3 along the column `p`.
pub fn lambda0(m: &Measure, p: f64) -> Option<f64> {
    let lo = p;
    let hi = (2.0 * p).min(1.0 - p);
    if hi < lo {
        return None;
    }
    let (a, b) = (e4_minus_e3(m, p, lo), e4_minus_e3(m, p, hi));
    if a > 0.0 && b <= 0.0 {
        Some(bisect(|l| e4_minus_e3(m, p, l), lo, hi, CURVE_TOL))
    } else {
        None
    }
}

/// `p₀(λ)`: where E3 overtakes E4 along the row `λ`, for `λ ≥ 1-p`.
pub fn p0_curve(m: &Measure, lambda: f64) -> Option<f64> {
    let lo = (0.5 * lambda).max(1.0 - lambda);
    let hi = 0.5;
    if lo > hi {
        return None;
    }
    let (a, b) = (e4_minus_e3(m, lo, lambda), e4_minus_e3(m, hi, lambda));
    if a <= 0.0 && b >= 0.0 {
        Some(bisect(|p| e4_minus_e3(m, p, lambda), lo, hi, CURVE_TOL))
    } else {
        None
    }
}

/// E4 vs E3 balance along the top edge of the E3 region, `λ = min(2p, 1-p)`.
fn top_edge_balance(m: &Measure, p: f64) -> f64 {
    e4_minus_e3(m, p, (2.0 * p).min(1.0 - p))
}

/// Corner points where the E4 region meets `λ = 2p` and `λ = 1-p`.
pub fn corner_points(m: &Measure) -> Option<(f64, f64)> {
    let n = 2000;
    let g = |p: f64| top_edge_balance(m, p);
    let mut p1 = None;
    let mut p2 = None;
    let mut prev = (1e-6, g(1e-6));
    for i in 1..=n {
        let p = 0.5 * i as f64 / n as f64;
        let v = g(p);
        if p1.is_none() && prev.1 > 0.0 && v <= 0.0 {
            p1 = Some(bisect(g, prev.0, p, CURVE_TOL));
        } else if p1.is_some() && prev.1 < 0.0 && v >= 0.0 {
            p2 = Some(bisect(g, prev.0, p, CURVE_TOL));
            break;
        }
        prev = (p, v);
    }
    Some((p1?, p2?))
}

/// First sign change of `P(E1) - P(E2)` in `λ ∈ (0, p]`.
pub fn e1_e2_switch(m: &Measure, p: f64) -> Option<f64> {
    let steps = 64;
    let d = |l: f64| e1_minus_e2(m, p, l);
    let mut prev = (p * 1e-3, d(p * 1e-3));
    for k in 1..=steps {
        let l = p * k as f64 / steps as f64;
        let v = d(l);
        if prev.1.signum() != v.signum() && v != 0.0 {
            return Some(bisect(d, prev.0, l, CURVE_TOL));
        }
        prev = (l, v);
    }
    None
}

fn region_cell(m: &Measure, p: f64, lambda: f64, origin_free: bool) -> RegionCell {
    if lambda > 2.0 * p + RANGE_TOL {
        return RegionCell { p, lambda, perimeters: [None; 4], winner: None, tie: false };
    }
    let lambda = lambda.min(2.0 * p);
    let mc = min_candidate(m, p, lambda, origin_free).expect("inside the triangle");
    let mut perimeters = [None; 4];
    for &(f, v) in &mc.values {
        perimeters[f as usize] = Some(v);
    }
    RegionCell { p, lambda, perimeters, winner: Some(mc.family), tie: mc.tie }
}

/// Labels the node grid `p = i/(2n)`, `λ = j/n` of the triangle `λ ≤ 2p ≤ 1`
/// with the winning family and extracts the boundary curves.
pub fn region_map(m: &Measure, grid_n: usize, origin_free: bool) -> Result<RegionMap, Error> {
    if grid_n < 8 {
        return Err(Error::InvalidParameter(format!("grid_n must be at least 8, got {grid_n}")));
    }
    let n = grid_n;
    let columns: Vec<Vec<RegionCell>> = (0..=n)
        .into_par_iter()
        .map(|i| {
            let p = i as f64 / (2 * n) as f64;
            (0..=n).map(|j| region_cell(m, p, j as f64 / n as f64, origin_free)).collect()
        })
        .collect();
    let cells: Vec<RegionCell> = columns.into_iter().flatten().collect();

    let mut map = RegionMap {
        grid_n,
        origin_free,
        cells,
        corners: None,
        grid_corners: None,
        lambda0: Vec::new(),
        p0: Vec::new(),
        e1_e2: Vec::new(),
    };

    let samples = grid_n.max(64);
    map.e1_e2 = (1..samples)
        .into_par_iter()
        .filter_map(|k| {
            let p = 0.5 * k as f64 / samples as f64;
            e1_e2_switch(m, p).map(|l| (p, l))
        })
        .collect();

    if origin_free {
        return Ok(map);
    }

    map.grid_corners = grid_corner_estimates(&map);
    if let Some((p1, p2)) = corner_points(m) {
        map.corners = Some((p1, p2));
        let mut l0: Vec<(f64, f64)> = (1..samples)
            .into_par_iter()
            .filter_map(|k| {
                let p = p1 + (p2 - p1) * k as f64 / samples as f64;
                lambda0(m, p).map(|l| (p, l))
            })
            .collect();
        l0.insert(0, (p1, 2.0 * p1));
        l0.push((p2, 1.0 - p2));
        map.lambda0 = l0;
        let lam_lo = 1.0 - p2;
        let mut pc: Vec<(f64, f64)> = (1..samples)
            .into_par_iter()
            .filter_map(|k| {
                let l = lam_lo + (1.0 - lam_lo) * k as f64 / samples as f64;
                p0_curve(m, l).map(|p| (l, p))
            })
            .collect();
        pc.insert(0, (lam_lo, p2));
        pc.push((1.0, 0.5));
        map.p0 = pc;
    }
    Ok(map)
}

// Columns whose node nearest the top edge `λ = min(2p, 1-p)` is labelled E4.
fn grid_corner_estimates(map: &RegionMap) -> Option<(f64, f64)> {
    let n = map.grid_n;
    let mut hits = Vec::new();
    for i in 1..=n {
        let p = i as f64 / (2 * n) as f64;
        let top = (2.0 * p).min(1.0 - p);
        let j = ((top * n as f64).round() as usize).min(n);
        let j = if j as f64 / n as f64 > 2.0 * p + RANGE_TOL { j - 1 } else { j };
        if map.cell(i, j).winner == Some(Family::E4) {
            hits.push(p);
        }
    }
    Some((*hits.first()?, *hits.last()?))
}
