//! Brute-force verifier: exact minimization of perimeter over unions of at
//! most `k` grid intervals of `[0, 1]` (quantile coordinates), under measure
//! and asymmetry constraints. Uses no closed-form candidate.
//!
//! The search is a dynamic program over grid cells. A set is a 0/1 labelling
//! of the `n` cells; its perimeter is the sum of `J(i/n)` over grid points
//! where the label changes. The state after `i` cells records the last label,
//! the number of components opened, the number of cells taken and, when the
//! asymmetry is constrained, the number of cells taken outside the reference
//! shape. Every labelling is accounted for, so the result is the exact discrete
//! minimum; [`exhaustive_at_count`] enumerates endpoint tuples directly and is
//! used to cross-check on small grids.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::extremals::{self, candidate, min_candidate, psi, Family};
use crate::interval_sets::{reference_set, QuantileSet, ReferenceShape};
use crate::measures::Measure;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleConfig {
    pub grid_n: usize,
    pub max_components: usize,
    pub measure_tol: f64,
    pub asymmetry_tol: f64,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self::with_grid(200)
    }
}

impl OracleConfig {
    /// Grid of `grid_n` cells, three components, tolerances `2/grid_n`.
    pub fn with_grid(grid_n: usize) -> Self {
        let tol = 2.0 / grid_n as f64;
        Self { grid_n, max_components: 3, measure_tol: tol, asymmetry_tol: tol, seed: 0 }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let n = self.grid_n;
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!("grid_n must be even and >= 4, got {n}")));
        }
        if !(1..=4).contains(&self.max_components) {
            return Err(Error::InvalidParameter(format!(
                "max_components must lie in [1,4], got {}",
                self.max_components
            )));
        }
        let floor = 2.0 / n as f64 - 1e-12;
        if !(self.measure_tol >= floor && self.asymmetry_tol >= floor) {
            return Err(Error::InvalidParameter(format!(
                "tolerances ({}, {}) are below 2/grid_n = {}: the grid is too coarse",
                self.measure_tol,
                self.asymmetry_tol,
                2.0 / n as f64
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult {
    pub min_perimeter: f64,
    pub witness: QuantileSet,
    pub measure_error: f64,
    /// `None` when no asymmetry target was given.
    pub asymmetry_error: Option<f64>,
    /// DP states expanded.
    pub enumerated_count: u64,
    /// Number of grid sets attaining the minimum (saturating).
    pub optimal_count: u64,
    /// More optimal sets exist than the witness and its mirror image.
    pub tie: bool,
}

const INF: f64 = f64::INFINITY;

fn tied(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-11 * a.abs().max(b.abs())
}

/// DP over cells for sets of exactly `count` cells.
struct Dp<'a> {
    n: usize,
    k: usize,
    count: usize,
    /// Cell `i` lies in the reference shape; `None` when asymmetry is not tracked.
    in_ref: Option<&'a [bool]>,
    e_cap: usize,
    origin_free: bool,
}

/// Per-`e` optimum at the final layer, with back pointers for reconstruction.
struct DpTable {
    n: usize,
    k: usize,
    count: usize,
    e_cap: usize,
    states: usize,
    /// Best `(cost, ways, final state)` for each number `e` of cells outside the reference.
    best: Vec<Option<(f64, u64, usize)>>,
    back: Vec<u64>,
    expanded: u64,
}

impl Dp<'_> {
    fn index(&self, inside: usize, c: usize, a: usize, e: usize) -> usize {
        ((inside * (self.k + 1) + c) * (self.count + 1) + a) * (self.e_cap + 1) + e
    }

    fn run(&self, jv: &[f64]) -> DpTable {
        let (n, k, count, ecap) = (self.n, self.k, self.count, self.e_cap);
        let states = 2 * (k + 1) * (count + 1) * (ecap + 1);
        let mut cost = vec![INF; states];
        let mut ways = vec![0u64; states];
        let mut next_cost = vec![INF; states];
        let mut next_ways = vec![0u64; states];
        let mut back = vec![0u64; (n * states).div_ceil(64)];
        let mut expanded = 0u64;
        cost[self.index(0, 0, 0, 0)] = 0.0;
        ways[self.index(0, 0, 0, 0)] = 1;
        for i in 0..n {
            next_cost.fill(INF);
            next_ways.fill(0);
            let outside = self.in_ref.is_some_and(|r| !r[i]);
            let a_lo = count.saturating_sub(n - i);
            let a_hi = i.min(count);
            for pin in 0..2 {
                for c in 0..=k {
                    for a in a_lo..=a_hi {
                        for e in 0..=a.min(ecap) {
                            let s = self.index(pin, c, a, e);
                            let cs = cost[s];
                            if cs == INF {
                                continue;
                            }
                            expanded += 1;
                            for cin in 0..2 {
                                if self.origin_free && i == n / 2 && pin == 1 && cin == 1 {
                                    continue;
                                }
                                let (a2, e2) = if cin == 1 { (a + 1, e + outside as usize) } else { (a, e) };
                                if a2 > count || e2 > ecap || count - a2 > n - i - 1 {
                                    continue;
                                }
                                let c2 = c + (cin == 1 && pin == 0) as usize;
                                if c2 > k {
                                    continue;
                                }
                                let v = if pin != cin { cs + jv[i] } else { cs };
                                let t = self.index(cin, c2, a2, e2);
                                let cur = next_cost[t];
                                if cur == INF || (v < cur && !tied(v, cur)) {
                                    next_cost[t] = v;
                                    next_ways[t] = ways[s];
                                    let bit = i * states + t;
                                    if pin == 1 {
                                        back[bit / 64] |= 1 << (bit % 64);
                                    } else {
                                        back[bit / 64] &= !(1 << (bit % 64));
                                    }
                                } else if tied(v, cur) {
                                    next_ways[t] = next_ways[t].saturating_add(ways[s]);
                                }
                            }
                        }
                    }
                }
            }
            std::mem::swap(&mut cost, &mut next_cost);
            std::mem::swap(&mut ways, &mut next_ways);
        }
        let mut best: Vec<Option<(f64, u64, usize)>> = vec![None; ecap + 1];
        for (e, slot) in best.iter_mut().enumerate() {
            for inside in 0..2 {
                for c in 0..=k {
                    let s = self.index(inside, c, count, e);
                    let v = cost[s];
                    if v == INF {
                        continue;
                    }
                    *slot = match *slot {
                        None => Some((v, ways[s], s)),
                        Some((b, w, bs)) if tied(v, b) => Some((b.min(v), w.saturating_add(ways[s]), bs)),
                        Some((b, _, _)) if v < b => Some((v, ways[s], s)),
                        keep => keep,
                    };
                }
            }
        }
        DpTable { n, k, count, e_cap: ecap, states, best, back, expanded }
    }
}

impl DpTable {
    fn decode(&self, s: usize) -> (usize, usize, usize, usize) {
        let e = s % (self.e_cap + 1);
        let r = s / (self.e_cap + 1);
        let a = r % (self.count + 1);
        let r = r / (self.count + 1);
        let c = r % (self.k + 1);
        let inside = r / (self.k + 1);
        (inside, c, a, e)
    }

    fn encode(&self, inside: usize, c: usize, a: usize, e: usize) -> usize {
        ((inside * (self.k + 1) + c) * (self.count + 1) + a) * (self.e_cap + 1) + e
    }

    /// Cell labels of the optimal set ending in final state `s`.
    fn reconstruct(&self, mut s: usize, in_ref: Option<&[bool]>) -> Vec<bool> {
        let mut cells = vec![false; self.n];
        for i in (0..self.n).rev() {
            let (inside, c, a, e) = self.decode(s);
            let bit = i * self.states + s;
            let pin = ((self.back[bit / 64] >> (bit % 64)) & 1) as usize;
            cells[i] = inside == 1;
            let outside = in_ref.is_some_and(|r| !r[i]);
            let (a0, e0) = if inside == 1 { (a - 1, e - outside as usize) } else { (a, e) };
            let c0 = c - (inside == 1 && pin == 0) as usize;
            s = self.encode(pin, c0, a0, e0);
        }
        cells
    }
}

fn cells_to_set(cells: &[bool]) -> QuantileSet {
    let n = cells.len() as f64;
    let mut pts = Vec::new();
    let mut prev = false;
    for (i, &c) in cells.iter().enumerate() {
        if c != prev {
            pts.push(i as f64 / n);
            prev = c;
        }
    }
    if prev {
        pts.push(1.0);
    }
    QuantileSet::new(pts).expect("grid endpoints are ordered")
}

/// Reference-shape membership of each cell for a set of `count` cells.
fn reference_cells(n: usize, count: usize) -> Vec<bool> {
    let half = count / 2;
    if 2 * count < n {
        (0..n).map(|i| i < half || i >= n - half).collect()
    } else {
        let lo = (n - count) / 2;
        (0..n).map(|i| i >= lo && i < lo + count).collect()
    }
}

/// Optimal grid sets with exactly `count` cells, one entry per number `e` of
/// cells outside the reference shape (asymmetry `2e/n`).
///
/// With `track_asymmetry = false` a single entry is returned. `count` must be
/// even and, when tracking, different from `n/2`.
pub fn min_perimeter_at_count(
    m: &Measure,
    count: usize,
    cfg: &OracleConfig,
    origin_free: bool,
    track_asymmetry: bool,
) -> Result<Vec<Option<OracleResult>>, Error> {
    let n = cfg.grid_n;
    if count > n {
        return Err(Error::Domain(format!("count {count} exceeds grid {n}")));
    }
    if track_asymmetry && (!count.is_multiple_of(2) || 2 * count == n) {
        return Err(Error::Domain(format!("count {count} has no grid-aligned reference shape")));
    }
    let jv: Vec<f64> = (0..=n).map(|i| m.j(i as f64 / n as f64)).collect();
    let refs = track_asymmetry.then(|| reference_cells(n, count));
    let e_cap = if track_asymmetry { count.min(n - count) } else { 0 };
    Ok(solve(m, &jv, count, cfg, origin_free, refs.as_deref(), e_cap))
}

fn solve(
    m: &Measure,
    jv: &[f64],
    count: usize,
    cfg: &OracleConfig,
    origin_free: bool,
    refs: Option<&[bool]>,
    e_cap: usize,
) -> Vec<Option<OracleResult>> {
    let dp = Dp { n: cfg.grid_n, k: cfg.max_components, count, in_ref: refs, e_cap, origin_free };
    let table = dp.run(jv);
    let expanded = table.expanded;
    table
        .best
        .iter()
        .map(|slot| {
            slot.map(|(_, ways, s)| {
                let witness = cells_to_set(&table.reconstruct(s, refs));
                let self_mirror = witness.symmetric_difference_measure(&witness.mirror()) < 1e-12;
                OracleResult {
                    min_perimeter: witness.perimeter(m),
                    measure_error: 0.0,
                    asymmetry_error: None,
                    enumerated_count: expanded,
                    optimal_count: ways,
                    tie: ways > if self_mirror { 1 } else { 2 },
                    witness,
                }
            })
        })
        .collect()
}

fn band_counts(p: f64, cfg: &OracleConfig, exclude_half: bool) -> Vec<usize> {
    let n = cfg.grid_n;
    (0..=n)
        .step_by(2)
        .filter(|&a| (a as f64 / n as f64 - p).abs() <= cfg.measure_tol + 1e-12)
        .filter(|&a| !(exclude_half && 2 * a == n))
        .collect()
}

/// Minimum perimeter over grid sets with at most `max_components` intervals,
/// measure within `measure_tol` of `p` and, if given, asymmetry within
/// `asymmetry_tol` of `lambda_target`.
///
/// Only even cell counts are searched so that the reference shape is grid
/// aligned; with an asymmetry target the count `n/2` (where the asymmetry is a
/// minimum over two shapes) is skipped.
pub fn brute_min_perimeter(
    m: &Measure,
    p: f64,
    lambda_target: Option<f64>,
    cfg: &OracleConfig,
    origin_free: bool,
) -> Result<OracleResult, Error> {
    let mut all = brute_min_perimeter_many(m, p, &[lambda_target], cfg, origin_free)?;
    all.pop().expect("one target")
}

/// [`brute_min_perimeter`] for several asymmetry targets at the same `p`,
/// sharing one DP per cell count.
pub fn brute_min_perimeter_many(
    m: &Measure,
    p: f64,
    targets: &[Option<f64>],
    cfg: &OracleConfig,
    origin_free: bool,
) -> Result<Vec<Result<OracleResult, Error>>, Error> {
    cfg.validate()?;
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("p must lie in (0,1), got {p}")));
    }
    let lam_max = 2.0 * p.min(1.0 - p);
    for l in targets.iter().flatten() {
        if !(*l >= 0.0 && *l <= lam_max + 1e-12) {
            return Err(Error::Domain(format!("lambda {l} outside [0, {lam_max}]")));
        }
    }
    let n = cfg.grid_n;
    let track = targets.iter().any(|t| t.is_some());
    let counts = band_counts(p, cfg, track);
    let jv: Vec<f64> = (0..=n).map(|i| m.j(i as f64 / n as f64)).collect();
    let lam_hi = targets.iter().flatten().fold(0.0f64, |a, &l| a.max(l)) + cfg.asymmetry_tol;
    let per_count: Vec<(usize, Vec<Option<OracleResult>>, Option<Vec<Option<OracleResult>>>)> = counts
        .par_iter()
        .map(|&a| {
            let tracked = track.then(|| {
                let refs = reference_cells(n, a);
                let e_cap = ((lam_hi * n as f64 / 2.0).floor() as usize).min(a.min(n - a));
                solve(m, &jv, a, cfg, origin_free, Some(&refs), e_cap)
            });
            let plain = if targets.iter().any(|t| t.is_none()) {
                solve(m, &jv, a, cfg, origin_free, None, 0)
            } else {
                Vec::new()
            };
            (a, plain, tracked)
        })
        .collect();

    let results = targets
        .iter()
        .map(|target| {
            let mut best: Option<OracleResult> = None;
            let mut ways = 0u64;
            let mut expanded = 0u64;
            for (_, plain, tracked) in &per_count {
                let entries: Vec<&OracleResult> = match target {
                    None => plain.iter().flatten().collect(),
                    Some(l) => tracked
                        .as_ref()
                        .map(|v| {
                            v.iter()
                                .enumerate()
                                .filter(|(e, _)| (2.0 * *e as f64 / n as f64 - l).abs() <= cfg.asymmetry_tol + 1e-12)
                                .filter_map(|(_, r)| r.as_ref())
                                .collect()
                        })
                        .unwrap_or_default(),
                };
                if let Some(r) = plain.iter().flatten().next().or(tracked.as_ref().and_then(|v| v.iter().flatten().next())) {
                    expanded = expanded.saturating_add(r.enumerated_count);
                }
                for r in entries {
                    match &best {
                        Some(b) if tied(r.min_perimeter, b.min_perimeter) => ways = ways.saturating_add(r.optimal_count),
                        Some(b) if r.min_perimeter >= b.min_perimeter => {}
                        _ => {
                            ways = r.optimal_count;
                            best = Some(r.clone());
                        }
                    }
                }
            }
            let mut best = best.ok_or_else(|| {
                Error::Infeasible(format!(
                    "no grid set with <= {} components has measure {p} +- {} and asymmetry {target:?} +- {} on a {n}-cell grid",
                    cfg.max_components, cfg.measure_tol, cfg.asymmetry_tol
                ))
            })?;
            let self_mirror = best.witness.symmetric_difference_measure(&best.witness.mirror()) < 1e-12;
            best.optimal_count = ways;
            best.tie = ways > if self_mirror { 1 } else { 2 };
            best.enumerated_count = expanded;
            best.measure_error = (best.witness.measure() - p).abs();
            best.asymmetry_error = target.map(|l| (best.witness.asymmetry() - l).abs());
            Ok(best)
        })
        .collect();
    Ok(results)
}

/// Direct enumeration of all endpoint tuples on the grid, for small grids.
///
/// Returns, for sets of exactly `count` cells, the minimum perimeter for each
/// asymmetry value `2e/n` (measured with [`QuantileSet::asymmetry`]).
pub fn exhaustive_at_count(
    m: &Measure,
    count: usize,
    cfg: &OracleConfig,
    origin_free: bool,
) -> Result<(Vec<Option<f64>>, u64), Error> {
    let n = cfg.grid_n;
    if n > 64 {
        return Err(Error::InvalidParameter(format!("exhaustive enumeration is limited to 64 cells, got {n}")));
    }
    let mut best: Vec<Option<f64>> = vec![None; n + 1];
    let mut visited = 0u64;
    let mut pts: Vec<usize> = Vec::with_capacity(2 * cfg.max_components);
    fn rec(
        m: &Measure,
        n: usize,
        k: usize,
        count: usize,
        origin_free: bool,
        start: usize,
        taken: usize,
        pts: &mut Vec<usize>,
        best: &mut [Option<f64>],
        visited: &mut u64,
    ) {
        if taken == count && !pts.is_empty() || count == 0 && pts.is_empty() {
            *visited += 1;
            let set = QuantileSet::new(pts.iter().map(|&i| i as f64 / n as f64).collect()).unwrap();
            if !(origin_free && set.contains_origin()) {
                let e = (set.asymmetry() * n as f64 / 2.0).round() as usize;
                let v = set.perimeter(m);
                if best[e].is_none_or(|b| v < b) {
                    best[e] = Some(v);
                }
            }
            if count == 0 {
                return;
            }
        }
        if pts.len() / 2 == k || taken >= count {
            return;
        }
        for a in start..n {
            let room = count - taken;
            for b in a + 1..=(a + room).min(n) {
                pts.push(a);
                pts.push(b);
                rec(m, n, k, count, origin_free, b + 1, taken + b - a, pts, best, visited);
                pts.pop();
                pts.pop();
            }
        }
    }
    rec(m, n, cfg.max_components, count, origin_free, 0, 0, &mut pts, &mut best, &mut visited);
    Ok((best, visited))
}

/// Which shifting case a trial exercised.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ShiftCase {
    /// Measure < 1/2, `a ≥ 0`, shifted right.
    SmallRightOfOrigin,
    /// Measure < 1/2, `b ≤ 0`, shifted left.
    SmallLeftOfOrigin,
    /// Measure < 1/2, straddling with `a + b ≥ 0`, shifted left keeping `a' + b' ≥ 0`.
    SmallStraddleLeft,
    /// Mirror of the previous case.
    SmallStraddleRight,
    /// Measure ≥ 1/2, `a + b ≥ 0`, shifted left keeping `a' + b' ≥ 0`.
    LargeLeft,
    /// Mirror of the previous case.
    LargeRight,
}

impl ShiftCase {
    pub const ALL: [ShiftCase; 6] = [
        ShiftCase::SmallRightOfOrigin,
        ShiftCase::SmallLeftOfOrigin,
        ShiftCase::SmallStraddleLeft,
        ShiftCase::SmallStraddleRight,
        ShiftCase::LargeLeft,
        ShiftCase::LargeRight,
    ];
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShiftTrial {
    pub case: ShiftCase,
    pub p: f64,
    /// Quantile of the left end before and after the shift.
    pub t: f64,
    pub t_shifted: f64,
    pub perimeter: f64,
    pub shifted_perimeter: f64,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct ShiftingReport {
    pub trials: usize,
    pub per_case: Vec<(ShiftCase, usize)>,
    /// Trials where the shifted perimeter was not strictly smaller.
    pub strict_failures: Vec<ShiftTrial>,
    /// Trials where the shifted perimeter exceeded the original by more than 1e-12.
    pub weak_failures: Vec<ShiftTrial>,
}

/// Minimum quantile displacement of a sampled shift.
pub const MIN_SHIFT: f64 = 1e-3;

fn sample_shift(rng: &mut ChaCha8Rng, case: ShiftCase) -> Option<(f64, f64, f64)> {
    use ShiftCase::*;
    let small = !matches!(case, LargeLeft | LargeRight);
    let p = if small { rng.gen_range(0.002..0.498) } else { rng.gen_range(0.5..0.998) };
    // Ranges of the left-end quantile t before and after the shift.
    let (t_lo, t_hi, mirrored) = match case {
        SmallRightOfOrigin | SmallLeftOfOrigin => (0.5, 1.0 - p, case == SmallLeftOfOrigin),
        SmallStraddleLeft | SmallStraddleRight => ((1.0 - p) / 2.0, 0.5, case == SmallStraddleRight),
        LargeLeft | LargeRight => ((1.0 - p) / 2.0, 1.0 - p, case == LargeRight),
    };
    if t_hi - t_lo < 2.0 * MIN_SHIFT {
        return None;
    }
    let (t, t2) = match case {
        SmallRightOfOrigin | SmallLeftOfOrigin => {
            let t = rng.gen_range(t_lo..t_hi - MIN_SHIFT);
            (t, rng.gen_range(t + MIN_SHIFT..=t_hi))
        }
        _ => {
            let t = rng.gen_range(t_lo + MIN_SHIFT..t_hi);
            (t, rng.gen_range(t_lo..=t - MIN_SHIFT))
        }
    };
    // Mirror through t ↦ 1 - p - t.
    if mirrored {
        Some((p, 1.0 - p - t, 1.0 - p - t2))
    } else {
        Some((p, t, t2))
    }
}

/// Samples intervals and admissible shifts from the three cases of the
/// shifting property and checks that perimeter decreases.
pub fn verify_shifting(m: &Measure, trials: usize, seed: u64) -> ShiftingReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ShiftingReport {
        trials,
        per_case: ShiftCase::ALL.iter().map(|&c| (c, 0)).collect(),
        ..Default::default()
    };
    let mut done = 0;
    while done < trials {
        let ci = rng.gen_range(0..ShiftCase::ALL.len());
        let case = ShiftCase::ALL[ci];
        let Some((p, t, t2)) = sample_shift(&mut rng, case) else { continue };
        done += 1;
        report.per_case[ci].1 += 1;
        let before = psi(m, p, t).expect("sampled inside [0, 1-p]");
        let after = psi(m, p, t2).expect("sampled inside [0, 1-p]");
        let trial = ShiftTrial { case, p, t, t_shifted: t2, perimeter: before, shifted_perimeter: after };
        if after > before + 1e-12 {
            report.weak_failures.push(trial.clone());
        }
        if after >= before {
            report.strict_failures.push(trial);
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationCell {
    pub p: f64,
    pub lambda: f64,
    pub origin_free: bool,
    pub brute: f64,
    pub closed_form: f64,
    pub closed_family: Family,
    pub witness: QuantileSet,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationReport {
    pub grid_n: usize,
    pub bound: f64,
    pub cells: usize,
    /// Largest `brute - closed_form` over the grid.
    pub max_gap: f64,
    /// Most negative `brute - closed_form` (a closed form that beats every grid set would be a defect).
    pub min_gap: f64,
    /// Cells with `|brute - closed_form| > bound`.
    pub mismatches: Vec<ClassificationCell>,
}

/// `sup |J'|` on `(0, 1)`, i.e. `J'(1/2⁻)` for convex `J`.
pub fn lipschitz_j(m: &Measure) -> f64 {
    m.j_prime_half()
}

/// Compares the grid optimum with the closed-form minimum at every grid point
/// `p = a/n < 1/2` (even `a`), `λ = 2e/n ≤ 2p`, in both modes.
pub fn verify_classification(m: &Measure, cfg: &OracleConfig) -> Result<ClassificationReport, Error> {
    cfg.validate()?;
    let n = cfg.grid_n;
    let bound = lipschitz_j(m) * 2.0 * cfg.max_components as f64 / n as f64;
    let jobs: Vec<(usize, bool)> =
        (2..n / 2).step_by(2).flat_map(|a| [(a, false), (a, true)]).collect();
    let rows: Vec<Vec<ClassificationCell>> = jobs
        .par_iter()
        .map(|&(a, of)| {
            let p = a as f64 / n as f64;
            let per_e = min_perimeter_at_count(m, a, cfg, of, true).expect("valid count");
            per_e
                .into_iter()
                .enumerate()
                .filter_map(|(e, r)| {
                    let r = r?;
                    let lambda = 2.0 * e as f64 / n as f64;
                    let mc = min_candidate(m, p, lambda, of).ok()?;
                    Some(ClassificationCell {
                        p,
                        lambda,
                        origin_free: of,
                        brute: r.min_perimeter,
                        closed_form: mc.perimeter,
                        closed_family: mc.family,
                        witness: r.witness,
                    })
                })
                .collect()
        })
        .collect();
    let cells: Vec<ClassificationCell> = rows.into_iter().flatten().collect();
    let gaps = cells.iter().map(|c| c.brute - c.closed_form);
    let max_gap = gaps.clone().fold(f64::NEG_INFINITY, f64::max);
    let min_gap = gaps.fold(f64::INFINITY, f64::min);
    let count = cells.len();
    let mismatches = cells
        .into_iter()
        .filter(|c| (c.brute - c.closed_form).abs() > bound || c.brute < c.closed_form - 1e-12)
        .collect();
    Ok(ClassificationReport { grid_n: n, bound, cells: count, max_gap, min_gap, mismatches })
}

/// The candidate set (over all families, mirrors and sampled parameters)
/// closest to `set` in symmetric-difference measure.
pub fn nearest_family(set: &QuantileSet, p: f64, lambda: f64) -> Option<(Family, f64)> {
    let mut best: Option<(Family, f64)> = None;
    for &f in Family::ALL.iter() {
        if !f.admits(p, lambda) {
            continue;
        }
        let params: Vec<Option<f64>> = if f.takes_parameter() {
            extremals::parameter_sweep(f, p, lambda, 64).into_iter().map(Some).collect()
        } else {
            vec![None]
        };
        for t in params {
            let Ok(cs) = candidate(f, p, lambda, t) else { continue };
            for s in [cs.set.clone(), cs.set.mirror()] {
                let d = set.symmetric_difference_measure(&s);
                if best.is_none_or(|(_, b)| d < b - 1e-12) {
                    best = Some((f.base(), d));
                }
            }
        }
    }
    best
}

/// Whether `set` is, up to `tol`, the optimal shape of its own measure.
pub fn is_reference_shape(set: &QuantileSet, tol: f64) -> bool {
    let p = set.measure();
    [ReferenceShape::ComplementOfInterval, ReferenceShape::SymmetricInterval]
        .iter()
        .any(|&s| set.symmetric_difference_measure(&reference_set(p, s)) <= tol)
}
