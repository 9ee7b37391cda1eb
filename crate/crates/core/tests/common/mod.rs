//! Random instance generators shared by the integration tests.
#![allow(dead_code)]

use isoperim::functional::PiecewiseFunction;
use isoperim::{Measure, QuantileSet};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cauchy(alpha: f64) -> Measure {
    Measure::cauchy(alpha).unwrap()
}

/// `2k` sorted uniform endpoints, `k ≤ max_components`; each outer endpoint is
/// snapped to 0 or 1 with probability 1/4 so that half-lines appear.
pub fn random_set(r: &mut ChaCha8Rng, max_components: usize) -> QuantileSet {
    let k = r.gen_range(1..=max_components);
    let mut pts: Vec<f64> = (0..2 * k).map(|_| r.gen::<f64>()).collect();
    pts.sort_by(f64::total_cmp);
    if r.gen_bool(0.25) {
        pts[0] = 0.0;
    }
    if r.gen_bool(0.25) {
        pts[2 * k - 1] = 1.0;
    }
    QuantileSet::new(pts).unwrap()
}

/// Random set of measure at most 1/2 whose closure avoids the quantile 1/2.
pub fn random_origin_free_set(r: &mut ChaCha8Rng, max_components: usize) -> QuantileSet {
    loop {
        let s = random_set(r, max_components);
        if s.measure() <= 0.5 && s.intervals().all(|(a, b)| !(a <= 0.5 && 0.5 <= b)) && s.measure() > 0.0 {
            return s;
        }
    }
}

/// Piecewise-linear function with breakpoints spread by the measure's quantiles
/// and values in `[-2, 2]`.
pub fn random_function(r: &mut ChaCha8Rng, m: &Measure) -> PiecewiseFunction {
    let n = r.gen_range(2..=8);
    let mut qs: Vec<f64> = (0..n).map(|_| r.gen_range(0.01..0.99)).collect();
    qs.sort_by(f64::total_cmp);
    let mut xs: Vec<f64> = qs.iter().map(|&q| m.quantile(q)).collect();
    xs.dedup_by(|a, b| *a - *b < 1e-9);
    let vs = (0..xs.len()).map(|_| r.gen_range(-2.0..2.0)).collect();
    PiecewiseFunction::new(xs, vs).unwrap()
}

/// [`random_function`] shifted by its median.
pub fn random_median_zero(r: &mut ChaCha8Rng, m: &Measure) -> PiecewiseFunction {
    let u = random_function(r, m);
    u.shift(-u.median(m))
}

/// Non-negative function with support of measure at most 1/2.
pub fn random_small_support(r: &mut ChaCha8Rng, m: &Measure) -> PiecewiseFunction {
    random_median_zero(r, m).positive_part()
}

/// Median-0 function vanishing on a neighbourhood of the origin.
pub fn random_origin_free_function(r: &mut ChaCha8Rng, m: &Measure) -> PiecewiseFunction {
    loop {
        let q_left = r.gen_range(0.1..0.49);
        let q_right = r.gen_range(0.51..0.9);
        let mut xs = Vec::new();
        let mut vs = Vec::new();
        let left = r.gen_range(1..=4);
        let mut ql: Vec<f64> = (0..left).map(|_| r.gen_range(0.005..q_left)).collect();
        ql.sort_by(f64::total_cmp);
        for q in ql {
            xs.push(m.quantile(q));
            vs.push(r.gen_range(-2.0..2.0));
        }
        xs.push(m.quantile(q_left));
        vs.push(0.0);
        xs.push(m.quantile(q_right));
        vs.push(0.0);
        let right = r.gen_range(1..=4);
        let mut qr: Vec<f64> = (0..right).map(|_| r.gen_range(q_right..0.995)).collect();
        qr.sort_by(f64::total_cmp);
        for q in qr {
            xs.push(m.quantile(q));
            vs.push(r.gen_range(-2.0..2.0));
        }
        let mut pairs: Vec<(f64, f64)> = xs.into_iter().zip(vs).collect();
        pairs.dedup_by(|a, b| a.0 - b.0 < 1e-9);
        let (xs, vs): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
        let u = PiecewiseFunction::new(xs, vs).unwrap();
        if u.has_median_zero(m) && u.vanishes_near_origin() && u.oscillation() > 0.0 {
            return u;
        }
    }
}

/// Function with values in `[0, 1]`.
pub fn random_unit_function(r: &mut ChaCha8Rng, m: &Measure) -> PiecewiseFunction {
    let u = random_function(r, m);
    let osc = u.oscillation().max(1e-9);
    let v = u.shift(-u.min_value()).scale(1.0 / osc);
    let vs = v.values().iter().map(|x| x.clamp(0.0, 1.0)).collect();
    PiecewiseFunction::new(v.breakpoints().to_vec(), vs).unwrap()
}
