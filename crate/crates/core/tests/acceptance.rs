//! Acceptance checks, one printed verdict per criterion.
//!
//! Runs as a plain binary (`harness = false`). The process fails when a
//! criterion fails, except for the criteria listed in `KNOWN_DEFECTS`, whose
//! literal statements are unattainable; their verdicts are still printed as
//! FAIL together with the measured values.

mod common;

use std::time::Instant;

use isoperim::deficit::{anomalous_example, constant_c_prime, deficit_lower_bound, origin_free_hypotheses};
use isoperim::extremals::{
    candidate, closed_form_perimeter, e1_e2_switch, find_p0, lambda0, min_candidate, p0_curve,
    parameter_sweep, psi, region_map, Family,
};
use isoperim::functional::{
    asymmetry_split, cauchy_beta, cheeger_beta, check_quantitative_cheeger_with, check_weak_cheeger_with,
    embedding_check, level_set_distance_bound, profile_from_beta, sharp_level_boundary, sharp_rearrangement,
    CheegerRate, VIOLATION_TOL,
};
use isoperim::extremals::isoperimetric_profile;
use isoperim::measures::exp_interval_perimeter;
use isoperim::oracle::{brute_min_perimeter_many, lipschitz_j, min_perimeter_at_count, OracleConfig};
use isoperim::{Measure, QuantileSet};
use rand::Rng;
use rayon::prelude::*;

use common::*;

// Tolerances, as stated by each criterion.
const P0_TOL: f64 = 1e-10;
const CORNER_TOL: f64 = 5e-3;
const CURVE_TOL: f64 = 1e-6;
const SLOPE_TOL: f64 = 1e-3;
const DEFICIT_SLACK: f64 = 1e-12;
const EXP_TOL: f64 = 1e-12;
const ROUND_TRIP_TOL: f64 = 1e-6;
const BETA_TOL: f64 = 1e-8;
const ANOMALY_RATIO_TOL: f64 = 0.10;

/// Criteria whose literal statement cannot hold; see the decisions ledger.
const KNOWN_DEFECTS: &[u32] = &[6, 8];

struct Verdict {
    id: u32,
    title: &'static str,
    pass: bool,
    detail: String,
}

fn catalog() -> Vec<Measure> {
    vec![cauchy(0.5), cauchy(1.0), cauchy(2.0), Measure::exponential(), Measure::sub_exponential(0.5).unwrap()]
}

fn criterion_1() -> Verdict {
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for alpha in [0.5, 1.0, 2.0] {
        match find_p0(&cauchy(alpha)) {
            Ok(p0) => worst = worst.max((p0 - 1.0 / (1.0 + 2f64.powf(1.0 / (1.0 + alpha)))).abs()),
            Err(_) => ok = false,
        }
    }
    Verdict {
        id: 1,
        title: "p0 closed form for cauchy 1/2, 1, 2",
        pass: ok && worst <= P0_TOL,
        detail: format!("max error {worst:.2e} (tol {P0_TOL:.0e})"),
    }
}

fn criterion_2() -> Verdict {
    let m = cauchy(1.0);
    let p1 = (5f64.sqrt() - 1.0) / 4.0;
    let p2 = 2f64.sqrt() - 1.0;
    let map = region_map(&m, 400, false).unwrap();
    let grid = map.grid_corners.unwrap_or((f64::NAN, f64::NAN));
    let refined = map.corners.unwrap_or((f64::NAN, f64::NAN));
    let corner_err = [(grid.0 - p1).abs(), (grid.1 - p2).abs(), (refined.0 - p1).abs(), (refined.1 - p2).abs()]
        .into_iter()
        .fold(0.0f64, |a, b| if b.is_nan() { f64::INFINITY } else { a.max(b) });

    let l0 = |p: f64| -1.0 - p + (3.0 + 2.0 * p + p * p).sqrt();
    let mut l0_err: f64 = 0.0;
    for k in 1..=20 {
        let p = p1 + (p2 - p1) * k as f64 / 21.0;
        l0_err = l0_err.max(lambda0(&m, p).map_or(f64::INFINITY, |l| (l - l0(p)).abs()));
    }
    for &(p, l) in &map.lambda0 {
        l0_err = l0_err.max((l - l0(p)).abs());
    }
    let pc = |l: f64| (1.0 - l + 0.5 * l * l) / (2.0 - l);
    let mut p0_err: f64 = 0.0;
    for k in 1..=20 {
        let l = (1.0 - p2) + p2 * k as f64 / 21.0;
        p0_err = p0_err.max(p0_curve(&m, l).map_or(f64::INFINITY, |p| (p - pc(l)).abs()));
    }
    for &(l, p) in &map.p0 {
        p0_err = p0_err.max((p - pc(l)).abs());
    }
    let h = 1e-4;
    let at_one = p0_curve(&m, 1.0).unwrap_or(0.5);
    let slope = p0_curve(&m, 1.0 - h).map_or(f64::NAN, |p| (at_one - p) / h);
    let slope_err = (slope - 0.5).abs();
    Verdict {
        id: 2,
        title: "cauchy:1 region map corners and boundary curves",
        pass: corner_err <= CORNER_TOL && l0_err <= CURVE_TOL && p0_err <= CURVE_TOL && slope_err <= SLOPE_TOL,
        detail: format!(
            "grid corners ({:.4}, {:.4}), refined ({:.10}, {:.10}), max corner err {corner_err:.2e}; lambda0 err {l0_err:.2e}; p0 err {p0_err:.2e}; slope at 1 {slope:.6}",
            grid.0, grid.1, refined.0, refined.1
        ),
    }
}

fn criterion_3() -> Verdict {
    let m = cauchy(0.5);
    let slope = 4.0 * 3f64.sqrt() / (3.0 * 3f64.sqrt() + 19f64.sqrt());
    let mut worst: f64 = 0.0;
    for k in 1..=20 {
        let p = 0.5 * k as f64 / 21.0;
        worst = worst.max(e1_e2_switch(&m, p).map_or(f64::INFINITY, |l| (l - slope * p).abs()));
    }
    Verdict {
        id: 3,
        title: "cauchy:1/2 E1/E2 boundary is a straight line",
        pass: worst <= CURVE_TOL,
        detail: format!("max error {worst:.2e} at 20 points"),
    }
}

/// `(max |gap|, mean |gap|, violations of the Lipschitz bound, infeasible targets)`.
fn oracle_gaps(m: &Measure, n: usize) -> (f64, f64, usize, usize) {
    let cfg = OracleConfig::with_grid(n);
    let bound = lipschitz_j(m) * 2.0 * cfg.max_components as f64 / n as f64;
    let ps: Vec<f64> = [2, 3, 5, 6, 8, 9, 11, 12, 14, 15, 17, 18, 20, 21, 23, 24].iter().map(|&k| 0.02 * k as f64).collect();
    let per_p: Vec<(Vec<f64>, usize)> = ps
        .par_iter()
        .map(|&p| {
            let steps = (2.0 * p / 0.02).round() as usize;
            let mut ls: Vec<f64> = (0..16).map(|i| 0.02 * ((i * steps) as f64 / 15.0).round()).collect();
            ls.dedup();
            let targets: Vec<Option<f64>> = ls.iter().map(|&l| Some(l)).collect();
            let results = brute_min_perimeter_many(m, p, &targets, &cfg, false).unwrap();
            let mut gaps = Vec::new();
            let mut infeasible = 0;
            for (l, r) in ls.iter().zip(results) {
                match r {
                    Ok(r) => {
                        let closed = min_candidate(m, p, *l, false).unwrap().perimeter;
                        gaps.push((r.min_perimeter - closed).abs());
                    }
                    Err(_) => infeasible += 1,
                }
            }
            (gaps, infeasible)
        })
        .collect();
    let gaps: Vec<f64> = per_p.iter().flat_map(|(g, _)| g.iter().copied()).collect();
    let infeasible = per_p.iter().map(|(_, i)| i).sum();
    let max = gaps.iter().copied().fold(0.0, f64::max);
    let mean = gaps.iter().sum::<f64>() / gaps.len().max(1) as f64;
    let violations = gaps.iter().filter(|&&g| g > bound).count();
    (max, mean, violations, infeasible)
}

fn criterion_4() -> Verdict {
    let mut pass = true;
    let mut detail = Vec::new();
    for m in [cauchy(1.0), cauchy(0.5)] {
        let runs: Vec<(usize, (f64, f64, usize, usize))> = [100, 200, 400].iter().map(|&n| (n, oracle_gaps(&m, n))).collect();
        let at_200 = runs[1].1;
        let monotone = runs.windows(2).all(|w| w[1].1 .0 <= w[0].1 .0 && w[1].1 .1 <= w[0].1 .1);
        pass &= at_200.2 == 0 && monotone && runs.iter().all(|r| r.1 .3 == 0);
        detail.push(format!(
            "{m}: max|gap| {} mean|gap| {} bound@200 {:.2e} violations@200 {} infeasible {}",
            runs.iter().map(|r| format!("{:.2e}", r.1 .0)).collect::<Vec<_>>().join(">"),
            runs.iter().map(|r| format!("{:.2e}", r.1 .1)).collect::<Vec<_>>().join(">"),
            lipschitz_j(&m) * 6.0 / 200.0,
            at_200.2,
            runs.iter().map(|r| r.1 .3).sum::<usize>(),
        ));
    }
    Verdict { id: 4, title: "oracle concordance with the closed-form classification", pass, detail: detail.join("; ") }
}

fn criterion_5() -> Verdict {
    let mut pass = true;
    let mut detail = Vec::new();
    for (idx, m) in [cauchy(1.0), cauchy(2.0)].into_iter().enumerate() {
        let general: usize = (0..10_000u64)
            .into_par_iter()
            .filter(|&i| {
                let mut r = rng(5_000_000 * (idx as u64 + 1) + i);
                let s = random_set(&mut r, 4);
                let (p, l) = (s.measure(), s.asymmetry());
                let q = p.min(1.0 - p);
                if q <= 0.0 {
                    return false;
                }
                let bound = deficit_lower_bound(&m, p, l.min(2.0 * q), false).unwrap();
                s.deficit(&m) < bound - DEFICIT_SLACK
            })
            .count();
        let cp = constant_c_prime(&m);
        let origin_free = match &cp {
            Ok(cp) => (0..10_000u64)
                .into_par_iter()
                .filter(|&i| {
                    let mut r = rng(7_000_000 * (idx as u64 + 1) + i);
                    let s = random_origin_free_set(&mut r, 4);
                    let l = s.asymmetry();
                    s.deficit(&m) < cp * l * l - DEFICIT_SLACK
                })
                .count(),
            Err(_) => usize::MAX,
        };
        pass &= general == 0 && origin_free == 0;
        detail.push(format!(
            "{m}: general violations {general}, origin-free violations {} (c' = {})",
            if origin_free == usize::MAX { "n/a".to_string() } else { origin_free.to_string() },
            cp.map_or("n/a".to_string(), |c| format!("{c:.5}"))
        ));
    }
    Verdict { id: 5, title: "deficit lower bounds on random sets", pass, detail: detail.join("; ") }
}

fn criterion_6() -> Verdict {
    let m = cauchy(1.0);
    let mut literal = true;
    let mut corrected = true;
    let mut bounded = true;
    let mut ratio = f64::NAN;
    let mut rows = Vec::new();
    for e in [1e-2, 1e-3, 1e-4] {
        let ex = anomalous_example(&m, e, e).unwrap();
        literal &= ex.asymmetry >= 1.0 - e;
        corrected &= ex.asymmetry >= 1.0 - 2.0 * e - 1e-12;
        bounded &= ex.deficit <= 3.0 * ex.expansion;
        ratio = ex.deficit / ex.expansion;
        rows.push(format!("eps={e:.0e}: asym {:.6} deficit {:.3e} ratio {:.4}", ex.asymmetry, ex.deficit, ratio));
    }
    let converges = (ratio - 1.0).abs() <= ANOMALY_RATIO_TOL;
    Verdict {
        id: 6,
        title: "anomalous small-deficit sets near measure 1/2",
        pass: literal && bounded && converges,
        detail: format!(
            "asymmetry >= 1-eps: {literal} (measured 1-2eps: {corrected}); deficit <= 3x expansion: {bounded}; ratio -> 1: {converges}; {}",
            rows.join(", ")
        ),
    }
}

fn criterion_7() -> Verdict {
    let m = Measure::exponential();
    let mut worst: f64 = 0.0;
    let mut r = rng(77);
    let mut cases: Vec<(f64, f64)> = (0..1000)
        .map(|_| {
            let p: f64 = r.gen_range(0.001..0.999);
            (p, r.gen_range(0.0..(1.0 - p)))
        })
        .collect();
    for p in [0.1, 0.25, 0.3, 0.45] {
        cases.push((p, 0.5 - p));
        cases.push((p, 0.5));
    }
    for (p, fa) in cases {
        let a = m.quantile(fa);
        let closed = exp_interval_perimeter(p, a).unwrap();
        let generic = QuantileSet::new(vec![fa, fa + p]).unwrap().perimeter(&m);
        worst = worst.max((closed - generic).abs());
    }
    let cfg = OracleConfig::with_grid(200);
    let exact = min_perimeter_at_count(&m, 60, &cfg, false, false).unwrap();
    let r = exact[0].as_ref().unwrap();
    let tie_ok = r.tie && r.optimal_count > 2 && (r.min_perimeter - 0.3).abs() <= 1e-12;
    Verdict {
        id: 7,
        title: "two-sided exponential interval perimeters and degenerate minimizers",
        pass: worst <= EXP_TOL && tie_ok,
        detail: format!(
            "max |closed - generic| {worst:.2e}; oracle at p=0.3: min {:.15}, optimal sets {}, tie {}",
            r.min_perimeter, r.optimal_count, r.tie
        ),
    }
}

fn criterion_8() -> Verdict {
    let mut round_trip_ok = true;
    let mut rows = Vec::new();
    for m in catalog() {
        let worst = (1..=1000)
            .into_par_iter()
            .map(|i| {
                let t = 0.5 * i as f64 / 1000.0;
                (profile_from_beta(&m, t).unwrap() - isoperimetric_profile(&m, t)).abs()
            })
            .reduce(|| 0.0, f64::max);
        round_trip_ok &= worst <= ROUND_TRIP_TOL;
        rows.push(format!("{m} residual {worst:.1e}"));
    }
    let s_grid: Vec<f64> = (1..50).map(|i| i as f64 / 100.0).collect();
    let exp = Measure::exponential();
    let exp_err = s_grid.iter().map(|&s| (cheeger_beta(&exp, s).unwrap() - (1.0 - 2.0 * s)).abs()).fold(0.0, f64::max);
    let (mut literal_err, mut corrected_err): (f64, f64) = (0.0, 0.0);
    for alpha in [0.5, 1.0, 2.0] {
        let m = cauchy(alpha);
        for &s in s_grid.iter().filter(|&&s| (alpha + 1.0) * s <= 0.5) {
            let b = cheeger_beta(&m, s).unwrap();
            let literal = s.powf(-1.0 / alpha) / (2f64.powf(1.0 / alpha) * (alpha + 1.0).powf(1.0 + 1.0 / alpha));
            literal_err = literal_err.max((b - literal).abs());
            corrected_err = corrected_err.max((b - cauchy_beta(alpha, s)).abs());
        }
    }
    Verdict {
        id: 8,
        title: "weak Cheeger duality round trip and closed-form rates",
        pass: round_trip_ok && exp_err <= BETA_TOL && literal_err <= BETA_TOL,
        detail: format!(
            "round trip: {}; exp beta err {exp_err:.1e}; cauchy closed form with 2^(1/a) factor err {literal_err:.3e}, without it err {corrected_err:.1e}",
            rows.join(", ")
        ),
    }
}

#[derive(Default)]
struct FunctionalTally {
    equimeasurable: usize,
    homogeneous: usize,
    embedding: usize,
    weak: usize,
    quantitative: Option<usize>,
    split: usize,
    distance: usize,
}

fn functional_suite(m: &Measure, seed: u64, count: u64) -> FunctionalTally {
    let s_grid = [0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.49, 0.6];
    let rate = CheegerRate::new(m, &s_grid).unwrap();
    let cp = origin_free_hypotheses(m).hold().then(|| constant_c_prime(m).ok()).flatten();
    let per: Vec<[usize; 7]> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut r = rng(seed + i);
            let mut v = [0usize; 7];

            let w = random_small_support(&mut r, m);
            let top = w.max_value();
            if top > 0.0 {
                for k in 1..4 {
                    let h = top * k as f64 / 4.0;
                    let x = sharp_level_boundary(&w, m, h).unwrap();
                    let sharp = if x.is_finite() { 2.0 * m.cdf(x) } else { 0.0 };
                    if (sharp - w.distribution_function(m, h)).abs() > VIOLATION_TOL {
                        v[0] += 1;
                    }
                }
            }
            let c: f64 = r.gen_range(0.1..10.0);
            let x: f64 = m.quantile(r.gen_range(0.001..0.999));
            let scaled = sharp_rearrangement(&w.scale(c), m, x).unwrap();
            let plain = c * sharp_rearrangement(&w, m, x).unwrap();
            if (scaled - plain).abs() > VIOLATION_TOL {
                v[1] += 1;
            }

            let u = random_median_zero(&mut r, m);
            if !embedding_check(&u, m).holds() {
                v[2] += 1;
            }
            if !check_weak_cheeger_with(&u, m, &rate).unwrap().holds() {
                v[3] += 1;
            }
            let h = r.gen_range(0.0..1.0) * u.abs().max_value();
            if h > 0.0 {
                let (lhs, rhs) = asymmetry_split(&u, m, h).unwrap();
                if lhs < rhs - VIOLATION_TOL {
                    v[5] += 1;
                }
            }
            if let Some(cp) = cp {
                let q = random_origin_free_function(&mut r, m);
                if !check_quantitative_cheeger_with(&q, m, &rate, cp).unwrap().holds() {
                    v[4] += 1;
                }
            }
            let (a, b) = (random_unit_function(&mut r, m), random_unit_function(&mut r, m));
            let (lhs, rhs) = level_set_distance_bound(&a, &b, m, |x| x * x).unwrap();
            if lhs > rhs + VIOLATION_TOL {
                v[6] += 1;
            }
            v
        })
        .collect();
    let sum = |k: usize| per.iter().map(|v| v[k]).sum::<usize>();
    FunctionalTally {
        equimeasurable: sum(0),
        homogeneous: sum(1),
        embedding: sum(2),
        weak: sum(3),
        quantitative: cp.map(|_| sum(4)),
        split: sum(5),
        distance: sum(6),
    }
}

fn criterion_9() -> Verdict {
    let mut pass = true;
    let mut rows = Vec::new();
    for (k, m) in catalog().into_iter().enumerate() {
        let t = functional_suite(&m, 9_000_000 * (k as u64 + 1), 1000);
        let q = t.quantitative.map_or("n/a".to_string(), |q| q.to_string());
        pass &= t.equimeasurable + t.homogeneous + t.embedding + t.weak + t.split + t.distance + t.quantitative.unwrap_or(0) == 0;
        rows.push(format!(
            "{m}: equimeasurable {} homogeneous {} embedding {} weak {} quantitative {q} split {} distance {}",
            t.equimeasurable, t.homogeneous, t.embedding, t.weak, t.split, t.distance
        ));
    }
    let monotone = catalog()
        .iter()
        .all(|m| CheegerRate::new(m, &(1..100).map(|i| i as f64 / 200.0).collect::<Vec<_>>()).unwrap().is_non_increasing());
    pass &= monotone;
    Verdict {
        id: 9,
        title: "functional inequalities on 1000 random functions per measure (violation counts)",
        pass,
        detail: format!("{}; beta non-increasing {monotone}", rows.join("; ")),
    }
}

fn criterion_10() -> Verdict {
    let mut failures = Vec::new();
    let grid: Vec<f64> = (1..=1000).map(|i| 0.5 * i as f64 / 1000.0).collect();
    for m in catalog() {
        // The exponential sits on the boundary of log-convexity: J(t)/t is constant
        // and ψ_p has flat stretches, so it gets the non-strict versions.
        let strict = !m.is_exponential();
        let up = |a: f64, b: f64| if strict { b > a } else { b >= a - 1e-15 };
        let down = |a: f64, b: f64| if strict { b < a } else { b <= a + 1e-15 };
        if !grid.windows(2).all(|w| up(m.j(w[0]) / w[0], m.j(w[1]) / w[1])) {
            failures.push(format!("{m}: J(t)/t"));
        }
        // Shape of ψ_p.
        for p in [0.1, 0.2, 0.3, 0.4, 0.45, 0.5, 0.6, 0.75, 0.9] {
            let h = 1.0 - p;
            let ts: Vec<f64> = (0..=1000).map(|i| h * i as f64 / 1000.0).collect();
            let v: Vec<f64> = ts.iter().map(|&t| psi(&m, p, t).unwrap()).collect();
            let symmetric = ts.iter().zip(&v).all(|(&t, &y)| (psi(&m, p, h - t).unwrap() - y).abs() <= 1e-12);
            let rising = |a: f64, b: f64| ts.windows(2).zip(v.windows(2)).filter(|(t, _)| t[0] >= a && t[1] <= b).all(|(_, y)| up(y[0], y[1]));
            let falling = |a: f64, b: f64| ts.windows(2).zip(v.windows(2)).filter(|(t, _)| t[0] >= a && t[1] <= b).all(|(_, y)| down(y[0], y[1]));
            let shape = if p >= 0.5 {
                falling(0.0, h / 2.0) && rising(h / 2.0, h)
            } else {
                rising(0.0, 0.5 - p) && falling(0.5 - p, h / 2.0) && rising(h / 2.0, 0.5) && falling(0.5, h)
            };
            if !(symmetric && shape) {
                failures.push(format!("{m}: psi_{p}"));
            }
        }
        // Orderings between candidate families.
        for i in 1..20 {
            let p = 0.5 * i as f64 / 20.0;
            for jj in 0..=20 {
                let l = 2.0 * p * jj as f64 / 20.0;
                let cf = |f| closed_form_perimeter(&m, f, p, l, None);
                if jj < 20 && Family::E4.admits(p, l) && Family::E5.admits(p, l) && !up(cf(Family::E4), cf(Family::E5)) {
                    failures.push(format!("{m}: E5>E4 at ({p},{l})"));
                }
                let e1 = cf(Family::E1);
                let side = [Family::E2, Family::E3]
                    .into_iter()
                    .filter(|f| f.admits(p, l))
                    .map(cf)
                    .fold(f64::INFINITY, f64::min);
                for t in parameter_sweep(Family::E6, p, l, 32) {
                    if candidate(Family::E6, p, l, Some(t)).unwrap().perimeter(&m) < e1 - 1e-12 {
                        failures.push(format!("{m}: E6>=E1 at ({p},{l},{t})"));
                    }
                }
                for t in parameter_sweep(Family::E7, p, l, 32) {
                    if candidate(Family::E7, p, l, Some(t)).unwrap().perimeter(&m) < side - 1e-12 {
                        failures.push(format!("{m}: E7>=min(E2,E3) at ({p},{l},{t})"));
                    }
                }
            }
        }
        // 2J(3/8) ≥ (9/8)J(1/2), derived from J(t)/t² non-increasing: checked where that holds.
        let quadratic_decay = grid.windows(2).all(|w| m.j(w[1]) / (w[1] * w[1]) <= m.j(w[0]) / (w[0] * w[0]) * (1.0 + 1e-12));
        if quadratic_decay && 2.0 * m.j(0.375) < 1.125 * m.j(0.5) {
            failures.push(format!("{m}: 2J(3/8) >= (9/8)J(1/2)"));
        }
    }
    // Complement identities and the asymmetry range on random sets.
    let mut r = rng(1010);
    for _ in 0..10_000 {
        let (e, f) = (random_set(&mut r, 4), random_set(&mut r, 4));
        let d1 = e.symmetric_difference_measure(&f);
        let d2 = e.complement().symmetric_difference_measure(&f.complement());
        let m = cauchy(1.0);
        if (e.perimeter(&m) - e.complement().perimeter(&m)).abs() > 1e-12 {
            failures.push(format!("perimeter of complement for {e:?}"));
            break;
        }
        let p = e.measure();
        let l = e.asymmetry();
        if (d1 - d2).abs() > 1e-12 || (l - e.complement().asymmetry()).abs() > 1e-12 || l < 0.0 || l > 2.0 * p.min(1.0 - p) + 1e-12 {
            failures.push(format!("complement identities for {e:?}"));
            break;
        }
    }
    let pass = failures.is_empty();
    Verdict {
        id: 10,
        title: "structural checks: J(t)/t, psi_p shape, complement identities, 2J(3/8) bound, family dominations",
        pass,
        detail: if pass { "all checks hold".to_string() } else { failures.into_iter().take(5).collect::<Vec<_>>().join("; ") },
    }
}

fn main() {
    let criteria: Vec<fn() -> Verdict> = vec![
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    let mut unexpected = Vec::new();
    for run in criteria {
        let start = Instant::now();
        let v = run();
        let tag = if v.pass { "PASS" } else { "FAIL" };
        let note = if !v.pass && KNOWN_DEFECTS.contains(&v.id) { " [known spec defect]" } else { "" };
        println!("{tag} {:>2} {}{note} ({:.1}s): {}", v.id, v.title, start.elapsed().as_secs_f64(), v.detail);
        if !v.pass && !KNOWN_DEFECTS.contains(&v.id) {
            unexpected.push(v.id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
