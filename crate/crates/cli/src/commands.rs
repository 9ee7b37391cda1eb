use isoperim::deficit::deficit_lower_bound;
use isoperim::extremals::{candidate, isoperimetric_profile, min_candidate, parameter_sweep, region_map, Family};
use isoperim::functional::{cheeger_beta, profile_from_beta, sharp_rearrangement, PiecewiseFunction};
use isoperim::oracle::{brute_min_perimeter, lipschitz_j, OracleConfig};
use isoperim::{Error, Measure};

use crate::output::{num, opt, sibling, CliError, RunManifest, Sink, Table};
use crate::{svg, Command};

fn parse_measure(spec: &str) -> Result<Measure, CliError> {
    spec.parse::<Measure>().map_err(|e| CliError::Usage(format!("bad measure spec {spec:?}: {e}")))
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn run(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Profile { measure, n, out } => profile(&measure.measure, n, out),
        Command::Regions { measure, grid_n, origin_free, out, svg } => {
            regions(&measure.measure, grid_n, origin_free, out, svg)
        }
        Command::Deficit { measure, p, lambda, out } => deficit(&measure.measure, p, lambda, out),
        Command::Oracle { measure, grid_n, max_components, measure_tol, asymmetry_tol, p, lambda, origin_free, seed, out } => {
            let mut cfg = OracleConfig::with_grid(grid_n);
            cfg.max_components = max_components;
            cfg.seed = seed;
            if let Some(t) = measure_tol {
                cfg.measure_tol = t;
            }
            if let Some(t) = asymmetry_tol {
                cfg.asymmetry_tol = t;
            }
            oracle(&measure.measure, cfg, p, lambda, origin_free, out)
        }
        Command::Cheeger { measure, s, n, out } => cheeger(&measure.measure, s, n, out),
        Command::Rearrange { measure, function, n, out } => rearrange(&measure.measure, &function, n, out),
    }
}

fn profile(spec: &str, n: usize, out: Option<String>) -> Result<(), CliError> {
    if n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    let m = parse_measure(spec)?;
    let mut table = Table::new(&["p", "I(p)", "J(p)"]);
    for i in 0..n {
        let p = if n == 1 { 0.5 } else { i as f64 / (n - 1) as f64 };
        table.push(vec![num(p), num(isoperimetric_profile(&m, p)), num(m.j(p))]);
    }
    let mut manifest = RunManifest::new("profile", &m.spec());
    manifest.set("n", n);
    let mut sink = Sink::new(out, manifest);
    sink.write_primary(&table)?;
    sink.finish()
}

fn regions(spec: &str, grid_n: usize, origin_free: bool, out: Option<String>, svg_path: Option<String>) -> Result<(), CliError> {
    let m = parse_measure(spec)?;
    let map = region_map(&m, grid_n, origin_free)?;

    let mut table = Table::new(&["p", "lambda", "winner", "P_E1", "P_E2", "P_E3", "P_E4"]);
    for c in &map.cells {
        let mut row = vec![num(c.p), num(c.lambda), c.winner.map_or_else(|| "NA".to_string(), |f| f.to_string())];
        row.extend(c.perimeters.iter().map(|&v| opt(v)));
        table.push(row);
    }

    let mut manifest = RunManifest::new("regions", &m.spec());
    manifest.set("grid_n", grid_n);
    manifest.set("origin_free", origin_free);
    if let Some((p1, p2)) = map.corners {
        manifest.set("p1", p1);
        manifest.set("p2", p2);
    }
    let mut sink = Sink::new(out, manifest);
    sink.write_primary(&table)?;

    if let Some(primary) = sink.primary_path().map(str::to_string) {
        let curves: [(&str, &[&str; 2], &Vec<(f64, f64)>); 3] = [
            ("_lambda0", &["p", "lambda0"], &map.lambda0),
            ("_p0", &["lambda", "p0"], &map.p0),
            ("_e1e2", &["p", "lambda"], &map.e1_e2),
        ];
        for (suffix, header, points) in curves {
            if points.is_empty() {
                continue;
            }
            let mut t = Table::new(&header[..]);
            for &(a, b) in points.iter() {
                t.push(vec![num(a), num(b)]);
            }
            sink.write_file(&sibling(&primary, suffix), &t.render())?;
        }
    }
    if let Some(path) = svg_path {
        sink.manifest_mut().set("svg", path.clone());
        sink.write_file(&path, &svg::region_map_svg(&map, &m.spec()))?;
    }
    sink.finish()
}

/// Family members at `(p, λ)`: the fixed shapes directly, E6/E7 at the
/// parameter of least perimeter among an even sweep.
fn family_rows(m: &Measure, p: f64, lambda: f64) -> Vec<(Family, Option<f64>, isoperim::QuantileSet)> {
    let mut rows = Vec::new();
    for &family in Family::ALL.iter() {
        if !family.admits(p, lambda) {
            continue;
        }
        if family.takes_parameter() {
            let best = parameter_sweep(family, p, lambda, 129)
                .into_iter()
                .filter_map(|t| candidate(family, p, lambda, Some(t)).ok())
                .min_by(|a, b| a.perimeter(m).total_cmp(&b.perimeter(m)));
            if let Some(c) = best {
                rows.push((family, c.t, c.set));
            }
        } else if let Ok(c) = candidate(family, p, lambda, None) {
            rows.push((family, None, c.set));
        }
    }
    rows
}

fn deficit(spec: &str, p: f64, lambda: f64, out: Option<String>) -> Result<(), CliError> {
    let m = parse_measure(spec)?;
    if !(p > 0.0 && p <= 0.5) {
        return Err(usage(format!("--p must lie in (0, 1/2], got {p}")));
    }
    if !(lambda >= 0.0 && lambda <= 2.0 * p) {
        return Err(usage(format!("--lambda must lie in [0, 2p], got {lambda}")));
    }
    let general = deficit_lower_bound(&m, p, lambda, false)?;
    let origin_free = deficit_lower_bound(&m, p, lambda, true).ok();

    let mut table = Table::new(&[
        "family",
        "t",
        "measure",
        "asymmetry",
        "contains_origin",
        "perimeter",
        "deficit",
        "bound_general",
        "bound_origin_free",
        "margin_general",
        "margin_origin_free",
    ]);
    for (family, t, set) in family_rows(&m, p, lambda) {
        let d = set.deficit(&m);
        let touches_origin = set.endpoints().contains(&0.5) || set.contains_origin();
        let of_bound = if touches_origin { None } else { origin_free };
        table.push(vec![
            family.to_string(),
            opt(t),
            num(set.measure()),
            num(set.asymmetry()),
            set.contains_origin().to_string(),
            num(set.perimeter(&m)),
            num(d),
            num(general),
            opt(of_bound),
            num(d - general),
            opt(of_bound.map(|b| d - b)),
        ]);
    }
    let mut manifest = RunManifest::new("deficit", &m.spec());
    manifest.set("p", p);
    manifest.set("lambda", lambda);
    let mut sink = Sink::new(out, manifest);
    sink.write_primary(&table)?;
    sink.finish()
}

fn oracle(
    spec: &str,
    cfg: OracleConfig,
    p: f64,
    lambda: Option<f64>,
    origin_free: bool,
    out: Option<String>,
) -> Result<(), CliError> {
    let m = parse_measure(spec)?;
    cfg.validate()?;
    let closed = match (lambda, origin_free) {
        (None, false) => Some((isoperimetric_profile(&m, p), None)),
        (None, true) => None,
        (Some(l), _) => {
            let q = p.min(1.0 - p);
            if origin_free && p > 0.5 {
                None
            } else {
                min_candidate(&m, q, l, origin_free).ok().map(|mc| (mc.perimeter, Some(mc.family)))
            }
        }
    };
    let bound = lipschitz_j(&m) * 2.0 * cfg.max_components as f64 / cfg.grid_n as f64;

    let mut table = Table::new(&[
        "status",
        "p",
        "lambda",
        "origin_free",
        "min_perimeter",
        "witness",
        "measure_error",
        "asymmetry_error",
        "enumerated_count",
        "optimal_count",
        "tie",
        "closed_form",
        "closed_family",
        "gap",
        "bound",
    ]);
    let head = |status: &str| vec![status.to_string(), num(p), opt(lambda), origin_free.to_string()];
    let closed_cols = |brute: Option<f64>| {
        vec![
            opt(closed.map(|c| c.0)),
            closed.and_then(|c| c.1).map_or_else(|| "NA".to_string(), |f| f.to_string()),
            opt(match (brute, closed) {
                (Some(b), Some(c)) => Some(b - c.0),
                _ => None,
            }),
            num(bound),
        ]
    };
    match brute_min_perimeter(&m, p, lambda, &cfg, origin_free) {
        Ok(r) => {
            let witness: Vec<String> = r.witness.endpoints().iter().map(|&e| num(e)).collect();
            let mut row = head("ok");
            row.extend([
                num(r.min_perimeter),
                witness.join(";"),
                num(r.measure_error),
                opt(r.asymmetry_error),
                r.enumerated_count.to_string(),
                r.optimal_count.to_string(),
                r.tie.to_string(),
            ]);
            row.extend(closed_cols(Some(r.min_perimeter)));
            table.push(row);
        }
        Err(Error::Infeasible(msg)) => {
            eprintln!("infeasible: {msg}");
            let mut row = head("infeasible");
            row.extend(["NA", "", "NA", "NA", "0", "0", "false"].map(String::from));
            row.extend(closed_cols(None));
            table.push(row);
        }
        Err(e) => return Err(e.into()),
    }

    let mut manifest = RunManifest::new("oracle", &m.spec());
    manifest.set("grid_n", cfg.grid_n);
    manifest.set("max_components", cfg.max_components);
    manifest.set("measure_tol", cfg.measure_tol);
    manifest.set("asymmetry_tol", cfg.asymmetry_tol);
    manifest.set("p", p);
    if let Some(l) = lambda {
        manifest.set("lambda", l);
    }
    manifest.set("origin_free", origin_free);
    manifest.seed = Some(cfg.seed);
    let mut sink = Sink::new(out, manifest);
    sink.write_primary(&table)?;
    sink.finish()
}

fn cheeger(spec: &str, s_grid: Option<Vec<f64>>, n: usize, out: Option<String>) -> Result<(), CliError> {
    let m = parse_measure(spec)?;
    if n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    let s_grid = s_grid.unwrap_or_else(|| (1..50).map(|i| i as f64 / 100.0).collect());
    if let Some(bad) = s_grid.iter().find(|&&s| !(s > 0.0)) {
        return Err(usage(format!("s values must be positive, got {bad}")));
    }
    let mut table = Table::new(&["s", "beta"]);
    for &s in &s_grid {
        table.push(vec![num(s), num(cheeger_beta(&m, s)?)]);
    }

    let mut round = Table::new(&["t", "profile", "recovered", "residual"]);
    let mut worst: f64 = 0.0;
    for i in 1..=n {
        let t = 0.5 * i as f64 / n as f64;
        let exact = isoperimetric_profile(&m, t);
        let back = profile_from_beta(&m, t)?;
        let r = (exact - back).abs();
        if !r.is_finite() {
            return Err(CliError::Numerical(format!("round trip is not finite at t={t}")));
        }
        worst = worst.max(r);
        round.push(vec![num(t), num(exact), num(back), num(r)]);
    }
    // Keep stdout a clean CSV when the table itself goes there.
    if out.is_some() {
        println!("max round-trip residual: {}", num(worst));
    } else {
        eprintln!("max round-trip residual: {}", num(worst));
    }

    let mut manifest = RunManifest::new("cheeger", &m.spec());
    manifest.set("s", s_grid.clone());
    manifest.set("n", n);
    manifest.set("max_residual", num(worst));
    let mut sink = Sink::new(out, manifest);
    sink.write_primary(&table)?;
    if let Some(primary) = sink.primary_path().map(str::to_string) {
        sink.write_file(&sibling(&primary, "_roundtrip"), &round.render())?;
    }
    sink.finish()
}

fn rearrange(spec: &str, function: &str, n: usize, out: Option<String>) -> Result<(), CliError> {
    let m = parse_measure(spec)?;
    if n < 2 {
        return Err(usage("--n must be at least 2"));
    }
    let u: PiecewiseFunction = function.parse().map_err(|e: Error| usage(format!("bad --function: {e}")))?;
    let w = u.abs();
    // The rearrangement lives in the tails: reach far enough that it has
    // climbed most of the way to its maximum.
    let support = w.support_measure(&m);
    let tail = if support > 0.0 { -m.quantile(support / 8.0) } else { 0.0 };
    let reach = (u.breakpoints().iter().fold(0.0f64, |a, &x| a.max(x.abs())) + 1.0).max(tail);
    let mut table = Table::new(&["x", "u", "sharp_abs_u"]);
    for i in 0..n {
        let x = -reach + 2.0 * reach * i as f64 / (n - 1) as f64;
        table.push(vec![num(x), num(u.eval(x)), num(sharp_rearrangement(&w, &m, x)?)]);
    }
    let mut manifest = RunManifest::new("rearrange", &m.spec());
    manifest.set("function", u.to_string());
    manifest.set("n", n);
    let mut sink = Sink::new(out, manifest);
    sink.write_primary(&table)?;
    sink.finish()
}
