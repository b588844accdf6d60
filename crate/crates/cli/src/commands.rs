//! The `classify`, `evolve`, `region-scan` and `boundary` subcommands.

use num_complex::Complex64;
use rayon::prelude::*;

use pg_cubic::criterion::{boundary_curve, classify_with, in_set_a, tau_double_star, tau_end, tau_star, ClassifyOptions};
use pg_cubic::region::{in_local_region, UnivalenceOptions};
use pg_cubic::{ClassificationResult, CubicMap, Error, Evolver, LambdaPoint, Result, Tag};

use crate::config::RunConfig;
use crate::output::{Table, Value};

/// Parses `RE+IMi`, `RE-IMi`, `RE`, or `IMi`.
pub fn parse_complex(text: &str) -> std::result::Result<Complex64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("expected a complex number like 0.5-0.1i, got {text:?}");
    let number = |t: &str| -> std::result::Result<f64, String> {
        let x: f64 = match t {
            "" | "+" => 1.0,
            "-" => -1.0,
            _ => t.parse().map_err(|_| bad())?,
        };
        if x.is_finite() {
            Ok(x)
        } else {
            Err(bad())
        }
    };
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix(['i', 'j']) else {
        let re = s.parse::<f64>().map_err(|_| bad())?;
        return if re.is_finite() { Ok(Complex64::new(re, 0.0)) } else { Err(bad()) };
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => {
            let re = body[..k].parse::<f64>().map_err(|_| bad())?;
            if !re.is_finite() {
                return Err(bad());
            }
            Ok(Complex64::new(re, number(&body[k..])?))
        }
        None => Ok(Complex64::new(0.0, number(body)?)),
    }
}

pub fn parse_times(text: &str) -> std::result::Result<Vec<f64>, String> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            match t.parse::<f64>() {
                Ok(x) if x.is_finite() && x >= 0.0 => Ok(x),
                _ => Err(format!("times must be non-negative reals, got {t:?}")),
            }
        })
        .collect()
}

fn options(cfg: &RunConfig) -> ClassifyOptions {
    ClassifyOptions {
        tolerance: cfg.tolerance,
        univalence: UnivalenceOptions {
            n_samples: cfg.n_boundary_samples,
            ..UnivalenceOptions::default()
        },
    }
}

fn initial_map(a2: Complex64, a3: f64) -> Result<CubicMap> {
    if !(a3 > 0.0 && a3 < 1.0 / 3.0) {
        return Err(Error::Domain(format!("a3 must lie in (0, 1/3), got {a3}")));
    }
    CubicMap::unit(a2, a3)
}

fn with_meta(cfg: &RunConfig, columns: &[&'static str]) -> Table {
    let mut table = Table::new(columns);
    for (k, v) in cfg.echo() {
        table.meta(k, v);
    }
    table
}

pub const CLASSIFY_COLUMNS: &[&str] = &[
    "re_a2",
    "im_a2",
    "a3",
    "p",
    "q",
    "m2",
    "tag",
    "sup_value",
    "arg_tau",
    "in_loca",
    "local_margin",
    "univalent",
    "univalence_margin",
    "in_A",
    "tau_blow",
    "t_star",
    "zeta0_re",
    "zeta0_im",
    "contact_residual",
    "cusp_order",
    "cusp_exponent",
    "cusp_residual",
    "continuable",
];

pub fn classify(cfg: &RunConfig, a2: Complex64, a3: f64) -> Result<Table> {
    let f = initial_map(a2, a3)?;
    let r = classify_with(&f, &options(cfg))?;
    let evolver = Evolver::from_classification(&f, r)?;
    let blow = evolver.blow_up().copied();
    let cusp = blow.and_then(|b| b.cusp);
    let mut table = with_meta(cfg, CLASSIFY_COLUMNS);
    table.push(vec![
        a2.re.into(),
        a2.im.into(),
        a3.into(),
        r.p.into(),
        r.q.into(),
        r.m2.into(),
        r.tag.as_str().into(),
        r.sup.sup_value.into(),
        r.sup.arg_tau.into(),
        r.local_verdict.member.into(),
        r.local_verdict.margin.into(),
        r.univalence_verdict.map_or(Value::Null, |v| v.member.into()),
        r.univalence_verdict.map(|v| v.margin).into(),
        r.in_set_a.into(),
        blow.and_then(|b| b.tau_blow).into(),
        blow.and_then(|b| b.t_star).into(),
        blow.and_then(|b| b.zeta0).map(|z| z.re).into(),
        blow.and_then(|b| b.zeta0).map(|z| z.im).into(),
        blow.and_then(|b| b.contact_residual).into(),
        cusp.map_or(Value::Null, |c| c.declared_order.as_str().into()),
        cusp.map(|c| c.fitted_exponent).into(),
        cusp.map(|c| c.fit_residual).into(),
        blow.is_some_and(|b| b.continuable).into(),
    ]);
    Ok(table)
}

pub const EVOLVE_COLUMNS: &[&str] = &[
    "t",
    "tau",
    "a1",
    "re_a2",
    "im_a2",
    "a3",
    "x1",
    "x2",
    "x3",
    "ellipse_margin",
    "valid",
];

pub fn evolve(cfg: &RunConfig, a2: Complex64, a3: f64, times: &[f64]) -> Result<Table> {
    let f = initial_map(a2, a3)?;
    let evolver = Evolver::from_classification(&f, classify_with(&f, &options(cfg))?)?;
    let mut table = with_meta(cfg, EVOLVE_COLUMNS);
    table.meta("tag", evolver.tag().as_str());
    for &t in times {
        let s = evolver.at_time(t)?;
        table.push(vec![
            s.t.into(),
            s.tau.into(),
            s.map.a1().into(),
            s.map.a2().re.into(),
            s.map.a2().im.into(),
            s.map.a3().into(),
            s.lambda.x1.into(),
            s.lambda.x2.into(),
            s.lambda.x3.into(),
            s.margin.into(),
            s.valid.into(),
        ]);
    }
    Ok(table)
}

pub const SCAN_COLUMNS: &[&str] = &["x1", "x2", "x3", "tag", "sup_value", "in_loca", "in_A"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRecord {
    pub point: LambdaPoint,
    pub tag: Tag,
    pub sup_value: f64,
    pub in_loca: bool,
    pub in_a: bool,
}

impl ScanRecord {
    fn from_result(point: LambdaPoint, r: &ClassificationResult) -> Self {
        Self {
            point,
            tag: r.tag,
            sup_value: r.sup.sup_value,
            in_loca: r.local_verdict.member,
            in_a: in_set_a(&point),
        }
    }

    /// `C1 ⇒ in_loca ∧ ¬in_A`.
    pub fn consistent(&self) -> bool {
        self.tag != Tag::C1 || (self.in_loca && !self.in_a)
    }
}

/// `n` symmetric grid coordinates in `[-w, w]`; entry `n-1-i` is exactly
/// the negation of entry `i`.
pub fn grid_axis(n: usize, w: f64) -> Vec<f64> {
    let d = (n - 1) as f64;
    (0..n)
        .map(|i| {
            let k = 2.0 * i as f64 - d;
            w * k / d
        })
        .collect()
}

/// Slice heights used when no `--s` is given: `nz` equally spaced values
/// strictly inside `(0, 1/3)`.
pub fn default_slices(nz: usize) -> Vec<f64> {
    (1..=nz).map(|k| k as f64 / (3.0 * (nz + 1) as f64)).collect()
}

/// Classifies the `nx × ny` grid of each slice; records come back in
/// row-major order (`x1` fastest, then `x2`, then `x3`).
pub fn scan_records(cfg: &RunConfig, slices: &[f64]) -> Result<Vec<ScanRecord>> {
    let (nx, ny, _) = cfg.grid;
    let xs = grid_axis(nx, cfg.window);
    let ys = grid_axis(ny, cfg.window);
    let opts = options(cfg);
    let mut points = Vec::with_capacity(slices.len() * nx * ny);
    for &s in slices {
        for &y in &ys {
            points.extend(xs.iter().map(|&x| LambdaPoint::new(x, y, s)));
        }
    }
    points
        .par_iter()
        .map(|&point| {
            let r = classify_with(&point.to_map()?, &opts)?;
            Ok(ScanRecord::from_result(point, &r))
        })
        .collect()
}

pub fn region_scan(cfg: &RunConfig, s: Option<f64>) -> Result<Table> {
    let slices = match s {
        Some(s) if s > 0.0 && s < 1.0 / 3.0 => vec![s],
        Some(s) => return Err(Error::Domain(format!("s must lie in (0, 1/3), got {s}"))),
        None => default_slices(cfg.grid.2),
    };
    let records = scan_records(cfg, &slices)?;
    let mut table = with_meta(cfg, SCAN_COLUMNS);
    table.meta("slices", slices.len());
    for r in records {
        table.push(vec![
            r.point.x1.into(),
            r.point.x2.into(),
            r.point.x3.into(),
            r.tag.as_str().into(),
            r.sup_value.into(),
            r.in_loca.into(),
            r.in_a.into(),
        ]);
    }
    Ok(table)
}

pub const BOUNDARY_COLUMNS: &[&str] = &["tau", "g1", "g2", "x1", "x2", "x3", "p", "q", "in_loca"];

pub fn boundary(cfg: &RunConfig, s: f64, n: usize) -> Result<Table> {
    let curve = boundary_curve(s, n)?;
    let mut table = with_meta(cfg, BOUNDARY_COLUMNS);
    table.csv_meta = true;
    table.meta("s", s);
    table.meta("tau_star", tau_star(s));
    table.meta("tau_double_star", tau_double_star(s)?);
    table.meta("tau_end", tau_end(s));
    for c in curve {
        let (p, q) = c.moments();
        table.push(vec![
            c.tau.into(),
            c.g1.into(),
            c.g2.into(),
            c.point.x1.into(),
            c.point.x2.into(),
            c.point.x3.into(),
            p.into(),
            q.into(),
            in_local_region(&c.point).member.into(),
        ]);
    }
    Ok(table)
}
