//! Self-verification suites behind `pg-cubic verify`.
//!
//! Every suite draws from its own seeded ChaCha8 stream, so a fixed seed
//! reproduces the report byte for byte.

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use pg_cubic::criterion::{quarter_excess, sup_h};
use pg_cubic::poly::{coefficients_from_moments, lambda_map, moments};
use pg_cubic::region::{in_local_region, local_univalence_oracle};
use pg_cubic::{CubicMap, LambdaPoint, Trajectory};

use crate::commands::scan_records;
use crate::config::RunConfig;
use crate::output::Table;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub status: Status,
    pub samples: usize,
    pub max_error: f64,
    pub threshold: f64,
    pub detail: String,
}

impl SuiteReport {
    fn bounded(name: &'static str, samples: usize, max_error: f64, threshold: f64) -> Self {
        Self {
            name,
            status: if max_error < threshold { Status::Pass } else { Status::Fail },
            samples,
            max_error,
            threshold,
            detail: String::new(),
        }
    }
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// A point strictly inside the locally univalent ellipse of slice `x3`.
fn ellipse_point(r: &mut ChaCha8Rng, x3: f64, radius: f64) -> LambdaPoint {
    let rho = 0.5 * radius * r.random::<f64>().sqrt();
    let theta = r.random_range(0.0..std::f64::consts::TAU);
    LambdaPoint::new(rho * theta.cos() * (1.0 + 3.0 * x3), rho * theta.sin() * (1.0 - 3.0 * x3), x3)
}

fn quarter_identity(seed: u64) -> SuiteReport {
    let mut r = rng(seed, 1);
    let n = 200;
    let err = (0..n)
        .map(|_| quarter_excess(r.random_range(0.201..0.333), 1.0).abs())
        .fold(0.0, f64::max);
    SuiteReport::bounded("quarter_identity", n, err, 1e-12)
}

fn round_trips(seed: u64) -> SuiteReport {
    let mut r = rng(seed, 2);
    let n = 1000;
    let mut err: f64 = 0.0;
    let mut time_err: f64 = 0.0;
    for _ in 0..n {
        let x3 = r.random_range(0.001..0.333);
        let x = ellipse_point(&mut r, x3, 1.0);
        let f = x.to_map().expect("valid point");
        let m = moments(&f);
        let g = coefficients_from_moments(m.p(), m.q(), m.m2, 1.0).expect("regular at tau = 1");
        err = err.max((g.a2() - f.a2()).norm()).max((g.a3() - f.a3()).abs());
        let back = lambda_map(&g);
        err = err.max((back.x1 - x.x1).abs()).max((back.x2 - x.x2).abs());

        if sup_h(m.p(), m.q(), m.m2).expect("m2 in range").sup_value < 0.25 {
            let traj = Trajectory::new(m.p(), m.q(), m.m2, 1.0).expect("valid trajectory");
            let tau = r.random_range(1.0..100.0);
            let t = traj.time_of_tau(tau).expect("tau >= tau0");
            let tau_back = traj.tau_of_time(t).expect("t >= 0");
            time_err = time_err.max((tau_back - tau).abs() / tau);
        }
    }
    let mut report = SuiteReport::bounded("round_trips", n, err, 1e-12);
    if time_err >= 1e-10 {
        report.status = Status::Fail;
    }
    report.detail = format!("coefficients {err:.3e}; time {time_err:.3e}");
    report
}

fn oracle_agreement(seed: u64) -> SuiteReport {
    let mut r = rng(seed, 3);
    let n = 20_000;
    let points: Vec<LambdaPoint> = (0..n)
        .map(|_| {
            LambdaPoint::new(
                r.random_range(-1.2..1.2),
                r.random_range(-0.8..0.8),
                r.random_range(0.0005..0.3333),
            )
        })
        .collect();
    let (mut band, mut disagree) = (0usize, 0usize);
    for x in &points {
        let e = in_local_region(x);
        let o = local_univalence_oracle(&x.to_map().expect("valid point"));
        if e.inconclusive || o.inconclusive {
            band += 1;
        } else if e.member != o.member {
            disagree += 1;
        }
    }
    let fraction = band as f64 / n as f64;
    let status = if disagree > 0 {
        Status::Fail
    } else if fraction >= 1e-3 {
        Status::Inconclusive
    } else {
        Status::Pass
    };
    SuiteReport {
        name: "oracle_agreement",
        status,
        samples: n,
        max_error: disagree as f64,
        threshold: 1.0,
        detail: format!("{band} samples in the boundary band"),
    }
}

fn conservation(seed: u64) -> SuiteReport {
    let mut r = rng(seed, 4);
    let (n, times) = (100, 20);
    let (mut e1, mut e2): (f64, f64) = (0.0, 0.0);
    for _ in 0..n {
        let x3 = r.random_range(0.001..0.333);
        let f = ellipse_point(&mut r, x3, 1.0).to_map().expect("valid point");
        let m = moments(&f);
        for _ in 0..times {
            let tau = r.random_range(1.0f64..1e3);
            let g = coefficients_from_moments(m.p(), m.q(), m.m2, tau).expect("regular tau");
            let mg = moments(&g);
            e1 = e1.max((mg.m1 - m.m1).norm());
            e2 = e2.max((mg.m2 - m.m2).abs());
        }
    }
    let mut report = SuiteReport::bounded("conservation", n * times, e1, 1e-11);
    if e2 >= 1e-12 {
        report.status = Status::Fail;
    }
    report.detail = format!("M1 {e1:.3e}; M2 {e2:.3e}");
    report
}

fn pg_residual(seed: u64) -> SuiteReport {
    let mut r = rng(seed, 5);
    let n = 20;
    let mut err: f64 = 0.0;
    let mut done = 0;
    while done < n {
        let x3 = r.random_range(0.001..0.333);
        let x = ellipse_point(&mut r, x3, 0.95);
        let (p, q) = x.to_moments();
        if sup_h(p, q, x3).expect("m2 in range").sup_value >= 0.25 {
            continue;
        }
        let traj = Trajectory::new(p, q, x3, 1.0).expect("valid trajectory");
        let tau = r.random_range(1.0..5.0);
        err = err.max(traj.pg_residual(tau, 512).expect("regular tau"));
        done += 1;
    }
    SuiteReport::bounded("pg_residual", n, err, 1e-6)
}

fn symmetry(cfg: &RunConfig) -> SuiteReport {
    let n = 21;
    let scan_cfg = RunConfig {
        grid: (n, n, 2),
        ..cfg.clone()
    };
    let records = match scan_records(&scan_cfg, &[0.25]) {
        Ok(r) => r,
        Err(e) => {
            return SuiteReport {
                name: "symmetry",
                status: Status::Fail,
                samples: 0,
                max_error: f64::NAN,
                threshold: 0.0,
                detail: e.to_string(),
            }
        }
    };
    let at = |i: usize, j: usize| &records[j * n + i];
    let mut mismatches = 0usize;
    for j in 0..n {
        for i in 0..n {
            let a = at(i, j);
            for b in [at(n - 1 - i, j), at(i, n - 1 - j), at(n - 1 - i, n - 1 - j)] {
                let same = a.tag == b.tag
                    && a.sup_value == b.sup_value
                    && a.in_loca == b.in_loca
                    && a.in_a == b.in_a
                    && b.point.x1.abs() == a.point.x1.abs()
                    && b.point.x2.abs() == a.point.x2.abs();
                if !same {
                    mismatches += 1;
                }
            }
        }
    }
    let inconsistent = records.iter().filter(|r| !r.consistent()).count();
    SuiteReport {
        name: "symmetry",
        status: if mismatches == 0 && inconsistent == 0 { Status::Pass } else { Status::Fail },
        samples: records.len(),
        max_error: (mismatches + inconsistent) as f64,
        threshold: 1.0,
        detail: format!("{mismatches} mirror mismatches; {inconsistent} records violate C1 => in_loca and not in_A"),
    }
}

fn monotonicity(seed: u64) -> SuiteReport {
    let mut r = rng(seed, 7);
    let n = 1000;
    let mut cases = Vec::with_capacity(n);
    while cases.len() < n {
        let a2 = Complex64::new(r.random_range(-1.2..1.2), r.random_range(-0.6..0.6));
        let a3 = r.random_range(0.001..0.333);
        let f = CubicMap::unit(a2, a3).expect("valid map");
        let m = moments(&f);
        let s0 = sup_h(m.p(), m.q(), m.m2).expect("m2 in range").sup_value;
        if s0 < 0.25 {
            continue;
        }
        let grow = Complex64::new(
            a2.re.signum() * r.random_range(0.0..0.5),
            a2.im.signum() * r.random_range(0.0..0.5),
        );
        cases.push((a2, grow, a3, s0));
    }
    let worst = cases
        .par_iter()
        .map(|&(a2, grow, a3, s0)| {
            let g = CubicMap::unit(a2 + grow, a3).expect("valid map");
            let m = moments(&g);
            s0 - sup_h(m.p(), m.q(), m.m2).expect("m2 in range").sup_value
        })
        .reduce(|| f64::NEG_INFINITY, f64::max);
    let mut report = SuiteReport::bounded("monotonicity", n, worst.max(0.0), 1e-12);
    report.detail = format!("largest drop {worst:.3e}");
    report
}

pub fn run_suites(cfg: &RunConfig) -> Vec<SuiteReport> {
    vec![
        quarter_identity(cfg.seed),
        round_trips(cfg.seed),
        oracle_agreement(cfg.seed),
        conservation(cfg.seed),
        pg_residual(cfg.seed),
        symmetry(cfg),
        monotonicity(cfg.seed),
    ]
}

pub const VERIFY_COLUMNS: &[&str] = &["suite", "status", "samples", "max_error", "threshold", "detail"];

/// The report table and whether every suite avoided `FAIL`.
pub fn verify(cfg: &RunConfig) -> (Table, bool) {
    let reports = run_suites(cfg);
    let mut table = Table::new(VERIFY_COLUMNS);
    for (k, v) in cfg.echo() {
        table.meta(k, v);
    }
    let ok = reports.iter().all(|r| r.status != Status::Fail);
    for r in reports {
        table.push(vec![
            r.name.into(),
            r.status.to_string().into(),
            r.samples.into(),
            r.max_error.into(),
            r.threshold.into(),
            r.detail.into(),
        ]);
    }
    (table, ok)
}
