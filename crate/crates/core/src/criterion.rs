//! Global-existence criterion for cubic solutions.
//!
//! A cubic with conserved moments `M₁ = p + iq`, `M₂` and `a1 = 1` generates a
//! global strong solution exactly when
//!
//! ```text
//! h(τ) = p²·τ¹⁰/(τ⁴+3M₂)⁴ + q²·τ¹⁰/(τ⁴-3M₂)⁴ < 1/4   for every τ ≥ 1,
//! ```
//!
//! i.e. when the whole trajectory stays inside the locally univalent ellipse.
//! Past `τ⁴ = 5M₂` both terms decrease, so the supremum is attained on
//! `[1, max(1, (5M₂)^{1/4})]`. The boundary of the global region is traced
//! by the curve `τ ↦ (√g₁(τ)/(1+3s), √g₂(τ)/(1-3s))` built from the
//! stationarity conditions of `h`.

use std::fmt;

use crate::error::{Error, Result};
use crate::numeric::{bisect, golden_max};
use crate::poly::{coefficients_from_moments, lambda_map, moments, CubicMap, LambdaPoint};
use crate::region::{in_local_region, univalence_oracle_with, RegionVerdict, UnivalenceOptions, BOUNDARY_BAND};

pub const QUARTER: f64 = 0.25;
pub const DEFAULT_TOLERANCE: f64 = 1e-7;
pub const SUP_GRID_POINTS: usize = 2048;
pub const SUP_XTOL: f64 = 1e-10;
/// At most this many grid-local maxima are polished by golden section.
const SUP_MAX_REFINED: usize = 4;

fn check_moment_domain(m2: f64) -> Result<()> {
    if m2 > 0.0 && m2 < 1.0 / 3.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("M2 must lie in (0, 1/3), got {m2}")))
    }
}

fn radial_terms(m2: f64, tau: f64) -> (f64, f64) {
    let t4 = tau.powi(4);
    let t10 = tau.powi(10);
    (t10 / (t4 + 3.0 * m2).powi(4), t10 / (t4 - 3.0 * m2).powi(4))
}

/// `h(τ) = p²r₁ + q²r₂`, the ellipse expression along the trajectory.
pub fn h_value(p: f64, q: f64, m2: f64, tau: f64) -> f64 {
    let (r1, r2) = radial_terms(m2, tau);
    p * p * r1 + q * q * r2
}

/// `dh/dτ = p²α₁ + q²α₂` with
/// `α₁ = 6τ⁹(5M₂-τ⁴)/(τ⁴+3M₂)⁵` and `α₂ = -6τ⁹(5M₂+τ⁴)/(τ⁴-3M₂)⁵`.
pub fn h_derivative(p: f64, q: f64, m2: f64, tau: f64) -> f64 {
    let t4 = tau.powi(4);
    let t9 = tau.powi(9);
    let alpha1 = 6.0 * t9 * (5.0 * m2 - t4) / (t4 + 3.0 * m2).powi(5);
    let alpha2 = -6.0 * t9 * (5.0 * m2 + t4) / (t4 - 3.0 * m2).powi(5);
    p * p * alpha1 + q * q * alpha2
}

/// Right end of the interval that can carry the supremum of `h`.
pub fn sup_search_bound(m2: f64) -> f64 {
    (5.0 * m2).powf(0.25).max(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupResult {
    pub sup_value: f64,
    pub arg_tau: f64,
    pub evaluations: usize,
}

/// `sup_{τ≥1} h(τ)`: dense grid on `[1, max(1,(5M₂)^{1/4})]`, then golden
/// section around every grid-local maximum (largest first).
pub fn sup_h(p: f64, q: f64, m2: f64) -> Result<SupResult> {
    check_moment_domain(m2)?;
    let h = |tau: f64| h_value(p, q, m2, tau);
    let hi = sup_search_bound(m2);
    if hi <= 1.0 {
        return Ok(SupResult {
            sup_value: h(1.0),
            arg_tau: 1.0,
            evaluations: 1,
        });
    }
    let n = SUP_GRID_POINTS;
    let step = (hi - 1.0) / (n - 1) as f64;
    let taus: Vec<f64> = (0..n)
        .map(|k| if k + 1 == n { hi } else { 1.0 + step * k as f64 })
        .collect();
    let values: Vec<f64> = taus.iter().map(|&t| h(t)).collect();
    let mut evaluations = n;

    let mut peaks: Vec<usize> = (0..n)
        .filter(|&k| {
            let rises = k == 0 || values[k] > values[k - 1];
            let holds = k + 1 == n || values[k] >= values[k + 1];
            rises && holds
        })
        .collect();
    peaks.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    peaks.truncate(SUP_MAX_REFINED);

    let (mut arg_tau, mut sup_value) = (1.0, values[0]);
    for k in peaks {
        let lo = taus[k.saturating_sub(1)];
        let up = taus[(k + 1).min(n - 1)];
        let m = golden_max(h, lo, up, SUP_XTOL);
        evaluations += m.evaluations;
        for (t, v) in [(taus[k], values[k]), (m.x, m.value)] {
            if v > sup_value {
                sup_value = v;
                arg_tau = t;
            }
        }
    }
    Ok(SupResult {
        sup_value,
        arg_tau,
        evaluations,
    })
}

/// `g₁,ₛ(τ) = (5s+τ⁴)(τ⁴+3s)⁵ / (64sτ¹⁴)`
pub fn g1(s: f64, tau: f64) -> f64 {
    let t4 = tau.powi(4);
    (5.0 * s + t4) * (t4 + 3.0 * s).powi(5) / (64.0 * s * tau.powi(14))
}

/// `g₂,ₛ(τ) = (5s-τ⁴)(τ⁴-3s)⁵ / (64sτ¹⁴)`
pub fn g2(s: f64, tau: f64) -> f64 {
    let t4 = tau.powi(4);
    (5.0 * s - t4) * (t4 - 3.0 * s).powi(5) / (64.0 * s * tau.powi(14))
}

fn check_boundary_slice(s: f64) -> Result<()> {
    if s > 0.2 && s < 1.0 / 3.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "the boundary curve is defined only for s in (1/5, 1/3), got {s}"
        )))
    }
}

/// `τ*(s) = (max{1, √21·s})^{1/4}`: where `τ⁸ - 21s²` vanishes, i.e. where
/// `g₁` stops decreasing and `g₂` stops increasing. Below it the curve point
/// lies outside the locally univalent region.
pub fn tau_star(s: f64) -> f64 {
    (21f64.sqrt() * s).max(1.0).powf(0.25)
}

/// `(5s)^{1/4}`, where `g₂` vanishes and the curve meets the `x1` axis.
pub fn tau_end(s: f64) -> f64 {
    (5.0 * s).powf(0.25)
}

/// `E(τ) = g₁/(1+3s)⁴ + g₂/(1-3s)⁴ - 1/4`: the ellipse excess of the curve point.
pub fn quarter_excess(s: f64, tau: f64) -> f64 {
    g1(s, tau) / (1.0 + 3.0 * s).powi(4) + g2(s, tau) / (1.0 - 3.0 * s).powi(4) - QUARTER
}

/// The parameter where the boundary curve enters the locally univalent
/// region, or `None` when the curve lies inside it for all `τ > 1`
/// (`s ≤ 1/√21`).
pub fn tau_double_star(s: f64) -> Result<Option<f64>> {
    check_boundary_slice(s)?;
    if 21f64.sqrt() * s <= 1.0 {
        return Ok(None);
    }
    let lo = tau_star(s);
    let hi = tau_end(s);
    let (e_lo, e_hi) = (quarter_excess(s, lo), quarter_excess(s, hi));
    if !(e_lo > 0.0 && e_hi < 0.0) {
        return Err(Error::Bracket {
            lo,
            hi,
            f_lo: e_lo,
            f_hi: e_hi,
        });
    }
    bisect(|t| quarter_excess(s, t), lo, hi, 1e-15).map(Some)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryCurvePoint {
    pub s: f64,
    pub tau: f64,
    pub g1: f64,
    pub g2: f64,
    pub point: LambdaPoint,
}

impl BoundaryCurvePoint {
    pub fn at(s: f64, tau: f64) -> Self {
        let (a, b) = (g1(s, tau), g2(s, tau).max(0.0));
        Self::from_values(s, tau, a, b)
    }

    fn from_values(s: f64, tau: f64, g1: f64, g2: f64) -> Self {
        Self {
            s,
            tau,
            g1,
            g2,
            point: LambdaPoint::new(g1.sqrt() / (1.0 + 3.0 * s), g2.sqrt() / (1.0 - 3.0 * s), s),
        }
    }

    /// Moment coordinates `(p, q) = (√g₁, -√g₂)` of the first-octant curve point.
    pub fn moments(&self) -> (f64, f64) {
        (self.g1.sqrt(), -self.g2.sqrt())
    }
}

/// `n` points of the boundary curve, evenly spaced in `τ` over
/// `[τ*(s), (5s)^{1/4}]`, endpoints included.
pub fn boundary_curve(s: f64, n: usize) -> Result<Vec<BoundaryCurvePoint>> {
    check_boundary_slice(s)?;
    if n < 2 {
        return Err(Error::Config(format!("boundary curve needs n >= 2, got {n}")));
    }
    let (lo, hi) = (tau_star(s), tau_end(s));
    let step = (hi - lo) / (n - 1) as f64;
    Ok((0..n)
        .map(|k| {
            if k + 1 == n {
                // τ⁴ = 5s exactly, so g₂ is zero
                BoundaryCurvePoint::from_values(s, hi, g1(s, hi), 0.0)
            } else {
                BoundaryCurvePoint::at(s, lo + step * k as f64)
            }
        })
        .collect())
}

/// Membership in the obstruction set `A` whose complement inside the
/// locally univalent region is the global region.
///
/// With `p = x1(1+3x3)` and `q = -x2(1-3x3)`, the point is in `A` iff some
/// `τ ∈ [τ*(s), (5s)^{1/4}]` has `q² = g₂(τ)` and `p² ≥ g₁(τ)`. `g₂` is
/// strictly decreasing there, so that `τ` is found by inverting `g₂`.
pub fn in_set_a(x: &LambdaPoint) -> bool {
    let s = x.x3;
    if check_boundary_slice(s).is_err() {
        return false;
    }
    let (p, q) = x.to_moments();
    let (p2, q2) = (p * p, q * q);
    let (lo, hi) = (tau_star(s), tau_end(s));
    if q2 > g2(s, lo) {
        return false;
    }
    let tau = if q2 == 0.0 {
        hi
    } else {
        bisect(|t| g2(s, t) - q2, lo, hi, 1e-15).unwrap_or(hi)
    };
    p2 >= g1(s, tau)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tag {
    /// Global strong solution.
    C1,
    /// Blows up, then continues as a global solution.
    C2,
    /// Blows up and cannot be continued.
    C3,
    /// Initial map is not univalent; the trichotomy does not apply.
    NotUnivalent,
    /// Too close to a region boundary to decide in floating point.
    BoundaryInconclusive,
}

impl Tag {
    pub fn as_str(&self) -> &'static str {
        match self {
            Tag::C1 => "C1",
            Tag::C2 => "C2",
            Tag::C3 => "C3",
            Tag::NotUnivalent => "NOT_UNIVALENT",
            Tag::BoundaryInconclusive => "BOUNDARY_INCONCLUSIVE",
        }
    }

    pub fn blows_up(&self) -> bool {
        matches!(self, Tag::C2 | Tag::C3)
    }

    pub fn is_trichotomy(&self) -> bool {
        matches!(self, Tag::C1 | Tag::C2 | Tag::C3)
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassificationResult {
    pub tag: Tag,
    pub sup: SupResult,
    pub local_verdict: RegionVerdict,
    /// Only computed when the supremum reaches `1/4` (C2/C3 candidates);
    /// global solutions are univalent for all time.
    pub univalence_verdict: Option<RegionVerdict>,
    pub tolerance: f64,
    /// The unit-`a1` representative that was tested.
    pub map: CubicMap,
    pub lambda: LambdaPoint,
    pub p: f64,
    pub q: f64,
    pub m2: f64,
    pub in_set_a: bool,
}

impl ClassificationResult {
    /// A C1 verdict must lie outside `A`.
    pub fn set_a_consistent(&self) -> bool {
        !(self.tag == Tag::C1 && self.in_set_a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyOptions {
    pub tolerance: f64,
    pub univalence: UnivalenceOptions,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            tolerance: DEFAULT_TOLERANCE,
            univalence: UnivalenceOptions::default(),
        }
    }
}

pub fn classify(f: &CubicMap, tolerance: f64) -> Result<ClassificationResult> {
    classify_with(
        f,
        &ClassifyOptions {
            tolerance,
            ..ClassifyOptions::default()
        },
    )
}

/// Sorts an initial cubic into C1/C2/C3 by comparing `sup h` with `1/4`.
///
/// Maps with `a1 ≠ 1` are replaced by the `a1 = 1` map on the same
/// trajectory (same `M₁`, `M₂`).
pub fn classify_with(f: &CubicMap, options: &ClassifyOptions) -> Result<ClassificationResult> {
    let tol = options.tolerance;
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Config(format!("tolerance must be positive, got {tol}")));
    }
    let m = moments(f);
    let (p, q, m2) = (m.p(), m.q(), m.m2);
    if !(m2 > 0.0 && m2 < 1.0 / 3.0) {
        return Err(Error::Domain(format!(
            "a3 of the unit-a1 representative must lie in (0, 1/3), got {m2}"
        )));
    }
    let map = if f.a1() == 1.0 {
        *f
    } else {
        coefficients_from_moments(p, q, m2, 1.0)?
    };
    let lambda = lambda_map(&map);
    let local_verdict = in_local_region(&lambda);
    let sup = sup_h(p, q, m2)?;
    let mut result = ClassificationResult {
        tag: Tag::BoundaryInconclusive,
        sup,
        local_verdict,
        univalence_verdict: None,
        tolerance: tol,
        map,
        lambda,
        p,
        q,
        m2,
        in_set_a: in_set_a(&lambda),
    };

    if !local_verdict.member && !local_verdict.inconclusive {
        result.tag = Tag::NotUnivalent;
        return Ok(result);
    }
    if local_verdict.inconclusive {
        return Ok(result);
    }

    let s = sup.sup_value;
    if s < QUARTER - tol {
        result.tag = Tag::C1;
        return Ok(result);
    }
    let univalence = univalence_oracle_with(&map, &options.univalence)?;
    result.univalence_verdict = Some(univalence);
    if (s - QUARTER).abs() <= tol {
        // the contact must happen after the start, strictly inside at τ = 1
        let at_start = h_value(p, q, m2, 1.0);
        if at_start < QUARTER - tol && sup.arg_tau > 1.0 {
            result.tag = Tag::C2;
        }
        return Ok(result);
    }
    result.tag = if univalence.inconclusive {
        Tag::BoundaryInconclusive
    } else if univalence.member {
        Tag::C3
    } else {
        Tag::NotUnivalent
    };
    Ok(result)
}

/// Boundary band re-exported for callers that render verdicts.
pub const fn boundary_band() -> f64 {
    BOUNDARY_BAND
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    // S = 1.25^{5/2}/16 and its argmax (1.25)^{1/4}, from a 40-digit evaluation.
    const S_UNIT_P: f64 = 0.109_183_006_713_856_918_8;
    const TAU_END_QUARTER: f64 = 1.057_371_263_440_564_119_5;
    // √g₁(1/4, (5/4)^{1/4}): the p that puts sup h exactly at 1/4.
    const P_C2: f64 = 1.513_186_574_405_081_301_3;

    #[test]
    fn h_examples() {
        for tau in [1.0, 1.3, 7.0] {
            assert_eq!(h_value(0.0, 0.0, 0.1, tau), 0.0);
        }
        assert_abs_diff_eq!(h_value(1.0, 0.0, 0.25, 1.0), 1.0 / 1.75f64.powi(4), epsilon = 1e-16);
        let (p, q, m2) = (0.31, -0.2, 0.27);
        let x = LambdaPoint::new(p / (1.0 + 3.0 * m2), -q / (1.0 - 3.0 * m2), m2);
        approx::assert_relative_eq!(h_value(p, q, m2, 1.0), crate::region::ellipse_value(&x), max_relative = 1e-14);
    }

    #[test]
    fn h_derivative_matches_finite_difference() {
        let (p, q, m2) = (1.1, -0.4, 0.26);
        for tau in [1.0, 1.05, 1.2, 2.0] {
            let e = 1e-6;
            let fd = (h_value(p, q, m2, tau + e) - h_value(p, q, m2, tau - e)) / (2.0 * e);
            approx::assert_relative_eq!(h_derivative(p, q, m2, tau), fd, max_relative = 1e-7);
        }
    }

    #[test]
    fn sup_examples() {
        let r = sup_h(0.0, 0.0, 0.1).unwrap();
        assert_eq!(r.sup_value, 0.0);

        let r = sup_h(1.0, 0.0, 0.25).unwrap();
        assert_abs_diff_eq!(r.sup_value, S_UNIT_P, epsilon = 1e-14);
        assert_abs_diff_eq!(r.arg_tau, TAU_END_QUARTER, epsilon = 1e-10);

        let r = sup_h(1.0, 0.0, 0.1).unwrap();
        assert_abs_diff_eq!(r.sup_value, 1.0 / 1.3f64.powi(4), epsilon = 1e-15);
        assert_eq!(r.arg_tau, 1.0);
        assert_eq!(r.evaluations, 1);
    }

    #[test]
    fn sup_rejects_out_of_domain_moment() {
        assert!(sup_h(1.0, 0.0, 0.0).is_err());
        assert!(sup_h(1.0, 0.0, 1.0 / 3.0).is_err());
    }

    #[test]
    fn g_examples() {
        for s in [0.21, 0.25, 0.3, 0.33] {
            assert!(g2(s, tau_end(s)).abs() < 1e-14);
        }
        assert_abs_diff_eq!(g1(0.25, TAU_END_QUARTER), 1.0 / (4.0 * S_UNIT_P), epsilon = 1e-12);
        assert_abs_diff_eq!(g1(0.25, TAU_END_QUARTER), 2.289_733_608_959_784_6, epsilon = 1e-12);
    }

    #[test]
    fn g_derivatives_have_the_tau8_minus_21s2_factor() {
        let s = 0.27;
        let e = 1e-6;
        for tau in [1.0, 1.05, 1.1, 1.14] {
            let d1 = (g1(s, tau + e) - g1(s, tau - e)) / (2.0 * e);
            let d2 = (g2(s, tau + e) - g2(s, tau - e)) / (2.0 * e);
            let t4 = tau.powi(4);
            let k = 5.0 / (32.0 * s) * (tau.powi(8) - 21.0 * s * s) / tau.powi(15);
            assert_abs_diff_eq!(d1, k * (t4 + 3.0 * s).powi(4), epsilon = 1e-6);
            assert_abs_diff_eq!(d2, -k * (t4 - 3.0 * s).powi(4), epsilon = 1e-6);
        }
    }

    #[test]
    fn tau_star_examples() {
        assert_eq!(tau_star(0.21), 1.0);
        assert_abs_diff_eq!(tau_star(0.25), 1.034_576_034_646_094_1, epsilon = 1e-14);
        assert_abs_diff_eq!(tau_star(1.0 / 21f64.sqrt()), 1.0, epsilon = 1e-15);
        // dg1/dτ changes sign at τ*
        let s = 0.25;
        let t = tau_star(s);
        let slope = |tau: f64| g1(s, tau + 1e-7) - g1(s, tau - 1e-7);
        assert!(slope(t - 1e-3) < 0.0 && slope(t + 1e-3) > 0.0);
    }

    #[test]
    fn tau_double_star_examples() {
        assert_eq!(tau_double_star(0.21).unwrap(), None);
        let t = tau_double_star(0.25).unwrap().unwrap();
        assert!(t > 1.0346 && t < 1.0574);
        assert_abs_diff_eq!(t, 1.049_010_900_045_478_5, epsilon = 1e-12);
        assert!(quarter_excess(0.25, t - 1e-9) > 0.0 && quarter_excess(0.25, t + 1e-9) < 0.0);
        let t = tau_double_star(0.30).unwrap().unwrap();
        assert!(t > 1.0822 && t < 1.1067);
        assert_abs_diff_eq!(t, 1.106_318_381_340_250_2, epsilon = 1e-12);
        assert!(tau_double_star(0.2).is_err());
        assert!(tau_double_star(0.34).is_err());
    }

    #[test]
    fn boundary_curve_examples() {
        let curve = boundary_curve(0.25, 100).unwrap();
        assert_eq!(curve.len(), 100);
        let last = curve.last().unwrap();
        assert_eq!(last.point.x2, 0.0);
        assert_abs_diff_eq!(last.point.x1, 2.289_733_608_959_784_6f64.sqrt() / 1.75, epsilon = 1e-12);
        assert_eq!(curve[0].tau, tau_star(0.25));
        for w in curve.windows(2) {
            assert!(w[1].point.x1 >= w[0].point.x1);
            assert!(w[1].point.x2 <= w[0].point.x2);
        }
        assert!(boundary_curve(0.2, 10).is_err());
        assert!(boundary_curve(0.25, 1).is_err());
    }

    #[test]
    fn set_a_examples() {
        assert!(!in_set_a(&LambdaPoint::new(5.0, 5.0, 0.2)));
        assert!(!in_set_a(&LambdaPoint::new(0.9, 0.0, 0.15)));
        let s = 0.25;
        assert!(in_set_a(&LambdaPoint::new(1.6 / (1.0 + 3.0 * s), 0.0, s)));
        assert!(!in_set_a(&LambdaPoint::new(1.4 / (1.0 + 3.0 * s), 0.0, s)));
        // sign symmetry
        assert!(in_set_a(&LambdaPoint::new(-1.6 / (1.0 + 3.0 * s), 0.0, s)));
    }

    #[test]
    fn classify_examples() {
        let r = classify(&CubicMap::unit(Complex64::new(0.0, 0.0), 0.1).unwrap(), DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.tag, Tag::C1);
        assert_eq!(r.sup.sup_value, 0.0);

        let f = coefficients_from_moments(P_C2, 0.0, 0.25, 1.0).unwrap();
        let r = classify(&f, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.tag, Tag::C2);
        assert!((r.sup.sup_value - 0.25).abs() < 1e-12);
        assert_abs_diff_eq!(r.sup.arg_tau, TAU_END_QUARTER, epsilon = 1e-8);

        let r = classify(&CubicMap::unit(Complex64::new(0.3, 0.0), 0.1).unwrap(), DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.tag, Tag::C1);
        assert_abs_diff_eq!(r.sup.sup_value, 0.09 / 1.69, epsilon = 1e-15);
        assert_eq!(r.sup.arg_tau, 1.0);
    }

    #[test]
    fn classify_c3_and_not_univalent() {
        let r = classify(&CubicMap::unit(Complex64::new(0.8875, 0.0), 0.27).unwrap(), DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.tag, Tag::C3);
        assert!(r.sup.sup_value > 0.25);
        assert!(r.univalence_verdict.unwrap().member);

        let r = classify(&CubicMap::unit(Complex64::new(0.87, 0.0), 0.25).unwrap(), DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.tag, Tag::NotUnivalent);
        assert!(r.local_verdict.member);

        let r = classify(&CubicMap::unit(Complex64::new(0.95, 0.0), 0.25).unwrap(), DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.tag, Tag::NotUnivalent);
        assert!(!r.local_verdict.member);
    }

    #[test]
    fn classify_rescales_to_unit_leading_coefficient() {
        let f0 = CubicMap::unit(Complex64::new(0.3, -0.1), 0.12).unwrap();
        let m = moments(&f0);
        let later = coefficients_from_moments(m.p(), m.q(), m.m2, 1.7).unwrap();
        let r0 = classify(&f0, DEFAULT_TOLERANCE).unwrap();
        let r1 = classify(&later, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r0.tag, r1.tag);
        assert!((r1.map.a2() - f0.a2()).norm() < 1e-12);
        assert_abs_diff_eq!(r0.sup.sup_value, r1.sup.sup_value, epsilon = 1e-12);
    }

    #[test]
    fn classify_rejects_bad_configuration() {
        let f = CubicMap::unit(Complex64::new(0.0, 0.0), 0.1).unwrap();
        assert!(matches!(classify(&f, 0.0), Err(Error::Config(_))));
        assert!(matches!(classify(&f, -1.0), Err(Error::Config(_))));
        let g = CubicMap::unit(Complex64::new(0.0, 0.0), 0.4).unwrap();
        assert!(matches!(classify(&g, 1e-7), Err(Error::Domain(_))));
    }
}
