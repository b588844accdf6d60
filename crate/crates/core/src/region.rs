//! Membership tests for the coefficient regions of locally univalent and
//! univalent cubics.
//!
//! The locally univalent region has a closed form: in normalized coordinates
//! it is the family of ellipses
//!
//! ```text
//! x1²/(1+3x3)² + x2²/(1-3x3)² < 1/4,   0 < x3 < 1/3.
//! ```
//!
//! [`local_univalence_oracle`] checks the same property independently from the
//! roots of `f'`. Univalence itself has no closed form, so
//! [`univalence_oracle`] samples the boundary curve and searches it for
//! self-intersections.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::scan_closed_curve;
use crate::numeric::{quadratic_roots, unit_circle};
use crate::poly::{CubicMap, LambdaPoint};

/// Verdicts with `|margin|` at or below this are flagged inconclusive.
pub const BOUNDARY_BAND: f64 = 1e-6;
pub const DEFAULT_SAMPLES: usize = 4096;
pub const MIN_SAMPLES: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionVerdict {
    pub member: bool,
    /// Signed distance of the test expression from its threshold; positive
    /// exactly when `member` holds.
    pub margin: f64,
    /// Violating critical point or self-intersection point, when one was found.
    pub witness: Option<Complex64>,
    /// The verdict sits within the boundary band and should not be trusted
    /// either way.
    pub inconclusive: bool,
}

impl RegionVerdict {
    fn from_margin(margin: f64, band: f64, witness: Option<Complex64>) -> Self {
        Self {
            member: margin > 0.0,
            margin,
            witness,
            inconclusive: margin.abs() <= band,
        }
    }

    /// Member and outside the boundary band.
    pub fn is_strict_member(&self) -> bool {
        self.member && !self.inconclusive
    }
}

/// Left-hand side of the ellipse inequality.
pub fn ellipse_value(x: &LambdaPoint) -> f64 {
    let u = x.x1 / (1.0 + 3.0 * x.x3);
    let v = x.x2 / (1.0 - 3.0 * x.x3);
    u * u + v * v
}

/// Closed-form test for the locally univalent region. The margin is
/// `1/4 - LHS`, or `-∞` when `x3` falls outside `(0, 1/3)`.
pub fn in_local_region(x: &LambdaPoint) -> RegionVerdict {
    if !(x.x3 > 0.0 && x.x3 < 1.0 / 3.0) {
        return RegionVerdict {
            member: false,
            margin: f64::NEG_INFINITY,
            witness: None,
            inconclusive: false,
        };
    }
    RegionVerdict::from_margin(0.25 - ellipse_value(x), BOUNDARY_BAND, None)
}

/// Roots of `f'(ζ) = a1 + 2a2ζ + 3a3ζ²`, ordered by increasing modulus.
///
/// For `a3 = 0` the second root is reported at infinity.
pub fn critical_points(f: &CubicMap) -> [Complex64; 2] {
    let a1 = Complex64::new(f.a1(), 0.0);
    let b = 2.0 * f.a2();
    if f.a3() == 0.0 {
        let inf = Complex64::new(f64::INFINITY, 0.0);
        if b.norm() == 0.0 {
            return [inf, inf];
        }
        return [-a1 / b, inf];
    }
    let mut roots = quadratic_roots(Complex64::new(3.0 * f.a3(), 0.0), b, a1);
    if roots[1].norm() < roots[0].norm() {
        roots.swap(0, 1);
    }
    roots
}

/// Locally univalent on the closed disk iff every critical point lies
/// strictly outside it. Margin is `min|root| - 1`.
pub fn local_univalence_oracle(f: &CubicMap) -> RegionVerdict {
    let [inner, _] = critical_points(f);
    let margin = inner.norm() - 1.0;
    let witness = (margin <= 0.0).then_some(inner);
    RegionVerdict::from_margin(margin, BOUNDARY_BAND, witness)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnivalenceOptions {
    pub n_samples: usize,
    /// Near-miss distance between non-adjacent arcs, relative to `max |f|` on the circle.
    pub geometric_tolerance: f64,
    /// Maximum bisection depth used to confirm a suspected crossing.
    pub refinements: usize,
    pub band: f64,
}

impl Default for UnivalenceOptions {
    fn default() -> Self {
        Self {
            n_samples: DEFAULT_SAMPLES,
            geometric_tolerance: 1e-9,
            refinements: 8,
            band: BOUNDARY_BAND,
        }
    }
}

/// Semi-decision for univalence on the closed unit disk.
pub fn univalence_oracle(f: &CubicMap, n_samples: usize) -> Result<RegionVerdict> {
    univalence_oracle_with(
        f,
        &UnivalenceOptions {
            n_samples,
            ..UnivalenceOptions::default()
        },
    )
}

/// Member iff no critical point lies in the closed disk and the sampled
/// boundary curve has no confirmed self-intersection.
///
/// The margin is the local-univalence margin when that test fails, minus the
/// deepest crossing penetration when the curve crosses itself, and the
/// local-univalence margin otherwise. Grazing crossings, near misses and
/// local margins inside the band make the verdict inconclusive.
pub fn univalence_oracle_with(f: &CubicMap, options: &UnivalenceOptions) -> Result<RegionVerdict> {
    if options.n_samples < MIN_SAMPLES {
        return Err(Error::Config(format!(
            "univalence oracle needs at least {MIN_SAMPLES} boundary samples, got {}",
            options.n_samples
        )));
    }
    let local = local_univalence_oracle(f);
    if !local.member {
        return Ok(local);
    }
    let zeta = unit_circle(options.n_samples);
    let scale = zeta.iter().map(|&z| f.eval(z).norm()).fold(0.0, f64::max);
    let tolerance = options.geometric_tolerance * scale;
    let scan = scan_closed_curve(|z| f.eval(z), &zeta, tolerance, options.refinements);

    if let Some(deepest) = scan
        .crossings
        .iter()
        .max_by(|a, b| a.penetration.total_cmp(&b.penetration))
    {
        let margin = -deepest.penetration;
        return Ok(RegionVerdict {
            member: false,
            margin,
            witness: Some(deepest.witness),
            inconclusive: deepest.penetration <= tolerance,
        });
    }
    Ok(RegionVerdict {
        inconclusive: local.inconclusive || scan.near_miss.is_some(),
        ..local
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn unit(re: f64, im: f64, a3: f64) -> CubicMap {
        CubicMap::unit(Complex64::new(re, im), a3).unwrap()
    }

    #[test]
    fn ellipse_examples() {
        let v = in_local_region(&LambdaPoint::new(0.0, 0.0, 0.1));
        assert!(v.member);
        assert_eq!(v.margin, 0.25);

        let v = in_local_region(&LambdaPoint::new(2.0 / 3.0, 0.0, 1.0 / 9.0));
        assert!(!v.member);
        assert!(v.margin.abs() < 1e-15);
        assert!(v.inconclusive);

        let x = LambdaPoint::new(0.5, 0.5, 0.2);
        let v = in_local_region(&x);
        assert!(!v.member);
        assert_abs_diff_eq!(ellipse_value(&x), 1.66015625, epsilon = 1e-14);
        assert!(!local_univalence_oracle(&x.to_map().unwrap()).member);
    }

    #[test]
    fn ellipse_rejects_x3_out_of_range() {
        for x3 in [0.0, -0.1, 1.0 / 3.0, 0.5] {
            let v = in_local_region(&LambdaPoint::new(0.0, 0.0, x3));
            assert!(!v.member);
            assert_eq!(v.margin, f64::NEG_INFINITY);
        }
    }

    #[test]
    fn critical_point_examples() {
        let [r1, r2] = critical_points(&unit(0.0, 0.0, 0.1));
        let expected = 1.0 / 0.3f64.sqrt();
        assert_abs_diff_eq!(r1.norm(), expected, epsilon = 1e-14);
        assert_abs_diff_eq!(r2.norm(), expected, epsilon = 1e-14);
        assert!(r1.re.abs() < 1e-15 && r2.re.abs() < 1e-15);

        let [r1, r2] = critical_points(&unit(2.0 / 3.0, 0.0, 1.0 / 9.0));
        assert_abs_diff_eq!(r1.re, -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r2.re, -3.0, epsilon = 1e-14);

        let [r1, r2] = critical_points(&unit(0.4, 0.0, 0.1));
        // (-0.8 ± i·√0.56)/0.6
        for r in [r1, r2] {
            assert_abs_diff_eq!(r.re, -0.8 / 0.6, epsilon = 1e-14);
            assert_abs_diff_eq!(r.im.abs(), 0.56f64.sqrt() / 0.6, epsilon = 1e-14);
            assert_abs_diff_eq!(r.norm_sqr(), 1.2 / 0.36, epsilon = 1e-13);
        }
    }

    #[test]
    fn local_oracle_examples() {
        let v = local_univalence_oracle(&unit(0.0, 0.0, 0.1));
        assert!(v.member);
        assert_abs_diff_eq!(v.margin, 1.0 / 0.3f64.sqrt() - 1.0, epsilon = 1e-14);

        let v = local_univalence_oracle(&unit(2.0 / 3.0, 0.0, 1.0 / 9.0));
        assert!(v.margin.abs() < 1e-14);
        assert!(v.inconclusive);

        assert!(local_univalence_oracle(&unit(0.4, 0.0, 0.1)).is_strict_member());
    }

    #[test]
    fn univalence_examples() {
        assert!(univalence_oracle(&unit(0.0, 0.0, 0.1), 4096).unwrap().is_strict_member());
        assert!(univalence_oracle(&unit(0.4, 0.0, 0.1), 4096).unwrap().is_strict_member());
        // Inside the ellipse (LHS ≈ 0.113) with critical points at |ζ| ≈ 1.0206; the
        // boundary curve is simple.
        let v = univalence_oracle(&unit(0.66, 0.0, 0.32), 4096).unwrap();
        assert!(v.member);
        // Locally univalent but the boundary overlaps itself.
        let v = univalence_oracle(&unit(0.87, 0.0, 0.25), 4096).unwrap();
        assert!(local_univalence_oracle(&unit(0.87, 0.0, 0.25)).member);
        assert!(!v.member && v.margin < 0.0 && v.witness.is_some());
    }

    #[test]
    fn univalence_rejects_small_sample_count() {
        assert!(matches!(
            univalence_oracle(&unit(0.0, 0.0, 0.1), 255),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn univalent_implies_locally_univalent() {
        let v = univalence_oracle(&unit(0.95, 0.0, 0.25), 4096).unwrap();
        assert!(!v.member);
        assert!(!local_univalence_oracle(&unit(0.95, 0.0, 0.25)).member);
    }
}
