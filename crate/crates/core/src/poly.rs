//! Cubic conformal maps `f(ζ) = a1·ζ + a2·ζ² + a3·ζ³`, their Richardson
//! moments, the normalized coefficient point `Λ(f)` and the inverse map that
//! rebuilds a cubic from its conserved moments and leading coefficient.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Floor below which a denominator `τ⁴ ± 3·M₂` is treated as singular.
pub const DENOMINATOR_FLOOR: f64 = 1e-12;

/// A normalized cubic map: `a1 > 0`, `a3 ≥ 0` real, `a2` complex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicMap {
    a1: f64,
    a2: Complex64,
    a3: f64,
}

impl CubicMap {
    pub fn new(a1: f64, a2: Complex64, a3: f64) -> Result<Self> {
        if !(a1.is_finite() && a1 > 0.0) {
            return Err(Error::InvalidCoefficients(format!(
                "a1 must be positive and finite, got {a1}"
            )));
        }
        if !(a3.is_finite() && a3 >= 0.0) {
            return Err(Error::InvalidCoefficients(format!(
                "a3 must be non-negative and finite, got {a3}"
            )));
        }
        if !(a2.re.is_finite() && a2.im.is_finite()) {
            return Err(Error::InvalidCoefficients(format!("a2 must be finite, got {a2}")));
        }
        Ok(Self { a1, a2, a3 })
    }

    /// Map with leading coefficient one, the representative used for classification.
    pub fn unit(a2: Complex64, a3: f64) -> Result<Self> {
        Self::new(1.0, a2, a3)
    }

    pub fn a1(&self) -> f64 {
        self.a1
    }

    pub fn a2(&self) -> Complex64 {
        self.a2
    }

    pub fn a3(&self) -> f64 {
        self.a3
    }

    pub fn is_cubic(&self) -> bool {
        self.a3 > 0.0
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        z * (self.a1 + z * (self.a2 + z * self.a3))
    }

    pub fn derivative(&self, z: Complex64) -> Complex64 {
        self.a1 + z * (2.0 * self.a2 + z * (3.0 * self.a3))
    }

    pub fn second_derivative(&self, z: Complex64) -> Complex64 {
        2.0 * self.a2 + z * (6.0 * self.a3)
    }

    pub fn third_derivative(&self) -> f64 {
        6.0 * self.a3
    }

    /// Same map scaled so that `a1 = 1` (divides every coefficient by `a1`).
    pub fn scaled_to_unit(&self) -> Self {
        Self {
            a1: 1.0,
            a2: self.a2 / self.a1,
            a3: self.a3 / self.a1,
        }
    }
}

/// Richardson moments of a cubic map: `M₀` (area / 2π), `M₁ = p + iq`, `M₂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentData {
    pub m0: f64,
    pub m1: Complex64,
    pub m2: f64,
}

impl MomentData {
    pub fn p(&self) -> f64 {
        self.m1.re
    }

    pub fn q(&self) -> f64 {
        self.m1.im
    }
}

/// Point `(x1, x2, x3) = (Re(a2/a1), Im(a2/a1), a3/a1)` in coefficient space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaPoint {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl LambdaPoint {
    pub fn new(x1: f64, x2: f64, x3: f64) -> Self {
        Self { x1, x2, x3 }
    }

    /// Moment coordinates `(p, q)` of the unit-`a1` map at this point, for `M₂ = x3`.
    pub fn to_moments(&self) -> (f64, f64) {
        (self.x1 * (1.0 + 3.0 * self.x3), -self.x2 * (1.0 - 3.0 * self.x3))
    }

    /// Unit-`a1` cubic whose coefficients are this point.
    pub fn to_map(&self) -> Result<CubicMap> {
        CubicMap::unit(Complex64::new(self.x1, self.x2), self.x3)
    }
}

/// Rotates `(a1, a2, a3)` into the representative with `a3` real and positive:
/// coefficients become `a_j·e^{i(j-1)θ}` with `θ = -arg(a3)/2`.
pub fn normalize_rotation(a1: f64, a2: Complex64, a3: Complex64) -> Result<CubicMap> {
    if a3 == Complex64::new(0.0, 0.0) {
        return Err(Error::DegenerateDegree);
    }
    let theta = -0.5 * a3.arg();
    let rot = Complex64::from_polar(1.0, theta);
    CubicMap::new(a1, a2 * rot, a3.norm())
}

/// Moments from raw, possibly unnormalized coefficients (`a3` may be complex).
///
/// `M₀ = a1² + 2|a2|² + 3|a3|²`, `M₁ = a1²·conj(a2) + 3·a1·a2·conj(a3)`,
/// `M₂ = a1³·conj(a3)`.
pub fn raw_moments(a1: f64, a2: Complex64, a3: Complex64) -> (f64, Complex64, Complex64) {
    let m0 = a1 * a1 + 2.0 * a2.norm_sqr() + 3.0 * a3.norm_sqr();
    let m1 = a1 * a1 * a2.conj() + 3.0 * a1 * a2 * a3.conj();
    let m2 = a1 * a1 * a1 * a3.conj();
    (m0, m1, m2)
}

/// Richardson moments of a normalized cubic, in closed form.
pub fn moments(f: &CubicMap) -> MomentData {
    let (m0, m1, m2) = raw_moments(f.a1, f.a2, Complex64::new(f.a3, 0.0));
    MomentData { m0, m1, m2: m2.re }
}

pub fn lambda_map(f: &CubicMap) -> LambdaPoint {
    let a2 = f.a2 / f.a1;
    LambdaPoint {
        x1: a2.re,
        x2: a2.im,
        x3: f.a3 / f.a1,
    }
}

/// `Λ` computed from the moments of a unit-`a1` map:
/// `(p/(1+3M₂), -q/(1-3M₂), M₂)`.
pub fn lambda_from_moments(p: f64, q: f64, m2: f64) -> LambdaPoint {
    LambdaPoint {
        x1: p / (1.0 + 3.0 * m2),
        x2: -q / (1.0 - 3.0 * m2),
        x3: m2,
    }
}

/// Rebuilds the cubic with leading coefficient `tau` and conserved moments
/// `M₁ = p + iq`, `M₂ = m2`:
/// `a2 = pτ²/(τ⁴+3M₂) - i·qτ²/(τ⁴-3M₂)`, `a3 = M₂/τ³`.
pub fn coefficients_from_moments(p: f64, q: f64, m2: f64, tau: f64) -> Result<CubicMap> {
    if !(m2.is_finite() && m2 > 0.0) {
        return Err(Error::Domain(format!("M2 must be positive, got {m2}")));
    }
    if !(tau.is_finite() && tau > 0.0) {
        return Err(Error::Domain(format!("tau must be positive, got {tau}")));
    }
    let t2 = tau * tau;
    let t4 = t2 * t2;
    let plus = t4 + 3.0 * m2;
    let minus = t4 - 3.0 * m2;
    for denominator in [plus, minus] {
        if denominator.abs() < DENOMINATOR_FLOOR {
            return Err(Error::SingularParametrization { tau, denominator });
        }
    }
    let a2 = Complex64::new(p * t2 / plus, -q * t2 / minus);
    CubicMap::new(tau, a2, m2 / (t2 * tau))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_4;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn normalize_keeps_normalized_input() {
        let f = normalize_rotation(1.0, c(0.2, 0.0), c(0.1, 0.0)).unwrap();
        assert_eq!(f, CubicMap::new(1.0, c(0.2, 0.0), 0.1).unwrap());
    }

    #[test]
    fn normalize_negative_a3() {
        let f = normalize_rotation(1.0, c(0.0, 0.0), c(-0.1, 0.0)).unwrap();
        assert_eq!(f.a1(), 1.0);
        assert_abs_diff_eq!(f.a3(), 0.1, epsilon = 1e-17);
        assert_eq!(f.a2().norm(), 0.0);
    }

    #[test]
    fn normalize_quarter_turn() {
        let a2 = c(0.1, 0.1);
        let f = normalize_rotation(1.0, a2, c(0.0, 0.1)).unwrap();
        assert_abs_diff_eq!(f.a3(), 0.1, epsilon = 1e-17);
        assert_abs_diff_eq!(f.a2().norm(), a2.norm(), epsilon = 1e-16);
        assert_abs_diff_eq!(f.a2().arg(), a2.arg() - FRAC_PI_4, epsilon = 1e-15);
        // rotating back by θ = +π/4 recovers the input
        let back = Complex64::from_polar(1.0, FRAC_PI_4);
        assert!((f.a2() * back - a2).norm() < 1e-16);
        assert!((f.a3() * back * back - c(0.0, 0.1)).norm() < 1e-16);
    }

    #[test]
    fn normalize_rejects_zero_a3() {
        assert_eq!(
            normalize_rotation(1.0, c(0.3, 0.0), c(0.0, 0.0)),
            Err(Error::DegenerateDegree)
        );
    }

    #[test]
    fn moments_examples() {
        let m = moments(&CubicMap::unit(c(0.2, 0.0), 0.1).unwrap());
        assert_abs_diff_eq!(m.m1.re, 0.26, epsilon = 1e-15);
        assert_eq!(m.m1.im, 0.0);
        assert_abs_diff_eq!(m.m2, 0.1, epsilon = 1e-16);
        assert_abs_diff_eq!(m.m0, 1.11, epsilon = 1e-15);

        let s = 0.17;
        let m = moments(&CubicMap::unit(c(0.0, 0.0), s).unwrap());
        assert_eq!(m.m1, c(0.0, 0.0));
        assert_eq!(m.m2, s);
        assert_abs_diff_eq!(m.m0, 1.0 + 3.0 * s * s, epsilon = 1e-15);

        let m = moments(&CubicMap::unit(c(0.1, 0.2), 0.1).unwrap());
        assert_abs_diff_eq!(m.m1.re, 0.13, epsilon = 1e-15);
        assert_abs_diff_eq!(m.m1.im, -0.14, epsilon = 1e-15);
        assert_abs_diff_eq!(m.m2, 0.1, epsilon = 1e-16);
    }

    #[test]
    fn lambda_examples() {
        let x = lambda_map(&CubicMap::unit(c(0.1, 0.2), 0.1).unwrap());
        assert_eq!((x.x1, x.x2, x.x3), (0.1, 0.2, 0.1));
        let x = lambda_map(&CubicMap::new(2.0, c(0.2, 0.0), 0.4).unwrap());
        assert_eq!((x.x1, x.x2, x.x3), (0.1, 0.0, 0.2));
        let y = lambda_from_moments(0.13, -0.14, 0.1);
        assert_abs_diff_eq!(y.x1, 0.1, epsilon = 1e-15);
        assert_abs_diff_eq!(y.x2, 0.2, epsilon = 1e-15);
        assert_eq!(y.x3, 0.1);
    }

    #[test]
    fn inverse_examples() {
        let f = coefficients_from_moments(0.0, 0.0, 0.1, 1.0).unwrap();
        assert_eq!(f, CubicMap::unit(c(0.0, 0.0), 0.1).unwrap());

        let f = coefficients_from_moments(0.26, 0.0, 0.1, 1.0).unwrap();
        assert_abs_diff_eq!(f.a2().re, 0.2, epsilon = 1e-15);
        assert_eq!(f.a2().im, 0.0);
        assert_eq!(f.a3(), 0.1);

        let f = coefficients_from_moments(0.26, 0.0, 0.1, 2.0).unwrap();
        // 0.26·4/16.3
        assert_abs_diff_eq!(f.a2().re, 0.063_803_680_981_595_09, epsilon = 1e-15);
        assert_eq!(f.a3(), 0.0125);
        let m = moments(&f);
        assert_abs_diff_eq!(m.m1.re, 0.26, epsilon = 1e-15);
        assert_abs_diff_eq!(m.m2, 0.1, epsilon = 1e-16);
    }

    #[test]
    fn inverse_rejects_singular_denominator() {
        let err = coefficients_from_moments(0.1, 0.1, 1.0 / 3.0, 1.0).unwrap_err();
        assert!(matches!(err, Error::SingularParametrization { .. }));
        assert!(coefficients_from_moments(0.1, 0.1, 0.0, 1.0).is_err());
    }

    proptest! {
        #[test]
        fn round_trip_through_moments(
            re in -1.0f64..1.0, im in -1.0f64..1.0, a3 in 1e-4f64..0.333,
        ) {
            let f = CubicMap::unit(c(re, im), a3).unwrap();
            let m = moments(&f);
            let g = coefficients_from_moments(m.p(), m.q(), m.m2, 1.0).unwrap();
            prop_assert!((g.a2() - f.a2()).norm() < 1e-12);
            prop_assert!((g.a3() - f.a3()).abs() < 1e-12);
            prop_assert_eq!(g.a1(), 1.0);
        }

        #[test]
        fn rotation_preserves_moment_invariants(
            a1 in 0.2f64..3.0, re in -1.0f64..1.0, im in -1.0f64..1.0,
            r3 in 1e-3f64..0.5, arg3 in -3.1f64..3.1,
        ) {
            let a2 = c(re, im);
            let a3 = Complex64::from_polar(r3, arg3);
            let (m0, m1, m2) = raw_moments(a1, a2, a3);
            let f = normalize_rotation(a1, a2, a3).unwrap();
            let n = moments(&f);
            prop_assert_eq!(f.a1(), a1);
            prop_assert!((f.a2().norm() - a2.norm()).abs() < 1e-14);
            prop_assert!((n.m0 - m0).abs() < 1e-12 * m0);
            prop_assert!((n.m2 - m2.norm()).abs() < 1e-12 * m2.norm());
            prop_assert!((n.m1.norm() - m1.norm()).abs() < 1e-12 * (1.0 + m1.norm()));
        }

        #[test]
        fn lambda_agrees_with_moment_form(
            re in -1.0f64..1.0, im in -1.0f64..1.0, a3 in 1e-4f64..0.333,
        ) {
            let f = CubicMap::unit(c(re, im), a3).unwrap();
            let m = moments(&f);
            let x = lambda_map(&f);
            let y = lambda_from_moments(m.p(), m.q(), m.m2);
            prop_assert!((x.x1 - y.x1).abs() < 1e-12);
            prop_assert!((x.x2 - y.x2).abs() < 1e-12);
            prop_assert!((x.x3 - y.x3).abs() < 1e-12);
        }
    }
}
