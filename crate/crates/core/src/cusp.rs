//! Order of the boundary singularity at a critical point on the unit circle.
//!
//! Near a critical point `ζ₀` the cubic is exactly
//! `f(ζ) - f(ζ₀) = A(ζ-ζ₀)² + B(ζ-ζ₀)³` with `A = f''(ζ₀)/2`, `B = f'''/6`.
//! With `ζ = ζ₀e^{iφ}` and `E = e^{iφ} - 1`, rotating by the cusp direction
//! gives `-|A|E² + βE³`, whose real part runs along the cusp axis. The two
//! branches `±φ` separate by the odd part of the imaginary part,
//!
//! ```text
//! v(φ) = 4|A|x²y + c·(3x²y - y³),   x = -2sin²(φ/2), y = sin φ, c = Re β - |A|,
//! ```
//!
//! which is `~ -cφ³` for a generic cusp and `~ |A|φ⁵` when `c = 0`. The order
//! is the slope of `ln|v|` against `ln|u|` over a ladder of small offsets.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::linear_fit;
use crate::poly::CubicMap;

pub const UNIT_CIRCLE_TOLERANCE: f64 = 1e-8;
/// `|f'(ζ₀)|` must be below this times `a1`.
pub const CRITICAL_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CuspFitOptions {
    pub min_offset: f64,
    pub max_offset: f64,
    pub samples: usize,
    pub max_residual: f64,
    pub max_exponent_gap: f64,
}

impl Default for CuspFitOptions {
    fn default() -> Self {
        Self {
            min_offset: 1e-6,
            max_offset: 1e-2,
            samples: 40,
            max_residual: 0.05,
            max_exponent_gap: 0.15,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CuspOrder {
    ThreeHalves,
    FiveHalves,
    SevenHalves,
    NineHalves,
    Unresolved,
}

impl CuspOrder {
    const LADDER: [CuspOrder; 4] = [
        CuspOrder::ThreeHalves,
        CuspOrder::FiveHalves,
        CuspOrder::SevenHalves,
        CuspOrder::NineHalves,
    ];

    pub fn value(&self) -> Option<f64> {
        match self {
            CuspOrder::ThreeHalves => Some(1.5),
            CuspOrder::FiveHalves => Some(2.5),
            CuspOrder::SevenHalves => Some(3.5),
            CuspOrder::NineHalves => Some(4.5),
            CuspOrder::Unresolved => None,
        }
    }

    /// Orders `m/2` with `m ≡ 1 (mod 4)`, the ones a solution can be continued through.
    pub fn is_continuable(&self) -> bool {
        matches!(self, CuspOrder::FiveHalves | CuspOrder::NineHalves)
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            CuspOrder::ThreeHalves => "3/2",
            CuspOrder::FiveHalves => "5/2",
            CuspOrder::SevenHalves => "7/2",
            CuspOrder::NineHalves => "9/2",
            CuspOrder::Unresolved => "unresolved",
        }
    }

    fn nearest(beta: f64) -> (CuspOrder, f64) {
        let mut best = (CuspOrder::Unresolved, f64::INFINITY);
        for order in Self::LADDER {
            let gap = (beta - order.value().unwrap_or(f64::NAN)).abs();
            if gap < best.1 {
                best = (order, gap);
            }
        }
        best
    }
}

impl fmt::Display for CuspOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CuspReport {
    /// Boundary point `f(ζ₀)`.
    pub location: Complex64,
    /// Unit vector along the cusp axis, pointing away from the tip.
    pub direction: Complex64,
    pub fitted_exponent: f64,
    pub declared_order: CuspOrder,
    pub fit_residual: f64,
    /// `c = Re β - |A|`; zero exactly for the higher-order cusp.
    pub cubic_coefficient: f64,
}

pub fn cusp_report(f_star: &CubicMap, zeta0: Complex64) -> Result<CuspReport> {
    cusp_report_with(f_star, zeta0, &CuspFitOptions::default())
}

pub fn cusp_report_with(f_star: &CubicMap, zeta0: Complex64, options: &CuspFitOptions) -> Result<CuspReport> {
    let modulus = zeta0.norm();
    let derivative = f_star.derivative(zeta0).norm();
    if (modulus - 1.0).abs() > UNIT_CIRCLE_TOLERANCE || derivative > CRITICAL_TOLERANCE * f_star.a1() {
        return Err(Error::NotCritical { modulus, derivative });
    }
    if options.samples < 3 || !(options.min_offset > 0.0 && options.max_offset > options.min_offset) {
        return Err(Error::Config(format!("invalid cusp fit window {options:?}")));
    }
    let zeta0 = zeta0 / modulus;
    let a = 0.5 * f_star.second_derivative(zeta0);
    let abs_a = a.norm();
    if abs_a == 0.0 {
        return Err(Error::NotCritical { modulus, derivative });
    }
    let b = f_star.a3();
    let z2 = zeta0 * zeta0;
    let direction = -a * z2 / abs_a;
    let beta = b * z2 * zeta0 * direction.conj();
    let c = beta.re - abs_a;

    let (lo, hi) = (options.min_offset.ln(), options.max_offset.ln());
    let n = options.samples;
    let mut log_u = Vec::with_capacity(n);
    let mut log_v = Vec::with_capacity(n);
    for k in 0..n {
        let phi = (lo + (hi - lo) * k as f64 / (n - 1) as f64).exp();
        let half = (0.5 * phi).sin();
        let x = -2.0 * half * half;
        let y = phi.sin();
        let v = 4.0 * abs_a * x * x * y + c * (3.0 * x * x * y - y * y * y);
        let u = -abs_a * (x * x - y * y) + beta.re * (x * x * x - 3.0 * x * y * y);
        if v != 0.0 && u != 0.0 {
            log_u.push(u.abs().ln());
            log_v.push(v.abs().ln());
        }
    }
    let (fitted_exponent, _, fit_residual) = if log_u.len() >= 3 {
        linear_fit(&log_u, &log_v)
    } else {
        (f64::NAN, f64::NAN, f64::INFINITY)
    };
    let (nearest, gap) = CuspOrder::nearest(fitted_exponent);
    let declared_order = if fit_residual < options.max_residual && gap < options.max_exponent_gap {
        nearest
    } else {
        CuspOrder::Unresolved
    };
    Ok(CuspReport {
        location: f_star.eval(zeta0),
        direction,
        fitted_exponent,
        declared_order,
        fit_residual,
        cubic_coefficient: c,
    })
}
