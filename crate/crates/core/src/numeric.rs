//! Small numerical kernels shared by the region, criterion and evolution
//! modules: bracketing root finders, a golden-section maximizer, a stable
//! complex quadratic solver and a sign-symmetric sampling of the unit circle.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Finds a zero of `f` in `[lo, hi]` by bisection.
///
/// `f(lo)` and `f(hi)` must have opposite signs (or one of them be zero).
/// Iteration stops once the bracket is narrower than `xtol` or cannot be
/// split any further in floating point.
pub fn bisect<F>(f: F, lo: f64, hi: f64, xtol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return Err(Error::Bracket {
            lo: a,
            hi: b,
            f_lo: fa,
            f_hi: fb,
        });
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if b - a <= xtol || m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Result of a one-dimensional maximization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub x: f64,
    pub value: f64,
    pub evaluations: usize,
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a maximum of a unimodal `f` on `[lo, hi]`,
/// stopping once the bracket is narrower than `xtol`. The endpoints are
/// evaluated too, so a maximum sitting on the boundary is not lost.
pub fn golden_max<F>(f: F, lo: f64, hi: f64, xtol: f64) -> Maximum
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let mut best = Maximum {
        x: a,
        value: f(a),
        evaluations: 1,
    };
    let fb = f(b);
    best.evaluations += 1;
    if fb > best.value {
        best.x = b;
        best.value = fb;
    }
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    best.evaluations += 2;
    while b - a > xtol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        best.evaluations += 1;
        if c >= d {
            break;
        }
    }
    for (x, v) in [(c, fc), (d, fd)] {
        if v > best.value {
            best.x = x;
            best.value = v;
        }
    }
    best
}

/// Principal square root, written so that `csqrt(conj z) == conj(csqrt z)`
/// and `csqrt(-z)` relates to `csqrt(z)` bit-for-bit up to sign.
pub fn csqrt(z: Complex64) -> Complex64 {
    let (x, y) = (z.re, z.im);
    if x == 0.0 && y == 0.0 {
        return Complex64::new(0.0, y);
    }
    let m = x.hypot(y);
    if x >= 0.0 {
        let t = (0.5 * (m + x)).sqrt();
        Complex64::new(t, y / (2.0 * t))
    } else {
        let t = (0.5 * (m - x)).sqrt();
        Complex64::new(y.abs() / (2.0 * t), t.copysign(y))
    }
}

/// Both roots of `a z^2 + b z + c` for complex coefficients with `a != 0`,
/// using the cancellation-free form `q = -(b ± sqrt(b^2 - 4ac)) / 2`.
pub fn quadratic_roots(a: Complex64, b: Complex64, c: Complex64) -> [Complex64; 2] {
    let disc = b * b - 4.0 * a * c;
    let sq = csqrt(disc);
    let q = if (b.conj() * sq).re >= 0.0 {
        -0.5 * (b + sq)
    } else {
        -0.5 * (b - sq)
    };
    if q == Complex64::new(0.0, 0.0) {
        return [q, q];
    }
    [q / a, c / q]
}

/// `n` equally spaced points `exp(2πik/n)` on the unit circle.
///
/// When `n` is a multiple of 8 the table is built from one octant, so it is
/// exactly closed under conjugation, negation and multiplication by `i`.
pub fn unit_circle(n: usize) -> Vec<Complex64> {
    if n == 0 || n % 8 != 0 {
        return (0..n)
            .map(|k| {
                let (s, c) = (TAU * k as f64 / n as f64).sin_cos();
                Complex64::new(c, s)
            })
            .collect();
    }
    let quarter = n / 4;
    let mut first = vec![Complex64::new(0.0, 0.0); quarter + 1];
    for (k, slot) in first.iter_mut().enumerate().take(n / 8 + 1) {
        let (s, c) = (TAU * k as f64 / n as f64).sin_cos();
        *slot = Complex64::new(c, s);
    }
    // the octant point is its own mirror image, so its parts must agree exactly
    first[n / 8] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2);
    for k in n / 8 + 1..=quarter {
        let mirror = first[quarter - k];
        first[k] = Complex64::new(mirror.im, mirror.re);
    }
    let mut out = Vec::with_capacity(n);
    for quadrant in 0..4 {
        for &z in &first[..quarter] {
            let w = match quadrant {
                0 => z,
                1 => Complex64::new(-z.im, z.re),
                2 => Complex64::new(-z.re, -z.im),
                _ => Complex64::new(z.im, -z.re),
            };
            out.push(w);
        }
    }
    out
}

/// Ordinary least-squares line `y ≈ intercept + slope·x`.
/// Returns `(slope, intercept, rms_residual)`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len().min(ys.len()) as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    (slope, intercept, (ss / n).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn bisect_finds_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-14).unwrap();
        assert_abs_diff_eq!(r, 2f64.sqrt(), epsilon = 1e-13);
    }

    #[test]
    fn bisect_rejects_missing_sign_change() {
        assert!(matches!(
            bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-12),
            Err(Error::Bracket { .. })
        ));
    }

    #[test]
    fn golden_max_interior_and_endpoint() {
        let m = golden_max(|x| -(x - 0.3) * (x - 0.3), 0.0, 1.0, 1e-10);
        assert_abs_diff_eq!(m.x, 0.3, epsilon = 1e-8);
        let m = golden_max(|x| -x, 1.0, 2.0, 1e-10);
        assert_eq!(m.x, 1.0);
    }

    #[test]
    fn quadratic_roots_match_factorization() {
        // (z + 1)(z + 3) / 3
        let r = quadratic_roots(
            Complex64::new(1.0 / 3.0, 0.0),
            Complex64::new(4.0 / 3.0, 0.0),
            Complex64::new(1.0, 0.0),
        );
        let mut re: Vec<f64> = r.iter().map(|z| z.re).collect();
        re.sort_by(f64::total_cmp);
        assert_abs_diff_eq!(re[0], -3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(re[1], -1.0, epsilon = 1e-14);
    }

    #[test]
    fn csqrt_is_conjugation_symmetric() {
        for z in [
            Complex64::new(-2.0, 0.0),
            Complex64::new(-2.0, 1e-300),
            Complex64::new(0.3, -0.7),
            Complex64::new(-0.3, 0.7),
        ] {
            let s = csqrt(z);
            assert_eq!(csqrt(z.conj()), s.conj());
            assert!((s * s - z).norm() < 1e-15);
        }
    }

    #[test]
    fn unit_circle_is_exactly_symmetric() {
        let n = 4096;
        let z = unit_circle(n);
        for k in 0..n {
            assert_eq!(z[(n - k) % n], z[k].conj());
            assert_eq!(z[(n / 2 + n - k) % n], -z[k].conj());
            assert!((z[k].norm() - 1.0).abs() < 1e-15);
            let (s, c) = (TAU * k as f64 / n as f64).sin_cos();
            assert!((z[k] - Complex64::new(c, s)).norm() < 1e-15);
        }
    }

    #[test]
    fn linear_fit_recovers_line() {
        let xs: Vec<f64> = (0..10).map(f64::from).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 2.5 * x - 1.0).collect();
        let (m, c, r) = linear_fit(&xs, &ys);
        assert_abs_diff_eq!(m, 2.5, epsilon = 1e-12);
        assert_abs_diff_eq!(c, -1.0, epsilon = 1e-12);
        assert!(r < 1e-12);
    }
}
