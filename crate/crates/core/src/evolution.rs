//! Exact evolution of cubic solutions.
//!
//! `M₁` and `M₂` are conserved, so a solution is the one-parameter family
//! `τ ↦ coefficients_from_moments(p, q, M₂, τ)` with `τ = a1(t)`. Time comes
//! from the area law `M₀(t) = M₀(0) + 2t`, inverted by bisection; nothing is
//! integrated. Blow-up is the first `τ` where `h(τ)` reaches `1/4`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::criterion::{classify, h_derivative, h_value, sup_search_bound, ClassificationResult, Tag, DEFAULT_TOLERANCE, QUARTER};
use crate::cusp::{cusp_report, CuspOrder, CuspReport};
use crate::error::{Error, Result};
use crate::numeric::{bisect, unit_circle};
use crate::poly::{coefficients_from_moments, lambda_map, moments, CubicMap, LambdaPoint};
use crate::region::critical_points;

pub const BLOW_UP_GRID: usize = 1024;
/// Half-width of the window in which the C2 touching point is polished.
pub const TOUCH_WINDOW: f64 = 1e-4;
pub const CONTACT_TOLERANCE: f64 = 1e-8;
/// Default scan end: `M₂/τ⁴` has dropped below this.
pub const SCAN_DECAY: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trajectory {
    pub p: f64,
    pub q: f64,
    pub m2: f64,
    pub tau0: f64,
    pub m0_initial: f64,
}

impl Trajectory {
    pub fn new(p: f64, q: f64, m2: f64, tau0: f64) -> Result<Self> {
        if !(p.is_finite() && q.is_finite()) {
            return Err(Error::Domain(format!("moments must be finite, got p={p}, q={q}")));
        }
        if !(m2.is_finite() && m2 > 0.0) {
            return Err(Error::Domain(format!("M2 must be positive, got {m2}")));
        }
        if !(tau0.is_finite() && tau0.powi(4) > 3.0 * m2) {
            return Err(Error::Domain(format!(
                "tau0 must satisfy tau0^4 > 3*M2, got tau0={tau0}, M2={m2}"
            )));
        }
        let mut traj = Self {
            p,
            q,
            m2,
            tau0,
            m0_initial: 0.0,
        };
        traj.m0_initial = traj.m0_of_tau(tau0);
        Ok(traj)
    }

    /// The trajectory through `f0`, parametrized from `τ₀ = a1(f0)`.
    pub fn from_map(f0: &CubicMap) -> Result<Self> {
        let m = moments(f0);
        Self::new(m.p(), m.q(), m.m2, f0.a1())
    }

    fn coefficients(&self, tau: f64) -> (f64, f64, f64) {
        let t2 = tau * tau;
        let t4 = t2 * t2;
        let x = self.p * t2 / (t4 + 3.0 * self.m2);
        let y = -self.q * t2 / (t4 - 3.0 * self.m2);
        (x, y, self.m2 / (t2 * tau))
    }

    pub fn map_at(&self, tau: f64) -> Result<CubicMap> {
        coefficients_from_moments(self.p, self.q, self.m2, tau)
    }

    /// `M₀(τ) = τ² + 2|a2(τ)|² + 3a3(τ)²`.
    pub fn m0_of_tau(&self, tau: f64) -> f64 {
        let (x, y, a3) = self.coefficients(tau);
        tau * tau + 2.0 * (x * x + y * y) + 3.0 * a3 * a3
    }

    pub fn time_of_tau(&self, tau: f64) -> Result<f64> {
        if !(tau >= self.tau0) {
            return Err(Error::Domain(format!("tau must be at least tau0={}, got {tau}", self.tau0)));
        }
        Ok(0.5 * (self.m0_of_tau(tau) - self.m0_initial))
    }

    pub fn tau_of_time(&self, t: f64) -> Result<f64> {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::Domain(format!("time must be finite and non-negative, got {t}")));
        }
        if t == 0.0 {
            return Ok(self.tau0);
        }
        let excess = |tau: f64| 0.5 * (self.m0_of_tau(tau) - self.m0_initial) - t;
        let mut hi = self.tau0 + 1.0;
        while excess(hi) < 0.0 {
            hi = self.tau0 + 2.0 * (hi - self.tau0);
            if !hi.is_finite() {
                return Err(Error::Domain(format!("no tau reaches time {t}")));
            }
        }
        bisect(excess, self.tau0, hi, 0.0)
    }

    /// Velocity coefficients `(a2'(τ), a3'(τ))`.
    pub fn coefficient_rates(&self, tau: f64) -> (Complex64, f64) {
        let t4 = tau.powi(4);
        let (plus, minus) = (t4 + 3.0 * self.m2, t4 - 3.0 * self.m2);
        let dx = 2.0 * self.p * tau * (3.0 * self.m2 - t4) / (plus * plus);
        let dy = 2.0 * self.q * tau * plus / (minus * minus);
        (Complex64::new(dx, dy), -3.0 * self.m2 / t4)
    }

    /// `Q(τ) = ½·dM₀/dτ`, the constant value of `Re[F_τ·conj(ζF')]` on the circle.
    pub fn injection_rate(&self, tau: f64) -> f64 {
        let (x, y, a3) = self.coefficients(tau);
        let (da2, da3) = self.coefficient_rates(tau);
        tau + 2.0 * (x * da2.re + y * da2.im) + 3.0 * a3 * da3
    }

    /// `Re[F_τ·conj(ζF')]` at each sample point of the circle.
    pub fn boundary_flux(&self, tau: f64, n: usize) -> Result<Vec<f64>> {
        let f = self.map_at(tau)?;
        let (da2, da3) = self.coefficient_rates(tau);
        Ok(unit_circle(n)
            .into_iter()
            .map(|z| {
                let f_tau = z * (1.0 + z * (da2 + z * da3));
                (f_tau * (z * f.derivative(z)).conj()).re
            })
            .collect())
    }

    /// `max |Re[f_t·conj(ζf')] - 1|` over `n` boundary points, with `f_t = F_τ/Q(τ)`.
    pub fn pg_residual(&self, tau: f64, n: usize) -> Result<f64> {
        let q = self.injection_rate(tau);
        Ok(self
            .boundary_flux(tau, n)?
            .into_iter()
            .map(|v| (v / q - 1.0).abs())
            .fold(0.0, f64::max))
    }

    /// `h(τ)`, the ellipse expression of `Λ(f(·,τ))`.
    pub fn ellipse_value(&self, tau: f64) -> f64 {
        h_value(self.p, self.q, self.m2, tau)
    }

    pub fn lambda_at(&self, tau: f64) -> LambdaPoint {
        let (x, y, a3) = self.coefficients(tau);
        LambdaPoint::new(x / tau, y / tau, a3 / tau)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlowUpReport {
    pub blows_up: bool,
    pub tau_blow: Option<f64>,
    pub t_star: Option<f64>,
    pub zeta0: Option<Complex64>,
    pub cusp: Option<CuspReport>,
    pub continuable: bool,
    /// `| |root| - 1 |` for the critical point on the circle.
    pub contact_residual: Option<f64>,
    /// The other critical point stays off the circle.
    pub single_contact: bool,
}

impl BlowUpReport {
    fn none() -> Self {
        Self {
            blows_up: false,
            tau_blow: None,
            t_star: None,
            zeta0: None,
            cusp: None,
            continuable: false,
            contact_residual: None,
            single_contact: true,
        }
    }

    /// The contact invariants hold: critical point on the circle within
    /// tolerance and no second contact.
    pub fn contact_ok(&self) -> bool {
        !self.blows_up || (self.contact_residual.is_some_and(|r| r <= CONTACT_TOLERANCE) && self.single_contact)
    }
}

/// One evaluated point of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Snapshot {
    pub t: f64,
    pub tau: f64,
    pub map: CubicMap,
    pub lambda: LambdaPoint,
    /// `1/4 - h(τ)`.
    pub margin: f64,
    /// The map is a physical univalent solution at this time. False past the
    /// blow-up of C3 data and for initial maps outside the trichotomy.
    pub valid: bool,
}

/// A trajectory together with the classification of its initial map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evolver {
    trajectory: Trajectory,
    classification: ClassificationResult,
    blow_up: Option<BlowUpReport>,
}

impl Evolver {
    pub fn new(f0: &CubicMap) -> Result<Self> {
        Self::with_tolerance(f0, DEFAULT_TOLERANCE)
    }

    pub fn with_tolerance(f0: &CubicMap, tolerance: f64) -> Result<Self> {
        if f0.a1() != 1.0 {
            return Err(Error::Domain(format!(
                "initial maps must have a1 = 1, got {}",
                f0.a1()
            )));
        }
        Self::from_classification(f0, classify(f0, tolerance)?)
    }

    /// Reuses a classification of `f0` computed with custom options.
    pub fn from_classification(f0: &CubicMap, classification: ClassificationResult) -> Result<Self> {
        if f0.a1() != 1.0 {
            return Err(Error::Domain(format!(
                "initial maps must have a1 = 1, got {}",
                f0.a1()
            )));
        }
        let trajectory = Trajectory::from_map(f0)?;
        let blow_up = if classification.tag.is_trichotomy() {
            Some(locate_blow_up(&trajectory, &classification)?)
        } else {
            None
        };
        Ok(Self {
            trajectory,
            classification,
            blow_up,
        })
    }

    pub fn trajectory(&self) -> &Trajectory {
        &self.trajectory
    }

    pub fn classification(&self) -> &ClassificationResult {
        &self.classification
    }

    pub fn tag(&self) -> Tag {
        self.classification.tag
    }

    pub fn blow_up(&self) -> Option<&BlowUpReport> {
        self.blow_up.as_ref()
    }

    pub fn is_valid_tau(&self, tau: f64) -> bool {
        match (self.classification.tag, self.blow_up.and_then(|b| b.tau_blow)) {
            (Tag::C1 | Tag::C2, _) => true,
            (Tag::C3, Some(tau_b)) => tau < tau_b,
            _ => false,
        }
    }

    pub fn at_tau(&self, tau: f64) -> Result<Snapshot> {
        let t = self.trajectory.time_of_tau(tau)?;
        self.snapshot(t, tau)
    }

    pub fn at_time(&self, t: f64) -> Result<Snapshot> {
        let tau = self.trajectory.tau_of_time(t)?;
        self.snapshot(t, tau)
    }

    fn snapshot(&self, t: f64, tau: f64) -> Result<Snapshot> {
        let map = self.trajectory.map_at(tau)?;
        Ok(Snapshot {
            t,
            tau,
            map,
            lambda: lambda_map(&map),
            margin: QUARTER - self.trajectory.ellipse_value(tau),
            valid: self.is_valid_tau(tau),
        })
    }

    /// The C2 solution past its blow-up time. Fails unless the data is C2,
    /// `t > t*`, and the snapshot is strictly back in the locally univalent region.
    pub fn continue_after_blowup(&self, t: f64) -> Result<Snapshot> {
        if self.classification.tag != Tag::C2 {
            return Err(Error::Classification(format!(
                "continuation past blow-up needs C2 data, got {}",
                self.classification.tag
            )));
        }
        let t_star = self.blow_up.and_then(|b| b.t_star).unwrap_or(0.0);
        if !(t > t_star) {
            return Err(Error::Domain(format!("continuation needs t > t* = {t_star}, got {t}")));
        }
        let snap = self.at_time(t)?;
        if !(snap.margin > 0.0) {
            return Err(Error::NotReentered { t, margin: snap.margin });
        }
        Ok(snap)
    }

    /// Default end of a trajectory scan: where `M₂/τ⁴` falls below `10⁻⁴`.
    pub fn default_tau_max(&self) -> f64 {
        let decay = (self.trajectory.m2 / SCAN_DECAY).powf(0.25);
        let tau0 = self.trajectory.tau0;
        if decay > tau0 {
            decay
        } else {
            2.0 * tau0
        }
    }

    /// `n` snapshots evenly spaced in `τ` over `[τ₀, τ_max]`.
    pub fn scan(&self, n: usize, tau_max: Option<f64>) -> Result<Vec<Snapshot>> {
        if n < 2 {
            return Err(Error::Config(format!("trajectory scan needs n >= 2, got {n}")));
        }
        let tau0 = self.trajectory.tau0;
        let tau_max = tau_max.unwrap_or_else(|| self.default_tau_max());
        if !(tau_max > tau0) {
            return Err(Error::Config(format!("tau_max must exceed tau0={tau0}, got {tau_max}")));
        }
        let step = (tau_max - tau0) / (n - 1) as f64;
        (0..n)
            .into_par_iter()
            .map(|k| {
                let tau = if k + 1 == n { tau_max } else { tau0 + step * k as f64 };
                self.at_tau(tau)
            })
            .collect()
    }
}

fn locate_blow_up(traj: &Trajectory, classification: &ClassificationResult) -> Result<BlowUpReport> {
    let tag = classification.tag;
    if !tag.blows_up() {
        return Ok(BlowUpReport::none());
    }
    let tau_b = match tag {
        Tag::C2 => touching_point(traj, classification.sup.arg_tau),
        _ => first_crossing(traj, classification.sup.arg_tau)?,
    };
    let t_star = traj.time_of_tau(tau_b)?;
    let f_star = traj.map_at(tau_b)?;
    let roots = critical_points(&f_star);
    let gap = |z: Complex64| (z.norm() - 1.0).abs();
    let (contact, other) = if gap(roots[0]) <= gap(roots[1]) {
        (roots[0], roots[1])
    } else {
        (roots[1], roots[0])
    };
    let zeta0 = contact / contact.norm();
    let mut cusp = cusp_report(&f_star, zeta0).ok();
    if let Some(report) = cusp.as_mut() {
        if tag != Tag::C2 && report.declared_order.is_continuable() {
            report.declared_order = CuspOrder::Unresolved;
        }
    }
    Ok(BlowUpReport {
        blows_up: true,
        tau_blow: Some(tau_b),
        t_star: Some(t_star),
        zeta0: Some(zeta0),
        cusp,
        continuable: tag == Tag::C2,
        contact_residual: Some(gap(contact)),
        single_contact: !(gap(other) <= CONTACT_TOLERANCE),
    })
}

/// Maximizer of `h` polished by bisection on `h'` near the supremum's argument.
fn touching_point(traj: &Trajectory, arg_tau: f64) -> f64 {
    let dh = |tau: f64| h_derivative(traj.p, traj.q, traj.m2, tau);
    let lo = (arg_tau - TOUCH_WINDOW).max(traj.tau0);
    let hi = arg_tau + TOUCH_WINDOW;
    bisect(dh, lo, hi, 0.0).unwrap_or(arg_tau)
}

/// Smallest `τ > τ₀` with `h(τ) = 1/4`.
fn first_crossing(traj: &Trajectory, arg_tau: f64) -> Result<f64> {
    let excess = |tau: f64| traj.ellipse_value(tau) - QUARTER;
    let tau0 = traj.tau0;
    let hi = tau0.max(sup_search_bound(traj.m2)) + 1.0;
    let step = (hi - tau0) / (BLOW_UP_GRID - 1) as f64;
    let mut prev = tau0;
    for k in 1..BLOW_UP_GRID {
        let tau = if k + 1 == BLOW_UP_GRID { hi } else { tau0 + step * k as f64 };
        if excess(tau) >= 0.0 {
            return bisect(excess, prev, tau, 0.0);
        }
        prev = tau;
    }
    bisect(excess, tau0, arg_tau.max(tau0), 0.0)
}

pub fn blow_up(f0: &CubicMap) -> Result<BlowUpReport> {
    let evolver = Evolver::new(f0)?;
    evolver.blow_up.ok_or_else(|| {
        Error::Classification(format!(
            "blow-up is defined for C1/C2/C3 data, got {}",
            evolver.classification.tag
        ))
    })
}

pub fn evolve(f0: &CubicMap, t: f64) -> Result<Snapshot> {
    Evolver::new(f0)?.at_time(t)
}

pub fn continue_after_blowup(f0: &CubicMap, t: f64) -> Result<Snapshot> {
    Evolver::new(f0)?.continue_after_blowup(t)
}

pub fn trajectory_scan(f0: &CubicMap, n: usize) -> Result<Vec<Snapshot>> {
    Evolver::new(f0)?.scan(n, None)
}
