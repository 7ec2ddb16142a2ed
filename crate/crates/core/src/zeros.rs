//! Positive zeros of `J_nu`, of `Xi_l^{(d)}` (Dirichlet) and of
//! `d/dr Xi_l^{(d)}` (Neumann).
//!
//! The `m`-th zero is found by census: a sign scan with a fixed step starting
//! at a point below which the target provably has no zero, counting sign
//! changes until the `m`-th. The bracket is then bisected to `1e-10` relative
//! and polished with Newton steps that are rejected whenever they leave it.
//!
//! Zero-free starting points:
//!
//! * `J_nu`: `j_{nu,1} > sqrt(nu (nu + 2))`, and the ascending series is
//!   alternating with decreasing terms for `x < 2 sqrt(nu + 1)`.
//! * `Xi'_l`, `l >= 1`: `beta_{l,1}^2` is a Neumann eigenvalue whose Rayleigh
//!   quotient is at least `l (l + d - 2)`, because `1/r^2 >= 1` on the unit ball;
//!   the series of `l J_nu - r J_{nu+1}` alternates with decreasing terms for
//!   `r^2 < 4 l (nu + 1) / (l + 2)`.
//! * `Xi'_0 = -Xi_1`, whose zeros are those of `J_{d/2}`.

use serde::{Deserialize, Serialize};

use crate::bessel::{self, eval_j_pair, Order, MAX_X};
use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-13;
pub const DEFAULT_STEP: f64 = 0.2;
/// Bisection hands over to Newton below this relative bracket width.
const BISECT_REL: f64 = 1e-10;
/// Function values below this are treated as an unusable bracket endpoint.
const NEGLIGIBLE: f64 = 1e-290;
/// Halvings of the scan step before the census gives up.
const MAX_REFINEMENTS: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootKind {
    BesselJ,
    DirichletXi,
    NeumannXiPrime,
}

/// A sign-change interval of the target function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

/// One zero, addressed the way the ball spectrum addresses it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootRequest {
    pub kind: RootKind,
    pub l: u32,
    pub d: u32,
    pub m: u32,
    pub tol: f64,
}

impl RootRequest {
    pub fn new(kind: RootKind, l: u32, d: u32, m: u32) -> Self {
        Self {
            kind,
            l,
            d,
            m,
            tol: DEFAULT_TOL,
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn solve(&self) -> Result<f64> {
        match self.kind {
            RootKind::BesselJ => bessel_zero(Order::for_ball(self.l, self.d)?, self.m, self.tol),
            RootKind::DirichletXi => dirichlet_zero(self.l, self.d, self.m, self.tol),
            RootKind::NeumannXiPrime => neumann_zero(self.l, self.d, self.m, self.tol),
        }
    }
}

/// Function whose zeros are sought, with its derivative.
#[derive(Debug, Clone, Copy)]
enum Target {
    J(Order),
    XiPrime { l: u32, d: u32 },
}

impl Target {
    fn new(kind: RootKind, l: u32, d: u32) -> Result<Self> {
        let nu = Order::for_ball(l, d)?;
        Ok(match kind {
            // Xi_l = r^{(2-d)/2} J_nu has the zeros of J_nu.
            RootKind::BesselJ | RootKind::DirichletXi => Target::J(nu),
            RootKind::NeumannXiPrime => Target::XiPrime { l, d },
        })
    }

    fn jet(self, x: f64) -> Result<(f64, f64)> {
        match self {
            Target::J(nu) => {
                let (a, b) = eval_j_pair(nu, x)?;
                Ok((a.value, nu.value() / x * a.value - b.value))
            }
            Target::XiPrime { l, d } => {
                let (_, d1, d2) = bessel::xi_jet(l, d, x)?;
                Ok((d1, d2))
            }
        }
    }

    /// A point at or below which the target has no positive zero.
    fn zero_free_until(self) -> f64 {
        let raw = match self {
            Target::J(nu) => j_zero_free(nu.value()),
            Target::XiPrime { l: 0, d } => j_zero_free(d as f64 / 2.0),
            Target::XiPrime { l, d } => {
                let lf = l as f64;
                let nu = lf + d as f64 / 2.0 - 1.0;
                let rayleigh = (lf * (lf + d as f64 - 2.0)).sqrt();
                let series = (4.0 * lf * (nu + 1.0) / (lf + 2.0)).sqrt();
                rayleigh.max(series)
            }
        };
        (raw * (1.0 - 1e-9)).max(1e-3)
    }
}

fn j_zero_free(nu: f64) -> f64 {
    (nu * (nu + 2.0)).sqrt().max(2.0 * (nu + 1.0).sqrt())
}

/// `(lower, upper)` bounds `sqrt(nu (nu+2)) < j_{nu,1} < sqrt(nu+1) (sqrt(nu+2) + 1)`.
pub fn first_zero_bounds(nu: Order) -> (f64, f64) {
    let v = nu.value();
    ((v * (v + 2.0)).sqrt(), (v + 1.0).sqrt() * ((v + 2.0).sqrt() + 1.0))
}

/// Lower bound for every positive zero of `d/dr Xi_l^{(d)}`.
pub fn neumann_zero_lower_bound(l: u32, d: u32) -> Result<f64> {
    Ok(Target::new(RootKind::NeumannXiPrime, l, d)?.zero_free_until())
}

/// Cubic Hermite interpolant on `[a, b]` sampled for sign changes.
fn hermite_sign_changes(a: f64, fa: f64, da: f64, b: f64, fb: f64, db: f64) -> usize {
    const SAMPLES: usize = 16;
    let h = b - a;
    let mut prev = fa;
    let mut changes = 0;
    for i in 1..=SAMPLES {
        let t = i as f64 / SAMPLES as f64;
        let t2 = t * t;
        let t3 = t2 * t;
        let v = (2.0 * t3 - 3.0 * t2 + 1.0) * fa
            + (t3 - 2.0 * t2 + t) * h * da
            + (-2.0 * t3 + 3.0 * t2) * fb
            + (t3 - t2) * h * db;
        if v != 0.0 && prev != 0.0 && (v < 0.0) != (prev < 0.0) {
            changes += 1;
        }
        if v != 0.0 {
            prev = v;
        }
    }
    changes
}

struct Sample {
    x: f64,
    f: f64,
    df: f64,
}

/// Walk the target upward from its zero-free start in cells of `step`,
/// stopping after `limit` brackets or once past `x_max`.
fn census(target: Target, x_max: f64, step: f64, limit: usize) -> Result<Vec<Bracket>> {
    if !(step > 0.0 && step <= std::f64::consts::FRAC_PI_2) {
        return Err(Error::range("scan step", format!("step = {step} not in (0, pi/2]")));
    }
    if !(x_max > 0.0 && x_max <= MAX_X) {
        return Err(Error::range("scan limit", format!("x_max = {x_max} not in (0, {MAX_X}]")));
    }
    let mut out = Vec::new();
    let start = target.zero_free_until();
    if start >= x_max {
        return Ok(out);
    }
    let (f, df) = target.jet(start)?;
    let mut prev = Sample { x: start, f, df };
    let mut i = 1u64;
    // Cells sit on a fixed grid from `start`; a cell straddling `x_max` is
    // kept whole, so a zero is always refined from the same bracket.
    while out.len() < limit && prev.x < x_max {
        let x = (start + i as f64 * step).min(MAX_X);
        i += 1;
        let (f, df) = target.jet(x)?;
        if f.abs() < NEGLIGIBLE && x < MAX_X {
            // Too close to a zero to carry a sign: widen the cell by a step.
            continue;
        }
        let cur = Sample { x, f, df };
        let crossing = (prev.f < 0.0) != (cur.f < 0.0);
        let hermite = hermite_sign_changes(prev.x, prev.f, prev.df, cur.x, cur.f, cur.df);
        if crossing {
            let direction = cur.f - prev.f;
            let monotone = prev.df * direction >= 0.0 && cur.df * direction >= 0.0;
            if hermite > 1 || (!monotone && hermite != 1) {
                return Err(Error::StepTooCoarse { step, at: prev.x });
            }
            let inside = cur.x <= x_max || {
                let (fx, _) = target.jet(x_max)?;
                fx == 0.0 || (fx < 0.0) != (prev.f < 0.0)
            };
            if inside {
                out.push(Bracket { lo: prev.x, hi: cur.x });
            }
        } else if hermite > 0 {
            return Err(Error::StepTooCoarse { step, at: prev.x });
        }
        prev = cur;
    }
    Ok(out)
}

/// Census that halves the step on [`Error::StepTooCoarse`].
fn census_refining(target: Target, x_max: f64, step: f64, limit: usize) -> Result<Vec<Bracket>> {
    let mut step = step;
    for _ in 0..=MAX_REFINEMENTS {
        match census(target, x_max, step, limit) {
            Err(Error::StepTooCoarse { .. }) => step *= 0.5,
            other => return other,
        }
    }
    Err(Error::BracketFailure(format!(
        "could not isolate zeros of {target:?} below {x_max} even with step {step}"
    )))
}

/// Sign-change brackets of the target in `(0, x_max]`, in increasing order.
/// Every positive zero in the range gets exactly one bracket (the Neumann
/// zero of `Xi'_0` at the origin is not positive and is not reported).
pub fn scan_brackets(kind: RootKind, l: u32, d: u32, x_max: f64, step: f64) -> Result<Vec<Bracket>> {
    let mut out = census(Target::new(kind, l, d)?, x_max, step, usize::MAX)?;
    if let Some(last) = out.last_mut() {
        last.hi = last.hi.min(x_max);
    }
    Ok(out)
}

fn refine(target: Target, bracket: Bracket, tol: f64) -> Result<f64> {
    let Bracket { mut lo, mut hi } = bracket;
    let (mut flo, _) = target.jet(lo)?;
    let (fhi, _) = target.jet(hi)?;
    if (flo < 0.0) == (fhi < 0.0) {
        return Err(Error::BracketFailure(format!("no sign change on [{lo}, {hi}]")));
    }
    while hi - lo > BISECT_REL * hi {
        let mid = 0.5 * (lo + hi);
        let (fm, _) = target.jet(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    // Polish to the noise floor of the kernel so that the result does not
    // depend on where the bracket happened to start.
    let mut x = 0.5 * (lo + hi);
    let mut last_move = f64::INFINITY;
    for _ in 0..100 {
        let (f, df) = target.jet(x)?;
        if f == 0.0 {
            return Ok(x);
        }
        if (f < 0.0) == (flo < 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - f / df;
        let next = if df != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let moved = (next - x).abs();
        x = next;
        if moved <= 4.0 * f64::EPSILON * x || (moved >= last_move && moved <= tol * x) {
            return Ok(x);
        }
        last_move = moved;
    }
    if hi - lo <= tol * x {
        return Ok(x);
    }
    Err(Error::BracketFailure(format!(
        "zero of {target:?} in [{lo}, {hi}] did not converge to {tol:e}"
    )))
}

fn nth_zero(target: Target, m: u32, tol: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::range("zero index", "m must be positive"));
    }
    if !(tol > 0.0 && tol < 1e-3) {
        return Err(Error::range("tolerance", format!("tol = {tol}")));
    }
    let brackets = census_refining(target, MAX_X, DEFAULT_STEP, m as usize)?;
    match brackets.get(m as usize - 1) {
        Some(&b) => refine(target, b, tol),
        None => Err(Error::range(
            "zero",
            format!("zero #{m} of {target:?} lies beyond x = {MAX_X}"),
        )),
    }
}

/// `j_{nu,m}`, the `m`-th positive zero of `J_nu`.
pub fn bessel_zero(nu: Order, m: u32, tol: f64) -> Result<f64> {
    if nu.twice() > bessel::MAX_TWICE_NU {
        return Err(Error::range("order", format!("nu = {nu}")));
    }
    nth_zero(Target::J(nu), m, tol)
}

/// `alpha_{l,m}^{(d)}`, the `m`-th positive zero of `Xi_l^{(d)}`.
pub fn dirichlet_zero(l: u32, d: u32, m: u32, tol: f64) -> Result<f64> {
    bessel_zero(Order::for_ball(l, d)?, m, tol)
}

/// `beta_{l,m}^{(d)}`, the `m`-th positive zero of `d/dr Xi_l^{(d)}`; for
/// `l = 0` the first one is `0`.
pub fn neumann_zero(l: u32, d: u32, m: u32, tol: f64) -> Result<f64> {
    let target = Target::new(RootKind::NeumannXiPrime, l, d)?;
    if Order::for_ball(l, d)?.twice() > bessel::MAX_TWICE_NU {
        return Err(Error::range("order", format!("l = {l}, d = {d}")));
    }
    match (l, m) {
        (_, 0) => Err(Error::range("zero index", "m must be positive")),
        (0, 1) => Ok(0.0),
        (0, m) => nth_zero(target, m - 1, tol),
        (_, m) => nth_zero(target, m, tol),
    }
}

/// All zeros of the target in `(0, x_max]` (plus `0` for the Neumann
/// `l = 0` family), refined to `tol`. Used by the spectrum enumeration.
pub fn zeros_up_to(kind: RootKind, l: u32, d: u32, x_max: f64, tol: f64) -> Result<Vec<f64>> {
    let target = Target::new(kind, l, d)?;
    let mut out = Vec::new();
    if kind == RootKind::NeumannXiPrime && l == 0 {
        out.push(0.0);
    }
    for b in census_refining(target, x_max, DEFAULT_STEP, usize::MAX)? {
        out.push(refine(target, b, tol)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs()
    }

    #[test]
    fn half_order_zeros_are_multiples_of_pi() {
        let z = bessel_zero(Order::from_twice(1), 3, DEFAULT_TOL).unwrap();
        assert!(close(z, 3.0 * PI, 1e-13), "{z}");
        assert!(close(dirichlet_zero(0, 3, 2, DEFAULT_TOL).unwrap(), 2.0 * PI, 1e-13));
    }

    #[test]
    fn neumann_ground_state_is_zero() {
        assert_eq!(neumann_zero(0, 2, 1, DEFAULT_TOL).unwrap(), 0.0);
        assert_eq!(neumann_zero(0, 7, 1, DEFAULT_TOL).unwrap(), 0.0);
    }

    #[test]
    fn zero_index_must_be_positive() {
        assert!(bessel_zero(Order::integer(0), 0, DEFAULT_TOL).is_err());
        assert!(neumann_zero(1, 2, 0, DEFAULT_TOL).is_err());
    }

    #[test]
    fn zeros_beyond_box_are_range_errors() {
        // j_{0,m} ~ (m - 1/4) pi, so m = 70 is past 200.
        assert!(matches!(
            bessel_zero(Order::integer(0), 70, DEFAULT_TOL),
            Err(Error::Range { .. })
        ));
        assert!(bessel_zero(Order::integer(0), 63, DEFAULT_TOL).is_ok());
    }

    #[test]
    fn scan_rejects_bad_steps() {
        assert!(scan_brackets(RootKind::BesselJ, 0, 2, 10.0, 2.0).is_err());
        assert!(scan_brackets(RootKind::BesselJ, 0, 2, 10.0, 0.0).is_err());
        assert!(scan_brackets(RootKind::BesselJ, 0, 2, 250.0, 0.2).is_err());
    }

    #[test]
    fn scan_half_order() {
        let b = scan_brackets(RootKind::BesselJ, 0, 3, 10.0, 0.5).unwrap();
        assert_eq!(b.len(), 3);
        for (k, br) in b.iter().enumerate() {
            let z = (k + 1) as f64 * PI;
            assert!(br.lo < z && z < br.hi);
        }
    }

    #[test]
    fn hermite_detects_double_crossing() {
        // f = (x - 0.3)(x - 0.7) on [0, 1]
        assert_eq!(hermite_sign_changes(0.0, 0.21, -1.0, 1.0, 0.21, 1.0), 2);
        assert_eq!(hermite_sign_changes(0.0, -1.0, 2.0, 1.0, 1.0, 2.0), 1);
    }

    #[test]
    fn coarse_step_is_refined() {
        // Step pi/2 is accepted by the scan and still isolates every zero.
        let z = zeros_up_to(RootKind::BesselJ, 0, 2, 60.0, DEFAULT_TOL).unwrap();
        let b = scan_brackets(RootKind::BesselJ, 0, 2, 60.0, std::f64::consts::FRAC_PI_2).unwrap();
        assert_eq!(z.len(), b.len());
    }

    #[test]
    fn root_request_dispatch() {
        let r = RootRequest::new(RootKind::NeumannXiPrime, 0, 2, 1);
        assert_eq!(r.solve().unwrap(), 0.0);
        let r = RootRequest::new(RootKind::DirichletXi, 0, 3, 1).with_tol(1e-12);
        assert!(close(r.solve().unwrap(), PI, 1e-12));
    }
}
