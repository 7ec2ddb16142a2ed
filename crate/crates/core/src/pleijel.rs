//! The Pleijel constant
//!
//! `gamma(d) = 2^{d-2} d^2 Gamma(d/2)^2 / j_{d/2-1,1}^d`,
//!
//! the bound on `limsup mu(u_n) / n` for Dirichlet eigenfunctions of a
//! bounded domain in `R^d`, together with a numeric check of every step in
//! the proof that it decreases in `d`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bessel::{log_gamma, Order};
use crate::certificate::{Certificate, CertificateEntry};
use crate::error::{Error, Result};
use crate::zeros::{bessel_zero, DEFAULT_TOL};

pub const MIN_D: u32 = 2;
/// `j_{d/2-1,1}` needs `d/2 - 1 <= 120` and `gamma(d+1)` one order more.
pub const MAX_D: u32 = 240;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PleijelRow {
    pub d: u32,
    pub gamma: f64,
    pub log_gamma_value: f64,
    /// `gamma(d+1) / gamma(d)`, absent on the last row of a table.
    pub quotient_next: Option<f64>,
}

fn check_d(d: u32, lowest: u32) -> Result<()> {
    if d < lowest || d > MAX_D {
        return Err(Error::range("dimension", format!("d = {d} not in [{lowest}, {MAX_D}]")));
    }
    Ok(())
}

/// First positive zero of `J_{twice_nu/2}`.
fn first_zero(twice_nu: u32) -> Result<f64> {
    bessel_zero(Order::from_twice(twice_nu), 1, DEFAULT_TOL)
}

/// `ln gamma(d)`.
pub fn ln_gamma_pleijel(d: u32) -> Result<f64> {
    check_d(d, MIN_D)?;
    let df = d as f64;
    let j = first_zero(d - 2)?;
    Ok((df - 2.0) * std::f64::consts::LN_2 + 2.0 * df.ln() + 2.0 * log_gamma(df / 2.0)?
        - df * j.ln())
}

pub fn gamma(d: u32) -> Result<f64> {
    Ok(ln_gamma_pleijel(d)?.exp())
}

/// `gamma(d+1) / gamma(d)`.
pub fn quotient(d: u32) -> Result<f64> {
    check_d(d + 1, MIN_D)?;
    Ok((ln_gamma_pleijel(d + 1)? - ln_gamma_pleijel(d)?).exp())
}

pub fn gamma_table(d_min: u32, d_max: u32) -> Result<Vec<PleijelRow>> {
    check_d(d_min, MIN_D)?;
    check_d(d_max, MIN_D)?;
    if d_min > d_max {
        return Err(Error::range("dimension range", format!("{d_min} > {d_max}")));
    }
    let logs: Vec<f64> = (d_min..=d_max)
        .into_par_iter()
        .map(ln_gamma_pleijel)
        .collect::<Result<_>>()?;
    let mut rows = Vec::with_capacity(logs.len());
    for (i, &lg) in logs.iter().enumerate() {
        let gamma = lg.exp();
        if !(gamma > 0.0 && gamma < 1.0) {
            return Err(Error::CertificateFailure {
                module: "pleijel",
                check: format!("0 < gamma({}) < 1", d_min + i as u32),
                lhs: gamma,
                rhs: 1.0,
            });
        }
        rows.push(PleijelRow {
            d: d_min + i as u32,
            gamma,
            log_gamma_value: lg,
            quotient_next: logs.get(i + 1).map(|next| (next - lg).exp()),
        });
    }
    Ok(rows)
}

/// `(d, gamma(d+1)/gamma(d))` for `d_min..=d_max`; every quotient must be below one.
pub fn quotient_curve(d_min: u32, d_max: u32) -> Result<Vec<(u32, f64)>> {
    check_d(d_max + 1, MIN_D)?;
    let rows = gamma_table(d_min, d_max + 1)?;
    rows.iter()
        .filter_map(|r| r.quotient_next.map(|q| (r.d, q)))
        .map(|(d, q)| {
            if q < 1.0 {
                Ok((d, q))
            } else {
                Err(Error::CertificateFailure {
                    module: "pleijel",
                    check: format!("gamma({}) < gamma({d})", d + 1),
                    lhs: q,
                    rhs: 1.0,
                })
            }
        })
        .collect()
}

/// `2/e`, the limit of the quotient.
pub fn quotient_limit() -> f64 {
    2.0 / std::f64::consts::E
}

/// Plot data for the quotient curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuotientPlot {
    pub x: Vec<u32>,
    pub y: Vec<f64>,
    pub hline: f64,
}

impl QuotientPlot {
    pub fn new(curve: &[(u32, f64)]) -> Self {
        QuotientPlot {
            x: curve.iter().map(|p| p.0).collect(),
            y: curve.iter().map(|p| p.1).collect(),
            hline: quotient_limit(),
        }
    }
}

/// Bound `gamma(d-1)` on the Neumann nodal ratio in dimension `d`.
pub fn neumann_pleijel_bound(d: u32) -> Result<f64> {
    check_d(d, 3)?;
    let (below, here) = (gamma(d - 1)?, gamma(d)?);
    if !(here < below) {
        return Err(Error::CertificateFailure {
            module: "pleijel",
            check: format!("gamma({d}) < gamma({})", d - 1),
            lhs: here,
            rhs: below,
        });
    }
    Ok(below)
}

/// Round half away from zero to 6 decimals. Values within the accuracy of
/// `gamma` of a half-way point are refused.
pub fn round6(x: f64) -> Result<String> {
    if !x.is_finite() {
        return Err(Error::Invalid(format!("cannot round {x}")));
    }
    let y = x.abs() * 1e6;
    let whole = y.floor();
    let frac = y - whole;
    if (frac - 0.5).abs() <= 1e-9 * y.max(1.0) {
        return Err(Error::Invalid(format!("{x} is too close to a rounding tie")));
    }
    let units = whole as u64 + u64::from(frac > 0.5);
    let sign = if x < 0.0 && units != 0 { "-" } else { "" };
    Ok(format!("{sign}{}.{:06}", units / 1_000_000, units % 1_000_000))
}

/// Every inequality of the monotonicity proof at one dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityCertificate {
    pub d: u32,
    pub checks: Vec<CertificateEntry>,
    /// Exact identities confirmed along the way.
    pub identities: Vec<String>,
    /// `(95/100)(1 + 5/d)` compared with `1`, exactly.
    pub analytic_final_vs_one: BoundVsOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundVsOne {
    Above,
    Equal,
    Below,
}

impl MonotonicityCertificate {
    pub fn check(&self, name: &str) -> Option<&CertificateEntry> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rat_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// `(d+1)^2/d^2 (d-1)^2/(d-2) (d+2)/(d+1/2)^2`.
fn poly_ratio(d: &BigRational) -> BigRational {
    let one = BigRational::one();
    let two = rat(2, 1);
    let half = rat(1, 2);
    let a = (d + &one) * (d + &one) / (d * d);
    let b = (d - &one) * (d - &one) / (d - &two);
    let c = (d + &two) / ((d + &half) * (d + &half));
    a * b * c
}

pub fn monotonicity_certificate(d: u32) -> Result<MonotonicityCertificate> {
    if d < 4 {
        return Err(Error::range("dimension", format!("the monotonicity proof needs d >= 4, got {d}")));
    }
    check_d(d + 1, 4)?;
    let df = d as f64;
    let mut cert = Certificate::new("pleijel");
    let mut identities = Vec::new();

    // log-convexity of Gamma
    let g_ratio = (log_gamma(df / 2.0 + 0.5)? - log_gamma(df / 2.0)?).exp();
    cert.check(
        "gamma_eq",
        g_ratio * g_ratio,
        (df - 1.0) * (df - 1.0) / (2.0 * (df - 2.0)),
    )?;

    // first zeros: j_{d/2-1}, j_{(d-1)/2}, j_{(d-3)/2}, j_{d/2}
    let j_a = first_zero(d - 2)?;
    let j_half = first_zero(d - 1)?;
    let j_low = first_zero(d - 3)?;
    let j_b = first_zero(d)?;

    cert.check("asb", j_a / j_b, (1.0 - 3.0 / (df + 3.0)).sqrt())?;
    cert.check("asb_shifted", j_low / j_half, (1.0 - 3.0 / (df + 2.0)).sqrt())?;
    let r2 = (j_a / j_half).powi(2);
    cert.check("convexity", r2, 0.5 * ((j_low / j_half).powi(2) + 1.0))?;
    let control = 1.0 - 3.0 / (2.0 * (df + 2.0));
    cert.check("control", r2, control)?;
    let nu = (df - 1.0) / 2.0;
    cert.check("first_zero_lower", (nu * (nu + 2.0)).sqrt(), j_half)?;

    let ratio = quotient(d)?;
    let poly = (df + 1.0).powi(2) / (df * df) * (df - 1.0).powi(2) / (df - 2.0);
    cert.check(
        "gamma_ratio_bound",
        ratio,
        2.0 / ((df - 1.0) * (df + 3.0)).sqrt() * poly * control.powf(df / 2.0),
    )?;
    cert.check("exp_bound", control.powf(df / 2.0 + 1.0), (-0.75f64).exp())?;

    let dr = rat(d as i64, 1);
    let sq_lhs = (&dr + rat(1, 2)) * (&dr + rat(1, 2));
    let sq_rhs = (&dr - rat(1, 1)) * (&dr + rat(3, 1));
    cert.check_exact("sqrt_bound", sq_lhs < sq_rhs, rat_f64(&sq_lhs), rat_f64(&sq_rhs))?;

    let p = poly_ratio(&dr);
    let five_over = rat(1, 1) + rat(5, d as i64);
    // P - (1 + 5/d) = d^4 q(d) / (4 d^2 (d-2) (d+1/2)^2) with
    // q(d) = -8 + 19/d + 21/d^2 + 14/d^3 + 8/d^4, decreasing and q(4) = -27/16.
    let q = |k: i64| {
        rat(-8, 1) + rat(19, k) + rat(21, k * k) + rat(14, k * k * k) + rat(8, k * k * k * k)
    };
    let half = rat(1, 2);
    let denom = rat(4, 1) * (&dr - rat(2, 1)) * &dr * &dr * (&dr + &half) * (&dr + &half);
    let factored = q(d as i64) * dr.pow(4) / denom;
    if &p - &five_over != factored {
        return Err(cert.fail("poly_identity", rat_f64(&(&p - &five_over)), rat_f64(&factored)));
    }
    identities.push("poly_identity".to_string());
    if q(4) != rat(-27, 16) {
        return Err(cert.fail("poly_numerator_at_4", rat_f64(&q(4)), -27.0 / 16.0));
    }
    cert.check_exact("poly_numerator", q(d as i64) <= q(4) && q(4).is_negative(), rat_f64(&q(d as i64)), 0.0)?;

    // -4 + 39/d^2 + 41/d^3 is decreasing with value -59/64 at d = 4
    let spot = |k: i64| rat(-4, 1) + rat(39, k * k) + rat(41, k * k * k);
    if spot(4) != rat(-59, 64) {
        return Err(cert.fail("spot_value", rat_f64(&spot(4)), -59.0 / 64.0));
    }
    identities.push("spot_value".to_string());
    if d > 4 {
        cert.check_exact("spot_monotone", spot(d as i64) < spot(4), rat_f64(&spot(d as i64)), -59.0 / 64.0)?;
    }
    cert.check_exact("poly_bound", p < five_over, rat_f64(&p), rat_f64(&five_over))?;

    let e34 = 2.0 / 0.75f64.exp();
    cert.check("e34", e34, 0.95)?;
    cert.check("chain", ratio, e34 * rat_f64(&five_over))?;
    cert.check("final_bound", ratio, 0.95 * rat_f64(&five_over))?;
    cert.check("final_lt_1", ratio, 1.0)?;

    let analytic = rat(95, 100) * &five_over;
    Ok(MonotonicityCertificate {
        d,
        checks: cert.entries,
        identities,
        analytic_final_vs_one: match analytic.cmp(&BigRational::one()) {
            std::cmp::Ordering::Greater => BoundVsOne::Above,
            std::cmp::Ordering::Equal => BoundVsOne::Equal,
            std::cmp::Ordering::Less => BoundVsOne::Below,
        },
    })
}

/// Certificates for `d_min..=d_max`, stopping at the first failure.
pub fn certify_range(d_min: u32, d_max: u32) -> Result<Vec<MonotonicityCertificate>> {
    (d_min..=d_max)
        .into_par_iter()
        .map(monotonicity_certificate)
        .collect()
}

/// CSV with columns `d,gamma,quotient`; the last quotient is empty.
pub fn table_csv(rows: &[PleijelRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["d", "gamma", "quotient"]).expect("in-memory csv");
    for r in rows {
        let q = r.quotient_next.map(|q| q.to_string()).unwrap_or_default();
        w.write_record([r.d.to_string(), r.gamma.to_string(), q])
            .expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv output is utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round6(0.6916602).unwrap(), "0.691660");
        assert_eq!(round6(0.0002876).unwrap(), "0.000288");
        assert_eq!(round6(1.25).unwrap(), "1.250000");
        assert_eq!(round6(-0.0000004).unwrap(), "0.000000");
        assert_eq!(round6(-2.0000006).unwrap(), "-2.000001");
        assert!(round6(0.0000005).is_err());
        assert!(round6(f64::NAN).is_err());
    }

    #[test]
    fn closed_forms() {
        let g3 = gamma(3).unwrap();
        let expect = 9.0 / (2.0 * std::f64::consts::PI.powi(2));
        assert!((g3 - expect).abs() <= 1e-12 * expect);
    }

    #[test]
    fn range_checks() {
        assert!(gamma(1).is_err());
        assert!(gamma(MAX_D + 1).is_err());
        assert!(gamma_table(5, 4).is_err());
        assert!(monotonicity_certificate(3).is_err());
        assert!(neumann_pleijel_bound(2).is_err());
    }

    #[test]
    fn exact_poly_at_four() {
        let p = poly_ratio(&rat(4, 1));
        // 25/16 * 9/2 * 6/(81/4) = 25/12
        assert_eq!(p, rat(25, 12));
        assert!(p < rat(9, 4));
    }

    #[test]
    fn poly_difference_factorisation() {
        let d = rat(7, 1);
        let diff = poly_ratio(&d) - (rat(1, 1) + rat(5, 7));
        // -8 d^4 + 19 d^3 + 21 d^2 + 14 d + 8 over d^2 (d - 2) (2d + 1)^2
        let expect = rat(-8 * 2401 + 19 * 343 + 21 * 49 + 14 * 7 + 8, 49 * 5 * 225);
        assert_eq!(diff, expect);
        let c = monotonicity_certificate(4).unwrap();
        assert_eq!(c.identities, vec!["poly_identity", "spot_value"]);
    }

    #[test]
    fn analytic_final_crosses_one_at_95() {
        assert_eq!(monotonicity_certificate(94).unwrap().analytic_final_vs_one, BoundVsOne::Above);
        assert_eq!(monotonicity_certificate(95).unwrap().analytic_final_vs_one, BoundVsOne::Equal);
        assert_eq!(monotonicity_certificate(96).unwrap().analytic_final_vs_one, BoundVsOne::Below);
    }

    #[test]
    fn table_csv_shape() {
        let rows = gamma_table(2, 4).unwrap();
        let csv = table_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "d,gamma,quotient");
        assert_eq!(lines.len(), 4);
        assert!(lines[3].ends_with(','));
    }
}
