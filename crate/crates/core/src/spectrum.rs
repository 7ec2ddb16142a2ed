//! Dirichlet and Neumann spectra of the unit ball in `R^d`.
//!
//! Every eigenvalue is `lambda = z^2` with `z` a zero of `Xi_l^{(d)}`
//! (Dirichlet) or of its derivative (Neumann), repeated with the dimension of
//! the degree-`l` spherical harmonics. Tables are complete up to their cutoff:
//! the `l` loop stops once a lower bound for the first zero exceeds it, and
//! the `m` loop is a full bracket census.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bessel::{log_gamma, Order, MAX_X};
use crate::error::{Error, Result};
use crate::zeros::{self, RootKind, RootRequest, DEFAULT_TOL};

/// Absolute slack on the inclusive cutoff.
pub const CUTOFF_SLACK: f64 = 1e-9;
/// Consecutive eigenvalues closer than this (relative to `max(1, lambda)`)
/// are reported as a degenerate ordering.
pub const MIN_REL_GAP: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryCondition {
    Dirichlet,
    Neumann,
}

impl BoundaryCondition {
    pub const ALL: [BoundaryCondition; 2] = [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann];

    pub fn root_kind(self) -> RootKind {
        match self {
            BoundaryCondition::Dirichlet => RootKind::DirichletXi,
            BoundaryCondition::Neumann => RootKind::NeumannXiPrime,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BoundaryCondition::Dirichlet => "dirichlet",
            BoundaryCondition::Neumann => "neumann",
        }
    }
}

impl fmt::Display for BoundaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundaryCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dirichlet" | "d" => Ok(BoundaryCondition::Dirichlet),
            "neumann" | "n" => Ok(BoundaryCondition::Neumann),
            _ => Err(Error::Invalid(format!("unknown boundary condition {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueRecord {
    pub d: u32,
    pub bc: BoundaryCondition,
    pub l: u32,
    pub m: u32,
    pub zero: f64,
    pub lambda: f64,
    pub multiplicity: u64,
    pub label_first: u64,
    pub label_last: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTable {
    pub d: u32,
    pub bc: BoundaryCondition,
    pub lambda_max: f64,
    pub records: Vec<EigenvalueRecord>,
}

/// `C(n, k)` with `C(n, k) = 0` for `n < k` or `n < 0`.
pub fn binomial(n: i64, k: i64) -> Result<u128> {
    if k < 0 || n < 0 || n < k {
        return Ok(0);
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut c: u128 = 1;
    for i in 0..k {
        // c * (n - i) is divisible by (i + 1)
        c = c
            .checked_mul(n - i)
            .ok_or_else(|| Error::Overflow(format!("C({n}, {k})")))?
            / (i + 1);
    }
    Ok(c)
}

/// Dimension of the degree-`l` harmonic polynomials on `R^d`.
pub fn multiplicity(l: u32, d: u32) -> Result<u64> {
    if d < 2 {
        return Err(Error::range("dimension", format!("d = {d} < 2")));
    }
    let (l, d) = (l as i64, d as i64);
    let v = binomial(l + d - 1, d - 1)? - binomial(l + d - 3, d - 1)?;
    u64::try_from(v).map_err(|_| Error::Overflow(format!("multiplicity for l = {l}, d = {d}")))
}

/// Largest `l` that can contribute an eigenvalue `<= bound`.
fn max_l(d: u32, bc: BoundaryCondition, bound: f64) -> u32 {
    let mut l = 0u32;
    loop {
        let next = (l + 1) as f64;
        let excluded = match bc {
            // j_{nu,1} > sqrt(nu (nu + 2))
            BoundaryCondition::Dirichlet => {
                let nu = next + d as f64 / 2.0 - 1.0;
                nu * (nu + 2.0) > bound
            }
            // beta_{l,1}^2 > l (l + d - 2)
            BoundaryCondition::Neumann => next * (next + d as f64 - 2.0) >= bound,
        };
        if excluded {
            return l;
        }
        l += 1;
    }
}

impl SpectrumTable {
    /// Every eigenvalue `<= lambda_max` (inclusive, with [`CUTOFF_SLACK`]).
    pub fn enumerate(d: u32, bc: BoundaryCondition, lambda_max: f64) -> Result<Self> {
        if d < 2 {
            return Err(Error::range("dimension", format!("d = {d} < 2")));
        }
        if !(0.0..=MAX_X * MAX_X).contains(&lambda_max) {
            return Err(Error::range("cutoff", format!("lambda_max = {lambda_max}")));
        }
        let bound = lambda_max + CUTOFF_SLACK;
        let x_max = bound.sqrt().min(MAX_X);
        let top = max_l(d, bc, bound);
        Order::for_ball(top, d)?;

        let families: Vec<Vec<(u32, u32, f64)>> = (0..=top)
            .into_par_iter()
            .map(|l| {
                let zs = zeros::zeros_up_to(bc.root_kind(), l, d, x_max, DEFAULT_TOL)?;
                Ok(zs
                    .into_iter()
                    .enumerate()
                    .map(|(i, z)| (l, i as u32 + 1, z))
                    .filter(|&(_, _, z)| z * z <= bound)
                    .collect())
            })
            .collect::<Result<_>>()?;

        let mut flat: Vec<(u32, u32, f64)> = families.into_iter().flatten().collect();
        flat.sort_by(|a, b| (a.2 * a.2).total_cmp(&(b.2 * b.2)));

        let mut records = Vec::with_capacity(flat.len());
        let mut next_label = 1u64;
        for (l, m, zero) in flat {
            let multiplicity = multiplicity(l, d)?;
            let label_last = next_label
                .checked_add(multiplicity - 1)
                .ok_or_else(|| Error::Overflow("eigenvalue label".into()))?;
            records.push(EigenvalueRecord {
                d,
                bc,
                l,
                m,
                zero,
                lambda: zero * zero,
                multiplicity,
                label_first: next_label,
                label_last,
            });
            next_label = label_last + 1;
        }
        check_gaps(&records)?;
        Ok(SpectrumTable {
            d,
            bc,
            lambda_max,
            records,
        })
    }

    /// Number of eigenvalues counted with multiplicity.
    pub fn count(&self) -> u64 {
        self.records.last().map_or(0, |r| r.label_last)
    }

    /// Counting function `N(lambda)` with multiplicity.
    pub fn count_up_to(&self, lambda: f64) -> u64 {
        self.records
            .iter()
            .take_while(|r| r.lambda <= lambda)
            .last()
            .map_or(0, |r| r.label_last)
    }

    pub fn find(&self, l: u32, m: u32) -> Option<&EigenvalueRecord> {
        self.records.iter().find(|r| r.l == l && r.m == m)
    }

    /// Record carrying the `n`-th eigenvalue.
    pub fn by_label(&self, n: u64) -> Option<&EigenvalueRecord> {
        self.records
            .iter()
            .find(|r| r.label_first <= n && n <= r.label_last)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spectrum tables always serialize")
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        if self.records.is_empty() {
            w.write_record(CSV_HEADER).expect("in-memory csv");
        }
        for r in &self.records {
            w.serialize(r).expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv output is utf-8")
    }

    /// Parse and validate a JSON table.
    pub fn from_json(text: &str) -> Result<Self> {
        let t: SpectrumTable =
            serde_json::from_str(text).map_err(|e| Error::Invalid(format!("spectrum json: {e}")))?;
        t.validate()?;
        Ok(t)
    }

    /// Parse and validate CSV records. The cutoff is not part of the CSV
    /// format; it is taken to be the largest eigenvalue present.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(text.as_bytes());
        let header = rdr
            .headers()
            .map_err(|e| Error::Invalid(format!("spectrum csv: {e}")))?;
        if header.iter().ne(CSV_HEADER) {
            return Err(Error::Invalid(format!("spectrum csv: unexpected header {header:?}")));
        }
        let records = rdr
            .deserialize()
            .collect::<std::result::Result<Vec<EigenvalueRecord>, _>>()
            .map_err(|e| Error::Invalid(format!("spectrum csv: {e}")))?;
        let first = records
            .first()
            .ok_or_else(|| Error::Invalid("spectrum csv: no records".into()))?;
        let t = SpectrumTable {
            d: first.d,
            bc: first.bc,
            lambda_max: records.last().map_or(0.0, |r| r.lambda),
            records,
        };
        t.validate()?;
        Ok(t)
    }

    /// Check every structural invariant of a table.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Invalid(msg));
        if self.d < 2 || Order::for_ball(0, self.d).is_err() {
            return bad(format!("dimension {}", self.d));
        }
        if !(self.lambda_max.is_finite() && self.lambda_max >= 0.0) {
            return bad(format!("cutoff {}", self.lambda_max));
        }
        let mut next_label = 1u64;
        for r in &self.records {
            if r.d != self.d || r.bc != self.bc {
                return bad(format!("record (l={}, m={}) belongs to another table", r.l, r.m));
            }
            if r.m == 0 || !(r.zero.is_finite() && r.zero >= 0.0) {
                return bad(format!("record (l={}, m={}) has zero {}", r.l, r.m, r.zero));
            }
            if r.lambda != r.zero * r.zero {
                return bad(format!("record (l={}, m={}): lambda != zero^2", r.l, r.m));
            }
            if r.lambda > self.lambda_max + CUTOFF_SLACK {
                return bad(format!("lambda {} above cutoff {}", r.lambda, self.lambda_max));
            }
            if Order::for_ball(r.l, r.d).is_err() || r.multiplicity != multiplicity(r.l, r.d)? {
                return bad(format!("record (l={}, m={}): wrong multiplicity", r.l, r.m));
            }
            if r.label_first != next_label
                || r.label_last.checked_sub(r.label_first) != Some(r.multiplicity - 1)
            {
                return bad(format!("labels of record (l={}, m={}) do not tile", r.l, r.m));
            }
            next_label = r.label_last.wrapping_add(1);
        }
        if self.bc == BoundaryCondition::Neumann {
            if let Some(r) = self.records.first() {
                if (r.l, r.m, r.lambda) != (0, 1, 0.0) {
                    return bad("neumann table must start with the constant mode".into());
                }
            }
        }
        check_gaps(&self.records).map_err(|e| Error::Invalid(e.to_string()))
    }
}

const CSV_HEADER: [&str; 9] = [
    "d",
    "bc",
    "l",
    "m",
    "zero",
    "lambda",
    "multiplicity",
    "label_first",
    "label_last",
];

fn check_gaps(records: &[EigenvalueRecord]) -> Result<()> {
    for w in records.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if !(b.lambda - a.lambda > MIN_REL_GAP * b.lambda.max(1.0)) {
            return Err(Error::DegenerateOrdering(format!(
                "lambda({}, {}) = {} and lambda({}, {}) = {} are not separated",
                a.l, a.m, a.lambda, b.l, b.m, b.lambda
            )));
        }
    }
    Ok(())
}

/// Smallest label of the eigenvalue `lambda_{l,m}`.
pub fn label_of(d: u32, bc: BoundaryCondition, l: u32, m: u32) -> Result<u64> {
    let z = RootRequest::new(bc.root_kind(), l, d, m).solve()?;
    let table = SpectrumTable::enumerate(d, bc, z * z)?;
    table
        .find(l, m)
        .map(|r| r.label_first)
        .ok_or_else(|| Error::BracketFailure(format!("lambda({l}, {m}) missing from its own table")))
}

/// Volume of the unit ball in `R^d`.
pub fn unit_ball_volume(d: u32) -> f64 {
    let h = d as f64 / 2.0;
    (h * std::f64::consts::PI.ln() - log_gamma(h + 1.0).expect("positive argument")).exp()
}

/// Leading Weyl term `(2 pi)^{-d} omega_d^2 lambda^{d/2}` for the unit ball.
pub fn weyl_count(d: u32, lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 0.0;
    }
    let w = unit_ball_volume(d);
    let df = d as f64;
    (2.0 * w.ln() - df * std::f64::consts::TAU.ln() + 0.5 * df * lambda.ln()).exp()
}
