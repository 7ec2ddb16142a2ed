//! Courant-sharp eigenvalues of the ball.
//!
//! An eigenvalue `lambda_n` (smallest label `n`) is Courant sharp when some
//! eigenfunction has exactly `n` nodal domains. The pipeline here decides
//! every `(l, m)` pair by one of a few exclusion rules and records the numeric
//! inequalities each decision relies on.

use serde::{Deserialize, Serialize};

use crate::certificate::Certificate;
pub use crate::certificate::CertificateEntry;
use crate::error::{Error, Result};
use crate::spectrum::{binomial, BoundaryCondition, EigenvalueRecord, SpectrumTable};
use crate::zeros::RootRequest;

pub const DEFAULT_LMAX: u32 = 8;
pub const DEFAULT_MMAX: u32 = 4;
pub const DEFAULT_SPHERE_LMAX: u32 = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SharpnessStatus {
    Sharp,
    ExcludedTwist,
    ExcludedRadialOrdering,
    ExcludedSphereLabel,
    ExcludedDirectCount,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SharpnessVerdict {
    pub record: EigenvalueRecord,
    pub status: SharpnessStatus,
    /// Nodal count of the eigenfunction when it is known for the whole eigenspace.
    pub mu: Option<u64>,
    pub certificate: Vec<CertificateEntry>,
}

/// One entry of the JSON verdict report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub l: u32,
    pub m: u32,
    pub bc: BoundaryCondition,
    pub status: SharpnessStatus,
    pub label_first: u64,
    pub mu: Option<u64>,
    pub certificate: Vec<CertificateEntry>,
}

impl From<&SharpnessVerdict> for VerdictReport {
    fn from(v: &SharpnessVerdict) -> Self {
        VerdictReport {
            l: v.record.l,
            m: v.record.m,
            bc: v.record.bc,
            status: v.status,
            label_first: v.record.label_first,
            mu: v.mu,
            certificate: v.certificate.clone(),
        }
    }
}

pub fn report_json(verdicts: &[SharpnessVerdict]) -> String {
    let rows: Vec<VerdictReport> = verdicts.iter().map(VerdictReport::from).collect();
    serde_json::to_string_pretty(&rows).expect("verdict reports always serialize")
}

/// Nodal domains of `J_l(z r) cos(l theta)` on the unit disc, `z` the `m`-th
/// Dirichlet or Neumann zero: `m` radial bands times `2l` sectors.
pub fn nodal_count_disc(l: u32, m: u32, _bc: BoundaryCondition) -> Result<u64> {
    if m == 0 {
        return Err(Error::range("zero index", "m must be positive"));
    }
    Ok(if l == 0 { m as u64 } else { 2 * l as u64 * m as u64 })
}

/// [`nodal_count_disc`] for `d = 2`; other dimensions are not supported.
pub fn nodal_count(d: u32, l: u32, m: u32, bc: BoundaryCondition) -> Result<u64> {
    if d != 2 {
        return Err(Error::Unsupported(format!(
            "nodal counts of ball eigenfunctions in dimension {d}"
        )));
    }
    nodal_count_disc(l, m, bc)
}

/// Nodal count shared by every eigenfunction of `lambda_{l,m}`, where that
/// is determined: any `(l, m)` in the disc, and `l <= 1` in higher dimension
/// (radial functions, and a linear function times a radial profile).
pub fn known_nodal_count(d: u32, l: u32, m: u32) -> Option<u64> {
    match (d, l) {
        (_, 0) => Some(m as u64),
        (2, _) => Some(2 * l as u64 * m as u64),
        (_, 1) => Some(2 * m as u64),
        _ => None,
    }
}

/// Labels of the sphere eigenvalue `l (l + d - 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereLabeling {
    pub l: u32,
    pub d: u32,
    /// Smallest label of the eigenvalue on `S^{d-1}`.
    pub min_label: u64,
    /// Upper bound for the nodal count of any eigenfunction, from antipodal symmetry.
    pub symmetry_bound: u64,
}

fn to_u64(v: u128, what: &str) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::Overflow(what.to_string()))
}

pub fn sphere_labeling(l: u32, d: u32) -> Result<SphereLabeling> {
    if d < 3 {
        return Err(Error::range("dimension", format!("sphere labeling needs d >= 3, got {d}")));
    }
    let (li, di) = (l as i64, d as i64);
    let below = binomial(li + di - 2, di - 1)?
        .checked_add(binomial(li + di - 3, di - 1)?)
        .and_then(|s| s.checked_add(1))
        .ok_or_else(|| Error::Overflow(format!("sphere label for l = {l}, d = {d}")))?;
    let sym = binomial(li + di - 3, di - 1)?
        .checked_add(1)
        .and_then(|s| s.checked_mul(2))
        .ok_or_else(|| Error::Overflow(format!("symmetry bound for l = {l}, d = {d}")))?;
    Ok(SphereLabeling {
        l,
        d,
        min_label: to_u64(below, "sphere label")?,
        symmetry_bound: to_u64(sym, "symmetry bound")?,
    })
}

/// Courant-sharp labels of the sphere `S^{d-1}` and the checks behind them.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereSharpness {
    pub labels: Vec<u64>,
    pub certificate: Vec<CertificateEntry>,
}

/// Checks `1 < C(l + d - 3, d - 2)` for `l = 2..=l_max`; the binomial grows
/// with `l`, so larger `l` follow.
pub fn sphere_courant_sharp(d: u32, l_max: u32) -> Result<SphereSharpness> {
    if d < 3 {
        return Err(Error::range("dimension", format!("sphere sharpness needs d >= 3, got {d}")));
    }
    let mut cert = Certificate::new("courant");
    for l in 2..=l_max.max(2) {
        let (li, di) = (l as i64, d as i64);
        cert.check_int(
            format!("1 < C({}, {})", li + di - 3, di - 2),
            1,
            binomial(li + di - 3, di - 2)?,
        )?;
        let s = sphere_labeling(l, d)?;
        cert.check_int(
            format!("sphere symmetry bound < min label (l = {l})"),
            s.symmetry_bound as u128,
            s.min_label as u128,
        )?;
    }
    Ok(SphereSharpness {
        labels: vec![1, 2],
        certificate: cert.entries,
    })
}

fn lambda_of(bc: BoundaryCondition, d: u32, l: u32, m: u32) -> Result<f64> {
    let z = RootRequest::new(bc.root_kind(), l, d, m).solve()?;
    Ok(z * z)
}

/// Decide every record of `table`.
pub fn verdicts_for_table(table: &SpectrumTable) -> Result<Vec<SharpnessVerdict>> {
    let (d, bc) = (table.d, table.bc);
    let radial = if table.records.iter().any(|r| r.l == 0 && r.m >= 2) {
        Some((lambda_of(bc, d, 1, 1)?, lambda_of(bc, d, 0, 2)?))
    } else {
        None
    };
    let mut out = Vec::with_capacity(table.records.len());
    for (i, r) in table.records.iter().enumerate() {
        let mu = known_nodal_count(d, r.l, r.m);
        let mut cert = Certificate::new("courant");
        let status = if r.l >= 1 && r.m >= 2 {
            SharpnessStatus::ExcludedTwist
        } else if r.l == 0 && r.m >= 2 {
            let (l11, l02) = radial.expect("computed when a radial record exists");
            cert.check("lambda_{1,1} < lambda_{0,2}", l11, l02)?;
            cert.check_int("mu < label_first", r.m as u128, r.label_first as u128)?;
            SharpnessStatus::ExcludedRadialOrdering
        } else if r.label_first <= 2 {
            let mu = mu.expect("l <= 1 has a known nodal count");
            if mu != r.label_first {
                return Err(cert.fail(
                    format!("mu = label_first for lambda_{}", r.label_first),
                    mu as f64,
                    r.label_first as f64,
                ));
            }
            separation(&mut cert, table, i)?;
            SharpnessStatus::Sharp
        } else if d >= 3 {
            let s = sphere_labeling(r.l, d)?;
            let (li, di) = (r.l as i64, d as i64);
            cert.check_int(
                format!("1 < C({}, {})", li + di - 3, di - 2),
                1,
                binomial(li + di - 3, di - 2)?,
            )?;
            cert.check_int("symmetry_bound < sphere min_label", s.symmetry_bound as u128, s.min_label as u128)?;
            cert.check_int("symmetry_bound < label_first", s.symmetry_bound as u128, r.label_first as u128)?;
            SharpnessStatus::ExcludedSphereLabel
        } else {
            let mu = nodal_count_disc(r.l, r.m, bc)?;
            if mu > r.label_first {
                return Err(cert.fail(
                    format!("Courant bound for (l = {}, m = {})", r.l, r.m),
                    mu as f64,
                    r.label_first as f64,
                ));
            }
            if mu == r.label_first {
                separation(&mut cert, table, i)?;
                SharpnessStatus::Sharp
            } else {
                cert.check_int("mu < label_first", mu as u128, r.label_first as u128)?;
                SharpnessStatus::ExcludedDirectCount
            }
        };
        out.push(SharpnessVerdict {
            record: *r,
            status,
            mu,
            certificate: cert.entries,
        });
    }
    Ok(out)
}

/// A sharp label is only meaningful if the eigenvalue is separated from its
/// neighbours in the table.
fn separation(cert: &mut Certificate, table: &SpectrumTable, i: usize) -> Result<()> {
    let r = &table.records[i];
    if i > 0 {
        let p = &table.records[i - 1];
        cert.check(format!("lambda_{} < lambda_{}", p.label_last, r.label_first), p.lambda, r.lambda)?;
    }
    if let Some(n) = table.records.get(i + 1) {
        cert.check(format!("lambda_{} < lambda_{}", r.label_last, n.label_first), r.lambda, n.lambda)?;
    }
    Ok(())
}

/// Verdicts for all `(l, m)` with `l <= lmax`, `m <= mmax`, ordered by label.
pub fn courant_sharp_ball(
    d: u32,
    bc: BoundaryCondition,
    lmax: u32,
    mmax: u32,
) -> Result<Vec<SharpnessVerdict>> {
    if mmax == 0 {
        return Err(Error::range("mmax", "must be positive"));
    }
    let mut top: f64 = 0.0;
    for l in 0..=lmax {
        top = top.max(lambda_of(bc, d, l, mmax)?);
    }
    // Include the next record too, so every sharp candidate has an upper neighbour.
    let table = SpectrumTable::enumerate(d, bc, top * (1.0 + 1e-6) + 1.0)?;
    Ok(verdicts_for_table(&table)?
        .into_iter()
        .filter(|v| v.record.l <= lmax && v.record.m <= mmax)
        .collect())
}

/// Labels of the Sharp verdicts.
pub fn sharp_labels(verdicts: &[SharpnessVerdict]) -> Vec<u64> {
    verdicts
        .iter()
        .filter(|v| v.status == SharpnessStatus::Sharp)
        .map(|v| v.record.label_first)
        .collect()
}
