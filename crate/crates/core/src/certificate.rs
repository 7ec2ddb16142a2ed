//! Named strict inequalities with both sides evaluated.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A strict inequality `lhs < rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateEntry {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
}

impl CertificateEntry {
    pub fn margin(&self) -> f64 {
        self.rhs - self.lhs
    }
}

/// Collects strict inequalities, failing on the first one that does not hold.
#[derive(Debug)]
pub(crate) struct Certificate {
    module: &'static str,
    pub(crate) entries: Vec<CertificateEntry>,
}

impl Certificate {
    pub(crate) fn new(module: &'static str) -> Self {
        Self {
            module,
            entries: Vec::new(),
        }
    }

    pub(crate) fn fail(&self, check: impl Into<String>, lhs: f64, rhs: f64) -> Error {
        Error::CertificateFailure {
            module: self.module,
            check: check.into(),
            lhs,
            rhs,
        }
    }

    pub(crate) fn check(&mut self, name: impl Into<String>, lhs: f64, rhs: f64) -> Result<()> {
        let name = name.into();
        if !(lhs < rhs) {
            return Err(self.fail(name, lhs, rhs));
        }
        self.entries.push(CertificateEntry { name, lhs, rhs });
        Ok(())
    }

    /// An inequality decided exactly elsewhere; the floats are for display.
    pub(crate) fn check_exact(&mut self, name: impl Into<String>, holds: bool, lhs: f64, rhs: f64) -> Result<()> {
        let name = name.into();
        if !holds {
            return Err(self.fail(name, lhs, rhs));
        }
        self.entries.push(CertificateEntry { name, lhs, rhs });
        Ok(())
    }

    pub(crate) fn check_int(&mut self, name: impl Into<String>, lhs: u128, rhs: u128) -> Result<()> {
        self.check_exact(name, lhs < rhs, lhs as f64, rhs as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_ties_and_nan() {
        let mut c = Certificate::new("test");
        assert!(c.check("x", 1.0, 1.0).is_err());
        assert!(c.check("x", f64::NAN, 1.0).is_err());
        assert!(c.check_int("y", 2, 2).is_err());
        assert!(c.entries.is_empty());
        c.check("z", 1.0, 1.5).unwrap();
        assert_eq!(c.entries[0].margin(), 0.5);
    }
}
