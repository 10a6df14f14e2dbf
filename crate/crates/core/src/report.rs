use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::Rat;
use crate::error::{Error, Result};
use crate::integrality::LevelCertificate;

/// One hypothesis of an identity and whether it holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub certificate: Option<LevelCertificate>,
}

impl Check {
    pub fn new(name: impl Into<String>, holds: bool) -> Self {
        Check { name: name.into(), holds, certificate: None }
    }

    /// A level requirement `condition >= level` checked against a certificate.
    pub fn level(name: impl Into<String>, certificate: LevelCertificate, level: i64) -> Self {
        Check { name: name.into(), holds: certificate.max_level >= level, certificate: Some(certificate) }
    }
}

/// Outcome of checking an identity `lhs = rhs` on a concrete input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub identity: &'static str,
    pub hypotheses: Vec<Check>,
    pub lhs: Rat,
    pub rhs: Rat,
    /// Further named values computed along the way.
    pub extra: Vec<(String, Rat)>,
    pub equal: bool,
}

impl Report {
    pub fn new(identity: &'static str, hypotheses: Vec<Check>, lhs: Rat, rhs: Rat) -> Self {
        let equal = lhs == rhs;
        Report { identity, hypotheses, lhs, rhs, extra: Vec::new(), equal }
    }

    pub fn with_extra(mut self, name: impl Into<String>, value: Rat) -> Self {
        self.extra.push((name.into(), value));
        self
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|c| c.holds)
    }

    /// Fails when the hypotheses hold but the two sides differ.
    pub fn into_checked(self) -> Result<Self> {
        if self.hypotheses_hold() && !self.equal {
            return Err(Error::IdentityViolated(self.identity));
        }
        Ok(self)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.identity)?;
        for c in &self.hypotheses {
            writeln!(f, "  hypothesis {}: {}", c.name, if c.holds { "holds" } else { "fails" })?;
            if let (false, Some(cert)) = (c.holds, &c.certificate) {
                writeln!(f, "    {cert}")?;
            }
        }
        writeln!(f, "  lhs = {}", self.lhs)?;
        writeln!(f, "  rhs = {}", self.rhs)?;
        for (name, value) in &self.extra {
            writeln!(f, "  {name} = {value}")?;
        }
        write!(f, "  {}", if self.equal { "equal" } else { "not equal" })
    }
}
