//! Pass/fail records for single identity instances.

use std::collections::BTreeMap;
use std::fmt::Display;

use serde::Serialize;

use crate::freealg::NcPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Whether a clause asserts that its residual vanishes or that it does not.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    Zero,
    Nonzero,
}

/// One checked equation: `lhs = rhs` (or, for [`Expect::Nonzero`], `lhs ≠ rhs`).
#[derive(Clone, Debug)]
pub struct Clause {
    pub label: String,
    pub lhs: String,
    pub rhs: String,
    pub residual: String,
    pub residual_is_zero: bool,
    pub expect: Expect,
}

impl Clause {
    pub fn new(
        label: impl Into<String>,
        lhs: impl Display,
        rhs: impl Display,
        residual: impl Display,
        residual_is_zero: bool,
    ) -> Self {
        Clause {
            label: label.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            residual: residual.to_string(),
            residual_is_zero,
            expect: Expect::Zero,
        }
    }

    /// `lhs = rhs` between polynomials; the residual is `lhs − rhs`.
    pub fn poly(label: impl Into<String>, lhs: &NcPoly, rhs: &NcPoly) -> Self {
        let residual = lhs - rhs;
        Self::new(label, lhs, rhs, &residual, residual.is_zero())
    }

    pub fn expecting_nonzero(mut self) -> Self {
        self.expect = Expect::Nonzero;
        self
    }

    pub fn holds(&self) -> bool {
        match self.expect {
            Expect::Zero => self.residual_is_zero,
            Expect::Nonzero => !self.residual_is_zero,
        }
    }
}

/// Case parameters, kept sorted so output is deterministic.
pub type Params = BTreeMap<String, String>;

/// Builds [`Params`] from `key => value` pairs.
#[macro_export]
macro_rules! params {
    ($($k:expr => $v:expr),* $(,)?) => {{
        #[allow(unused_mut)]
        let mut p = $crate::report::Params::new();
        $( p.insert($k.to_string(), $v.to_string()); )*
        p
    }};
}

/// Outcome of one identity instance.
///
/// For identity clauses the status is `pass` iff every residual is zero.
/// Clauses built with [`Clause::expecting_nonzero`] invert that, for the
/// negative claims (the third-order exploration).
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub params: Params,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub residual: String,
}

impl VerificationReport {
    pub fn from_clauses(suite: &str, params: Params, clauses: Vec<Clause>) -> Self {
        let status = if clauses.iter().all(Clause::holds) { Status::Pass } else { Status::Fail };
        let join = |f: &dyn Fn(&Clause) -> &str| -> String {
            if clauses.len() == 1 {
                f(&clauses[0]).to_string()
            } else {
                clauses.iter().map(|c| format!("{}: {}", c.label, f(c))).collect::<Vec<_>>().join("; ")
            }
        };
        let lhs = join(&|c| &c.lhs);
        let rhs = join(&|c| &c.rhs);
        let residual = join(&|c| &c.residual);
        VerificationReport { suite: suite.to_string(), params, status, lhs, rhs, residual }
    }

    pub fn single(suite: &str, params: Params, clause: Clause) -> Self {
        Self::from_clauses(suite, params, vec![clause])
    }

    pub fn skipped(suite: &str, mut params: Params, reason: &str) -> Self {
        params.insert("skip_reason".into(), reason.into());
        VerificationReport {
            suite: suite.to_string(),
            params,
            status: Status::Skipped,
            lhs: String::new(),
            rhs: String::new(),
            residual: String::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}
