use std::fmt;

use serde::Serialize;

/// Elements exhibiting a violated law, by label, together with a short
/// description of the failing instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub labels: Vec<String>,
    pub detail: String,
}

/// Outcome of a law check. A failure always carries a witness that can be
/// re-evaluated against the law it violates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Witness),
}

impl Verdict {
    pub fn fail<I, S>(labels: I, detail: impl Into<String>) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Verdict::Fail(Witness {
            labels: labels.into_iter().map(Into::into).collect(),
            detail: detail.into(),
        })
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }

    /// First failure wins.
    pub fn and(self, other: impl FnOnce() -> Verdict) -> Verdict {
        match self {
            Verdict::Pass => other(),
            fail => fail,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("pass"),
            Verdict::Fail(w) => write!(f, "FAIL [{}] {}", w.labels.join(", "), w.detail),
        }
    }
}
