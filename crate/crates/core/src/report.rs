//! Three-valued verdicts and check reports.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Outcome of a predicate whose inputs may be incomplete. `Indeterminate`
/// means the model lacks the data to decide; it is never read as `False`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "kebab-case"))]
pub enum Verdict {
    True,
    False,
    Indeterminate,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    /// Kleene conjunction: any `False` wins, then any `Indeterminate`.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::False, _) | (_, Verdict::False) => Verdict::False,
            (Verdict::True, Verdict::True) => Verdict::True,
            _ => Verdict::Indeterminate,
        }
    }

    pub fn all<I: IntoIterator<Item = Verdict>>(items: I) -> Verdict {
        items.into_iter().fold(Verdict::True, Verdict::and)
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Verdict::True => Some(true),
            Verdict::False => Some(false),
            Verdict::Indeterminate => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Indeterminate => "indeterminate",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A value that may be undecidable from the model data; the string says what is missing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Determined<T> {
    Known(T),
    Indeterminate(String),
}

impl<T> Determined<T> {
    pub fn known(self) -> Option<T> {
        match self {
            Determined::Known(t) => Some(t),
            Determined::Indeterminate(_) => None,
        }
    }

    pub fn as_ref(&self) -> Determined<&T> {
        match self {
            Determined::Known(t) => Determined::Known(t),
            Determined::Indeterminate(r) => Determined::Indeterminate(r.clone()),
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Determined<U> {
        match self {
            Determined::Known(t) => Determined::Known(f(t)),
            Determined::Indeterminate(r) => Determined::Indeterminate(r),
        }
    }
}

/// A verdict together with the rule that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Judgement {
    pub verdict: Verdict,
    pub rule: String,
}

impl Judgement {
    pub fn new(verdict: Verdict, rule: impl Into<String>) -> Self {
        Judgement {
            verdict,
            rule: rule.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "kebab-case"))]
pub enum Status {
    Pass,
    Fail,
    /// Implication with true hypothesis and true conclusion.
    Confirmed,
    /// Implication whose hypothesis is false.
    Vacuous,
    /// Implication with true hypothesis and false conclusion.
    Violation,
    Indeterminate,
    /// A hypothesis-true, conclusion-false instance that is a known
    /// counterexample outside the implication's stated range.
    DocumentedException,
    NotApplicable,
}

impl Status {
    pub fn is_failure(self) -> bool {
        matches!(self, Status::Fail | Status::Violation)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Confirmed => "confirmed",
            Status::Vacuous => "vacuous",
            Status::Violation => "VIOLATION",
            Status::Indeterminate => "indeterminate",
            Status::DocumentedException => "documented-exception",
            Status::NotApplicable => "not-applicable",
        }
    }

    /// Status of the implication `hypothesis => conclusion`.
    pub fn implication(hypothesis: Verdict, conclusion: Verdict) -> Status {
        match (hypothesis, conclusion) {
            (Verdict::False, _) => Status::Vacuous,
            (Verdict::True, Verdict::True) => Status::Confirmed,
            (Verdict::True, Verdict::False) => Status::Violation,
            _ => Status::Indeterminate,
        }
    }

    /// Status of the equivalence `left <=> right`; indeterminate only if both sides are.
    pub fn equivalence(left: Verdict, right: Verdict) -> Status {
        match (left.as_bool(), right.as_bool()) {
            (Some(a), Some(b)) => Status::from_bool(a == b),
            (None, None) => Status::Indeterminate,
            _ => Status::Fail,
        }
    }

    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Whether an expected value comes from a published statement or is an
/// identity the library derives and re-checks itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "kebab-case"))]
pub enum Source {
    Literature,
    Computed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CheckEntry {
    /// What is being checked, e.g. `n=3 implication (1)`.
    pub item: String,
    pub status: Status,
    pub detail: String,
    /// The result or identity this entry tests.
    pub rule: String,
    pub source: Source,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CheckReport {
    pub check: String,
    pub subject: String,
    pub entries: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>, subject: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            subject: subject.into(),
            entries: Vec::new(),
        }
    }

    pub fn push(
        &mut self,
        item: impl Into<String>,
        status: Status,
        detail: impl Into<String>,
        rule: &str,
        source: Source,
    ) {
        self.entries.push(CheckEntry {
            item: item.into(),
            status,
            detail: detail.into(),
            rule: rule.into(),
            source,
        });
    }

    pub fn passed(&self) -> bool {
        !self.entries.iter().any(|e| e.status.is_failure())
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| e.status.is_failure())
    }

    pub fn count(&self, status: Status) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }
}
