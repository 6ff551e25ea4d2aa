//! Named pass/fail clauses shared by the structural checkers.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Clause {
    pub name: &'static str,
    pub holds: bool,
    /// Why the clause failed, or a note on how it was decided.
    pub detail: Option<String>,
}

impl Clause {
    pub fn pass(name: &'static str) -> Self {
        Self {
            name,
            holds: true,
            detail: None,
        }
    }

    pub fn note(name: &'static str, note: impl Into<String>) -> Self {
        Self {
            name,
            holds: true,
            detail: Some(note.into()),
        }
    }

    pub fn fail(name: &'static str, why: impl Into<String>) -> Self {
        Self {
            name,
            holds: false,
            detail: Some(why.into()),
        }
    }

    /// Passes when `witness` is `None`.
    pub fn from_witness(name: &'static str, witness: Option<String>) -> Self {
        match witness {
            None => Self::pass(name),
            Some(w) => Self::fail(name, w),
        }
    }

    pub fn check(name: &'static str, holds: bool, why: impl FnOnce() -> String) -> Self {
        if holds {
            Self::pass(name)
        } else {
            Self::fail(name, why())
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.holds { "pass" } else { "FAIL" };
        write!(f, "{verdict}  {}", self.name)?;
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        Ok(())
    }
}

pub fn all_hold(clauses: &[Clause]) -> bool {
    clauses.iter().all(|c| c.holds)
}

pub fn failures(clauses: &[Clause]) -> Vec<&Clause> {
    clauses.iter().filter(|c| !c.holds).collect()
}
