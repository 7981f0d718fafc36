use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernel::{MultiIndex, Poly};

/// Evidence for a failed check: which condition broke, on which basis tuple,
/// for which test function, and what was left over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub condition: String,
    pub indices: Vec<MultiIndex>,
    pub generator: Option<String>,
    pub residual: Vec<Poly>,
    pub note: Option<String>,
}

impl Witness {
    pub fn new(condition: impl Into<String>) -> Self {
        Witness {
            condition: condition.into(),
            indices: Vec::new(),
            generator: None,
            residual: Vec::new(),
            note: None,
        }
    }

    pub fn at(mut self, idx: MultiIndex) -> Self {
        self.indices.push(idx);
        self
    }

    pub fn with_indices(mut self, idx: impl IntoIterator<Item = MultiIndex>) -> Self {
        self.indices.extend(idx);
        self
    }

    pub fn with_generator(mut self, g: impl Into<String>) -> Self {
        self.generator = Some(g.into());
        self
    }

    pub fn with_residual(mut self, r: Vec<Poly>) -> Self {
        self.residual = r;
        self
    }

    pub fn with_note(mut self, n: impl Into<String>) -> Self {
        self.note = Some(n.into());
        self
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.condition)?;
        if !self.indices.is_empty() {
            let s: Vec<String> = self.indices.iter().map(ToString::to_string).collect();
            write!(f, " at {}", s.join(" "))?;
        }
        if let Some(g) = &self.generator {
            write!(f, " with {g}")?;
        }
        if !self.residual.is_empty() {
            let s: Vec<String> = self.residual.iter().map(ToString::to_string).collect();
            write!(f, "; residual [{}]", s.join(", "))?;
        }
        if let Some(n) = &self.note {
            write!(f, " ({n})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Witness),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }

    /// Keeps the first failure of a sequence of checks.
    pub fn and_then(self, next: impl FnOnce() -> Verdict) -> Verdict {
        match self {
            Verdict::Pass => next(),
            fail => fail,
        }
    }

    pub fn from_option(w: Option<Witness>) -> Verdict {
        match w {
            Some(w) => Verdict::Fail(w),
            None => Verdict::Pass,
        }
    }
}

/// Two independently computed verdicts for one statement and its dual form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairedVerdict {
    pub direct: Verdict,
    pub dual: Verdict,
}

impl PairedVerdict {
    pub fn agree(&self) -> bool {
        self.direct.is_pass() == self.dual.is_pass()
    }

    /// The common verdict, or an error describing the disagreement.
    pub fn shared(&self) -> Result<Verdict> {
        if self.agree() {
            Ok(self.direct.clone())
        } else {
            Err(Error::Disagreement(format!(
                "direct check {}, dual check {}",
                describe(&self.direct),
                describe(&self.dual)
            )))
        }
    }
}

fn describe(v: &Verdict) -> String {
    match v {
        Verdict::Pass => "passes".into(),
        Verdict::Fail(w) => format!("fails: {w}"),
    }
}

/// Runs `check` over `items` in parallel and returns the failure belonging to
/// the earliest item, so the outcome does not depend on scheduling.
pub(crate) fn first_failure<T, F>(items: &[T], check: F) -> Option<Witness>
where
    T: Sync,
    F: Fn(&T) -> Option<Witness> + Sync + Send,
{
    items.par_iter().find_map_first(check)
}
