//! Global guard against runaway polynomial growth.
//!
//! Every product or substitution whose result would carry more terms than the
//! configured cap aborts with a [`TermLimitExceeded`] panic payload. Front ends
//! that want to report it as an ordinary error run checkers under
//! `std::panic::catch_unwind` and downcast the payload.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

pub const DEFAULT_MAX_TERMS: usize = 100_000;

static MAX_TERMS: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_TERMS);

pub fn set_max_terms(cap: usize) {
    MAX_TERMS.store(cap.max(1), Ordering::Relaxed);
}

pub fn max_terms() -> usize {
    MAX_TERMS.load(Ordering::Relaxed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TermLimitExceeded {
    pub terms: usize,
    pub cap: usize,
}

impl fmt::Display for TermLimitExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "polynomial term limit exceeded: {} terms (cap {})",
            self.terms, self.cap
        )
    }
}

#[inline]
pub(crate) fn guard(terms: usize) {
    let cap = max_terms();
    if terms > cap {
        std::panic::panic_any(TermLimitExceeded { terms, cap });
    }
}
