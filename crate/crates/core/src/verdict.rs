use std::fmt;

use serde::{Serialize, Serializer};

/// Outcome of a decision procedure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
    /// No counterexample among factorizations of length at most `L`.
    VerifiedUpTo(usize),
}

impl Verdict {
    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    /// Yes or bounded-yes.
    pub fn holds(self) -> bool {
        !matches!(self, Verdict::No)
    }

    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }

    pub fn is_no(self) -> bool {
        self == Verdict::No
    }

    /// Weakens `Yes` to `VerifiedUpTo(bound)` when `bound` is set.
    pub fn bounded(self, bound: Option<usize>) -> Verdict {
        match (self, bound) {
            (Verdict::Yes, Some(l)) => Verdict::VerifiedUpTo(l),
            (v, _) => v,
        }
    }

    /// Conjunction; a bounded side keeps the smaller bound.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::No, _) | (_, Verdict::No) => Verdict::No,
            (Verdict::VerifiedUpTo(a), Verdict::VerifiedUpTo(b)) => Verdict::VerifiedUpTo(a.min(b)),
            (Verdict::VerifiedUpTo(a), _) | (_, Verdict::VerifiedUpTo(a)) => Verdict::VerifiedUpTo(a),
            _ => Verdict::Yes,
        }
    }

    /// Process exit code: 0 yes, 1 no, 4 bounded.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Yes => 0,
            Verdict::No => 1,
            Verdict::VerifiedUpTo(_) => 4,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Yes => f.write_str("yes"),
            Verdict::No => f.write_str("no"),
            Verdict::VerifiedUpTo(l) => write!(f, "verified_up_to({l})"),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
