//! Property lookup by name, shared by the CLI and the C API.

use serde::Serialize;
use thiserror::Error;

use crate::associates::AssocKind;
use crate::props::{AlphaKind, Counting, Evaluator};
use crate::taurel::{TauProperty, TauRelation};
use crate::verdict::Verdict;

/// Relation properties, then ring-level ones.
pub const PROPERTIES: [&str; 14] = [
    "multiplicative",
    "divisive",
    "associate_preserving",
    "combinable",
    "refinable",
    "atomic",
    "accp",
    "tau_accp",
    "bfr",
    "ffr",
    "wffr",
    "df",
    "hfr",
    "ufr",
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QueryError {
    #[error("unknown property `{0}`")]
    Property(String),
    #[error("{0}")]
    Modifier(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Query<'a> {
    pub property: &'a str,
    pub alpha: AlphaKind,
    /// For `ufr` and `associate_preserving`.
    pub beta: AssocKind,
    /// For `ffr`, `wffr` and `df`.
    pub counting: Counting,
}

impl<'a> Query<'a> {
    pub fn new(property: &'a str) -> Query<'a> {
        Query {
            property,
            alpha: AlphaKind::Atomic,
            beta: AssocKind::Associate,
            counting: Counting::Raw,
        }
    }

    /// Fills the modifiers from their text forms; `None` keeps the default.
    pub fn with_text(
        mut self,
        alpha: Option<&str>,
        beta: Option<&str>,
        counting: Option<&str>,
    ) -> Result<Query<'a>, QueryError> {
        if let Some(a) = alpha {
            self.alpha = a.parse().map_err(QueryError::Modifier)?;
        }
        if let Some(b) = beta {
            self.beta = b.parse().map_err(QueryError::Modifier)?;
        }
        match counting {
            None | Some("raw") => {}
            Some(c) => self.counting = Counting::UpTo(c.parse().map_err(QueryError::Modifier)?),
        }
        Ok(self)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Answer {
    pub property: String,
    pub verdict: Verdict,
    pub witness: Option<String>,
}

pub fn answer(tau: &TauRelation, q: &Query<'_>) -> Result<Answer, QueryError> {
    let ring = tau.ring();
    let relation = match q.property {
        "multiplicative" => Some(TauProperty::Multiplicative),
        "divisive" => Some(TauProperty::Divisive),
        "associate_preserving" => Some(TauProperty::AssociatePreserving(q.beta)),
        "combinable" => Some(TauProperty::Combinable),
        "refinable" => Some(TauProperty::Refinable),
        _ => None,
    };
    if let Some(p) = relation {
        let c = tau.check_property(p);
        return Ok(Answer {
            property: p.to_string(),
            verdict: c.verdict,
            witness: c.witness.map(|w| w.describe(ring)),
        });
    }
    if !PROPERTIES.contains(&q.property) {
        return Err(QueryError::Property(q.property.to_string()));
    }
    let e = Evaluator::new(tau);
    let v = match q.property {
        "atomic" => e.atomic(q.alpha),
        "accp" => e.accp(),
        "tau_accp" => e.tau_accp(),
        "bfr" => e.bfr(),
        "ffr" => e.ffr(q.counting),
        "wffr" => e.wffr(q.counting),
        "df" => e.df(q.alpha, q.counting),
        "hfr" => e.hfr(q.alpha),
        "ufr" => e.ufr(q.alpha, q.beta),
        _ => unreachable!("listed above"),
    };
    Ok(Answer {
        property: v.label(),
        verdict: v.verdict,
        witness: v.witness.map(|w| w.describe(ring)),
    })
}
