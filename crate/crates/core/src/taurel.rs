//! Symmetric relations τ on the non-zero non-units R# and their closure
//! properties.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::associates::{AssocData, AssocKind};
use crate::factor::index::FactorIndex;
use crate::ring::{Elem, ElemError, Ring};
use crate::verdict::Verdict;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TauError {
    #[error("unknown relation `{0}` (expected full, empty, tau_z, tau_z_delta, subset:<elems>, ideal:<gen>)")]
    UnknownName(String),
    #[error("element {0} is not a non-zero non-unit")]
    NotInRSharp(String),
    #[error("subset relation needs at least one element")]
    EmptySubset,
    #[error(transparent)]
    Element(#[from] ElemError),
    #[error("bad pair list: {0}")]
    PairList(String),
}

/// How a relation was built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Provenance {
    Full,
    Empty,
    Subset(Vec<Elem>),
    IdealCongruence(Elem),
    TauZ,
    TauZDelta,
    Explicit,
}

/// A relation name as typed on the command line, before a ring resolves
/// its elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TauName {
    Full,
    Empty,
    TauZ,
    TauZDelta,
    Subset(Vec<String>),
    Ideal(String),
}

impl FromStr for TauName {
    type Err = TauError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "full" => return Ok(TauName::Full),
            "empty" => return Ok(TauName::Empty),
            "tau_z" => return Ok(TauName::TauZ),
            "tau_z_delta" => return Ok(TauName::TauZDelta),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("subset:") {
            let elems = split_elems(rest);
            if elems.is_empty() {
                return Err(TauError::EmptySubset);
            }
            return Ok(TauName::Subset(elems));
        }
        if let Some(rest) = s.strip_prefix("ideal:") {
            return Ok(TauName::Ideal(rest.trim().to_string()));
        }
        Err(TauError::UnknownName(s.to_string()))
    }
}

impl fmt::Display for TauName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TauName::Full => f.write_str("full"),
            TauName::Empty => f.write_str("empty"),
            TauName::TauZ => f.write_str("tau_z"),
            TauName::TauZDelta => f.write_str("tau_z_delta"),
            TauName::Subset(elems) => write!(f, "subset:{}", elems.join(";")),
            TauName::Ideal(g) => write!(f, "ideal:{g}"),
        }
    }
}

/// Splits `1;2;(0,1)` or `1,2,3` into element strings, keeping tuples intact.
fn split_elems(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            ',' | ';' if depth == 0 => {
                if !cur.trim().is_empty() {
                    out.push(cur.trim().to_string());
                }
                cur.clear();
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

/// A symmetric relation on R#, materialized as an `n × n` matrix over all
/// ring elements (entries outside R# × R# are always false).
#[derive(Debug, Clone)]
pub struct TauRelation {
    ring: Arc<Ring>,
    n: usize,
    matrix: Vec<bool>,
    provenance: Provenance,
}

impl TauRelation {
    fn from_predicate(ring: Arc<Ring>, provenance: Provenance, pred: impl Fn(Elem, Elem) -> bool) -> TauRelation {
        let n = ring.order() as usize;
        let mut matrix = vec![false; n * n];
        let sharp = ring.nonzero_nonunits();
        for &a in sharp {
            for &b in sharp {
                if pred(a, b) {
                    matrix[a as usize * n + b as usize] = true;
                }
            }
        }
        TauRelation {
            ring,
            n,
            matrix,
            provenance,
        }
    }

    pub fn full(ring: Arc<Ring>) -> TauRelation {
        TauRelation::from_predicate(ring, Provenance::Full, |_, _| true)
    }

    pub fn empty(ring: Arc<Ring>) -> TauRelation {
        TauRelation::from_predicate(ring, Provenance::Empty, |_, _| false)
    }

    /// `S × S`. Every member of `subset` must lie in R#.
    pub fn subset(ring: Arc<Ring>, subset: &[Elem]) -> Result<TauRelation, TauError> {
        if subset.is_empty() {
            return Err(TauError::EmptySubset);
        }
        let mut members = vec![false; ring.order() as usize];
        for &s in subset {
            if s == 0 || s >= ring.order() || ring.is_unit(s) {
                return Err(TauError::NotInRSharp(label(&ring, s)));
            }
            members[s as usize] = true;
        }
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        Ok(TauRelation::from_predicate(ring, Provenance::Subset(sorted), |a, b| {
            members[a as usize] && members[b as usize]
        }))
    }

    /// `a τ b ⇔ a − b ∈ (c)`.
    pub fn ideal_congruence(ring: Arc<Ring>, generator: Elem) -> TauRelation {
        let r = Arc::clone(&ring);
        let mut ideal = vec![false; ring.order() as usize];
        for x in ring.elements() {
            ideal[ring.mul(x, generator) as usize] = true;
        }
        TauRelation::from_predicate(ring, Provenance::IdealCongruence(generator), |a, b| {
            ideal[r.sub(a, b) as usize]
        })
    }

    /// `a τ_z b ⇔ ab = 0`.
    pub fn tau_z(ring: Arc<Ring>) -> TauRelation {
        let r = Arc::clone(&ring);
        TauRelation::from_predicate(ring, Provenance::TauZ, |a, b| r.mul(a, b) == 0)
    }

    /// `a τ_z^Δ b ⇔ ab = 0 and a ≠ b`.
    pub fn tau_z_delta(ring: Arc<Ring>) -> TauRelation {
        let r = Arc::clone(&ring);
        TauRelation::from_predicate(ring, Provenance::TauZDelta, |a, b| a != b && r.mul(a, b) == 0)
    }

    /// A deliberately wrong `τ_z` that also relates pairs with nilpotent
    /// product. Used to check that the replay suite notices.
    #[doc(hidden)]
    pub fn tau_z_faulty(ring: Arc<Ring>) -> TauRelation {
        let r = Arc::clone(&ring);
        TauRelation::from_predicate(ring, Provenance::TauZ, |a, b| r.is_nilpotent(r.mul(a, b)))
    }

    /// An explicit relation, symmetrized.
    pub fn explicit(ring: Arc<Ring>, pairs: &[(Elem, Elem)]) -> Result<TauRelation, TauError> {
        let n = ring.order() as usize;
        let mut matrix = vec![false; n * n];
        for &(a, b) in pairs {
            for x in [a, b] {
                if x == 0 || x >= ring.order() || ring.is_unit(x) {
                    return Err(TauError::NotInRSharp(label(&ring, x)));
                }
            }
            matrix[a as usize * n + b as usize] = true;
            matrix[b as usize * n + a as usize] = true;
        }
        Ok(TauRelation {
            ring,
            n,
            matrix,
            provenance: Provenance::Explicit,
        })
    }

    /// Loads a JSON list of element pairs, e.g. `[[2,3],["(0,1)","(1,0)"]]`.
    pub fn from_json(ring: Arc<Ring>, text: &str) -> Result<TauRelation, TauError> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| TauError::PairList(e.to_string()))?;
        let list = value
            .as_array()
            .ok_or_else(|| TauError::PairList("expected a list of pairs".into()))?;
        let mut pairs = Vec::with_capacity(list.len());
        for item in list {
            let pair = item
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| TauError::PairList(format!("not a pair: {item}")))?;
            let mut elems = [0; 2];
            for (slot, v) in elems.iter_mut().zip(pair) {
                let text = match v {
                    serde_json::Value::Number(n) => n.to_string(),
                    serde_json::Value::String(s) => s.clone(),
                    other => return Err(TauError::PairList(format!("bad element {other}"))),
                };
                *slot = ring.parse_elem(&text)?;
            }
            pairs.push((elems[0], elems[1]));
        }
        TauRelation::explicit(ring, &pairs)
    }

    /// Builds a named relation on `ring`.
    pub fn from_name(ring: Arc<Ring>, name: &TauName) -> Result<TauRelation, TauError> {
        Ok(match name {
            TauName::Full => TauRelation::full(ring),
            TauName::Empty => TauRelation::empty(ring),
            TauName::TauZ => TauRelation::tau_z(ring),
            TauName::TauZDelta => TauRelation::tau_z_delta(ring),
            TauName::Subset(items) => {
                let elems = items
                    .iter()
                    .map(|t| ring.parse_elem(t))
                    .collect::<Result<Vec<_>, _>>()?;
                TauRelation::subset(ring, &elems)?
            }
            TauName::Ideal(g) => {
                let generator = ring.parse_elem(g)?;
                TauRelation::ideal_congruence(ring, generator)
            }
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ring_arc(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn is_tau_z(&self) -> bool {
        self.provenance == Provenance::TauZ
    }

    pub fn is_tau_z_delta(&self) -> bool {
        self.provenance == Provenance::TauZDelta
    }

    pub fn name(&self) -> String {
        let r = &self.ring;
        match &self.provenance {
            Provenance::Full => "full".into(),
            Provenance::Empty => "empty".into(),
            Provenance::TauZ => "tau_z".into(),
            Provenance::TauZDelta => "tau_z_delta".into(),
            Provenance::Subset(s) => format!("subset:{}", r.format_elems(s).join(";")),
            Provenance::IdealCongruence(g) => format!("ideal:{}", r.format_elem(*g)),
            Provenance::Explicit => "explicit".into(),
        }
    }

    #[inline]
    pub fn relates(&self, a: Elem, b: Elem) -> bool {
        self.matrix[a as usize * self.n + b as usize]
    }

    /// All related pairs in index order.
    pub fn pairs(&self) -> Vec<(Elem, Elem)> {
        let sharp = self.ring.nonzero_nonunits();
        sharp
            .iter()
            .flat_map(|&a| sharp.iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| self.relates(a, b))
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        let sharp = self.ring.nonzero_nonunits();
        sharp
            .iter()
            .all(|&a| sharp.iter().all(|&b| self.relates(a, b) == self.relates(b, a)))
    }

    /// Some `x ∈ R#` with `x τ x`, if any.
    pub fn reflexive_point(&self) -> Option<Elem> {
        self.ring.nonzero_nonunits().iter().copied().find(|&x| self.relates(x, x))
    }

    pub fn check_property(&self, prop: TauProperty) -> PropertyCheck {
        let witness = match prop {
            TauProperty::Multiplicative => self.multiplicative_witness(),
            TauProperty::Divisive => self.divisive_witness(),
            TauProperty::AssociatePreserving(kind) => self.associate_witness(kind),
            TauProperty::Combinable => self.combinable_witness(),
            TauProperty::Refinable => {
                let index = FactorIndex::for_tau(self);
                let witness = index.refinable_witness();
                let verdict = match (&witness, index.bound()) {
                    (Some(_), _) => Verdict::No,
                    (None, bound) => Verdict::Yes.bounded(bound),
                };
                return PropertyCheck {
                    property: prop,
                    verdict,
                    witness,
                };
            }
        };
        PropertyCheck {
            property: prop,
            verdict: Verdict::from_bool(witness.is_none()),
            witness,
        }
    }

    /// `a τ b ∧ a τ c ⇒ a τ bc`; `bc ∉ R#` counts as a failure.
    fn multiplicative_witness(&self) -> Option<TauWitness> {
        let r = &self.ring;
        let sharp = r.nonzero_nonunits();
        for &a in sharp {
            for &b in sharp.iter().filter(|&&b| self.relates(a, b)) {
                for &c in sharp.iter().filter(|&&c| self.relates(a, c)) {
                    let bc = r.mul(b, c);
                    if bc == 0 || !self.relates(a, bc) {
                        return Some(TauWitness::Triple { a, b, c });
                    }
                }
            }
        }
        None
    }

    /// `a τ b ∧ c ∣ b ⇒ a τ c` for `c ∈ R#`.
    fn divisive_witness(&self) -> Option<TauWitness> {
        let r = &self.ring;
        let data = AssocData::get(r);
        let sharp = r.nonzero_nonunits();
        for &a in sharp {
            for &b in sharp.iter().filter(|&&b| self.relates(a, b)) {
                for &c in sharp {
                    if data.ideal_within(b, c) && !self.relates(a, c) {
                        return Some(TauWitness::Triple { a, b, c });
                    }
                }
            }
        }
        None
    }

    /// `a τ b ∧ b (kind) c ⇒ a τ c` for `c ∈ R#`.
    fn associate_witness(&self, kind: AssocKind) -> Option<TauWitness> {
        let data = AssocData::get(&self.ring);
        let sharp = self.ring.nonzero_nonunits();
        for &a in sharp {
            for &b in sharp.iter().filter(|&&b| self.relates(a, b)) {
                for &c in sharp {
                    if data.is_related(kind, b, c) && !self.relates(a, c) {
                        return Some(TauWitness::Triple { a, b, c });
                    }
                }
            }
        }
        None
    }

    /// A failed merge inside a τ-factorization of length ≥ 3 always shows up
    /// inside some pairwise-related triple, so triples decide the property.
    /// Merging the two factors of a length-two factorization gives a single
    /// factor (or the trivial `0 = λ0`) and never fails.
    fn combinable_witness(&self) -> Option<TauWitness> {
        let r = &self.ring;
        let sharp = r.nonzero_nonunits();
        for (i, &x) in sharp.iter().enumerate() {
            for (j, &y) in sharp.iter().enumerate().skip(i) {
                if !self.relates(x, y) {
                    continue;
                }
                for &z in &sharp[j..] {
                    if !(self.relates(x, z) && self.relates(y, z)) {
                        continue;
                    }
                    let triple = [x, y, z];
                    for (position, other) in [(1usize, 0usize), (0, 2)] {
                        let merged = r.mul(triple[position], triple[position + 1]);
                        if merged == 0 || !self.relates(merged, triple[other]) {
                            return Some(TauWitness::Combine {
                                factors: triple.to_vec(),
                                position,
                            });
                        }
                    }
                    // The remaining adjacent pair (x, z) after rearranging.
                    let merged = r.mul(x, z);
                    if merged == 0 || !self.relates(merged, y) {
                        return Some(TauWitness::Combine {
                            factors: vec![x, z, y],
                            position: 0,
                        });
                    }
                }
            }
        }
        None
    }
}

fn label(ring: &Ring, a: Elem) -> String {
    if a < ring.order() {
        ring.format_elem(a)
    } else {
        a.to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TauProperty {
    Multiplicative,
    Divisive,
    AssociatePreserving(AssocKind),
    Combinable,
    Refinable,
}

impl fmt::Display for TauProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TauProperty::Multiplicative => f.write_str("multiplicative"),
            TauProperty::Divisive => f.write_str("divisive"),
            TauProperty::AssociatePreserving(k) => write!(f, "{k}_preserving"),
            TauProperty::Combinable => f.write_str("combinable"),
            TauProperty::Refinable => f.write_str("refinable"),
        }
    }
}

/// A counterexample to a closure property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TauWitness {
    /// Multiplicative: `a τ b`, `a τ c`, not `a τ bc`. Divisive: `a τ b`,
    /// `c ∣ b`, not `a τ c`. Associate preserving: `a τ b`, `b` associate
    /// to `c`, not `a τ c`.
    Triple { a: Elem, b: Elem, c: Elem },
    /// A τ-factorization whose factors at `position` and `position + 1`
    /// cannot be merged.
    Combine { factors: Vec<Elem>, position: usize },
    /// A τ-factorization `factors` whose refinement `refined` is not one.
    Refine { factors: Vec<Elem>, refined: Vec<Elem> },
}

impl TauWitness {
    pub fn describe(&self, ring: &Ring) -> String {
        let f = |a: &Elem| ring.format_elem(*a);
        let list = |v: &[Elem]| v.iter().map(f).collect::<Vec<_>>().join("·");
        match self {
            TauWitness::Triple { a, b, c } => format!("({}, {}, {})", f(a), f(b), f(c)),
            TauWitness::Combine { factors, position } => {
                let mut parts: Vec<String> = factors.iter().map(f).collect();
                let merged = ring.mul(factors[*position], factors[*position + 1]);
                let pair = format!("({}·{})", parts[*position], parts[*position + 1]);
                parts.splice(*position..*position + 2, [pair]);
                format!(
                    "{} = {} vs {} where the merged factor is {}",
                    ring.format_elem(ring.product(factors.iter().copied())),
                    list(factors),
                    parts.join("·"),
                    ring.format_elem(merged)
                )
            }
            TauWitness::Refine { factors, refined } => {
                format!("{} refines to {}", list(factors), list(refined))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyCheck {
    pub property: TauProperty,
    pub verdict: Verdict,
    pub witness: Option<TauWitness>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(s: &str) -> Arc<Ring> {
        Arc::new(Ring::parse(s).unwrap())
    }

    #[test]
    fn z4_relations() {
        let r = ring("Z/4");
        assert_eq!(TauRelation::tau_z(Arc::clone(&r)).pairs(), vec![(2, 2)]);
        assert!(TauRelation::tau_z_delta(r).pairs().is_empty());
    }

    #[test]
    fn z9_tau_z() {
        let t = TauRelation::tau_z(ring("Z/9"));
        assert_eq!(t.pairs(), vec![(3, 3), (3, 6), (6, 3), (6, 6)]);
    }

    #[test]
    fn names_round_trip() {
        for s in ["full", "empty", "tau_z", "tau_z_delta", "subset:2;3", "ideal:3"] {
            let name: TauName = s.parse().unwrap();
            assert_eq!(name.to_string(), s);
        }
        let name: TauName = "subset:(0,1),(1,0)".parse().unwrap();
        assert_eq!(name, TauName::Subset(vec!["(0,1)".into(), "(1,0)".into()]));
        assert!("bogus".parse::<TauName>().is_err());
    }

    #[test]
    fn subset_must_avoid_units_and_zero() {
        let r = ring("Z/6");
        assert!(TauRelation::subset(Arc::clone(&r), &[2, 3]).is_ok());
        assert!(matches!(TauRelation::subset(Arc::clone(&r), &[1]), Err(TauError::NotInRSharp(_))));
        assert!(TauRelation::subset(r, &[0]).is_err());
    }

    #[test]
    fn explicit_pairs_are_symmetrized() {
        let r = ring("Z/12");
        let t = TauRelation::from_json(r, "[[2, 3], [\"4\", 6]]").unwrap();
        assert!(t.relates(3, 2) && t.relates(6, 4));
        assert!(t.is_symmetric());
    }

    #[test]
    fn z30_tau_z_not_combinable() {
        let t = TauRelation::tau_z(ring("Z/30"));
        let check = t.check_property(TauProperty::Combinable);
        assert_eq!(check.verdict, Verdict::No);
        match check.witness.unwrap() {
            TauWitness::Combine { factors, .. } => assert_eq!(factors, vec![6, 10, 15]),
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn z12_tau_z_not_divisive() {
        let t = TauRelation::tau_z(ring("Z/12"));
        assert_eq!(t.check_property(TauProperty::Divisive).verdict, Verdict::No);
        assert!(t.relates(2, 6) && !t.relates(2, 3));
    }

    #[test]
    fn z9_delta_not_associate_preserving() {
        let t = TauRelation::tau_z_delta(ring("Z/9"));
        let check = t.check_property(TauProperty::AssociatePreserving(AssocKind::Associate));
        assert_eq!(check.verdict, Verdict::No);
        assert_eq!(check.witness, Some(TauWitness::Triple { a: 3, b: 6, c: 3 }));
    }

    #[test]
    fn empty_relation_is_multiplicative_and_divisive() {
        let t = TauRelation::empty(ring("Z/12"));
        for p in [TauProperty::Multiplicative, TauProperty::Divisive, TauProperty::Combinable] {
            assert_eq!(t.check_property(p).verdict, Verdict::Yes);
        }
    }

    #[test]
    fn full_relation_is_multiplicative_only_without_zero_products() {
        // Z/8: 4·4 = 0, so 2 τ 4 and 2 τ 4 do not give 2 τ 16.
        let t = TauRelation::full(ring("Z/8"));
        assert_eq!(t.check_property(TauProperty::Multiplicative).verdict, Verdict::No);
        assert_eq!(t.check_property(TauProperty::Divisive).verdict, Verdict::Yes);
        let t = TauRelation::full(ring("GF(9)"));
        assert_eq!(t.check_property(TauProperty::Multiplicative).verdict, Verdict::Yes);
    }

    #[test]
    fn tau_z_preserves_all_associates() {
        for spec in ["Z/12", "Z/9", "GF(2) x Z/4"] {
            let t = TauRelation::tau_z(ring(spec));
            for kind in AssocKind::ALL {
                let check = t.check_property(TauProperty::AssociatePreserving(kind));
                assert_eq!(check.verdict, Verdict::Yes, "{spec} {kind}");
            }
        }
    }
}
