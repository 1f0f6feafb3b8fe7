//! The four τ-irreducibility flavors of a non-unit `a`:
//!
//! - irreducible: every non-trivial τ-factorization has a factor `∼ a`;
//! - strongly: every one has a factor `≈ a`;
//! - m-: `(a)` is maximal among the ideals `(b)` with `b ∣_τ a`, i.e. every
//!   factor of every non-trivial τ-factorization is `∼ a`;
//! - very strongly: `a ≅ a` and there is no non-trivial τ-factorization.
//!
//! All four depend only on the `≈`-class of `a`, so they are computed once
//! per class from a [`FactorIndex`].

use serde::Serialize;
use thiserror::Error;

use crate::associates::AssocData;
use crate::factor::bits::Bits;
use crate::factor::index::FactorIndex;
use crate::factor::Factorization;
use crate::ring::{Elem, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IrrError {
    #[error("{0} is a unit")]
    Unit(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    Irreducible,
    Strong,
    M,
    VeryStrong,
}

impl Flavor {
    pub const ALL: [Flavor; 4] = [Flavor::Irreducible, Flavor::Strong, Flavor::M, Flavor::VeryStrong];

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Irreducible => "irreducible",
            Flavor::Strong => "strongly irreducible",
            Flavor::M => "m-irreducible",
            Flavor::VeryStrong => "very strongly irreducible",
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct IrrWitnesses {
    /// A non-trivial factorization with no factor `∼ a`.
    pub irr: Option<Factorization>,
    /// One with no factor `≈ a`.
    pub strong: Option<Factorization>,
    /// One with a factor `≁ a`.
    pub m: Option<Factorization>,
    /// τ-divisors `b` of `a` with `(a) ⊊ (b)`; empty exactly when `(a)` is
    /// maximal among τ-divisor ideals.
    pub above: Vec<Elem>,
    /// Any non-trivial factorization.
    pub vs: Option<Factorization>,
}

#[derive(Debug, Clone, Serialize)]
pub struct IrrFlags {
    pub elem: Elem,
    pub irr: bool,
    pub strong: bool,
    pub m: bool,
    pub vs: bool,
    /// `a ≅ a`; very strong irreducibility is only defined under it.
    pub vs_defined: bool,
    /// `irr` for every `≈`-class inside the `∼`-class of `a`.
    pub ideal_form: bool,
    pub verified_up_to: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<IrrWitnesses>,
}

impl IrrFlags {
    pub fn get(&self, flavor: Flavor) -> bool {
        match flavor {
            Flavor::Irreducible => self.irr,
            Flavor::Strong => self.strong,
            Flavor::M => self.m,
            Flavor::VeryStrong => self.vs,
        }
    }

    /// Arrows of the implication diagram that fail for these flags.
    pub fn diagram_violations(&self, strongly_associate: bool) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.vs && !self.m {
            out.push("very strong => m");
        }
        if self.vs && !self.strong {
            out.push("very strong => strong");
        }
        if self.m && !self.irr {
            out.push("m => irreducible");
        }
        if self.strong && !self.irr {
            out.push("strong => irreducible");
        }
        if strongly_associate && self.m && !self.strong {
            out.push("m => strong (strongly associate ring)");
        }
        out
    }
}

#[derive(Debug, Clone)]
struct ClassFlags {
    irr: Option<u32>,
    strong: Option<u32>,
    m: Option<u32>,
    m_by_divisors: bool,
    above: Vec<Elem>,
    any: Option<u32>,
}

fn class_flags(index: &FactorIndex<'_>, a: Elem) -> ClassFlags {
    let ring = index.ring();
    let data = AssocData::get(ring);
    let class = data.class_of(a);
    let rep = |l: &crate::factor::index::Letter| l.members[0];
    let above: Bits = index.letters_where(|l| data.ideal_strictly_within(a, rep(l)));
    let same_class: Bits = index.letters_where(|l| l.class == class);
    let same_ideal: Bits = index.letters_where(|l| data.ideal_of(rep(l)) == data.ideal_of(a));

    let divisors = index.nontrivial_letters(class);
    let above_divisors: Vec<Elem> = {
        let mut v: Vec<Elem> = divisors
            .iter()
            .filter(|&l| above.contains(l))
            .flat_map(|l| index.letters()[l].members.iter().copied())
            .collect();
        v.sort_unstable();
        v
    };
    ClassFlags {
        irr: index.find_key(class, |s| s.is_subset(&above)),
        strong: index.find_key(class, |s| !s.intersects(&same_class)),
        m: index.find_key(class, |s| !s.is_subset(&same_ideal)),
        m_by_divisors: divisors.is_subset(&same_ideal),
        above: above_divisors,
        any: index.long_keys(class).first().copied(),
    }
}

/// Flags for a non-unit `a`. With `witnesses` the failing factorizations are
/// attached.
pub fn classify(index: &FactorIndex<'_>, a: Elem, witnesses: bool) -> Result<IrrFlags, IrrError> {
    let ring = index.ring();
    if ring.is_unit(a) {
        return Err(IrrError::Unit(ring.format_elem(a)));
    }
    let cf = class_flags(index, a);
    Ok(assemble(index, a, &cf, witnesses))
}

fn assemble(index: &FactorIndex<'_>, a: Elem, cf: &ClassFlags, witnesses: bool) -> IrrFlags {
    let ring = index.ring();
    let data = AssocData::get(ring);
    let vs_defined = data.self_cong(a);
    let flags = IrrFlags {
        elem: a,
        irr: cf.irr.is_none(),
        strong: cf.strong.is_none(),
        m: cf.m.is_none(),
        vs: vs_defined && cf.any.is_none(),
        vs_defined,
        ideal_form: ideal_form(index, a),
        verified_up_to: index.bound(),
        witnesses: witnesses.then(|| {
            let w = |k: Option<u32>| k.map(|k| index.witness(k, 0, a, &[]));
            IrrWitnesses {
                irr: w(cf.irr),
                strong: w(cf.strong),
                m: w(cf.m),
                above: cf.above.clone(),
                vs: w(cf.any),
            }
        }),
    };
    cross_check(ring, &flags, cf);
    flags
}

/// The principal-ideal form: no `≈`-class generating `(a)` has a non-trivial
/// factorization with every factor strictly above `(a)`.
fn ideal_form(index: &FactorIndex<'_>, a: Elem) -> bool {
    let data = AssocData::get(index.ring());
    let above = index.letters_where(|l| data.ideal_strictly_within(a, l.members[0]));
    let ideal = data.ideal_of(a);
    (0..data.classes().len() as u32)
        .filter(|&c| data.ideal_of(data.class_members(c)[0]) == ideal)
        .all(|c| index.find_key(c, |s| s.is_subset(&above)).is_none())
}

fn cross_check(ring: &Ring, flags: &IrrFlags, cf: &ClassFlags) {
    let a = ring.format_elem(flags.elem);
    assert_eq!(
        flags.m, cf.m_by_divisors,
        "m-irreducibility of {a}: maximality and universal forms disagree"
    );
    assert_eq!(flags.m, cf.above.is_empty(), "m-irreducibility of {a}: witness set mismatch");
    if flags.ideal_form {
        assert!(flags.irr, "ideal form without irreducibility at {a}");
    }
    if flags.vs_defined {
        let all = [flags.irr, flags.strong, flags.m, flags.ideal_form];
        assert!(
            all.iter().all(|&x| x == flags.vs),
            "{a} ≅ {a} but flavors disagree: {flags:?}"
        );
    }
}

/// Flags for every non-unit, computed once per `≈`-class.
pub fn classify_all(index: &FactorIndex<'_>) -> Vec<IrrFlags> {
    let ring = index.ring();
    let data = AssocData::get(ring);
    let mut cache: Vec<Option<ClassFlags>> = vec![None; data.classes().len()];
    ring.nonunits()
        .iter()
        .map(|&a| {
            let c = data.class_of(a) as usize;
            let cf = cache[c].get_or_insert_with(|| class_flags(index, a));
            assemble(index, a, cf, false)
        })
        .collect()
}

/// Pairs `a ≈ a′` where `a` has `flavor` and `a′` does not.
pub fn check_strong_associate_closure(flags: &[IrrFlags], ring: &Ring, flavor: Flavor) -> Vec<(Elem, Elem)> {
    let data = AssocData::get(ring);
    let by_elem: std::collections::HashMap<Elem, &IrrFlags> = flags.iter().map(|f| (f.elem, f)).collect();
    let mut out = Vec::new();
    for f in flags.iter().filter(|f| f.get(flavor)) {
        for &b in data.class_members(data.class_of(f.elem)) {
            if let Some(g) = by_elem.get(&b) {
                if !g.get(flavor) {
                    out.push((f.elem, b));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::associates::ring_class;
    use crate::taurel::TauRelation;

    fn flags(spec: &str, build: fn(Arc<Ring>) -> TauRelation, a: Elem) -> IrrFlags {
        let tau = build(Arc::new(Ring::parse(spec).unwrap()));
        let index = FactorIndex::for_tau(&tau);
        classify(&index, a, true).unwrap()
    }

    #[test]
    fn z6_full_two() {
        let f = flags("Z/6", TauRelation::full, 2);
        assert!(f.irr && f.m);
        assert!(!f.vs && !f.vs_defined);
    }

    #[test]
    fn tau_z_atoms() {
        for spec in ["Z/30", "Z/12", "Z/4", "GF(2) x Z/4"] {
            let tau = TauRelation::tau_z(Arc::new(Ring::parse(spec).unwrap()));
            let index = FactorIndex::for_tau(&tau);
            for f in classify_all(&index) {
                if f.elem != 0 {
                    assert!(f.irr && f.strong && f.m);
                    assert_eq!(f.vs, f.vs_defined);
                }
            }
        }
        let f = flags("Z/4", TauRelation::tau_z, 2);
        assert!(f.irr && f.strong && f.m && f.vs);
    }

    #[test]
    fn units_rejected() {
        let tau = TauRelation::full(Arc::new(Ring::parse("Z/6").unwrap()));
        let index = FactorIndex::for_tau(&tau);
        assert!(classify(&index, 5, false).is_err());
    }

    #[test]
    fn zero_in_z30_is_not_irreducible() {
        let f = flags("Z/30", TauRelation::tau_z, 0);
        assert!(!f.irr);
        let w = f.witnesses.unwrap().irr.unwrap();
        assert!(w.len() >= 2);
        assert_eq!(Ring::parse("Z/30").unwrap().product(w.factors.iter().copied()), 0);
    }

    #[test]
    fn diagram_and_closure_on_z36() {
        let ring = Arc::new(Ring::parse("Z/36").unwrap());
        let sa = ring_class(&ring).strongly_associate;
        for tau in [TauRelation::full(ring.clone()), TauRelation::tau_z_delta(ring.clone())] {
            let index = FactorIndex::for_tau(&tau);
            let all = classify_all(&index);
            for f in &all {
                assert!(f.diagram_violations(sa).is_empty(), "{f:?}");
            }
            for flavor in Flavor::ALL {
                assert!(check_strong_associate_closure(&all, &ring, flavor).is_empty());
            }
        }
    }
}
